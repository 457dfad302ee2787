"""Telugu text normalization and akshara (orthographic syllable) segmentation."""

from __future__ import annotations

import unicodedata
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

from .errors import MalformedCluster

VIRAMA = "్"
ANUSVARA_SIGNS = {"ం", "ఄ"}
VISARGA_SIGN = "ః"
CANDRABINDU_SIGNS = {"ఀ", "ఁ"}
AVAGRAHA = "ఽ"
LENGTH_MARKS = {"ౕ", "ౖ"}
ZERO_WIDTH = {"​", "‌", "‍", "﻿"}

TELUGU_DIGITS = {chr(c) for c in range(0x0C66, 0x0C70)}


class Vowel(Enum):
    SHORT_A = "a"
    SHORT_I = "i"
    SHORT_U = "u"
    SHORT_RU = "ru"
    SHORT_E = "e"
    SHORT_O = "o"
    LONG_A = "aa"
    LONG_I = "ii"
    LONG_U = "uu"
    LONG_RU = "ruu"
    LONG_E = "ee"
    AI = "ai"
    LONG_O = "oo"
    AU = "au"
    NONE = "none"


LONG_VOWELS = {
    Vowel.LONG_A, Vowel.LONG_I, Vowel.LONG_U, Vowel.LONG_RU,
    Vowel.LONG_E, Vowel.AI, Vowel.LONG_O, Vowel.AU,
}

# Independent vowel letters (vocalic L mapped to the vocalic-R classes).
INDEPENDENT_VOWELS = {
    "అ": Vowel.SHORT_A, "ఆ": Vowel.LONG_A,
    "ఇ": Vowel.SHORT_I, "ఈ": Vowel.LONG_I,
    "ఉ": Vowel.SHORT_U, "ఊ": Vowel.LONG_U,
    "ఋ": Vowel.SHORT_RU, "ౠ": Vowel.LONG_RU,
    "ఌ": Vowel.SHORT_RU, "ౡ": Vowel.LONG_RU,
    "ఎ": Vowel.SHORT_E, "ఏ": Vowel.LONG_E, "ఐ": Vowel.AI,
    "ఒ": Vowel.SHORT_O, "ఓ": Vowel.LONG_O, "ఔ": Vowel.AU,
}

# Dependent vowel signs (matras).
DEPENDENT_SIGNS = {
    "ా": Vowel.LONG_A,
    "ి": Vowel.SHORT_I, "ీ": Vowel.LONG_I,
    "ు": Vowel.SHORT_U, "ూ": Vowel.LONG_U,
    "ృ": Vowel.SHORT_RU, "ౄ": Vowel.LONG_RU,
    "ౢ": Vowel.SHORT_RU, "ౣ": Vowel.LONG_RU,
    "ె": Vowel.SHORT_E, "ే": Vowel.LONG_E, "ై": Vowel.AI,
    "ొ": Vowel.SHORT_O, "ో": Vowel.LONG_O, "ౌ": Vowel.AU,
}

CONSONANTS = (
    {chr(c) for c in range(0x0C15, 0x0C3A)}
    | {"ౘ", "ౙ", "ౚ"}
)

MODIFIERS = ANUSVARA_SIGNS | {VISARGA_SIGN} | CANDRABINDU_SIGNS

# Characters that take part in prosodic analysis.
PROSODIC_CHARS = (
    set(INDEPENDENT_VOWELS) | set(DEPENDENT_SIGNS) | CONSONANTS
    | MODIFIERS | {VIRAMA} | LENGTH_MARKS
)


@dataclass(frozen=True)
class IgnoredSpan:
    offset: int          # offset in the NFC-normalized original
    length: int
    kind: str            # punctuation | whitespace | digit | other-script
    content: str


@dataclass(frozen=True)
class NormalizedLine:
    text: str                          # prosodic text, ignored spans removed
    ignored_spans: tuple[IgnoredSpan, ...] = ()
    word_breaks: frozenset[int] = frozenset()   # indices into text
    char_offsets: tuple[int, ...] = ()          # text index -> original offset


@dataclass(frozen=True)
class Akshara:
    surface: str
    base_consonants: tuple[str, ...]
    vowel: Vowel
    has_anusvara: bool = False
    has_visarga: bool = False
    has_candrabindu: bool = False
    is_pollu: bool = False
    start: int = 0                     # index into the line's prosodic text

    @property
    def cluster_size(self) -> int:
        return len(self.base_consonants)


def _span_kind(ch: str) -> str:
    if ch.isspace():
        return "whitespace"
    if ch.isdigit() or ch in TELUGU_DIGITS:
        return "digit"
    if ch == AVAGRAHA:
        return "punctuation"
    if unicodedata.category(ch).startswith("P"):
        return "punctuation"
    return "other-script"


def normalize(raw: str) -> NormalizedLine:
    """NFC-normalize and strip everything that does not bear prosodic weight.

    Ignored characters are preserved as spans so the original (post-NFC) text
    can be reconstructed and diagnostics can cite original offsets.
    """
    nfc = unicodedata.normalize("NFC", raw)
    kept: list[str] = []
    offsets: list[int] = []
    spans: list[IgnoredSpan] = []
    breaks: set[int] = set()
    run_start = None
    run_kind = None
    run_chars: list[str] = []

    def flush_run():
        nonlocal run_start, run_kind, run_chars
        if run_chars:
            spans.append(IgnoredSpan(run_start, len(run_chars), run_kind, "".join(run_chars)))
            breaks.add(len(kept))
            run_start, run_kind, run_chars = None, None, []

    for i, ch in enumerate(nfc):
        if ch in PROSODIC_CHARS and ch != AVAGRAHA:
            flush_run()
            kept.append(ch)
            offsets.append(i)
        else:
            kind = _span_kind(ch)
            if run_chars and kind == run_kind:
                run_chars.append(ch)
            else:
                flush_run()
                run_start, run_kind, run_chars = i, kind, [ch]
    flush_run()
    breaks.discard(0)
    breaks.discard(len(kept))
    return NormalizedLine(
        text="".join(kept),
        ignored_spans=tuple(spans),
        word_breaks=frozenset(breaks),
        char_offsets=tuple(offsets),
    )


def reconstruct(line: NormalizedLine) -> str:
    """Reinsert ignored spans, recovering the NFC form of the original."""
    out = list(line.text)
    # Spans carry offsets in the original; rebuild by interleaving.
    chars = []
    spans = {s.offset: s for s in line.ignored_spans}
    ti = 0
    oi = 0
    total = len(line.text) + sum(s.length for s in line.ignored_spans)
    while oi < total:
        if oi in spans:
            s = spans[oi]
            chars.append(s.content)
            oi += s.length
        else:
            chars.append(out[ti])
            ti += 1
            oi += 1
    return "".join(chars)


def segment_aksharas(line: NormalizedLine) -> list[Akshara]:
    """Split the prosodic text into orthographic syllables.

    Consonant+virama joins the following consonant into one cluster; dependent
    signs and anusvara/visarga/candrabindu attach to the preceding cluster; a
    word-final consonant+virama becomes a pollu akshara (vowel NONE).
    """
    text = line.text
    aksharas: list[Akshara] = []
    n = len(text)
    i = 0
    while i < n:
        start = i
        ch = text[i]
        is_word_final = lambda j: (j + 1 == n) or (j + 1 in line.word_breaks)
        if ch in INDEPENDENT_VOWELS:
            vowel = INDEPENDENT_VOWELS[ch]
            base: tuple[str, ...] = ()
            i += 1
            i, flags = _absorb_modifiers(text, i, line.word_breaks)
            aksharas.append(Akshara(text[start:i], base, vowel, *flags, start=start))
        elif ch in CONSONANTS:
            cluster = [ch]
            i += 1
            pollu = False
            while i < n and text[i] == VIRAMA and i not in line.word_breaks:
                nxt = i + 1
                if nxt < n and nxt not in line.word_breaks and text[nxt] in CONSONANTS:
                    cluster.append(text[nxt])
                    i += 2
                elif is_word_final(i):
                    i += 1
                    pollu = True
                    break
                else:
                    raise MalformedCluster(line.char_offsets[i])
            if pollu:
                aksharas.append(Akshara(text[start:i], tuple(cluster), Vowel.NONE,
                                        is_pollu=True, start=start))
                continue
            if i < n and text[i] in DEPENDENT_SIGNS and i not in line.word_breaks:
                vowel = DEPENDENT_SIGNS[text[i]]
                i += 1
            else:
                vowel = Vowel.SHORT_A
            i, flags = _absorb_modifiers(text, i, line.word_breaks)
            aksharas.append(Akshara(text[start:i], tuple(cluster), vowel, *flags, start=start))
        else:
            # Stray combining mark with no base: attach to the previous akshara
            # when one exists in the same word, else keep it as a degenerate
            # akshara so that every code point is assigned.
            i += 1
            while i < n and text[i] not in INDEPENDENT_VOWELS and text[i] not in CONSONANTS:
                i += 1
            chunk = text[start:i]
            if aksharas and start not in line.word_breaks:
                prev = aksharas[-1]
                aksharas[-1] = Akshara(
                    prev.surface + chunk, prev.base_consonants, prev.vowel,
                    prev.has_anusvara or any(c in ANUSVARA_SIGNS for c in chunk),
                    prev.has_visarga or VISARGA_SIGN in chunk,
                    prev.has_candrabindu or any(c in CANDRABINDU_SIGNS for c in chunk),
                    prev.is_pollu, prev.start,
                )
            else:
                aksharas.append(Akshara(chunk, (), Vowel.NONE, start=start))
    return aksharas


def _absorb_modifiers(text: str, i: int, word_breaks) -> tuple[int, tuple[bool, bool, bool]]:
    anusvara = visarga = candrabindu = False
    n = len(text)
    while i < n and i not in word_breaks and (text[i] in MODIFIERS or text[i] in LENGTH_MARKS):
        ch = text[i]
        if ch in ANUSVARA_SIGNS:
            anusvara = True
        elif ch == VISARGA_SIGN:
            visarga = True
        elif ch in CANDRABINDU_SIGNS:
            candrabindu = True
        i += 1
    return i, (anusvara, visarga, candrabindu)


def word_of(line: NormalizedLine, akshara: Akshara) -> str:
    """Surface of the whitespace-delimited word containing the akshara."""
    starts = sorted(line.word_breaks | {0, len(line.text)})
    for a, b in zip(starts, starts[1:]):
        if a <= akshara.start < b:
            return line.text[a:b]
    return line.text


def word_index_of(line: NormalizedLine, akshara: Akshara) -> int:
    starts = sorted(line.word_breaks | {0})
    idx = 0
    for k, a in enumerate(starts):
        if akshara.start >= a:
            idx = k
    return idx
