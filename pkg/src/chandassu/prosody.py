"""Laghu/guru weight classification.

An akshara is guru when any of these fires:
  long_vowel     - long vowel or diphthong
  anusvara       - full bindu on the akshara
  visarga        - visarga on the akshara
  before_cluster - next akshara is a geminate/conjunct (cluster of >= 2),
                   unless the lightly-pronounced-repha exemption applies
  before_pollu   - next akshara is a word-final bare consonant (pollu)
  candrabindu    - arasunna, only when enabled

By default a pollu akshara is absorbed: it takes no weight position of its
own, it only makes the preceding akshara of its word guru.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Iterable, Optional

from .errors import TableLoadError
from .script import (
    Akshara, LONG_VOWELS, NormalizedLine, Vowel, normalize, segment_aksharas,
    word_index_of, word_of,
)

LAGHU = "|"
GURU = "U"

_DATA_DIR = Path(__file__).parent / "data"


def load_light_repha_lexicon(path) -> frozenset[str]:
    """One word per line, '#' comments, UTF-8."""
    words = set()
    for raw in Path(path).read_text(encoding="utf-8").splitlines():
        word = raw.split("#", 1)[0].strip()
        if word:
            words.add(word)
    return frozenset(words)


def default_light_repha_lexicon() -> frozenset[str]:
    return load_light_repha_lexicon(_DATA_DIR / "light_repha.txt")


@dataclass(frozen=True)
class ProsodyOptions:
    cross_word_cluster_weighting: bool = True
    pollu_absorption: bool = True
    candrabindu_guru: bool = False
    light_repha_lexicon: frozenset[str] = field(default_factory=default_light_repha_lexicon)

    @classmethod
    def from_file(cls, path) -> "ProsodyOptions":
        try:
            cfg = json.loads(Path(path).read_text(encoding="utf-8"))
        except (OSError, ValueError) as exc:
            raise TableLoadError(f"cannot load prosody options: {exc}") from exc
        lex_path = cfg.pop("light_repha_lexicon", None)
        lexicon = (load_light_repha_lexicon(lex_path) if lex_path
                   else default_light_repha_lexicon())
        return cls(light_repha_lexicon=lexicon, **cfg)


@dataclass(frozen=True)
class WeightString:
    marks: tuple[str, ...]                 # "|" or "U" per position
    reasons: tuple[tuple[str, ...], ...]   # firing clauses per position
    aksharas: tuple[Akshara, ...] = ()     # weight-bearing aksharas, aligned

    @property
    def pattern(self) -> str:
        return "".join(self.marks)

    def __len__(self) -> int:
        return len(self.marks)

    def __str__(self) -> str:
        return self.pattern


def _is_light_repha_cluster(akshara: Akshara) -> bool:
    return akshara.cluster_size == 2 and akshara.base_consonants[1] == "ర"


def classify_weights(aksharas: list[Akshara], opts: ProsodyOptions = ProsodyOptions(),
                     line: Optional[NormalizedLine] = None) -> WeightString:
    """Assign a laghu/guru mark to every weight-bearing akshara.

    `line` is needed for the word-scoped rules (light-repha lexicon lookup,
    within-word cluster weighting); without it every akshara is treated as
    belonging to one word.
    """
    if line is None:
        text = "".join(a.surface for a in aksharas)
        line = NormalizedLine(text=text)
    marks: list[str] = []
    reasons: list[tuple[str, ...]] = []
    bearing: list[Akshara] = []
    for i, a in enumerate(aksharas):
        if a.is_pollu and opts.pollu_absorption:
            continue
        fired = []
        if a.vowel in LONG_VOWELS:
            fired.append("long_vowel")
        if a.has_anusvara:
            fired.append("anusvara")
        if a.has_visarga:
            fired.append("visarga")
        nxt = aksharas[i + 1] if i + 1 < len(aksharas) else None
        if nxt is not None and not a.is_pollu:
            same_word = word_index_of(line, a) == word_index_of(line, nxt)
            if nxt.cluster_size >= 2 and (same_word or opts.cross_word_cluster_weighting):
                exempt = (_is_light_repha_cluster(nxt)
                          and word_of(line, nxt) in opts.light_repha_lexicon)
                if not exempt:
                    fired.append("before_cluster")
            if nxt.is_pollu and same_word:
                fired.append("before_pollu")
        if a.has_candrabindu and opts.candrabindu_guru:
            fired.append("candrabindu")
        marks.append(GURU if fired else LAGHU)
        reasons.append(tuple(fired))
        bearing.append(a)
    return WeightString(tuple(marks), tuple(reasons), tuple(bearing))


def weight_string(text: str, opts: ProsodyOptions = ProsodyOptions()) -> WeightString:
    """normalize -> segment -> classify, for one line of verse."""
    line = normalize(text)
    return classify_weights(segment_aksharas(line), opts, line=line)
