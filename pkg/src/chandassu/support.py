"""Poet-support tools: error diagnostics, masked-slot analysis, and
meter-constrained vocabulary suggestion."""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Sequence

from .errors import MultipleMasks, NoMask, UnsatisfiableRemainder
from .gana import default_gana_table
from .meter import MeterSpec, ScanReport, Violation, check_poem
from .prosody import ProsodyOptions, weight_string

DEFAULT_MASK = "____"


def detect_errors(poem: Sequence[str], target: MeterSpec,
                  opts: ProsodyOptions = ProsodyOptions()) -> list[Violation]:
    """All violations of the target meter, sorted by line then position.

    Empty list means the poem is metrical under the target."""
    report = check_poem(poem, target, opts)
    return sorted(report.violations, key=lambda v: (v.line_index, v.position))


@dataclass(frozen=True)
class SlotConstraint:
    line_index: int
    akshara_start: int                    # 0-based within the line
    span_length: int
    required: tuple[str, ...]             # admissible weight fragments
    covers_yati: bool


def _itertile(classes, table):
    """All member-name tuples for a class sequence, in inventory order."""
    if not classes:
        yield ()
        return
    for name in table.members(classes[0]):
        for rest in _itertile(classes[1:], table):
            yield (name,) + rest


def slot_constraints(poem_with_mask: Sequence[str], target: MeterSpec,
                     mask: str = DEFAULT_MASK,
                     opts: ProsodyOptions = ProsodyOptions()) -> SlotConstraint:
    """Weight fragments a masked span must realize under the target meter.

    Exactly one mask token must appear in one line. For vrtta meters the
    fragment is read off the compiled template; for gana-class meters every
    tiling consistent with the unmasked prefix and suffix contributes one
    admissible fragment.
    """
    hits = [(i, line.count(mask)) for i, line in enumerate(poem_with_mask)
            if mask in line]
    total = sum(c for _, c in hits)
    if total == 0:
        raise NoMask(f"mask token {mask!r} not found")
    if total > 1:
        raise MultipleMasks(f"{total} mask tokens found")
    line_index = hits[0][0]
    line = poem_with_mask[line_index]
    before, after = line.split(mask, 1)
    prefix = weight_string(before, opts).pattern
    suffix = weight_string(after, opts).pattern

    if target.kind == "vrtta":
        template = target.template
        if len(prefix) + len(suffix) > len(template):
            raise UnsatisfiableRemainder("unmasked text longer than the line template")
        if not template.startswith(prefix):
            raise UnsatisfiableRemainder("text before the mask already violates the template")
        if suffix and not template.endswith(suffix):
            raise UnsatisfiableRemainder("text after the mask already violates the template")
        span = len(template) - len(prefix) - len(suffix)
        required = (template[len(prefix):len(prefix) + span],)
        yati_pos = target.yati_akshara - 1
        covers_yati = len(prefix) <= yati_pos < len(prefix) + span
        return SlotConstraint(line_index, len(prefix), span, required, covers_yati)

    # gana-class meters: enumerate tilings compatible with prefix and suffix
    table = default_gana_table()
    if target.kind == "kanda":
        members = table.members("kanda")
        fragments: set[str] = set()

        def walk(slot, acc):
            if slot == target.gana_counts[line_index]:
                fragments.add(acc)
                return
            pos = target.half_start_indices[line_index] + slot
            for name in members:
                if pos % 2 == 1 and name == "Ja":
                    continue
                if pos == 6 and name not in ("Ja", "Nala"):
                    continue
                walk(slot + 1, acc + table.pattern(name))

        walk(0, "")
        candidates = fragments
    else:
        classes = target.line_classes[line_index]
        candidates = {"".join(table.pattern(n) for n in names)
                      for names in _itertile(list(classes), table)}

    required = []
    span_lengths = set()
    for full in sorted(candidates):
        if (full.startswith(prefix) and full.endswith(suffix)
                and len(full) >= len(prefix) + len(suffix)):
            frag = full[len(prefix):len(full) - len(suffix)]
            required.append(frag)
            span_lengths.add(len(frag))
    if not required:
        raise UnsatisfiableRemainder("unmasked text fits no gana tiling of this meter")
    span = min(span_lengths)
    return SlotConstraint(line_index, len(prefix), span,
                          tuple(dict.fromkeys(required)), covers_yati=False)


@dataclass(frozen=True)
class Suggestion:
    word: str
    weight_match: str       # "exact" | "partial"
    notes: str = ""


def load_lexicon(path) -> list[str]:
    """UTF-8 word list, one per line, '#' comments."""
    words = []
    for raw in Path(path).read_text(encoding="utf-8").splitlines():
        word = raw.split("#", 1)[0].strip()
        if word:
            words.append(word)
    return words


def _hamming(a: str, b: str) -> int:
    return sum(x != y for x, y in zip(a, b))


def suggest_words(constraint: SlotConstraint, lexicon: Sequence[str],
                  limit: int = 10, allow_partial: bool = False,
                  opts: ProsodyOptions = ProsodyOptions()) -> list[Suggestion]:
    """Lexicon words whose weight string realizes the slot.

    Exact matches first, then (optionally) same-length Hamming-1 near-misses;
    within a rank, lexicon order is preserved."""
    exact, partial = [], []
    for word in lexicon:
        pattern = weight_string(word, opts).pattern
        if pattern in constraint.required:
            notes = "covers yati position" if constraint.covers_yati else ""
            exact.append(Suggestion(word, "exact", notes))
        elif allow_partial and any(
                len(pattern) == len(req) and _hamming(pattern, req) == 1
                for req in constraint.required):
            partial.append(Suggestion(word, "partial", "one weight off"))
    return (exact + partial)[:limit]


_TEMPLATES = {
    "English": {
        "ok": "The poem satisfies {meter}.",
        "summary": "{n} violation(s) found against {meter}.",
        "SyllableCount": "line {line}: syllable count mismatch ({detail}).",
        "GanaMismatch": "line {line}, akshara {pos}: gana pattern mismatch ({detail}).",
        "YatiFailure": "line {line}, akshara {pos}: yati expects a compatible akshara ({detail}).",
        "PrasaFailure": "poem: prasa broken at akshara 2 ({detail}).",
        "KandaPositionRule": "line {line}: kanda position rule violated ({detail}).",
        "FirstAksharaWeightMismatch": "poem: first-akshara weights disagree ({detail}).",
        "Unparseable": "line {line}: cannot be scanned ({detail}).",
    },
    "Telugu": {
        "ok": "పద్యము {meter} లక్షణాలను పాటిస్తుంది.",
        "summary": "{meter} పట్ల {n} దోషాలు ఉన్నాయి.",
        "SyllableCount": "{line}వ పాదం: అక్షరాల సంఖ్య సరిపోలేదు ({detail}).",
        "GanaMismatch": "{line}వ పాదం, {pos}వ అక్షరం: గణం సరిపోలేదు ({detail}).",
        "YatiFailure": "{line}వ పాదం, {pos}వ అక్షరం: యతి చెల్లలేదు ({detail}).",
        "PrasaFailure": "పద్యం: ప్రాస నియమం చెల్లలేదు ({detail}).",
        "KandaPositionRule": "{line}వ పాదం: కంద గణ నియమం చెల్లలేదు ({detail}).",
        "FirstAksharaWeightMismatch": "పద్యం: మొదటి అక్షరాల గురులఘువులు సరిపోలేదు ({detail}).",
        "Unparseable": "{line}వ పాదం: విశ్లేషించలేము ({detail}).",
    },
}


def explain(report: ScanReport, locale: str = "Telugu") -> str:
    """Deterministic templated prose: one sentence per violation plus a
    summary line; stable for identical reports."""
    t = _TEMPLATES[locale]
    violations = report.violations
    if not violations:
        return t["ok"].format(meter=report.meter)
    rows = [t[v.kind].format(line=v.line_index + 1, pos=v.position, detail=v.detail)
            for v in sorted(violations, key=lambda v: (v.line_index, v.position))]
    rows.append(t["summary"].format(n=len(violations), meter=report.meter))
    return "\n".join(rows)
