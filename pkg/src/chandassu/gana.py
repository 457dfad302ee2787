"""Metrical feet (ganas) and weight-string parsing.

Three parsing regimes:
  - vrtta meters: one fixed weight template per line (compile_vrtta_template)
  - upajati meters: a sequence of gana-class slots (surya/indra), parsed by
    backtracking over class members (parse_classes)
  - kanda: 4-matra units with positional constraints (parse_kanda_line)
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

from .errors import TableLoadError, UnknownGana

_DATA_DIR = Path(__file__).parent / "data"

SURYA = "surya"
INDRA = "indra"
KANDA = "kanda"


@dataclass(frozen=True)
class GanaTable:
    patterns: dict[str, str]            # gana name -> laghu/guru pattern
    class_members: dict[str, tuple[str, ...]]   # class -> names, in trial order

    def pattern(self, name: str) -> str:
        try:
            return self.patterns[name]
        except KeyError:
            raise UnknownGana(name) from None

    def members(self, cls: str) -> tuple[str, ...]:
        try:
            return self.class_members[cls]
        except KeyError:
            raise UnknownGana(f"unknown gana class: {cls}") from None


def load_gana_table(path=None) -> GanaTable:
    path = Path(path) if path else _DATA_DIR / "ganas.json"
    try:
        raw = json.loads(path.read_text(encoding="utf-8"))
        patterns = {g["name"]: g["pattern"] for g in raw["ganas"]}
        members = {cls: tuple(names) for cls, names in raw["class_order"].items()}
    except (OSError, ValueError, KeyError, TypeError) as exc:
        raise TableLoadError(f"malformed gana table {path}: {exc}") from exc
    for cls, names in members.items():
        for name in names:
            if name not in patterns:
                raise TableLoadError(f"class {cls} references unknown gana {name}")
    for name, pat in patterns.items():
        if not pat or set(pat) - {"|", "U"}:
            raise TableLoadError(f"gana {name} has invalid pattern {pat!r}")
    return GanaTable(patterns, members)


_DEFAULT_TABLE = None


def default_gana_table() -> GanaTable:
    global _DEFAULT_TABLE
    if _DEFAULT_TABLE is None:
        _DEFAULT_TABLE = load_gana_table()
    return _DEFAULT_TABLE


def matra_count(pattern: str) -> int:
    return sum(2 if m == "U" else 1 for m in pattern)


@dataclass(frozen=True)
class GanaParse:
    ganas: tuple[tuple[str, int], ...]  # (gana name, start index in weight string)
    consumed: int

    def names(self) -> tuple[str, ...]:
        return tuple(name for name, _ in self.ganas)


def compile_vrtta_template(gana_names: Sequence[str], table: GanaTable | None = None) -> str:
    """Concatenate the named ganas' patterns into one line template."""
    table = table or default_gana_table()
    return "".join(table.pattern(name) for name in gana_names)


def parse_classes(weights: str, template: Sequence[str],
                  table: GanaTable | None = None) -> set[GanaParse]:
    """All left-to-right tilings of `weights` matching the class sequence.

    Class members are tried in the table's fixed order, and only tilings that
    consume the whole string are kept. Empty set signals failure.
    """
    table = table or default_gana_table()
    results: set[GanaParse] = set()

    def walk(pos: int, slot: int, acc: tuple[tuple[str, int], ...]):
        if slot == len(template):
            if pos == len(weights):
                results.add(GanaParse(acc, pos))
            return
        for name in table.members(template[slot]):
            pat = table.pattern(name)
            if weights.startswith(pat, pos):
                walk(pos + len(pat), slot + 1, acc + ((name, pos),))

    walk(0, 0, ())
    return results


@dataclass(frozen=True)
class KandaPositionRules:
    """Positional constraints counted across the half-verse.

    `start_index` is the 1-based index of the line's first gana within its
    half-verse (line 1 of a half starts at 1, line 2 continues the count).
    """
    start_index: int = 1
    forbid_ja_at_odd: bool = True
    sixth_is_ja_or_nala: bool = True


def parse_kanda_line(weights: str, gana_count: int,
                     position_rules: KandaPositionRules | None = None,
                     table: GanaTable | None = None) -> set[GanaParse]:
    """Tile `weights` into `gana_count` 4-matra kanda ganas.

    Applies the half-verse position rules: no Ja at odd gana positions, and
    the sixth gana must be Ja or Nala.
    """
    table = table or default_gana_table()
    rules = position_rules or KandaPositionRules()
    members = table.members(KANDA)
    results: set[GanaParse] = set()

    def allowed(name: str, slot: int) -> bool:
        pos = rules.start_index + slot  # 1-based within half-verse
        if rules.forbid_ja_at_odd and pos % 2 == 1 and name == "Ja":
            return False
        if rules.sixth_is_ja_or_nala and pos == 6 and name not in ("Ja", "Nala"):
            return False
        return True

    def walk(pos: int, slot: int, acc: tuple[tuple[str, int], ...]):
        if slot == gana_count:
            if pos == len(weights):
                results.add(GanaParse(acc, pos))
            return
        for name in members:
            pat = table.pattern(name)
            if allowed(name, slot) and weights.startswith(pat, pos):
                walk(pos + len(pat), slot + 1, acc + ((name, pos),))

    walk(0, 0, ())
    return results
