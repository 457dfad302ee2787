"""Yati-maitri, prasa, and the prasa-yati fallback.

Compatibility is entirely table-driven: the shipped table uses standard
varga groupings for consonants and short/long families for vowels, and can
be replaced by a corrected table without code changes.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence

from .errors import ShortLine, TableLoadError
from .script import Akshara, CONSONANTS, Vowel

_DATA_DIR = Path(__file__).parent / "data"


@dataclass(frozen=True)
class YatiClassTable:
    vowel_class: dict[Vowel, int]
    consonant_class: dict[str, int]


def load_yati_table(path=None) -> YatiClassTable:
    """Load and validate a compatibility table (coverage + disjointness)."""
    path = Path(path) if path else _DATA_DIR / "yati_classes.json"
    try:
        raw = json.loads(path.read_text(encoding="utf-8"))
        vowel_groups = raw["vowel_classes"]
        cons_groups = raw["consonant_classes"]
    except (OSError, ValueError, KeyError, TypeError) as exc:
        raise TableLoadError(f"malformed yati table {path}: {exc}") from exc

    vowel_class: dict[Vowel, int] = {}
    for gi, group in enumerate(vowel_groups):
        for name in group:
            try:
                v = Vowel[name]
            except KeyError:
                raise TableLoadError(f"unknown vowel {name!r} in yati table") from None
            if v in vowel_class:
                raise TableLoadError(f"vowel {name} appears in two classes")
            vowel_class[v] = gi
    missing = set(Vowel) - set(vowel_class)
    if missing:
        raise TableLoadError(f"vowel classes do not cover {sorted(v.name for v in missing)}")

    consonant_class: dict[str, int] = {}
    for gi, group in enumerate(cons_groups):
        for ch in group:
            if ch in consonant_class:
                raise TableLoadError(f"consonant {ch} appears in two classes")
            consonant_class[ch] = gi
    missing_c = CONSONANTS - set(consonant_class)
    if missing_c:
        raise TableLoadError(f"consonant classes do not cover {sorted(missing_c)}")
    return YatiClassTable(vowel_class, consonant_class)


_DEFAULT_TABLE = None


def default_yati_table() -> YatiClassTable:
    global _DEFAULT_TABLE
    if _DEFAULT_TABLE is None:
        _DEFAULT_TABLE = load_yati_table()
    return _DEFAULT_TABLE


def yati_compatible(a: Akshara, b: Akshara, table: YatiClassTable | None = None) -> bool:
    """Same consonant class for the leading consonants (both bare vowels also
    match) and same vowel class. Symmetric and reflexive."""
    table = table or default_yati_table()
    ca = a.base_consonants[0] if a.base_consonants else None
    cb = b.base_consonants[0] if b.base_consonants else None
    if (ca is None) != (cb is None):
        return False
    if ca is not None and table.consonant_class.get(ca) != table.consonant_class.get(cb):
        return False
    return table.vowel_class[a.vowel] == table.vowel_class[b.vowel]


def check_yati(line: Sequence[Akshara], yati_index: int,
               table: YatiClassTable | None = None) -> tuple[bool, str]:
    """Compare the line-initial akshara against the 1-based yati position."""
    if not line:
        return False, "empty line"
    if yati_index < 1 or yati_index > len(line):
        return False, f"yati position {yati_index} absent (line has {len(line)} aksharas)"
    if yati_index == 1:
        return True, "yati at line start"
    ok = yati_compatible(line[0], line[yati_index - 1], table)
    detail = (f"{line[0].surface} ~ {line[yati_index - 1].surface} at akshara {yati_index}")
    return ok, detail


@dataclass(frozen=True)
class PrasaResult:
    consonant_keys: tuple[tuple[str, ...], ...]   # akshara-2 cluster per line
    passed: bool
    failing_lines: tuple[int, ...]                # 0-based line indices


def check_prasa(lines: Sequence[Sequence[Akshara]], strict: bool = True) -> PrasaResult:
    """Prasa: identical second-akshara consonant cluster across all lines.

    strict=False compares only the first consonant of the cluster.
    """
    keys = []
    for i, line in enumerate(lines):
        if len(line) < 2:
            raise ShortLine(f"line {i + 1} has fewer than 2 aksharas")
        cluster = line[1].base_consonants
        keys.append(cluster if strict else cluster[:1])
    ref = keys[0]
    failing = tuple(i for i, k in enumerate(keys) if k != ref)
    return PrasaResult(tuple(keys), not failing, failing)


def check_prasa_yati(line: Sequence[Akshara], yati_index: int,
                     prasa_key: Optional[tuple[str, ...]] = None,
                     table: YatiClassTable | None = None) -> tuple[bool, str]:
    """Fallback when yati-maitri fails: the akshara right after the yati
    position must carry the line's own prasa cluster (its second akshara)."""
    if prasa_key is None:
        if len(line) < 2:
            return False, "line too short for prasa key"
        prasa_key = line[1].base_consonants
    if yati_index + 1 > len(line):
        return False, f"position {yati_index + 1} absent"
    after = line[yati_index]  # 1-based index + 1 -> 0-based yati_index
    ok = after.base_consonants == tuple(prasa_key)
    return ok, f"prasa-yati {after.surface} vs cluster {''.join(prasa_key)}"
