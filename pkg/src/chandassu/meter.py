"""Meter specifications, per-line constraint checking, and identification."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Sequence

from .errors import MalformedCluster, ShortLine, TableLoadError, UnknownMeter
from .gana import (
    GanaParse, GanaTable, KandaPositionRules, compile_vrtta_template,
    default_gana_table, parse_classes, parse_kanda_line,
)
from .prosody import GURU, ProsodyOptions, WeightString, weight_string
from .yatiprasa import (
    PrasaResult, YatiClassTable, check_prasa, check_prasa_yati, check_yati,
    default_yati_table,
)

_DATA_DIR = Path(__file__).parent / "data"

LINE_COUNT = 4

# Violation kinds
SYLLABLE_COUNT = "SyllableCount"
GANA_MISMATCH = "GanaMismatch"
YATI_FAILURE = "YatiFailure"
PRASA_FAILURE = "PrasaFailure"
KANDA_POSITION_RULE = "KandaPositionRule"
FIRST_AKSHARA_WEIGHT_MISMATCH = "FirstAksharaWeightMismatch"
UNPARSEABLE = "Unparseable"


@dataclass(frozen=True)
class Violation:
    line_index: int          # 0-based; -1 for poem-level
    kind: str
    position: int            # akshara or gana index (1-based), 0 if n/a
    detail: str

    def to_json(self) -> dict:
        return {"line": self.line_index, "kind": self.kind,
                "position": self.position, "detail": self.detail}


@dataclass(frozen=True)
class MeterSpec:
    name: str
    aliases: tuple[str, ...]
    kind: str                                    # vrtta | upajati | kanda
    # vrtta
    ganas: tuple[str, ...] = ()
    template: str = ""
    syllables_per_line: int = 0
    yati_akshara: int = 0
    # upajati / kanda
    line_classes: tuple[tuple[str, ...], ...] = ()
    yati_anchors: tuple[tuple[tuple[int, int], ...], ...] = ()  # (anchor gana, yati gana)
    gana_counts: tuple[int, ...] = ()
    half_start_indices: tuple[int, ...] = ()
    even_final_guru: bool = False
    first_akshara_weight_agreement: bool = False
    # poem-level
    prasa_required: bool = False
    prasa_yati_allowed: bool = False
    line_count: int = LINE_COUNT

    def matches_name(self, name: str) -> bool:
        name = name.strip()
        return name == self.name or name in self.aliases


def _load_spec(entry: dict, table: GanaTable) -> MeterSpec:
    kind = entry["kind"]
    common = dict(
        name=entry["name"],
        aliases=tuple(entry.get("aliases", ())),
        kind=kind,
        prasa_required=entry.get("prasa", False),
        prasa_yati_allowed=entry.get("prasa_yati", False),
    )
    if kind == "vrtta":
        ganas = tuple(entry["ganas"])
        template = compile_vrtta_template(ganas, table)
        return MeterSpec(**common, ganas=ganas, template=template,
                         syllables_per_line=len(template),
                         yati_akshara=entry["yati_akshara"])
    if kind == "upajati":
        return MeterSpec(
            **common,
            line_classes=tuple(tuple(row) for row in entry["line_classes"]),
            yati_anchors=tuple(tuple(tuple(p) for p in row)
                               for row in entry["yati_anchors"]),
        )
    if kind == "kanda":
        return MeterSpec(
            **common,
            gana_counts=tuple(entry["gana_counts"]),
            half_start_indices=tuple(entry["half_start_indices"]),
            yati_anchors=tuple(tuple(tuple(p) for p in row)
                               for row in entry["yati_anchors"]),
            even_final_guru=entry.get("even_final_guru", False),
            first_akshara_weight_agreement=entry.get("first_akshara_weight_agreement", False),
        )
    raise TableLoadError(f"unknown meter kind {kind!r}")


def builtin_meters(path=None, gana_table: GanaTable | None = None) -> list[MeterSpec]:
    path = Path(path) if path else _DATA_DIR / "meters.json"
    table = gana_table or default_gana_table()
    try:
        raw = json.loads(path.read_text(encoding="utf-8"))
        specs = [_load_spec(e, table) for e in raw["meters"]]
    except (OSError, ValueError, KeyError, TypeError) as exc:
        raise TableLoadError(f"malformed meter table {path}: {exc}") from exc
    return specs


def lookup(name: str, candidates: Sequence[MeterSpec] | None = None) -> MeterSpec:
    for spec in candidates if candidates is not None else builtin_meters():
        if spec.matches_name(name):
            return spec
    raise UnknownMeter(name)


@dataclass
class LineReport:
    text: str
    weights: Optional[WeightString]
    parses: set[GanaParse]
    violations: list[Violation]
    constraints: list[bool]          # satisfied flags, for scoring
    chosen_parse: Optional[GanaParse] = None

    def to_json(self) -> dict:
        return {
            "text": self.text,
            "weights": self.weights.pattern if self.weights else None,
            "aksharas": [a.surface for a in self.weights.aksharas] if self.weights else [],
            "parses": sorted(" ".join(p.names()) for p in self.parses),
            "violations": [v.to_json() for v in self.violations],
        }


@dataclass
class ScanReport:
    meter: str
    lines: list[LineReport]
    poem_violations: list[Violation]
    prasa: Optional[PrasaResult]
    score: float
    metrical: bool

    @property
    def violations(self) -> list[Violation]:
        out = [v for rep in self.lines for v in rep.violations]
        out.extend(self.poem_violations)
        return out

    def to_json(self) -> dict:
        return {
            "meter": self.meter,
            "score": self.score,
            "metrical": self.metrical,
            "lines": [rep.to_json() for rep in self.lines],
            "poem_violations": [v.to_json() for v in self.poem_violations],
            "prasa": (None if self.prasa is None else {
                "pass": self.prasa.passed,
                "keys": ["".join(k) for k in self.prasa.consonant_keys],
                "failing_lines": list(self.prasa.failing_lines),
            }),
        }

    def to_text(self) -> str:
        rows = [f"meter: {self.meter}  score: {self.score:.2f}  "
                f"{'metrical' if self.metrical else 'not metrical'}"]
        for i, rep in enumerate(self.lines):
            if rep.weights is None:
                rows.append(f"line {i + 1}: <unparseable>")
                continue
            rows.append(f"line {i + 1}: " + " ".join(
                f"{a.surface}:{m}" for a, m in zip(rep.weights.aksharas, rep.weights.marks)))
        for v in self.violations:
            where = f"line {v.line_index + 1}" if v.line_index >= 0 else "poem"
            rows.append(f"  ! {where} {v.kind} @{v.position}: {v.detail}")
        return "\n".join(rows)


def _yati_for_parse(ws: WeightString, parse: GanaParse, anchors,
                    spec: MeterSpec, yati_table) -> tuple[bool, str]:
    """Check every (anchor gana, yati gana) pair under one gana segmentation."""
    starts = {i + 1: pos for i, (_, pos) in enumerate(parse.ganas)}
    for anchor_g, yati_g in anchors:
        if anchor_g not in starts or yati_g not in starts:
            return False, f"gana {yati_g} absent"
        a_idx = starts[anchor_g]       # 0-based akshara index
        y_idx = starts[yati_g]
        sub = ws.aksharas[a_idx:]
        ok, detail = check_yati(sub, y_idx - a_idx + 1, yati_table)
        if not ok and spec.prasa_yati_allowed:
            ok, detail = check_prasa_yati(list(ws.aksharas), y_idx + 1, None, yati_table)
        if not ok:
            return False, detail
    return True, "yati satisfied"


def check_line(line: str, spec: MeterSpec, line_index: int,
               opts: ProsodyOptions = ProsodyOptions(),
               yati_table: YatiClassTable | None = None) -> LineReport:
    """Scan one line against the spec. Constraint flags mirror violations:
    every unsatisfied constraint contributes at least one violation."""
    yati_table = yati_table or default_yati_table()
    try:
        ws = weight_string(line, opts)
    except MalformedCluster as exc:
        n = 3 if spec.kind == "vrtta" else 2
        return LineReport(line, None, set(),
                          [Violation(line_index, UNPARSEABLE, 0, str(exc))],
                          [False] * n)
    if not ws.marks:
        n = 3 if spec.kind == "vrtta" else 2
        return LineReport(line, ws, set(),
                          [Violation(line_index, UNPARSEABLE, 0, "empty line")],
                          [False] * n)
    if spec.kind == "vrtta":
        return _check_vrtta_line(line, ws, spec, line_index, yati_table)
    if spec.kind == "kanda":
        return _check_kanda_line(line, ws, spec, line_index, yati_table)
    return _check_upajati_line(line, ws, spec, line_index, yati_table)


def _check_vrtta_line(line, ws, spec, line_index, yati_table) -> LineReport:
    violations = []
    count_ok = len(ws) == spec.syllables_per_line
    if not count_ok:
        violations.append(Violation(
            line_index, SYLLABLE_COUNT, len(ws),
            f"{len(ws)} ≠ {spec.syllables_per_line}"))
    mismatches = [i for i, (got, want) in enumerate(zip(ws.pattern, spec.template))
                  if got != want]
    template_ok = count_ok and not mismatches
    if mismatches or (not count_ok):
        pos = (mismatches[0] + 1) if mismatches else min(len(ws), spec.syllables_per_line) + 1
        if mismatches:
            violations.append(Violation(
                line_index, GANA_MISMATCH, pos,
                f"{len(mismatches)} weight mismatch(es) vs template, first at akshara {pos}"))
        template_ok = False

    yati_ok, detail = check_yati(list(ws.aksharas), spec.yati_akshara, yati_table)
    if not yati_ok and spec.prasa_yati_allowed:
        yati_ok, detail = check_prasa_yati(list(ws.aksharas), spec.yati_akshara, None, yati_table)
    if not yati_ok:
        violations.append(Violation(line_index, YATI_FAILURE, spec.yati_akshara, detail))
    return LineReport(line, ws, set(), violations, [count_ok, template_ok, yati_ok])


def _check_upajati_line(line, ws, spec, line_index, yati_table) -> LineReport:
    violations = []
    classes = spec.line_classes[line_index]
    parses = parse_classes(ws.pattern, classes)
    parse_ok = bool(parses)
    if not parse_ok:
        violations.append(Violation(
            line_index, GANA_MISMATCH, 0,
            f"no gana parse of {ws.pattern} as [{' '.join(classes)}]"))
    anchors = spec.yati_anchors[line_index]
    yati_ok = not anchors
    chosen = None
    detail = "no parse to anchor yati"
    for parse in sorted(parses, key=lambda p: p.names()):
        ok, detail = _yati_for_parse(ws, parse, anchors, spec, yati_table)
        if ok:
            yati_ok, chosen = True, parse
            break
    if parses and not yati_ok:
        violations.append(Violation(line_index, YATI_FAILURE, 0, detail))
    elif not parses:
        yati_ok = False
    return LineReport(line, ws, parses, violations, [parse_ok, yati_ok], chosen)


def _check_kanda_line(line, ws, spec, line_index, yati_table) -> LineReport:
    violations = []
    rules = KandaPositionRules(start_index=spec.half_start_indices[line_index])
    count = spec.gana_counts[line_index]
    parses = parse_kanda_line(ws.pattern, count, rules)
    parse_ok = bool(parses)
    if not parse_ok:
        unconstrained = parse_kanda_line(
            ws.pattern, count,
            KandaPositionRules(forbid_ja_at_odd=False, sixth_is_ja_or_nala=False))
        kind = KANDA_POSITION_RULE if unconstrained else GANA_MISMATCH
        violations.append(Violation(
            line_index, kind, 0,
            f"no valid {count}-gana tiling of {ws.pattern}"))
    if spec.even_final_guru and line_index % 2 == 1 and ws.marks[-1] != GURU:
        parse_ok = False
        violations.append(Violation(
            line_index, KANDA_POSITION_RULE, len(ws),
            "even line must end in guru"))
    anchors = spec.yati_anchors[line_index]
    yati_ok = not anchors
    chosen = None
    detail = "no parse to anchor yati"
    for parse in sorted(parses, key=lambda p: p.names()):
        ok, detail = _yati_for_parse(ws, parse, anchors, spec, yati_table)
        if ok:
            yati_ok, chosen = True, parse
            break
    if anchors and parses and not yati_ok:
        violations.append(Violation(line_index, YATI_FAILURE, 0, detail))
    elif anchors and not parses:
        yati_ok = False
    return LineReport(line, ws, parses, violations, [parse_ok, yati_ok], chosen)


def check_poem(lines: Sequence[str], spec: MeterSpec,
               opts: ProsodyOptions = ProsodyOptions(),
               yati_table: YatiClassTable | None = None) -> ScanReport:
    """Scan a whole poem; partial poems score their missing lines as failed."""
    yati_table = yati_table or default_yati_table()
    reports = []
    for i in range(spec.line_count):
        if i < len(lines):
            reports.append(check_line(lines[i], spec, i, opts, yati_table))
        else:
            n = 3 if spec.kind == "vrtta" else 2
            reports.append(LineReport(
                "", None, set(),
                [Violation(i, UNPARSEABLE, 0, "line missing")], [False] * n))

    poem_violations = []
    constraints = [flag for rep in reports for flag in rep.constraints]

    prasa_result = None
    if spec.prasa_required:
        akshara_lines = [list(rep.weights.aksharas) if rep.weights else []
                         for rep in reports]
        try:
            prasa_result = check_prasa(akshara_lines)
            ok = prasa_result.passed
            if not ok:
                poem_violations.append(Violation(
                    -1, PRASA_FAILURE, 2,
                    "second-akshara clusters differ on lines "
                    + ", ".join(str(i + 1) for i in prasa_result.failing_lines)))
        except ShortLine as exc:
            ok = False
            poem_violations.append(Violation(-1, PRASA_FAILURE, 2, str(exc)))
        constraints.append(ok)

    if spec.first_akshara_weight_agreement:
        firsts = [rep.weights.marks[0] if rep.weights and rep.weights.marks else None
                  for rep in reports]
        ok = all(f == firsts[0] and f is not None for f in firsts)
        if not ok:
            bad = [i + 1 for i, f in enumerate(firsts) if f != firsts[0] or f is None]
            poem_violations.append(Violation(
                -1, FIRST_AKSHARA_WEIGHT_MISMATCH, 1,
                f"first-akshara weights disagree on lines {bad}"))
        constraints.append(ok)

    score = sum(constraints) / len(constraints) if constraints else 0.0
    metrical = all(constraints)
    return ScanReport(spec.name, reports, poem_violations, prasa_result, score, metrical)


@dataclass
class MeterMatch:
    spec: MeterSpec
    score: float
    report: ScanReport

    @property
    def exact(self) -> bool:
        return self.score == 1.0


def identify(lines: Sequence[str], candidates: Sequence[MeterSpec] | None = None,
             opts: ProsodyOptions = ProsodyOptions(),
             yati_table: YatiClassTable | None = None) -> list[MeterMatch]:
    """Rank candidate meters by fraction of satisfied constraints.

    Ties keep meter-table order (sort is stable over the candidate list)."""
    if candidates is None:
        candidates = builtin_meters()
    matches = [MeterMatch(spec, 0.0, None) for spec in candidates]
    for m in matches:
        m.report = check_poem(lines, m.spec, opts, yati_table)
        m.score = m.report.score
    matches.sort(key=lambda m: -m.score)
    return matches
