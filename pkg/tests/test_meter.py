import json
from pathlib import Path

import pytest

from chandassu.errors import UnknownMeter
from chandassu.meter import (
    GANA_MISMATCH, PRASA_FAILURE, SYLLABLE_COUNT, UNPARSEABLE, YATI_FAILURE,
    builtin_meters, check_poem, identify, lookup,
)
from chandassu.prosody import weight_string

CORPUS_PATH = Path(__file__).parent.parent / "src" / "chandassu" / "data" / "golden_corpus.jsonl"

METERS = {m.name: m for m in builtin_meters()}

VRTTA_CONSTANTS = {
    # name -> (ganas, syllables per line, yati akshara)
    "చంపకమాల": (("Na", "Ja", "Bha", "Ja", "Ja", "Ja", "Ra"), 21, 11),
    "ఉత్పలమాల": (("Bha", "Ra", "Na", "Bha", "Bha", "Ra", "Va"), 20, 10),
    "మత్తేభము": (("Sa", "Bha", "Ra", "Na", "Ma", "Ya", "Va"), 20, 14),
    "శార్దూలము": (("Ma", "Sa", "Ja", "Sa", "Ta", "Ta", "Ga"), 19, 13),
}


@pytest.mark.parametrize("name", sorted(VRTTA_CONSTANTS))
def test_vrtta_constants(name):
    ganas, syllables, yati = VRTTA_CONSTANTS[name]
    spec = METERS[name]
    assert spec.ganas == ganas
    assert spec.syllables_per_line == syllables
    assert len(spec.template) == syllables
    assert spec.yati_akshara == yati
    assert spec.prasa_required


def test_vrtta_meters_require_four_lines():
    for name in VRTTA_CONSTANTS:
        assert METERS[name].line_count == 4


def test_upajati_structure():
    atav = METERS["ఆటవెలది"]
    assert atav.line_classes[0] == ("surya", "surya", "surya", "indra", "indra")
    assert atav.line_classes[1] == ("surya",) * 5
    assert not atav.prasa_required and atav.prasa_yati_allowed
    teta = METERS["తేటగీతి"]
    assert teta.line_classes[0] == ("surya", "indra", "indra", "surya", "surya")
    sisa = METERS["సీసము"]
    assert sisa.line_classes[0] == ("indra",) * 6 + ("surya", "surya")


def test_kanda_structure():
    kanda = METERS["కందము"]
    assert kanda.gana_counts == (3, 5, 3, 5)
    assert kanda.even_final_guru
    assert kanda.first_akshara_weight_agreement
    assert kanda.prasa_required


def test_lookup_by_alias():
    assert lookup("Utpalamala").name == "ఉత్పలమాల"
    assert lookup("కంద").name == "కందము"
    with pytest.raises(UnknownMeter):
        lookup("hexameter")


def load_corpus():
    return [json.loads(l) for l in CORPUS_PATH.read_text(encoding="utf-8").splitlines() if l.strip()]


def test_corpus_shape():
    records = load_corpus()
    assert len(records) >= 16
    per_meter = {}
    for r in records:
        per_meter.setdefault(r["meter"], []).append(r)
    assert set(per_meter) == set(METERS)
    assert all(len(v) >= 2 for v in per_meter.values())


@pytest.mark.parametrize("record", load_corpus(), ids=lambda r: r["id"])
def test_corpus_verse_identified_uniquely(record):
    matches = identify(record["lines"])
    assert matches[0].spec.name == record["meter"]
    assert matches[0].score == 1.0
    assert all(m.score < 1.0 for m in matches[1:])


def test_check_poem_flags_syllable_count():
    record = next(r for r in load_corpus() if r["meter"] == "ఉత్పలమాల")
    lines = list(record["lines"])
    aks = weight_string(lines[0]).aksharas
    lines[0] = lines[0].replace(aks[5].surface, "", 1)
    report = check_poem(lines, METERS["ఉత్పలమాల"])
    assert not report.metrical
    kinds = {v.kind for v in report.violations}
    assert kinds & {SYLLABLE_COUNT, GANA_MISMATCH, UNPARSEABLE}


def test_check_poem_flags_broken_prasa():
    record = next(r for r in load_corpus() if r["meter"] == "చంపకమాల")
    lines = list(record["lines"])
    # swap line 2's second akshara for a different consonant
    aks = weight_string(lines[1]).aksharas
    second = aks[1].surface
    replacement = "ఘ" + second[1:] if not second.startswith("ఘ") else "చ" + second[1:]
    lines[1] = lines[1].replace(second, replacement, 1)
    report = check_poem(lines, METERS["చంపకమాల"])
    assert any(v.kind == PRASA_FAILURE for v in report.violations)


def test_partial_poem_scores_below_one():
    record = load_corpus()[0]
    spec = METERS[record["meter"]]
    report = check_poem(record["lines"][:2], spec)
    assert 0.0 < report.score < 1.0
    assert not report.metrical


def test_score_one_iff_no_violations():
    for record in load_corpus():
        report = check_poem(record["lines"], METERS[record["meter"]])
        assert (report.score == 1.0) == (not report.violations)
        assert report.metrical


def test_identify_is_sorted_and_stable():
    record = load_corpus()[0]
    matches = identify(record["lines"])
    scores = [m.score for m in matches]
    assert scores == sorted(scores, reverse=True)
    assert len(matches) == len(METERS)


def test_scan_report_json_is_stable():
    record = load_corpus()[0]
    report = check_poem(record["lines"], METERS[record["meter"]])
    a = json.dumps(report.to_json(), ensure_ascii=False, sort_keys=True)
    b = json.dumps(check_poem(record["lines"], METERS[record["meter"]]).to_json(),
                   ensure_ascii=False, sort_keys=True)
    assert a == b
    obj = report.to_json()
    assert set(obj) == {"meter", "score", "metrical", "lines", "poem_violations", "prasa"}
