"""Construct the golden verse corpus shipped in chandassu/data/golden_corpus.jsonl.

Each verse is assembled syllable-by-syllable to realize a concrete gana
filling of its meter, with yati-maitri pairs and prasa consonants planted by
construction, then verified against the engine before being written out:
  - identify() ranks the target meter first with score 1.0, uniquely;
  - deleting any single akshara of line 1 drops the target's score below 1.0.
"""

import json
import sys
from pathlib import Path

from chandassu.gana import compile_vrtta_template, default_gana_table
from chandassu.meter import builtin_meters, check_poem, identify, lookup
from chandassu.prosody import weight_string

LAGHU_VOWEL = {"a": "", "i": "ి", "u": "ు", "e": "ె", "o": "ొ"}
GURU_VOWEL = {"aa": "ా", "ii": "ీ", "uu": "ూ", "ee": "ే", "oo": "ో"}
# vowel compatibility families (matching the shipped yati table)
FAMILY = {"a": ["", "ా"], "i": ["ి", "ీ", "ె", "ే"], "u": ["ు", "ూ", "ొ", "ో"]}

FILLERS = ["త", "న", "మ", "ర", "ల", "స", "ద", "ప", "గ", "వ", "క", "చ", "బ", "జ", "డ"]
LAGHU_SIGNS = ["", "ి", "ు", "ె", "ొ"]
GURU_SIGNS = ["ా", "ీ", "ూ", "ే", "ో"]


def build_line(pattern, yati_pairs, prasa_consonant, anchor_consonant, seed):
    """One line realizing `pattern`, with (anchor,yati) akshara pairs sharing
    a consonant class and vowel family, and the prasa consonant at akshara 2."""
    n = len(pattern)
    cons = [FILLERS[(seed + i * 3) % len(FILLERS)] for i in range(n)]
    signs = []
    for i, mark in enumerate(pattern):
        pool = GURU_SIGNS if mark == "U" else LAGHU_SIGNS
        signs.append(pool[(seed + i) % len(pool)])
    for a, y in yati_pairs:
        cons[a - 1] = anchor_consonant
        cons[y - 1] = anchor_consonant
        signs[a - 1] = "ా" if pattern[a - 1] == "U" else ""
        signs[y - 1] = "ా" if pattern[y - 1] == "U" else ""
    if prasa_consonant:
        cons[1] = prasa_consonant
        signs[1] = "ా" if pattern[1] == "U" else ""
    syllables = [c + s for c, s in zip(cons, signs)]
    # word breaks every 4 aksharas, purely cosmetic (no clusters anywhere)
    words = ["".join(syllables[i:i + 4]) for i in range(0, n, 4)]
    return " ".join(words)


def gana_starts(names, table):
    starts, pos = [], 0
    for name in names:
        starts.append(pos + 1)
        pos += len(table.pattern(name))
    return starts, pos


def make_vrtta(meter_name, prasa_consonant, anchor_consonant, seed):
    spec = lookup(meter_name)
    pattern = spec.template
    pairs = [(1, spec.yati_akshara)]
    return [build_line(pattern, pairs, prasa_consonant, anchor_consonant, seed + k)
            for k in range(4)]


def make_from_parses(line_parses, yati_gana_pairs, prasa_consonant,
                     anchor_consonant, seed):
    table = default_gana_table()
    lines = []
    for k, names in enumerate(line_parses):
        starts, _ = gana_starts(names, table)
        pattern = "".join(table.pattern(n) for n in names)
        pairs = [(starts[a - 1], starts[y - 1]) for a, y in yati_gana_pairs[k]]
        lines.append(build_line(pattern, pairs, prasa_consonant,
                                anchor_consonant, seed + k))
    return lines


def verify(poem_id, lines, meter_name):
    matches = identify(lines)
    top = matches[0]
    perfect = [m.spec.name for m in matches if m.score == 1.0]
    assert top.spec.name == meter_name and top.score == 1.0, (
        poem_id, top.spec.name, top.score,
        [(v.kind, v.line_index, v.detail) for v in
         check_poem(lines, lookup(meter_name)).violations])
    assert perfect == [meter_name], (poem_id, "also perfect:", perfect)
    # every single-akshara deletion in line 1 must break the meter
    spec = lookup(meter_name)
    ws = weight_string(lines[0])
    for k in range(len(ws.aksharas)):
        kept = [a.surface for j, a in enumerate(ws.aksharas) if j != k]
        mutated = ["".join(kept)] + list(lines[1:])
        rep = check_poem(mutated, spec)
        assert rep.score < 1.0, (poem_id, "deletion at", k, "still scores 1.0")


def main():
    table = default_gana_table()
    poems = []

    topics = iter([
        ("వాన", "వాన కురిసే కాలము గురించి"),
        ("చదువు", "చదువు విలువ గురించి"),
        ("ధర్మము", "ధర్మము నడవడి గురించి"),
        ("స్నేహము", "స్నేహము బలము గురించి"),
        ("సత్యము", "సత్యము పలుకుట గురించి"),
        ("కాలము", "కాలము వృథా చేయరాదని"),
        ("ప్రకృతి", "ప్రకృతి అందము గురించి"),
        ("గురువు", "గురువు మహిమ గురించి"),
        ("తల్లి", "తల్లి ప్రేమ గురించి"),
        ("భాష", "తెలుగు భాష తీయదనము గురించి"),
        ("నీరు", "నీటి విలువ గురించి"),
        ("వెలుగు", "వెలుగు చీకటి గురించి"),
        ("పువ్వులు", "పూల అందము గురించి"),
        ("పక్షులు", "పక్షుల పాట గురించి"),
        ("కడలి", "కడలి లోతు గురించి"),
        ("నక్షత్రాలు", "ఆకాశపు తారల గురించి"),
    ])

    def add(pid, meter_name, lines):
        topic, gloss = next(topics)
        verify(pid, lines, meter_name)
        poems.append({
            "id": pid,
            "title": f"{topic} పద్యము",
            "lines": lines,
            "meter": meter_name,
            "summary": f"{gloss} చెప్పే {meter_name} పద్యము. {topic} ముఖ్యాంశము.",
            "source": "constructed exemplar verse",
        })

    # vrtta meters: template-driven
    add("champakamala-1", "చంపకమాల", make_vrtta("చంపకమాల", "మ", "క", 0))
    add("champakamala-2", "చంపకమాల", make_vrtta("చంపకమాల", "ల", "త", 5))
    add("utpalamala-1", "ఉత్పలమాల", make_vrtta("ఉత్పలమాల", "న", "ప", 1))
    add("utpalamala-2", "ఉత్పలమాల", make_vrtta("ఉత్పలమాల", "ర", "స", 6))
    add("mattebham-1", "మత్తేభము", make_vrtta("మత్తేభము", "వ", "చ", 2))
    add("mattebham-2", "మత్తేభము", make_vrtta("మత్తేభము", "గ", "మ", 7))
    add("sardulam-1", "శార్దూలము", make_vrtta("శార్దూలము", "ద", "ట", 3))
    add("sardulam-2", "శార్దూలము", make_vrtta("శార్దూలము", "బ", "న", 8))

    # kanda: 3+5 ganas per half-verse, sixth gana Ja/Nala, even line ends guru
    kanda_v1 = [["GaGa", "GaGa", "GaGa"],
                ["GaGa", "GaGa", "Nala", "GaGa", "GaGa"],
                ["GaGa", "GaGa", "GaGa"],
                ["GaGa", "GaGa", "Nala", "GaGa", "GaGa"]]
    kanda_yati = [[], [(1, 4)], [], [(1, 4)]]
    add("kanda-1", "కందము",
        make_from_parses(kanda_v1, kanda_yati, "మ", "క", 10))
    kanda_v2 = [["Bha", "GaGa", "Sa"],
                ["GaGa", "Sa", "Ja", "GaGa", "GaGa"],
                ["Bha", "GaGa", "Sa"],
                ["GaGa", "Sa", "Ja", "GaGa", "GaGa"]]
    add("kanda-2", "కందము",
        make_from_parses(kanda_v2, kanda_yati, "స", "త", 11))

    # ataveladi: 3 surya + 2 indra / 5 surya
    atav_v1 = [["Ha", "Ha", "Ha", "Ra", "Ra"],
               ["Ha", "Ha", "Ha", "Ha", "Ha"],
               ["Ha", "Ha", "Ha", "Ra", "Ra"],
               ["Ha", "Ha", "Ha", "Ha", "Ha"]]
    upa_yati = [[(1, 4)]] * 4
    add("ataveladi-1", "ఆటవెలది",
        make_from_parses(atav_v1, upa_yati, None, "ప", 12))
    atav_v2 = [["Na", "Na", "Ha", "Sala", "Ta"],
               ["Na", "Na", "Na", "Ha", "Ha"],
               ["Na", "Na", "Ha", "Sala", "Ta"],
               ["Na", "Na", "Na", "Ha", "Ha"]]
    add("ataveladi-2", "ఆటవెలది",
        make_from_parses(atav_v2, upa_yati, None, "ర", 13))

    # tetagiti: surya + 2 indra + 2 surya
    teta_v1 = [["Ha", "Ra", "Ra", "Ha", "Ha"]] * 4
    add("tetagiti-1", "తేటగీతి",
        make_from_parses(teta_v1, upa_yati, None, "వ", 14))
    teta_v2 = [["Na", "Nala", "Naga", "Na", "Ha"]] * 4
    add("tetagiti-2", "తేటగీతి",
        make_from_parses(teta_v2, upa_yati, None, "ద", 15))

    # sisa: 8 ganas per line, yati at ganas 3 and 7 anchored per half
    sisa_v1 = [["Ra", "Ra", "Ra", "Ra", "Ra", "Ra", "Ha", "Ha"]] * 4
    sisa_yati = [[(1, 3), (5, 7)]] * 4
    add("sisa-1", "సీసము",
        make_from_parses(sisa_v1, sisa_yati, None, "గ", 16))
    sisa_v2 = [["Nala", "Naga", "Sala", "Bha", "Ta", "Nala", "Na", "Na"]] * 4
    add("sisa-2", "సీసము",
        make_from_parses(sisa_v2, sisa_yati, None, "బ", 17))

    out = Path(__file__).resolve().parents[1] / "src" / "chandassu" / "data" / "golden_corpus.jsonl"
    with out.open("w", encoding="utf-8") as fh:
        for poem in poems:
            fh.write(json.dumps(poem, ensure_ascii=False) + "\n")
    print(f"wrote {len(poems)} verses to {out}")


if __name__ == "__main__":
    main()
