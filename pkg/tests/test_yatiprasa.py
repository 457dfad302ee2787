import itertools

import pytest
from hypothesis import given, strategies as st

from chandassu.errors import ShortLine, TableLoadError
from chandassu.script import normalize, segment_aksharas
from chandassu.yatiprasa import (
    check_prasa, check_prasa_yati, check_yati, default_yati_table,
    load_yati_table, yati_compatible,
)

TABLE = default_yati_table()


def ak(text):
    return segment_aksharas(normalize(text))[0]


def test_same_letter_compatible():
    assert yati_compatible(ak("క"), ak("క"), TABLE)


def test_varga_mates_compatible():
    # voiceless/voiced/aspirated of one varga share a class
    assert yati_compatible(ak("క"), ak("గ"), TABLE)
    assert yati_compatible(ak("త"), ak("ద"), TABLE)
    assert yati_compatible(ak("ప"), ak("బ"), TABLE)


def test_cross_varga_incompatible():
    assert not yati_compatible(ak("క"), ak("త"), TABLE)
    assert not yati_compatible(ak("ప"), ak("చ"), TABLE)


def test_vowel_family_must_match():
    assert yati_compatible(ak("క"), ak("కా"), TABLE)      # a ~ aa
    assert yati_compatible(ak("కి"), ak("కే"), TABLE)      # i ~ ee family
    assert yati_compatible(ak("కు"), ak("కో"), TABLE)      # u ~ oo family
    assert not yati_compatible(ak("క"), ak("కి"), TABLE)
    assert not yati_compatible(ak("కు"), ak("కి"), TABLE)


def test_bare_vowels_compare_by_vowel_family():
    assert yati_compatible(ak("అ"), ak("ఆ"), TABLE)
    assert not yati_compatible(ak("అ"), ak("ఇ"), TABLE)
    # bare vowel never matches a consonant akshara
    assert not yati_compatible(ak("అ"), ak("క"), TABLE)


@given(st.sampled_from("కఖగఘచఛజతథదనపఫబమయరలవసహ"),
       st.sampled_from("కఖగఘచఛజతథదనపఫబమయరలవసహ"))
def test_compatibility_symmetric(c1, c2):
    a, b = ak(c1), ak(c2)
    assert yati_compatible(a, b, TABLE) == yati_compatible(b, a, TABLE)
    assert yati_compatible(a, a, TABLE)


def test_check_yati_positions():
    aks = segment_aksharas(normalize("కమల గాథ"))
    ok, _ = check_yati(aks, 4, TABLE)   # క vs గా
    assert ok
    ok, _ = check_yati(aks, 2, TABLE)   # క vs మ
    assert not ok
    assert check_yati(aks, 1, TABLE)[0]         # line start trivially passes
    assert not check_yati(aks, 99, TABLE)[0]    # out of range
    assert not check_yati([], 1, TABLE)[0]


def test_check_prasa():
    lines = [segment_aksharas(normalize(t))
             for t in ("కమల", "అమర", "సమయ", "విమల")]
    result = check_prasa(lines)
    assert result.passed
    assert result.consonant_keys[0] == ("మ",)
    lines[2] = segment_aksharas(normalize("సరయ"))
    result = check_prasa(lines)
    assert not result.passed
    assert result.failing_lines == (2,)


def test_check_prasa_cluster_strictness():
    lines = [segment_aksharas(normalize(t)) for t in ("అమ్మక", "కమలిని")]
    assert not check_prasa(lines, strict=True).passed
    assert check_prasa(lines, strict=False).passed


def test_check_prasa_short_line():
    with pytest.raises(ShortLine):
        check_prasa([segment_aksharas(normalize("క"))])


def test_check_prasa_yati():
    # yati at akshara 3; akshara 4 repeats the prasa cluster (akshara 2)
    aks = segment_aksharas(normalize("కమలమతి"))
    ok, _ = check_prasa_yati(aks, 3, None, TABLE)
    assert ok
    ok, _ = check_prasa_yati(aks, 4, None, TABLE)
    assert not ok
    assert not check_prasa_yati(aks, 99, None, TABLE)[0]


def test_table_validation(tmp_path):
    bad = tmp_path / "yati.json"
    bad.write_text('{"vowel_classes": [["SHORT_A"]], "consonant_classes": []}',
                   encoding="utf-8")
    with pytest.raises(TableLoadError):
        load_yati_table(bad)


def test_table_covers_all_vowels_and_consonants():
    from chandassu.script import CONSONANTS, Vowel
    assert set(TABLE.vowel_class) == set(Vowel)
    assert CONSONANTS <= set(TABLE.consonant_class)
