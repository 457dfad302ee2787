import pytest
from hypothesis import given, strategies as st

from chandassu.errors import MalformedCluster
from chandassu.script import (
    Akshara, Vowel, normalize, reconstruct, segment_aksharas, word_index_of,
    word_of,
)


def surfaces(text):
    return [a.surface for a in segment_aksharas(normalize(text))]


def test_simple_word_segmentation():
    assert surfaces("అమ్మ") == ["అ", "మ్మ"]
    assert surfaces("పద్యము") == ["ప", "ద్య", "ము"]
    assert surfaces("క") == ["క"]


def test_geminate_joins_cluster():
    aks = segment_aksharas(normalize("అమ్మ"))
    assert aks[1].base_consonants == ("మ", "మ")
    assert aks[1].vowel is Vowel.SHORT_A


def test_word_final_virama_is_pollu():
    aks = segment_aksharas(normalize("రాజేష్"))
    assert [a.surface for a in aks] == ["రా", "జే", "ష్"]
    assert aks[-1].is_pollu
    assert aks[-1].vowel is Vowel.NONE


def test_modifier_flags():
    aks = segment_aksharas(normalize("దుఃఖం"))
    assert aks[0].has_visarga
    assert aks[1].has_anusvara


def test_dependent_sign_sets_vowel():
    aks = segment_aksharas(normalize("జేబు"))
    assert aks[0].vowel is Vowel.LONG_E
    assert aks[1].vowel is Vowel.SHORT_U


def test_mid_word_dangling_virama_raises():
    # virama followed by a vowel letter inside a word has no cluster to join
    with pytest.raises(MalformedCluster):
        segment_aksharas(normalize("క్అ"))


def test_normalize_strips_punctuation_and_digits():
    line = normalize("అమ్మ, నాన్న! 123")
    assert line.text == "అమ్మనాన్న"
    kinds = {s.kind for s in line.ignored_spans}
    assert "punctuation" in kinds and "whitespace" in kinds and "digit" in kinds


def test_word_breaks_split_words():
    line = normalize("అమ్మ నాన్న")
    aks = segment_aksharas(line)
    assert word_of(line, aks[0]) == "అమ్మ"
    assert word_of(line, aks[-1]) == "నాన్న"
    assert word_index_of(line, aks[0]) != word_index_of(line, aks[-1])


def test_reconstruct_round_trip():
    for raw in ("అమ్మ, నాన్న! 123", "  రాజేష్ వచ్చె  ", "ఒక 2 మూడు; నాల్గు."):
        import unicodedata
        assert reconstruct(normalize(raw)) == unicodedata.normalize("NFC", raw)


def test_akshara_surfaces_cover_text():
    line = normalize("ఛందస్సు లక్షణం దుఃఖం")
    aks = segment_aksharas(line)
    assert "".join(a.surface for a in aks) == line.text


_TELUGU_ALPHABET = (
    "కఖగఘచఛజఝటఠడఢణతథదధనపఫబభమయరలవశషసహళ"
    "అఆఇఈఉఊఎఏఐఒఓఔ"
    "ాిీుూెేైొోౌ"
    "ం ః ్"
    " .,!?0123"
)


@given(st.text(alphabet=_TELUGU_ALPHABET, max_size=40))
def test_reconstruct_round_trips_any_text(raw):
    import unicodedata
    assert reconstruct(normalize(raw)) == unicodedata.normalize("NFC", raw)


@given(st.text(alphabet="కఖగతనమరలసహఅఆఇఈఉాిీుూెేొో", max_size=30))
def test_segmentation_is_total_and_covering(raw):
    line = normalize(raw)
    aks = segment_aksharas(line)
    assert "".join(a.surface for a in aks) == line.text
    for a in aks:
        assert isinstance(a, Akshara)
        assert a.vowel in Vowel
