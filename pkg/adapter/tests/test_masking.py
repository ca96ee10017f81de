"""Masking-pattern conformance for the three scoring regimes."""

import pytest

from spud_adapter.align import align_words, mask_plan, visible_table

from stub import StubBackend

VOCAB = {"accordeon": ["accord", "##eon"], "player": ["player"]}


def accordeon_word_ids():
    backend = StubBackend(VOCAB)
    text = "accordeon player"
    enc = backend.encode(text)
    spans = [(0, 9), (10, 16)]
    word_ids = align_words(enc, spans)
    assert enc.tokens == ["[CLS]", "accord", "##eon", "player", "[SEP]"]
    assert word_ids == [None, 0, 0, 1, None]
    return word_ids


class TestAccordeonPlayer:
    """The worked three-row table: positions 1=accord, 2=##eon, 3=player."""

    def test_alm_rows(self):
        word_ids = accordeon_word_ids()
        assert visible_table(word_ids, "alm") == [
            (1, frozenset()),          # ? _ _
            (2, frozenset({1})),       # accord ? _
            (3, frozenset({1, 2})),    # accord ##eon ?
        ]

    def test_mlm_pppl_rows(self):
        word_ids = accordeon_word_ids()
        assert visible_table(word_ids, "mlm_pppl") == [
            (1, frozenset({2, 3})),    # ? ##eon player
            (2, frozenset({1, 3})),    # accord ? player
            (3, frozenset({1, 2})),    # accord ##eon ?
        ]

    def test_mlm_pppl_l2r_rows(self):
        word_ids = accordeon_word_ids()
        assert visible_table(word_ids, "mlm_pppl_l2r") == [
            (1, frozenset({3})),       # ? _ player
            (2, frozenset({1, 3})),    # accord ? player
            (3, frozenset({1, 2})),    # accord ##eon ?
        ]

    def test_l2r_mask_includes_same_word_suffix(self):
        word_ids = accordeon_word_ids()
        assert mask_plan(word_ids, "mlm_pppl_l2r") == [
            (1, frozenset({1, 2})),
            (2, frozenset({2})),
            (3, frozenset({3})),
        ]


class TestSingleSubwordWords:
    def test_regimes_coincide(self):
        word_ids = [None, 0, 1, 2, None]
        assert mask_plan(word_ids, "mlm_pppl") == \
            mask_plan(word_ids, "mlm_pppl_l2r")

    def test_unknown_regime(self):
        with pytest.raises(ValueError):
            mask_plan([0], "bogus")

    def test_alm_has_no_masking(self):
        assert mask_plan([None, 0, 1], "alm") == []
