"""Sentence-score aggregation, ratios, Wilcoxon test, TTR, extremes."""

import itertools
import json
import math
import random

import numpy as np
import pytest
from scipy.stats import rankdata

from spud.scoring import (
    ExtremePair,
    PairRatio,
    SentenceScore,
    TokenScore,
    extremes_report,
    group_sentence_scores,
    pair_ratios,
    ratio,
    read_token_scores,
    score_sentence,
    summarize,
    ttr,
    wilcoxon_signed_rank,
)


def toks(logprobs, sent_id="s", variant="orig", regime="alm"):
    return [TokenScore(sent_id=sent_id, variant=variant, regime=regime,
                       token_index=i, word_index=i, logprob=lp)
            for i, lp in enumerate(logprobs)]


class TestScoreSentence:
    def test_uniform_half(self):
        assert score_sentence(toks([math.log(0.5)] * 4)).score == pytest.approx(2.0)

    def test_single_certain_token(self):
        assert score_sentence(toks([0.0])).score == 1.0

    def test_mixed(self):
        s = score_sentence(toks([math.log(0.5), math.log(0.125)]))
        assert s.score == pytest.approx(4.0)

    def test_permutation_invariant(self):
        tokens = toks([-0.3, -1.2, -0.7])
        assert score_sentence(tokens).score == \
            score_sentence(list(reversed(tokens))).score

    def test_log_consistency(self):
        rng = random.Random(3)
        for _ in range(50):
            lps = [-rng.random() * 5 for _ in range(rng.randint(1, 9))]
            s = score_sentence(toks(lps))
            mean_nll = -sum(lps) / len(lps)
            assert math.log(s.score) == pytest.approx(mean_nll, rel=1e-12)

    def test_regime_independent_aggregation(self):
        lps = [-0.4, -1.1]
        a = score_sentence(toks(lps, regime="mlm_pppl"))
        b = score_sentence(toks(lps, regime="mlm_pppl_l2r"))
        assert a.score == b.score

    def test_errors(self):
        with pytest.raises(ValueError):
            score_sentence([])
        with pytest.raises(ValueError):
            score_sentence(toks([-1.0]) + toks([-1.0], variant="nonce"))
        missing = toks([-1.0, -1.0])
        missing[1].token_index = 5
        with pytest.raises(ValueError):
            score_sentence(missing)

    def test_positive_logprob_rejected(self):
        with pytest.raises(ValueError):
            TokenScore("s", "orig", "alm", 0, 0, 0.1)


class TestRatio:
    def sent(self, variant, score):
        return SentenceScore("s", variant, "alm", 3, score)

    def test_values(self):
        assert ratio(self.sent("orig", 2.0), self.sent("nonce", 8.0)).r == 4.0
        assert ratio(self.sent("orig", 3.0), self.sent("nonce", 3.0)).r == 1.0
        assert ratio(self.sent("orig", 4.0), self.sent("nonce", 2.0)).r == 0.5

    def test_key_mismatch(self):
        other = SentenceScore("t", "nonce", "alm", 3, 1.0)
        with pytest.raises(ValueError):
            ratio(self.sent("orig", 2.0), other)

    def test_variant_mismatch(self):
        with pytest.raises(ValueError):
            ratio(self.sent("nonce", 2.0), self.sent("orig", 1.0))


class TestSummarize:
    def rs(self, values):
        return [PairRatio(f"s{i}", "alm", v) for i, v in enumerate(values)]

    def test_quartiles(self):
        s = summarize(self.rs([1, 2, 3, 4, 5]))
        assert (s.q1, s.median, s.q3) == (2, 3, 4)

    def test_constant(self):
        s = summarize(self.rs([7, 7, 7]))
        assert s.q1 == s.median == s.q3 == 7

    def test_outliers(self):
        s = summarize(self.rs([1, 300]), outlier_threshold=250)
        assert s.outlier_count == 1

    def test_bracketing(self):
        rng = random.Random(5)
        for _ in range(30):
            vals = [rng.uniform(0.1, 50) for _ in range(rng.randint(1, 40))]
            s = summarize(self.rs(vals))
            assert min(vals) <= s.q1 <= s.median <= s.q3 <= max(vals)

    def test_empty(self):
        with pytest.raises(ValueError):
            summarize([])


def brute_force_wilcoxon(diffs):
    """Exact one/two-sided p over all sign assignments of |diffs|."""
    diffs = [d for d in diffs if d != 0]
    ranks = rankdata([abs(d) for d in diffs])
    w_obs = sum(r for r, d in zip(ranks, diffs) if d > 0)
    n = len(diffs)
    ge = le = 0
    for signs in itertools.product((0, 1), repeat=n):
        w = sum(r for r, s in zip(ranks, signs) if s)
        ge += w >= w_obs - 1e-12
        le += w <= w_obs + 1e-12
    total = 2 ** n
    p_one = ge / total
    p_two = min(1.0, 2 * min(ge, le) / total)
    return w_obs, p_two, p_one


class TestWilcoxon:
    def test_all_positive_three(self):
        w, p_two, p_one = wilcoxon_signed_rank([2, 3, 4], [1, 1, 1])
        assert w == 6.0
        assert p_one == pytest.approx(0.125)

    def test_all_zero(self):
        with pytest.raises(ValueError):
            wilcoxon_signed_rank([1, 2], [1, 2])

    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            wilcoxon_signed_rank([1], [1, 2])

    def test_exact_matches_enumeration(self):
        rng = random.Random(17)
        for _ in range(200):
            n = rng.randint(2, 10)
            a = [rng.randint(0, 6) for _ in range(n)]
            b = [rng.randint(0, 6) for _ in range(n)]
            if all(x == y for x, y in zip(a, b)):
                a[0] += 1
            w, p_two, p_one = wilcoxon_signed_rank(a, b)
            bw, bp_two, bp_one = brute_force_wilcoxon(
                [x - y for x, y in zip(a, b)])
            assert w == pytest.approx(bw, abs=1e-9)
            assert p_one == pytest.approx(bp_one, abs=1e-9)
            assert p_two == pytest.approx(bp_two, abs=1e-9)

    def test_normal_close_to_exact_at_15(self):
        rng = random.Random(23)
        for _ in range(20):
            a = [rng.gauss(0.3, 1) for _ in range(15)]
            b = [0.0] * 15
            _, exact_two, exact_one = wilcoxon_signed_rank(a, b, exact_limit=25)
            _, approx_two, approx_one = wilcoxon_signed_rank(a, b, exact_limit=1)
            assert approx_one == pytest.approx(exact_one, abs=0.01)
            assert approx_two == pytest.approx(exact_two, abs=0.02)


class TestTtr:
    def test_quarter(self):
        assert ttr(["a", "a", "a", "a"]) == 0.25

    def test_all_distinct(self):
        assert ttr([str(i) for i in range(9)]) == 1.0

    def test_empty(self):
        with pytest.raises(ValueError):
            ttr([])


class TestExtremes:
    def pairs(self):
        return [ExtremePair(f"s{i}", r) for i, r in
                enumerate([5.0, 1.0, 9.0, 3.0, 0.5])]

    def test_k_zero(self):
        report = extremes_report(self.pairs(), 0)
        assert report.top == [] and report.bottom == []

    def test_top_and_bottom(self):
        report = extremes_report(self.pairs(), 2)
        assert [p.r for p in report.top] == [9.0, 5.0]
        assert [p.r for p in report.bottom] == [0.5, 1.0]

    def test_tie_break_by_sent_id(self):
        pairs = [ExtremePair("b", 2.0), ExtremePair("a", 2.0)]
        report = extremes_report(pairs, 1)
        assert report.top[0].sent_id == "a"
        assert report.bottom[0].sent_id == "a"


class TestFileIo:
    def test_round_trip(self, tmp_path):
        path = tmp_path / "scores.jsonl"
        rec = {"sent_id": "s1", "variant": "orig", "regime": "alm",
               "token_index": 0, "word_index": 0, "logprob": -0.5,
               "token": "hello"}
        path.write_text(json.dumps(rec) + "\n\n", encoding="utf-8")
        out = read_token_scores(path)
        assert len(out) == 1 and out[0].token == "hello"

    def test_malformed_line(self, tmp_path):
        path = tmp_path / "bad.jsonl"
        path.write_text("{oops\n", encoding="utf-8")
        with pytest.raises(ValueError, match="line 1"):
            read_token_scores(path)


class TestPairing:
    def test_missing_side_dropped(self):
        records = toks([-1.0], sent_id="s1") + \
            toks([-2.0], sent_id="s1", variant="nonce") + \
            toks([-1.5], sent_id="s2")
        scores = group_sentence_scores(records)
        per_regime, dropped = pair_ratios(scores)
        assert dropped == 1
        assert len(per_regime["alm"]) == 1
        assert per_regime["alm"][0].r == pytest.approx(math.exp(1.0))
