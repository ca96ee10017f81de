"""Aggregation of token log-probabilities into sentence scores and ratios.

Token-level natural-log probabilities are produced externally (one record
per scored token); this module turns them into exponentiated mean-NLL
sentence scores, orig/nonce ratios, quartile summaries, significance tests,
type-token ratios, and extreme-pair reports.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.stats import norm, rankdata

REGIMES = ("alm", "mlm_pppl", "mlm_pppl_l2r")
VARIANTS = ("orig", "nonce")
DEFAULT_OUTLIER_THRESHOLD = 250.0


@dataclass
class TokenScore:
    sent_id: str
    variant: str
    regime: str
    token_index: int
    word_index: int
    logprob: float
    token: str | None = None  # optional surface, used by subword-stream TTR

    def __post_init__(self):
        if self.variant not in VARIANTS:
            raise ValueError(f"unknown variant {self.variant!r}")
        if self.regime not in REGIMES:
            raise ValueError(f"unknown regime {self.regime!r}")
        if self.logprob > 0:
            raise ValueError(f"logprob must be <= 0, got {self.logprob}")


@dataclass
class SentenceScore:
    sent_id: str
    variant: str
    regime: str
    n_tokens: int
    score: float

    @property
    def mean_nll(self) -> float:
        return math.log(self.score)


@dataclass
class PairRatio:
    sent_id: str
    regime: str
    r: float


@dataclass
class RatioSummary:
    q1: float
    median: float
    q3: float
    count: int
    outlier_count: int
    mean_log_r: float


def score_sentence(scores: list[TokenScore]) -> SentenceScore:
    """exp(-mean logprob) over one (sent_id, variant, regime) group.

    The aggregation is the same for all regimes; the regime tag only records
    which conditioning the producer used.
    """
    if not scores:
        raise ValueError("cannot score an empty token list")
    keys = {(t.sent_id, t.variant, t.regime) for t in scores}
    if len(keys) != 1:
        raise ValueError(f"mixed score groups: {sorted(keys)}")
    n = len(scores)
    indices = sorted(t.token_index for t in scores)
    if indices != list(range(n)):
        raise ValueError(f"token indices not 0..{n - 1}: {indices}")
    total = sum(t.logprob for t in scores)
    sent_id, variant, regime = next(iter(keys))
    return SentenceScore(sent_id=sent_id, variant=variant, regime=regime,
                         n_tokens=n, score=math.exp(-total / n))


def ratio(orig: SentenceScore, nonce: SentenceScore) -> PairRatio:
    """nonce score divided by orig score, for one sentence and regime."""
    if orig.sent_id != nonce.sent_id or orig.regime != nonce.regime:
        raise ValueError("mismatched pair keys")
    if orig.variant != "orig" or nonce.variant != "nonce":
        raise ValueError("ratio expects an (orig, nonce) pair")
    return PairRatio(sent_id=orig.sent_id, regime=orig.regime,
                     r=nonce.score / orig.score)


def summarize(ratios: list[PairRatio],
              outlier_threshold: float = DEFAULT_OUTLIER_THRESHOLD) -> RatioSummary:
    """Quartiles (linear interpolation between closest ranks) and outlier count."""
    if not ratios:
        raise ValueError("cannot summarize an empty ratio list")
    values = np.array([p.r for p in ratios], dtype=float)
    q1, median, q3 = np.percentile(values, [25, 50, 75])
    return RatioSummary(
        q1=float(q1), median=float(median), q3=float(q3),
        count=len(values),
        outlier_count=int(np.sum(values > outlier_threshold)),
        mean_log_r=float(np.mean(np.log(values))),
    )


def wilcoxon_signed_rank(a, b, exact_limit: int = 25) -> tuple[float, float, float]:
    """Paired Wilcoxon signed-rank test.

    Zero differences are dropped; ties get average ranks. Returns
    (W, p_two_sided, p_one_sided) where W is the positive-rank sum and the
    one-sided alternative is a > b. Exact p by enumeration over sign
    assignments for n <= exact_limit, otherwise the normal approximation
    with tie and continuity corrections.
    """
    if len(a) != len(b):
        raise ValueError("paired samples must have equal length")
    diffs = np.asarray(a, dtype=float) - np.asarray(b, dtype=float)
    diffs = diffs[diffs != 0]
    n = len(diffs)
    if n == 0:
        raise ValueError("all paired differences are zero")
    ranks = rankdata(np.abs(diffs))
    w_plus = float(np.sum(ranks[diffs > 0]))
    if n <= exact_limit:
        p_le, p_ge = _exact_tail_probs(ranks, w_plus)
    else:
        p_le, p_ge = _normal_tail_probs(ranks, w_plus)
    p_one = p_ge
    p_two = min(1.0, 2.0 * min(p_le, p_ge))
    return w_plus, p_two, p_one


def _exact_tail_probs(ranks, w_plus):
    """P(W+ <= w) and P(W+ >= w) under the null, by rank-sum convolution.

    Average ranks are multiples of 1/2, so doubling gives integer weights.
    """
    doubled = np.rint(ranks * 2).astype(int)
    total = int(doubled.sum())
    counts = np.zeros(total + 1, dtype=float)
    counts[0] = 1.0
    for r in doubled:
        shifted = np.zeros_like(counts)
        shifted[r:] = counts[: len(counts) - r]
        counts = counts + shifted
    counts /= counts.sum()
    w2 = int(round(w_plus * 2))
    p_le = float(counts[: w2 + 1].sum())
    p_ge = float(counts[w2:].sum())
    return p_le, p_ge


def _normal_tail_probs(ranks, w_plus):
    n = len(ranks)
    mean = n * (n + 1) / 4.0
    var = n * (n + 1) * (2 * n + 1) / 24.0
    # tie correction over groups of equal absolute differences
    _, tie_counts = np.unique(ranks, return_counts=True)
    var -= float(np.sum(tie_counts**3 - tie_counts)) / 48.0
    sd = math.sqrt(var)
    p_le = float(norm.cdf((w_plus - mean + 0.5) / sd))
    p_ge = float(norm.sf((w_plus - mean - 0.5) / sd))
    return p_le, p_ge


def ttr(tokens) -> float:
    """Type-token ratio: distinct tokens over total tokens."""
    tokens = list(tokens)
    if not tokens:
        raise ValueError("cannot compute TTR of an empty stream")
    return len(set(tokens)) / len(tokens)


@dataclass
class ExtremePair:
    sent_id: str
    r: float
    orig_text: str | None = None
    nonce_text: str | None = None
    per_regime: dict[str, float] = field(default_factory=dict)


@dataclass
class ExtremesReport:
    top: list[ExtremePair] = field(default_factory=list)
    bottom: list[ExtremePair] = field(default_factory=list)


def extremes_report(pairs: list[ExtremePair], k: int) -> ExtremesReport:
    """Top-k and bottom-k pairs by ratio; ties break by sent_id."""
    if k <= 0:
        return ExtremesReport()
    by_high = sorted(pairs, key=lambda p: (-p.r, p.sent_id))
    by_low = sorted(pairs, key=lambda p: (p.r, p.sent_id))
    return ExtremesReport(top=by_high[:k], bottom=by_low[:k])


def read_token_scores(path) -> list[TokenScore]:
    """Read the line-delimited JSON token-score file."""
    out = []
    with open(path, encoding="utf-8") as f:
        for line_no, line in enumerate(f, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                rec = json.loads(line)
            except json.JSONDecodeError as e:
                raise ValueError(f"malformed JSON on line {line_no}: {e}") from None
            out.append(TokenScore(
                sent_id=rec["sent_id"], variant=rec["variant"], regime=rec["regime"],
                token_index=int(rec["token_index"]), word_index=int(rec["word_index"]),
                logprob=float(rec["logprob"]), token=rec.get("token"),
            ))
    return out


def group_sentence_scores(records: list[TokenScore]) -> dict[tuple[str, str, str], SentenceScore]:
    """Aggregate token records into sentence scores keyed by (sent_id, variant, regime)."""
    groups: dict[tuple[str, str, str], list[TokenScore]] = {}
    for rec in records:
        groups.setdefault((rec.sent_id, rec.variant, rec.regime), []).append(rec)
    return {key: score_sentence(tokens) for key, tokens in groups.items()}


def pair_ratios(sentence_scores: dict[tuple[str, str, str], SentenceScore]
                ) -> tuple[dict[str, list[PairRatio]], int]:
    """Per-regime orig/nonce ratios; pairs missing a side are dropped and counted."""
    per_regime: dict[str, list[PairRatio]] = {}
    dropped = 0
    seen = {(sid, reg) for (sid, var, reg) in sentence_scores if var == "orig"}
    seen |= {(sid, reg) for (sid, var, reg) in sentence_scores if var == "nonce"}
    for sid, reg in sorted(seen):
        orig = sentence_scores.get((sid, "orig", reg))
        nonce = sentence_scores.get((sid, "nonce", reg))
        if orig is None or nonce is None:
            dropped += 1
            continue
        per_regime.setdefault(reg, []).append(ratio(orig, nonce))
    return per_regime, dropped
