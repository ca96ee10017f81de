"""Greedy labeled tree decoding and attachment metrics."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..conllu import Treebank
from .model import LabelInventory


@dataclass
class DecodedTree:
    heads: list[int]    # 1-based head ids, 0 for the root token
    labels: list[str]

    def __post_init__(self):
        if len(self.heads) != len(self.labels):
            raise ValueError("heads and labels must align")


def decode(rel_probs: np.ndarray, dist: np.ndarray,
           inventory: LabelInventory) -> DecodedTree:
    """Build a labeled directed tree from relation probabilities and distances.

    The token with the highest root-label probability becomes the root; the
    remaining tokens are added greedily, each time taking the uncovered token
    with the smallest distance to any covered token and attaching it there.
    Labels are the per-token argmax, with the root label forced on the root
    and forbidden elsewhere. Ties break toward the lowest token index.
    """
    n = len(rel_probs)
    if n == 0:
        raise ValueError("cannot decode an empty sentence")
    if dist.shape != (n, n):
        raise ValueError(f"distance matrix shape {dist.shape} != ({n}, {n})")
    root_idx = inventory.root_index
    root = int(np.argmax(rel_probs[:, root_idx]))

    heads = [0] * n
    covered = [root]
    covered_mask = np.zeros(n, dtype=bool)
    covered_mask[root] = True
    while len(covered) < n:
        best = None  # (distance, token, attachment)
        for u in range(n):
            if covered_mask[u]:
                continue
            for c in covered:
                cand = (float(dist[u, c]), u, c)
                if best is None or cand < best:
                    best = cand
        _, u, c = best
        heads[u] = c + 1
        covered_mask[u] = True
        covered.append(u)

    non_root = rel_probs.copy()
    non_root[:, root_idx] = -np.inf
    labels = [inventory.labels[int(np.argmax(non_root[i]))] for i in range(n)]
    labels[root] = inventory.labels[root_idx]
    return DecodedTree(heads=heads, labels=labels)


@dataclass
class DirectionMetrics:
    rel_acc: float
    uas: float
    las: float
    tokens: int


@dataclass
class EvalReport:
    rel_acc: float
    uas: float
    las: float
    tokens: int
    left: DirectionMetrics | None = None
    right: DirectionMetrics | None = None
    roots: int = 0


def _metrics(rel_hits: int, head_hits: int, both_hits: int, total: int) -> tuple[float, float, float]:
    if total == 0:
        return 0.0, 0.0, 0.0
    return (100.0 * rel_hits / total, 100.0 * head_hits / total,
            100.0 * both_hits / total)


def evaluate(preds: list[DecodedTree], gold: Treebank,
             by_direction: bool = True) -> EvalReport:
    """RelAcc / UAS / LAS over aligned sentences, in percent.

    The direction split classifies a gold edge as left when the dependent has
    a lower index than its head; root tokens are excluded from the split.
    """
    if len(preds) != len(gold.sentences):
        raise ValueError(f"{len(preds)} predictions for {len(gold.sentences)} sentences")
    counts = {key: [0, 0, 0, 0] for key in ("all", "left", "right")}
    roots = 0
    for pred, sent in zip(preds, gold.sentences):
        if len(pred.heads) != len(sent.tokens):
            raise ValueError(f"length mismatch in sentence {sent.sent_id!r}")
        for tok, p_head, p_label in zip(sent.tokens, pred.heads, pred.labels):
            rel_ok = p_label == tok.deprel
            head_ok = p_head == tok.head
            if tok.head == 0:
                roots += 1
                buckets = ("all",)
            else:
                direction = "left" if tok.id < tok.head else "right"
                buckets = ("all", direction)
            for key in buckets:
                c = counts[key]
                c[0] += rel_ok
                c[1] += head_ok
                c[2] += rel_ok and head_ok
                c[3] += 1
    rel, uas, las = _metrics(*counts["all"])
    report = EvalReport(rel_acc=rel, uas=uas, las=las, tokens=counts["all"][3],
                        roots=roots)
    if by_direction:
        for key in ("left", "right"):
            r, u, l = _metrics(*counts[key])
            setattr(report, key, DirectionMetrics(rel_acc=r, uas=u, las=l,
                                                  tokens=counts[key][3]))
    return report
