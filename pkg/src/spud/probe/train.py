"""Minibatch training of the probe with dev-set model selection."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np

from ..conllu import Treebank, path_distance_matrix
from .decode import decode, evaluate
from .io import ReprSet
from .model import (
    Gradients,
    LabelInventory,
    ProbeParams,
    ROOT_LABEL,
    gradients,
    relation_probs,
    subspace_distance,
)

log = logging.getLogger(__name__)


@dataclass
class Hyper:
    lr: float = 1e-3
    batch_size: int = 32
    epochs: int = 30
    patience: int = 5
    seed: int = 0
    b_dim: int = 128
    lr_decay: float = 0.5
    decay_patience: int = 2


@dataclass
class SentenceExample:
    sent_id: str
    reprs_dist: np.ndarray
    reprs_rel: np.ndarray
    gold_labels: list[str]
    gold_heads: list[int]
    gold_dp: np.ndarray


@dataclass
class ProbeDataset:
    examples: list[SentenceExample]
    d_h: int

    def __len__(self) -> int:
        return len(self.examples)


def build_inventory(tb: Treebank) -> LabelInventory:
    labels = sorted({t.deprel for s in tb.sentences for t in s.tokens} | {ROOT_LABEL})
    return LabelInventory(labels)


def build_dataset(tb: Treebank, reprs_dist: ReprSet, reprs_rel: ReprSet) -> ProbeDataset:
    """Pair treebank sentences with their representation matrices.

    Sentences missing from either representation file, or with a word-count
    mismatch, are skipped with a counted warning.
    """
    if reprs_dist.d_h != reprs_rel.d_h:
        raise ValueError("distance and relation representations disagree on d_h")
    examples = []
    skipped = 0
    for s in tb.sentences:
        if s.sent_id not in reprs_dist or s.sent_id not in reprs_rel:
            skipped += 1
            continue
        h_dist = reprs_dist[s.sent_id]
        h_rel = reprs_rel[s.sent_id]
        if len(h_dist) != len(s.tokens) or len(h_rel) != len(s.tokens):
            skipped += 1
            continue
        gold_labels = [ROOT_LABEL if t.head == 0 else t.deprel for t in s.tokens]
        examples.append(SentenceExample(
            sent_id=s.sent_id, reprs_dist=h_dist.astype(float),
            reprs_rel=h_rel.astype(float), gold_labels=gold_labels,
            gold_heads=[t.head for t in s.tokens],
            gold_dp=path_distance_matrix(s).astype(float)))
    if skipped:
        log.warning("skipped %d sentences without aligned representations", skipped)
    if not examples:
        raise ValueError("empty training dataset")
    return ProbeDataset(examples=examples, d_h=reprs_dist.d_h)


class _Adam:
    """Adam updates over the three parameter arrays."""

    def __init__(self, params: ProbeParams, lr: float,
                 beta1=0.9, beta2=0.999, eps=1e-8):
        self.lr = lr
        self.beta1, self.beta2, self.eps = beta1, beta2, eps
        self.t = 0
        self.m = [np.zeros_like(a) for a in (params.L, params.L_bias, params.B)]
        self.v = [np.zeros_like(a) for a in (params.L, params.L_bias, params.B)]

    def step(self, params: ProbeParams, grads: Gradients) -> None:
        self.t += 1
        arrays = (params.L, params.L_bias, params.B)
        gs = (grads.dL, grads.dL_bias, grads.dB)
        for i, (a, g) in enumerate(zip(arrays, gs)):
            self.m[i] = self.beta1 * self.m[i] + (1 - self.beta1) * g
            self.v[i] = self.beta2 * self.v[i] + (1 - self.beta2) * g * g
            m_hat = self.m[i] / (1 - self.beta1**self.t)
            v_hat = self.v[i] / (1 - self.beta2**self.t)
            a -= self.lr * m_hat / (np.sqrt(v_hat) + self.eps)


def _dev_las(params: ProbeParams, dev: ProbeDataset) -> float:
    rel_hits = head_hits = both = total = 0
    for ex in dev.examples:
        probs = relation_probs(params, ex.reprs_rel)
        dist = subspace_distance(params, ex.reprs_dist)
        tree = decode(probs, dist, params.inventory)
        for i, (lab, head) in enumerate(zip(tree.labels, tree.heads)):
            rel_ok = lab == ex.gold_labels[i]
            head_ok = head == ex.gold_heads[i]
            rel_hits += rel_ok
            head_hits += head_ok
            both += rel_ok and head_ok
            total += 1
    return 100.0 * both / total if total else 0.0


def train(train_set: ProbeDataset, dev_set: ProbeDataset, inventory: LabelInventory,
          hyper: Hyper) -> ProbeParams:
    """Minimize the summed relation and distance losses with Adam.

    Returns the parameters of the best dev-LAS epoch; the learning rate is
    halved when dev LAS plateaus and training stops after `patience` epochs
    without improvement. Deterministic under the hyperparameter seed.
    """
    rng = np.random.default_rng(hyper.seed)
    params = ProbeParams.init(train_set.d_h, hyper.b_dim, inventory, rng)
    best = params.copy()
    if hyper.epochs == 0:
        return best
    optimizer = _Adam(params, hyper.lr)
    best_las = -1.0
    stale = 0
    order = np.arange(len(train_set.examples))
    for epoch in range(hyper.epochs):
        rng.shuffle(order)
        for start in range(0, len(order), hyper.batch_size):
            batch = [train_set.examples[i] for i in order[start:start + hyper.batch_size]]
            total = Gradients(dL=np.zeros_like(params.L),
                              dL_bias=np.zeros_like(params.L_bias),
                              dB=np.zeros_like(params.B))
            for ex in batch:
                total += gradients(params, ex.reprs_rel, ex.gold_labels,
                                   ex.reprs_dist, ex.gold_dp)
            total.scale(1.0 / len(batch))
            optimizer.step(params, total)
        las = _dev_las(params, dev_set)
        log.info("epoch %d: dev LAS %.2f (lr %.2e)", epoch + 1, las, optimizer.lr)
        if las > best_las:
            best_las = las
            best = params.copy()
            stale = 0
        else:
            stale += 1
            if stale % hyper.decay_patience == 0:
                optimizer.lr *= hyper.lr_decay
            if stale >= hyper.patience:
                break
    return best
