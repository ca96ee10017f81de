"""Probe parameters, losses, and analytic gradients.

The probe consists of a relation classifier (linear map with bias, softmax
over the label inventory) and a subspace projection whose pairwise Euclidean
distances are trained to match tree path distances. The distance loss for a
sentence of n tokens is the summed absolute deviation over all ordered token
pairs divided by (n-1)^2.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

ROOT_LABEL = "root"


@dataclass
class LabelInventory:
    labels: list[str]

    def __post_init__(self):
        if len(set(self.labels)) != len(self.labels):
            raise ValueError("labels must be unique")
        if ROOT_LABEL not in self.labels:
            raise ValueError(f"inventory must contain the {ROOT_LABEL!r} label")
        self._index = {lab: i for i, lab in enumerate(self.labels)}

    def __len__(self) -> int:
        return len(self.labels)

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise KeyError(f"unknown relation label {label!r}") from None

    @property
    def root_index(self) -> int:
        return self._index[ROOT_LABEL]


@dataclass
class ProbeParams:
    L: np.ndarray        # (l, d_h) relation weights
    L_bias: np.ndarray   # (l,)
    B: np.ndarray        # (b, d_h) subspace projection, no bias
    inventory: LabelInventory

    def __post_init__(self):
        if self.B.shape[0] >= self.L.shape[1]:
            raise ValueError("subspace dimension must be smaller than d_h")
        if self.L.shape[0] != len(self.inventory):
            raise ValueError("L rows must match the label inventory")

    @property
    def d_h(self) -> int:
        return self.L.shape[1]

    @property
    def b_dim(self) -> int:
        return self.B.shape[0]

    def copy(self) -> "ProbeParams":
        return ProbeParams(L=self.L.copy(), L_bias=self.L_bias.copy(),
                           B=self.B.copy(), inventory=self.inventory)

    @classmethod
    def init(cls, d_h: int, b_dim: int, inventory: LabelInventory,
             rng: np.random.Generator) -> "ProbeParams":
        scale = 1.0 / np.sqrt(d_h)
        l = len(inventory)
        return cls(
            L=rng.uniform(-scale, scale, size=(l, d_h)),
            L_bias=rng.uniform(-scale, scale, size=l),
            B=rng.uniform(-scale, scale, size=(b_dim, d_h)),
            inventory=inventory,
        )


def relation_probs(p: ProbeParams, reprs: np.ndarray) -> np.ndarray:
    """Row-wise softmax of the relation logits (max-shifted for stability)."""
    reprs = np.asarray(reprs, dtype=float)
    if reprs.ndim != 2 or reprs.shape[1] != p.d_h:
        raise ValueError(f"expected (n, {p.d_h}) representations, got {reprs.shape}")
    logits = reprs @ p.L.T + p.L_bias
    logits -= logits.max(axis=1, keepdims=True)
    exp = np.exp(logits)
    return exp / exp.sum(axis=1, keepdims=True)


def subspace_distance(p: ProbeParams, reprs: np.ndarray) -> np.ndarray:
    """Pairwise Euclidean distances of the projected representations."""
    reprs = np.asarray(reprs, dtype=float)
    if reprs.ndim != 2 or reprs.shape[1] != p.d_h:
        raise ValueError(f"expected (n, {p.d_h}) representations, got {reprs.shape}")
    z = reprs @ p.B.T
    diff = z[:, None, :] - z[None, :, :]
    sq = np.einsum("ijk,ijk->ij", diff, diff)
    np.maximum(sq, 0.0, out=sq)
    return np.sqrt(sq)


def loss_distance(p: ProbeParams, reprs: np.ndarray, gold_dp: np.ndarray) -> float:
    """Mean absolute deviation between projected and gold tree distances.

    Normalized by (n-1)^2 over all ordered pairs; 0 for single-token input.
    """
    n = len(reprs)
    if gold_dp.shape != (n, n):
        raise ValueError(f"gold distance matrix shape {gold_dp.shape} != ({n}, {n})")
    if n < 2:
        return 0.0
    d_b = subspace_distance(p, reprs)
    return float(np.abs(gold_dp - d_b).sum() / (n - 1) ** 2)


def loss_relation(p: ProbeParams, reprs: np.ndarray, gold_labels: list[str]) -> float:
    """Mean negative log probability of the gold labels."""
    probs = relation_probs(p, reprs)
    idx = [p.inventory.index(lab) for lab in gold_labels]
    picked = probs[np.arange(len(idx)), idx]
    return float(-np.mean(np.log(picked)))


@dataclass
class Gradients:
    dL: np.ndarray
    dL_bias: np.ndarray
    dB: np.ndarray

    def __iadd__(self, other: "Gradients") -> "Gradients":
        self.dL += other.dL
        self.dL_bias += other.dL_bias
        self.dB += other.dB
        return self

    def scale(self, factor: float) -> None:
        self.dL *= factor
        self.dL_bias *= factor
        self.dB *= factor


def gradients(p: ProbeParams, reprs_rel: np.ndarray, gold_labels: list[str],
              reprs_dist: np.ndarray, gold_dp: np.ndarray) -> Gradients:
    """Analytic gradients of the two losses for one sentence.

    The relation loss drives L, the distance loss drives B; the parameter
    sets are disjoint so the joint gradient is their concatenation. At
    coinciding projected points (d_B = 0) the subgradient 0 is used.
    """
    reprs_rel = np.asarray(reprs_rel, dtype=float)
    reprs_dist = np.asarray(reprs_dist, dtype=float)
    n = len(reprs_rel)
    probs = relation_probs(p, reprs_rel)
    target = np.zeros_like(probs)
    for i, lab in enumerate(gold_labels):
        target[i, p.inventory.index(lab)] = 1.0
    dz = (probs - target) / n
    d_l = dz.T @ reprs_rel
    d_bias = dz.sum(axis=0)

    d_b = np.zeros_like(p.B)
    m = len(reprs_dist)
    if m >= 2:
        z = reprs_dist @ p.B.T
        dist = subspace_distance(p, reprs_dist)
        norm = (m - 1) ** 2
        for i in range(m):
            for j in range(i + 1, m):
                d_ij = dist[i, j]
                if d_ij == 0.0:
                    continue
                sign = np.sign(d_ij - gold_dp[i, j])
                # ordered pairs (i,j) and (j,i) contribute equally
                coeff = 2.0 * sign / (norm * d_ij)
                zu = z[i] - z[j]
                hu = reprs_dist[i] - reprs_dist[j]
                d_b += coeff * np.outer(zu, hu)
    return Gradients(dL=d_l, dL_bias=d_bias, dB=d_b)
