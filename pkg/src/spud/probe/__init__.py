"""Structural dependency probe: two linear maps, greedy decoding, metrics."""

from .model import (
    LabelInventory,
    ProbeParams,
    gradients,
    loss_distance,
    loss_relation,
    relation_probs,
    subspace_distance,
)
from .decode import DecodedTree, EvalReport, decode, evaluate
from .io import ReprSet, load_params, load_reprs, save_params, save_reprs
from .train import Hyper, ProbeDataset, build_dataset, train

__all__ = [
    "LabelInventory", "ProbeParams", "relation_probs", "subspace_distance",
    "loss_distance", "loss_relation", "gradients",
    "DecodedTree", "EvalReport", "decode", "evaluate",
    "ReprSet", "load_reprs", "save_reprs", "load_params", "save_params",
    "Hyper", "ProbeDataset", "build_dataset", "train",
]
