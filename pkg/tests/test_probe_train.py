"""Dataset assembly and probe training behavior."""

import numpy as np
import pytest

from helpers import heads_sentence, random_heads
from spud.conllu import Treebank
from spud.probe.decode import decode
from spud.probe.io import ReprSet
from spud.probe.model import relation_probs, subspace_distance
from spud.probe.train import Hyper, build_dataset, build_inventory, train

import random

D_H = 8


def toy_corpus(n_sents=20, seed=0):
    """Sentences whose representations linearly encode label and position."""
    rng = random.Random(seed)
    np_rng = np.random.default_rng(seed)
    sents = []
    reprs = ReprSet(d_h=D_H)
    for k in range(n_sents):
        n = rng.randint(2, 6)
        heads = random_heads(n, rng)
        s = heads_sentence(f"s{k}", heads, deprels=None)
        sents.append(s)
        # depth along dim 0, label flag along dim 1, noise elsewhere
        depth = []
        for i in range(n):
            d, node = 0, heads[i]
            while node:
                d += 1
                node = heads[node - 1]
            depth.append(d)
        mat = np_rng.normal(scale=0.01, size=(n, D_H))
        mat[:, 0] += np.array(depth, dtype=float)
        mat[:, 1] += np.array([1.0 if h == 0 else 0.0 for h in heads])
        reprs.add(f"s{k}", mat)
    return Treebank(sentences=sents), reprs


class TestInventory:
    def test_contains_root_and_sorted(self):
        tb, _ = toy_corpus(3)
        inv = build_inventory(tb)
        assert "root" in inv.labels
        assert inv.labels == sorted(inv.labels)


class TestBuildDataset:
    def test_alignment(self):
        tb, reprs = toy_corpus(5)
        ds = build_dataset(tb, reprs, reprs)
        assert len(ds) == 5
        assert ds.d_h == D_H

    def test_missing_sentence_skipped(self, caplog):
        tb, reprs = toy_corpus(5)
        del reprs.sentences["s0"]
        with caplog.at_level("WARNING"):
            ds = build_dataset(tb, reprs, reprs)
        assert len(ds) == 4
        assert "skipped 1" in caplog.text

    def test_length_mismatch_skipped(self):
        tb, reprs = toy_corpus(5)
        reprs.sentences["s1"] = np.zeros((99, D_H), dtype=np.float32)
        assert len(build_dataset(tb, reprs, reprs)) == 4

    def test_all_skipped_raises(self):
        tb, _ = toy_corpus(2)
        empty = ReprSet(d_h=D_H)
        with pytest.raises(ValueError):
            build_dataset(tb, empty, empty)

    def test_d_h_disagreement(self):
        tb, reprs = toy_corpus(2)
        with pytest.raises(ValueError):
            build_dataset(tb, reprs, ReprSet(d_h=D_H + 1))


class TestTrain:
    def setup_sets(self, seed=0):
        tb, reprs = toy_corpus(30, seed=seed)
        ds = build_dataset(tb, reprs, reprs)
        inv = build_inventory(tb)
        return ds, inv

    def test_zero_epochs_returns_init(self):
        ds, inv = self.setup_sets()
        hyper = Hyper(epochs=0, b_dim=2, seed=3)
        params = train(ds, ds, inv, hyper)
        expected = np.random.default_rng(3)
        scale = 1.0 / np.sqrt(D_H)
        ref = expected.uniform(-scale, scale, size=(len(inv), D_H))
        assert np.array_equal(params.L, ref)

    def test_same_seed_is_deterministic(self):
        ds, inv = self.setup_sets()
        hyper = Hyper(epochs=3, b_dim=2, seed=7)
        a = train(ds, ds, inv, hyper)
        b = train(ds, ds, inv, hyper)
        assert np.array_equal(a.L, b.L)
        assert np.array_equal(a.B, b.B)

    def test_training_improves_over_init(self):
        ds, inv = self.setup_sets()
        init = train(ds, ds, inv, Hyper(epochs=0, b_dim=2, seed=1))
        trained = train(ds, ds, inv,
                        Hyper(epochs=40, b_dim=2, seed=1, lr=0.05, patience=40))

        def las(params):
            hits = total = 0
            for ex in ds.examples:
                tree = decode(relation_probs(params, ex.reprs_rel),
                              subspace_distance(params, ex.reprs_dist),
                              params.inventory)
                for i in range(len(ex.gold_heads)):
                    hits += (tree.heads[i] == ex.gold_heads[i]
                             and tree.labels[i] == ex.gold_labels[i])
                    total += 1
            return hits / total

        assert las(trained) > las(init)
