"""Shared test utilities: random trees and sentence construction."""

from __future__ import annotations

import random
from pathlib import Path

from spud.conllu import Sentence, Token

DATA = Path(__file__).resolve().parents[1] / "data" / "mini"

MINI_LANGS = ("ar", "de", "en", "fr", "ru")


def random_heads(n: int, rng: random.Random) -> list[int]:
    """Random labeled tree over n nodes as a 1-based head list (0 = root)."""
    order = list(range(1, n + 1))
    rng.shuffle(order)
    heads = [0] * (n + 1)
    for i, node in enumerate(order):
        heads[node] = 0 if i == 0 else rng.choice(order[:i])
    return heads[1:]


def make_sentence(sent_id: str, rows, mwt=()) -> Sentence:
    """Build a Sentence from (form, lemma, upos, feats, head, deprel) rows."""
    tokens = []
    for i, row in enumerate(rows, start=1):
        form, lemma, upos, feats, head, deprel = row
        tokens.append(Token(id=i, form=form, lemma=lemma, upos=upos, xpos=None,
                            feats=dict(feats), head=head, deprel=deprel))
    return Sentence(sent_id=sent_id, text=None, comments=[], tokens=tokens,
                    mwt=list(mwt))


def heads_sentence(sent_id: str, heads: list[int],
                   deprels: list[str] | None = None) -> Sentence:
    """A minimal NOUN-only sentence realizing the given head structure."""
    n = len(heads)
    if deprels is None:
        deprels = ["root" if h == 0 else "dep" for h in heads]
    rows = [(f"w{i}", f"w{i}", "NOUN", {}, heads[i], deprels[i])
            for i in range(n)]
    return make_sentence(sent_id, rows)
