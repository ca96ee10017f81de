"""Subword-to-word alignment and per-regime masking plans."""

from __future__ import annotations

from .backend import Encoding


def align_words(enc: Encoding, spans: list[tuple[int, int]]) -> list[int | None] | None:
    """Word index for every encoded position, None for special tokens.

    Each non-special subword must fall entirely inside exactly one word span
    and every word must receive at least one subword; otherwise the sentence
    is unalignable and None is returned.
    """
    word_ids: list[int | None] = []
    covered = [False] * len(spans)
    cursor = 0
    for offset, is_special in zip(enc.offsets, enc.special):
        if is_special:
            word_ids.append(None)
            continue
        start, end = offset
        while cursor < len(spans) and spans[cursor][1] <= start:
            cursor += 1
        if cursor >= len(spans):
            return None
        w_start, w_end = spans[cursor]
        if start < w_start or end > w_end or start >= end:
            return None
        word_ids.append(cursor)
        covered[cursor] = True
    if not all(covered):
        return None
    return word_ids


def mask_plan(word_ids: list[int | None], regime: str) -> list[tuple[int, frozenset[int]]]:
    """(target position, masked positions) per scored subword.

    For mlm_pppl only the target is masked; for mlm_pppl_l2r the target and
    the following subwords of the same word are masked. The alm regime does
    not mask and has no plan.
    """
    if regime == "alm":
        return []
    plan = []
    for i, wid in enumerate(word_ids):
        if wid is None:
            continue
        if regime == "mlm_pppl":
            masked = frozenset({i})
        elif regime == "mlm_pppl_l2r":
            masked = frozenset(j for j in range(i, len(word_ids))
                               if word_ids[j] == wid)
        else:
            raise ValueError(f"unknown regime {regime!r}")
        plan.append((i, masked))
    return plan


def visible_table(word_ids: list[int | None], regime: str) -> list[tuple[int, frozenset[int]]]:
    """(target, visible non-special positions) per scored subword.

    A readable view of the masking behavior: for alm only preceding tokens
    are visible; for the masked regimes everything outside the mask is.
    """
    scored = [i for i, wid in enumerate(word_ids) if wid is not None]
    if regime == "alm":
        return [(i, frozenset(j for j in scored if j < i)) for i in scored]
    return [(i, frozenset(j for j in scored if j not in masked))
            for i, masked in mask_plan(word_ids, regime)]
