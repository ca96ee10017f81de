"""Token log-probability extraction in the token-score line-JSON format."""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field

from .align import align_words, mask_plan
from .backend import Backend
from .config import AdapterConfig
from .treebank import SurfaceSentence, read_sentences

log = logging.getLogger(__name__)


@dataclass
class ScoreStats:
    scored_sentences: int = 0
    skipped_alignment: int = 0
    skipped_length: int = 0


def _score_sentence(backend: Backend, config: AdapterConfig,
                    sent: SurfaceSentence, variant: str, out,
                    stats: ScoreStats) -> None:
    enc = backend.encode(sent.text)
    if len(enc) > backend.max_length:
        stats.skipped_length += 1
        return
    word_ids = align_words(enc, sent.spans())
    if word_ids is None:
        stats.skipped_alignment += 1
        return

    rows = []
    if config.regime == "alm":
        logprobs = backend.causal_logprobs(enc)
        for pos, wid in enumerate(word_ids):
            if wid is not None:
                rows.append((pos, wid, logprobs[pos]))
    else:
        for pos, masked in mask_plan(word_ids, config.regime):
            rows.append((pos, word_ids[pos],
                         backend.masked_logprob(enc, masked, pos)))

    for token_index, (pos, wid, logprob) in enumerate(rows):
        record = {"sent_id": sent.sent_id, "variant": variant,
                  "regime": config.regime, "token_index": token_index,
                  "word_index": wid, "logprob": logprob,
                  "token": enc.tokens[pos]}
        out.write(json.dumps(record, ensure_ascii=False) + "\n")
    stats.scored_sentences += 1


def extract_scores(config: AdapterConfig, backend: Backend, out_path,
                   orig_treebank, nonce_treebank=None) -> ScoreStats:
    """Write per-token log-probabilities for one or two treebank variants.

    Sentences whose subwords cannot be aligned to word boundaries, or that
    exceed the model length, are skipped and counted.
    """
    variants = [("orig", orig_treebank)]
    if nonce_treebank is not None:
        variants.append(("nonce", nonce_treebank))
    stats = ScoreStats()
    with open(out_path, "w", encoding="utf-8") as out:
        for variant, path in variants:
            for sent in read_sentences(path):
                _score_sentence(backend, config, sent, variant, out, stats)
    if stats.skipped_alignment or stats.skipped_length:
        log.warning("skipped %d unalignable and %d over-length sentences",
                    stats.skipped_alignment, stats.skipped_length)
    return stats
