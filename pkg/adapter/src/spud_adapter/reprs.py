"""Word-level representation extraction in the SPUDREPR binary format.

Per word, the mean of its subword hidden states at the configured layer.
Layer 0 is the embedding layer; randomized-weights backends provide the
random baselines in the same format.
"""

from __future__ import annotations

import logging
import struct
from dataclasses import dataclass

import numpy as np

from .align import align_words
from .backend import Backend
from .config import AdapterConfig
from .treebank import read_sentences

log = logging.getLogger(__name__)

REPR_MAGIC = b"SPUDREPR"
FORMAT_VERSION = 1


@dataclass
class ReprStats:
    written_sentences: int = 0
    skipped_alignment: int = 0
    skipped_length: int = 0


def pool_words(hidden: np.ndarray, word_ids: list[int | None],
               n_words: int) -> np.ndarray:
    """Mean the subword rows of each word; special tokens are ignored."""
    d_h = hidden.shape[1]
    out = np.zeros((n_words, d_h), dtype=np.float32)
    counts = np.zeros(n_words, dtype=np.int64)
    for row, wid in zip(hidden, word_ids):
        if wid is not None:
            out[wid] += row
            counts[wid] += 1
    if np.any(counts == 0):
        raise ValueError("word without any subword rows")
    return out / counts[:, None]


def extract_reprs(config: AdapterConfig, backend: Backend, out_path,
                  treebank) -> ReprStats:
    """Write mean-pooled word vectors for every alignable sentence."""
    if config.layer is None:
        raise ValueError("a layer index is required for representation "
                         "extraction")
    stats = ReprStats()
    with open(out_path, "wb") as out:
        out.write(REPR_MAGIC)
        out.write(struct.pack("<HI", FORMAT_VERSION, backend.hidden_size))
        for sent in read_sentences(treebank):
            enc = backend.encode(sent.text)
            if len(enc) > backend.max_length:
                stats.skipped_length += 1
                continue
            word_ids = align_words(enc, sent.spans())
            if word_ids is None:
                stats.skipped_alignment += 1
                continue
            hidden = backend.hidden_states(enc, config.layer)
            pooled = pool_words(hidden, word_ids, len(sent.words))
            if not np.all(np.isfinite(pooled)):
                raise ValueError(f"non-finite representation for sentence "
                                 f"{sent.sent_id!r}")
            sid = sent.sent_id.encode("utf-8")
            out.write(struct.pack("<H", len(sid)))
            out.write(sid)
            out.write(struct.pack("<I", pooled.shape[0]))
            out.write(np.ascontiguousarray(pooled, dtype="<f4").tobytes())
            stats.written_sentences += 1
    if stats.skipped_alignment or stats.skipped_length:
        log.warning("skipped %d unalignable and %d over-length sentences",
                    stats.skipped_alignment, stats.skipped_length)
    return stats
