"""Model backend protocol and tokenizer-output container."""

from __future__ import annotations

import abc
from dataclasses import dataclass

import numpy as np


@dataclass
class Encoding:
    """One tokenized sentence.

    `offsets` are character (start, end) pairs into the encoded text;
    special tokens carry (0, 0) and True in `special`.
    """
    tokens: list[str]
    offsets: list[tuple[int, int]]
    special: list[bool]

    def __post_init__(self):
        if not len(self.tokens) == len(self.offsets) == len(self.special):
            raise ValueError("tokens, offsets, and special flags must align")

    def __len__(self) -> int:
        return len(self.tokens)


class Backend(abc.ABC):
    """Inference interface the extraction pipelines run against."""

    @property
    @abc.abstractmethod
    def max_length(self) -> int:
        """Longest supported token sequence including special tokens."""

    @property
    @abc.abstractmethod
    def hidden_size(self) -> int:
        """Width of the hidden-state vectors."""

    @abc.abstractmethod
    def encode(self, text: str) -> Encoding:
        """Tokenize `text` with character offsets."""

    @abc.abstractmethod
    def causal_logprobs(self, enc: Encoding) -> list[float]:
        """Natural-log probability of each token given only preceding tokens.

        Entries for special tokens are never read and may be arbitrary.
        """

    @abc.abstractmethod
    def masked_logprob(self, enc: Encoding, masked: frozenset[int],
                       target: int) -> float:
        """Natural-log probability of the original token at `target` when
        the positions in `masked` (which include `target`) are masked out."""

    @abc.abstractmethod
    def hidden_states(self, enc: Encoding, layer: int) -> np.ndarray:
        """(len(enc), hidden_size) hidden states at `layer`; 0 = embeddings."""
