"""Binary wire formats for word representations and probe parameters.

Representation file: magic ``SPUDREPR``, u16 format version, u32 d_h, then
per sentence a u16-length-prefixed UTF-8 sent_id, u32 word count, and the
word-by-d_h float32 matrix (little-endian, row-major).

Parameter file: magic ``SPUDPROB``, u16 version, u32 (d_h, b, l), the label
inventory as u16-length-prefixed UTF-8 strings, then L, its bias, and B as
float32 matrices.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass, field

import numpy as np

from .model import LabelInventory, ProbeParams

REPR_MAGIC = b"SPUDREPR"
PROB_MAGIC = b"SPUDPROB"
FORMAT_VERSION = 1


class FormatError(ValueError):
    pass


@dataclass
class ReprSet:
    d_h: int
    sentences: dict[str, np.ndarray] = field(default_factory=dict)

    def add(self, sent_id: str, matrix: np.ndarray) -> None:
        matrix = np.asarray(matrix, dtype=np.float32)
        if matrix.ndim != 2 or matrix.shape[1] != self.d_h:
            raise ValueError(f"expected (n, {self.d_h}) matrix, got {matrix.shape}")
        if not np.all(np.isfinite(matrix)):
            raise ValueError(f"non-finite representation for sentence {sent_id!r}")
        self.sentences[sent_id] = matrix

    def __len__(self) -> int:
        return len(self.sentences)

    def __getitem__(self, sent_id: str) -> np.ndarray:
        return self.sentences[sent_id]

    def __contains__(self, sent_id: str) -> bool:
        return sent_id in self.sentences


def _read_exact(f, size):
    data = f.read(size)
    if len(data) != size:
        raise FormatError("unexpected end of file")
    return data


def _write_str(f, text: str) -> None:
    data = text.encode("utf-8")
    f.write(struct.pack("<H", len(data)))
    f.write(data)


def _read_str(f) -> str:
    (length,) = struct.unpack("<H", _read_exact(f, 2))
    return _read_exact(f, length).decode("utf-8")


def save_reprs(reprs: ReprSet, path) -> None:
    with open(path, "wb") as f:
        f.write(REPR_MAGIC)
        f.write(struct.pack("<HI", FORMAT_VERSION, reprs.d_h))
        for sent_id, matrix in reprs.sentences.items():
            _write_str(f, sent_id)
            f.write(struct.pack("<I", matrix.shape[0]))
            f.write(np.ascontiguousarray(matrix, dtype="<f4").tobytes())


def load_reprs(path) -> ReprSet:
    with open(path, "rb") as f:
        magic = f.read(len(REPR_MAGIC))
        if magic != REPR_MAGIC:
            raise FormatError(f"bad magic {magic!r} in {path}")
        version, d_h = struct.unpack("<HI", _read_exact(f, 6))
        if version != FORMAT_VERSION:
            raise FormatError(f"unsupported format version {version}")
        reprs = ReprSet(d_h=d_h)
        while True:
            head = f.read(2)
            if not head:
                break
            (id_len,) = struct.unpack("<H", head)
            sent_id = _read_exact(f, id_len).decode("utf-8")
            (n_words,) = struct.unpack("<I", _read_exact(f, 4))
            data = _read_exact(f, n_words * d_h * 4)
            matrix = np.frombuffer(data, dtype="<f4").reshape(n_words, d_h)
            reprs.add(sent_id, matrix.copy())
        return reprs


def save_params(params: ProbeParams, path) -> None:
    with open(path, "wb") as f:
        f.write(PROB_MAGIC)
        f.write(struct.pack("<HIII", FORMAT_VERSION, params.d_h, params.b_dim,
                            len(params.inventory)))
        for label in params.inventory.labels:
            _write_str(f, label)
        f.write(np.ascontiguousarray(params.L, dtype="<f4").tobytes())
        f.write(np.ascontiguousarray(params.L_bias, dtype="<f4").tobytes())
        f.write(np.ascontiguousarray(params.B, dtype="<f4").tobytes())


def load_params(path) -> ProbeParams:
    with open(path, "rb") as f:
        magic = f.read(len(PROB_MAGIC))
        if magic != PROB_MAGIC:
            raise FormatError(f"bad magic {magic!r} in {path}")
        version, d_h, b_dim, n_labels = struct.unpack("<HIII", _read_exact(f, 14))
        if version != FORMAT_VERSION:
            raise FormatError(f"unsupported format version {version}")
        labels = [_read_str(f) for _ in range(n_labels)]
        L = np.frombuffer(_read_exact(f, n_labels * d_h * 4), dtype="<f4")
        bias = np.frombuffer(_read_exact(f, n_labels * 4), dtype="<f4")
        B = np.frombuffer(_read_exact(f, b_dim * d_h * 4), dtype="<f4")
        return ProbeParams(
            L=L.reshape(n_labels, d_h).astype(float),
            L_bias=bias.astype(float),
            B=B.reshape(b_dim, d_h).astype(float),
            inventory=LabelInventory(labels),
        )
