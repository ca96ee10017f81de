"""Minimal CoNLL-U surface reader.

The adapter only needs sentence ids and word forms; annotation columns are
left to the toolkit that consumes the emitted files. Multiword-token range
lines and empty-node lines are skipped.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass
class SurfaceSentence:
    sent_id: str
    words: list[str]

    @property
    def text(self) -> str:
        """Space-joined forms; gives every word an unambiguous span."""
        return " ".join(self.words)

    def spans(self) -> list[tuple[int, int]]:
        """Character (start, end) of each word within `text`."""
        out, pos = [], 0
        for w in self.words:
            out.append((pos, pos + len(w)))
            pos += len(w) + 1
        return out


def read_sentences(path) -> list[SurfaceSentence]:
    sentences = []
    sent_id, words = None, []
    with open(path, encoding="utf-8") as f:
        for lineno, raw in enumerate(f, start=1):
            line = raw.rstrip("\n")
            if not line:
                if words:
                    sentences.append(SurfaceSentence(
                        sent_id=sent_id or f"sentence-{len(sentences) + 1}",
                        words=words))
                sent_id, words = None, []
                continue
            if line.startswith("#"):
                if line[1:].split("=", 1)[0].strip() == "sent_id":
                    sent_id = line.split("=", 1)[1].strip()
                continue
            cols = line.split("\t")
            if len(cols) != 10:
                raise ValueError(f"{path}: line {lineno}: expected 10 columns, "
                                 f"got {len(cols)}")
            if "-" in cols[0] or "." in cols[0]:
                continue
            words.append(cols[1])
    if words:
        sentences.append(SurfaceSentence(
            sent_id=sent_id or f"sentence-{len(sentences) + 1}", words=words))
    return sentences
