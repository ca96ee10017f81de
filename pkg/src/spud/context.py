"""Syntactic contexts and lemma candidate pools for replacement sampling."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

from .conllu import CONTENT_UPOS, Sentence, Treebank


@dataclass(frozen=True)
class SyntacticContext:
    """UPOS + relation to head + multiset of relations to dependents.

    dep_deprels is stored sorted so that equality and hashing are
    order-insensitive over the multiset.
    """

    upos: str
    head_deprel: str
    dep_deprels: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "dep_deprels", tuple(sorted(self.dep_deprels)))

    def key(self) -> str:
        return f"{self.upos}|{self.head_deprel}|{','.join(self.dep_deprels)}"

    @classmethod
    def from_key(cls, key: str) -> "SyntacticContext":
        upos, head_deprel, deps = key.split("|", 2)
        dep_deprels = tuple(deps.split(",")) if deps else ()
        return cls(upos=upos, head_deprel=head_deprel, dep_deprels=dep_deprels)


def extract_context(s: Sentence, token_id: int, *, ignore_deprels: bool = False,
                    drop_punct_deps: bool = False) -> SyntacticContext:
    """Syntactic context of a token: (UPOS, deprel to head, deprels to dependents).

    With ignore_deprels the context degrades to UPOS only (POS-only ablation).
    With drop_punct_deps, punct dependents are excluded from the multiset.
    """
    tok = s.token_by_id(token_id)
    if ignore_deprels:
        return SyntacticContext(upos=tok.upos, head_deprel="", dep_deprels=())
    deps = [t.deprel for t in s.tokens if t.head == token_id]
    if drop_punct_deps:
        deps = [d for d in deps if d.split(":")[0] != "punct"]
    return SyntacticContext(upos=tok.upos, head_deprel=tok.deprel,
                            dep_deprels=tuple(deps))


@dataclass
class CandidatePool:
    """Lemma attestation counts per syntactic context."""

    contexts: dict[SyntacticContext, Counter] = field(default_factory=dict)
    provenance: str = ""

    def add(self, ctx: SyntacticContext, lemma: str, count: int = 1) -> None:
        self.contexts.setdefault(ctx, Counter())[lemma.lower()] += count

    def __len__(self) -> int:
        return len(self.contexts)


def build_pools(tb: Treebank, content_upos=CONTENT_UPOS, *,
                ignore_deprels: bool = False, drop_punct_deps: bool = False,
                lemma_transform=None) -> CandidatePool:
    """Collect one (context, lemma) attestation per content token of tb.

    lemma_transform, when given, is applied before lowercasing (used for
    e.g. Arabic diacritic stripping).
    """
    pool = CandidatePool(provenance=tb.source_path)
    for s in tb.sentences:
        for tok in s.tokens:
            if tok.upos not in content_upos:
                continue
            ctx = extract_context(s, tok.id, ignore_deprels=ignore_deprels,
                                  drop_punct_deps=drop_punct_deps)
            lemma = tok.lemma
            if lemma_transform is not None:
                lemma = lemma_transform(lemma)
            pool.add(ctx, lemma)
    return pool


def candidates(pool: CandidatePool, ctx: SyntacticContext, exclude: str) -> list[str]:
    """Lemmas attested under exactly ctx, in lexicographic order.

    exclude is removed when at least one other lemma exists; with a
    single-lemma pool the excluded lemma itself is returned (self-replacement
    as last resort).
    """
    counter = pool.contexts.get(ctx)
    if not counter:
        return []
    exclude = exclude.lower()
    lemmas = sorted(counter)
    others = [l for l in lemmas if l != exclude]
    return others if others else lemmas


def dump_pool(pool: CandidatePool, path) -> None:
    """Write the pool as sorted `context_key<TAB>lemma<TAB>count` lines."""
    rows = []
    for ctx, counter in pool.contexts.items():
        key = ctx.key()
        for lemma, count in counter.items():
            rows.append((key, lemma, count))
    rows.sort()
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(f"# provenance: {pool.provenance}\n")
        for key, lemma, count in rows:
            f.write(f"{key}\t{lemma}\t{count}\n")


def load_pool(path) -> CandidatePool:
    pool = CandidatePool()
    with open(path, encoding="utf-8") as f:
        for line in f:
            line = line.rstrip("\n")
            if not line:
                continue
            if line.startswith("# provenance:"):
                pool.provenance = line.split(":", 1)[1].strip()
                continue
            key, lemma, count = line.split("\t")
            pool.add(SyntacticContext.from_key(key), lemma, int(count))
    return pool
