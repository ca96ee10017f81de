"""CoNLL-U parsing, validation, serialization, and tree-structural utilities.

Supports the 10-column CoNLL-U v2 format. Multiword token ranges are kept
as structured values; empty nodes (ids like "5.1") are carried as opaque raw
lines so that serialization round-trips byte-for-byte.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

import numpy as np

CONTENT_UPOS = frozenset({"ADJ", "ADV", "NOUN", "PROPN", "VERB"})


class ConlluError(ValueError):
    """Malformed CoNLL-U input. Carries sentence id and line number when known."""

    def __init__(self, message, sent_id=None, line_no=None):
        loc = []
        if sent_id is not None:
            loc.append(f"sentence {sent_id!r}")
        if line_no is not None:
            loc.append(f"line {line_no}")
        if loc:
            message = f"{message} ({', '.join(loc)})"
        super().__init__(message)
        self.sent_id = sent_id
        self.line_no = line_no


def parse_feats(text: str) -> dict[str, str]:
    """Parse a FEATS column value into a feature dict ('_' means empty)."""
    if text == "_" or text == "":
        return {}
    feats = {}
    for item in text.split("|"):
        if "=" not in item:
            raise ConlluError(f"malformed FEATS item {item!r}")
        name, value = item.split("=", 1)
        feats[name] = value
    return feats


def format_feats(feats: dict[str, str]) -> str:
    """Serialize features in canonical form, sorted case-insensitively by name."""
    if not feats:
        return "_"
    return "|".join(f"{k}={feats[k]}" for k in sorted(feats, key=lambda n: (n.lower(), n)))


@dataclass
class Token:
    id: int
    form: str
    lemma: str
    upos: str
    xpos: str | None
    feats: dict[str, str]
    head: int
    deprel: str
    deps: str | None = None
    misc: str | None = None

    def space_after(self) -> bool:
        """Whether a space follows this token when detokenizing (MISC SpaceAfter)."""
        if self.misc is None:
            return True
        return not any(part == "SpaceAfter=No" for part in self.misc.split("|"))


@dataclass
class MwtRange:
    first: int
    last: int
    form: str
    misc: str | None = None


@dataclass
class Sentence:
    sent_id: str
    text: str | None
    comments: list[str]
    tokens: list[Token]
    mwt: list[MwtRange] = field(default_factory=list)
    # (anchor token id, raw line) for empty nodes; anchor 0 = before token 1
    empty_nodes: list[tuple[int, str]] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.tokens)

    def token_by_id(self, token_id: int) -> Token:
        if not 1 <= token_id <= len(self.tokens):
            raise KeyError(f"no token with id {token_id} in sentence {self.sent_id!r}")
        return self.tokens[token_id - 1]

    def mwt_covered_ids(self) -> set[int]:
        covered = set()
        for r in self.mwt:
            covered.update(range(r.first, r.last + 1))
        return covered

    def detokenize(self) -> str:
        """Rebuild surface text from forms, honoring MWT ranges and SpaceAfter=No."""
        parts = []
        covered = {}
        for r in self.mwt:
            for i in range(r.first, r.last + 1):
                covered[i] = r
        emitted_ranges = set()
        i = 1
        while i <= len(self.tokens):
            r = covered.get(i)
            if r is not None:
                if id(r) not in emitted_ranges:
                    emitted_ranges.add(id(r))
                    parts.append(r.form)
                    space = True
                    if r.misc and any(p == "SpaceAfter=No" for p in r.misc.split("|")):
                        space = False
                    if space and r.last < len(self.tokens):
                        parts.append(" ")
                i = r.last + 1 if i == r.first else i + 1
                continue
            tok = self.tokens[i - 1]
            parts.append(tok.form)
            if tok.space_after() and i < len(self.tokens):
                parts.append(" ")
            i += 1
        return "".join(parts)


@dataclass
class Treebank:
    sentences: list[Sentence]
    source_path: str = ""

    def __len__(self) -> int:
        return len(self.sentences)

    def __iter__(self):
        return iter(self.sentences)


def _parse_token_line(cols, sent_id, line_no) -> Token:
    try:
        tid = int(cols[0])
    except ValueError:
        raise ConlluError(f"bad token id {cols[0]!r}", sent_id, line_no)
    if tid < 1:
        raise ConlluError(f"token id must be >= 1, got {tid}", sent_id, line_no)
    try:
        head = int(cols[6])
    except ValueError:
        raise ConlluError(f"bad HEAD value {cols[6]!r}", sent_id, line_no)
    if head < 0:
        raise ConlluError(f"HEAD must be >= 0, got {head}", sent_id, line_no)
    if head == tid:
        raise ConlluError(f"token {tid} is its own head", sent_id, line_no)
    try:
        feats = parse_feats(cols[5])
    except ConlluError as e:
        raise ConlluError(str(e), sent_id, line_no)
    return Token(
        id=tid,
        form=cols[1],
        lemma=cols[2],
        upos=cols[3],
        xpos=None if cols[4] == "_" else cols[4],
        feats=feats,
        head=head,
        deprel=cols[7],
        deps=None if cols[8] == "_" else cols[8],
        misc=None if cols[9] == "_" else cols[9],
    )


def validate_tree(tokens: list[Token], sent_id=None, line_no=None) -> None:
    """Check that head values form a single tree over tokens 1..n."""
    n = len(tokens)
    roots = [t.id for t in tokens if t.head == 0]
    if len(roots) != 1:
        raise ConlluError(f"expected exactly one root, found {len(roots)}", sent_id, line_no)
    for t in tokens:
        if t.head > n:
            raise ConlluError(f"HEAD {t.head} of token {t.id} out of range", sent_id, line_no)
    # reachability from root over child edges
    children = {t.id: [] for t in tokens}
    for t in tokens:
        if t.head != 0:
            children[t.head].append(t.id)
    seen = set()
    queue = deque(roots)
    while queue:
        node = queue.popleft()
        if node in seen:
            continue
        seen.add(node)
        queue.extend(children[node])
    if len(seen) != n:
        raise ConlluError("head structure contains a cycle or disconnected token", sent_id, line_no)


def _finish_sentence(comments, tokens, mwt, empty_nodes, block_line_no) -> Sentence:
    sent_id = ""
    text = None
    for c in comments:
        if c.startswith("# sent_id"):
            sent_id = c.split("=", 1)[1].strip() if "=" in c else ""
        elif c.startswith("# text ") or c.startswith("# text="):
            text = c.split("=", 1)[1].lstrip(" ") if "=" in c else None
    ids = [t.id for t in tokens]
    if len(set(ids)) != len(ids):
        dup = next(i for i in ids if ids.count(i) > 1)
        raise ConlluError(f"duplicate token id {dup}", sent_id, block_line_no)
    if ids != list(range(1, len(ids) + 1)):
        raise ConlluError("token ids are not contiguous 1..n", sent_id, block_line_no)
    validate_tree(tokens, sent_id, block_line_no)
    n = len(tokens)
    last = 0
    for r in sorted(mwt, key=lambda r: r.first):
        if r.first > r.last or r.first < 1 or r.last > n:
            raise ConlluError(f"bad MWT range {r.first}-{r.last}", sent_id, block_line_no)
        if r.first <= last:
            raise ConlluError(f"overlapping MWT range {r.first}-{r.last}", sent_id, block_line_no)
        last = r.last
    return Sentence(sent_id=sent_id, text=text, comments=list(comments),
                    tokens=tokens, mwt=mwt, empty_nodes=empty_nodes)


def parse_conllu(text: str, source_path: str = "") -> Treebank:
    """Parse CoNLL-U text into a Treebank.

    Raises ConlluError (with sentence id and line number) on malformed lines,
    duplicate ids, or non-tree head structures.
    """
    sentences = []
    comments: list[str] = []
    tokens: list[Token] = []
    mwt: list[MwtRange] = []
    empty_nodes: list[tuple[int, str]] = []
    block_start = None
    seen_ids: set[str] = set()

    def flush(line_no):
        nonlocal comments, tokens, mwt, empty_nodes, block_start
        if not comments and not tokens:
            return
        sent = _finish_sentence(comments, tokens, mwt, empty_nodes, block_start)
        if sent.sent_id and sent.sent_id in seen_ids:
            raise ConlluError(f"duplicate sent_id {sent.sent_id!r}", sent.sent_id, line_no)
        seen_ids.add(sent.sent_id)
        sentences.append(sent)
        comments, tokens, mwt, empty_nodes, block_start = [], [], [], [], None

    for line_no, line in enumerate(text.split("\n"), start=1):
        if line == "":
            flush(line_no)
            continue
        if block_start is None:
            block_start = line_no
        if line.startswith("#"):
            comments.append(line)
            continue
        cols = line.split("\t")
        if len(cols) != 10:
            raise ConlluError(f"expected 10 tab-separated columns, got {len(cols)}",
                              None, line_no)
        tid = cols[0]
        if "-" in tid:
            first_s, _, last_s = tid.partition("-")
            try:
                first, last = int(first_s), int(last_s)
            except ValueError:
                raise ConlluError(f"bad MWT id {tid!r}", None, line_no)
            mwt.append(MwtRange(first=first, last=last, form=cols[1],
                                misc=None if cols[9] == "_" else cols[9]))
        elif "." in tid:
            anchor = int(tid.split(".", 1)[0])
            empty_nodes.append((anchor, line))
        else:
            tokens.append(_parse_token_line(cols, None, line_no))
    flush(len(text.split("\n")))
    return Treebank(sentences=sentences, source_path=source_path)


def _token_line(t: Token) -> str:
    return "\t".join([
        str(t.id), t.form, t.lemma, t.upos,
        t.xpos if t.xpos is not None else "_",
        format_feats(t.feats),
        str(t.head), t.deprel,
        t.deps if t.deps is not None else "_",
        t.misc if t.misc is not None else "_",
    ])


def serialize_sentence(s: Sentence) -> str:
    lines = list(s.comments)
    mwt_by_first = {r.first: r for r in s.mwt}
    empties: dict[int, list[str]] = {}
    for anchor, raw in s.empty_nodes:
        empties.setdefault(anchor, []).append(raw)
    lines.extend(empties.get(0, []))
    for t in s.tokens:
        r = mwt_by_first.get(t.id)
        if r is not None:
            lines.append("\t".join([
                f"{r.first}-{r.last}", r.form, "_", "_", "_", "_", "_", "_", "_",
                r.misc if r.misc is not None else "_",
            ]))
        lines.append(_token_line(t))
        lines.extend(empties.get(t.id, []))
    return "\n".join(lines) + "\n"


def serialize(tb: Treebank) -> str:
    """Serialize a Treebank to CoNLL-U text; exact inverse of parse_conllu."""
    return "".join(serialize_sentence(s) + "\n" for s in tb.sentences)


def path_distance_matrix(s: Sentence) -> np.ndarray:
    """All-pairs undirected path lengths in the dependency tree (n x n, int)."""
    n = len(s.tokens)
    adj = [[] for _ in range(n)]
    for t in s.tokens:
        if t.head != 0:
            adj[t.id - 1].append(t.head - 1)
            adj[t.head - 1].append(t.id - 1)
    dist = np.zeros((n, n), dtype=np.int64)
    for start in range(n):
        seen = np.full(n, -1, dtype=np.int64)
        seen[start] = 0
        queue = deque([start])
        while queue:
            u = queue.popleft()
            for v in adj[u]:
                if seen[v] < 0:
                    seen[v] = seen[u] + 1
                    queue.append(v)
        dist[start] = seen
    return dist


def filter_short(tb: Treebank, min_words: int) -> Treebank:
    """Keep only sentences with at least min_words syntactic tokens."""
    if min_words < 1:
        raise ValueError("min_words must be >= 1")
    kept = [s for s in tb.sentences if len(s.tokens) >= min_words]
    return Treebank(sentences=kept, source_path=tb.source_path)


def load(path) -> Treebank:
    with open(path, encoding="utf-8") as f:
        return parse_conllu(f.read(), source_path=str(path))


def save(tb: Treebank, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(serialize(tb))
