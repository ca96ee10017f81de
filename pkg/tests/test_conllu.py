"""CoNLL-U parsing, round-trip fidelity, and tree utilities."""

import random
from collections import deque

import numpy as np
import pytest

from helpers import DATA, MINI_LANGS, heads_sentence, random_heads
from spud.conllu import (
    ConlluError,
    Treebank,
    filter_short,
    format_feats,
    parse_conllu,
    parse_feats,
    path_distance_matrix,
    serialize,
    validate_tree,
)

SAMPLE = """\
# sent_id = s1
# text = The service was friendly and fast.
1\tThe\tthe\tDET\t_\tDefinite=Def|PronType=Art\t2\tdet\t_\t_
2\tservice\tservice\tNOUN\t_\tNumber=Sing\t4\tnsubj\t_\t_
3\twas\tbe\tAUX\t_\t_\t4\tcop\t_\t_
4\tfriendly\tfriendly\tADJ\t_\tDegree=Pos\t0\troot\t_\t_
5\tand\tand\tCCONJ\t_\t_\t6\tcc\t_\t_
6\tfast\tfast\tADJ\t_\tDegree=Pos\t4\tcconj\t_\tSpaceAfter=No
7\t.\t.\tPUNCT\t_\t_\t4\tpunct\t_\t_
"""

MWT_SAMPLE = """\
# sent_id = m1
# text = Paul parle du match.
1\tPaul\tPaul\tPROPN\t_\t_\t2\tnsubj\t_\t_
2\tparle\tparler\tVERB\t_\t_\t0\troot\t_\t_
3-4\tdu\t_\t_\t_\t_\t_\t_\t_\t_
3\tde\tde\tADP\t_\t_\t5\tcase\t_\t_
4\tle\tle\tDET\t_\t_\t5\tdet\t_\t_
5\tmatch\tmatch\tNOUN\t_\t_\t2\tobl\t_\tSpaceAfter=No
6\t.\t.\tPUNCT\t_\t_\t2\tpunct\t_\t_
"""

EMPTY_NODE_SAMPLE = """\
# sent_id = e1
1\tSue\tSue\tPROPN\t_\t_\t2\tnsubj\t_\t_
2\tlikes\tlike\tVERB\t_\t_\t0\troot\t_\t_
3\tcoffee\tcoffee\tNOUN\t_\t_\t2\tobj\t_\t_
3.1\tlikes\tlike\tVERB\t_\t_\t_\t_\t_\t_
4\ttea\ttea\tNOUN\t_\t_\t3\tconj\t_\t_
"""


class TestParsing:
    def test_figure_sentence(self):
        tb = parse_conllu(SAMPLE)
        assert len(tb) == 1
        s = tb.sentences[0]
        assert s.sent_id == "s1"
        assert s.text == "The service was friendly and fast."
        service = s.token_by_id(2)
        assert service.deprel == "nsubj"
        assert s.token_by_id(service.head).form == "friendly"
        assert s.token_by_id(4).head == 0

    def test_empty_input(self):
        assert len(parse_conllu("")) == 0
        assert serialize(Treebank(sentences=[])) == ""

    def test_wrong_column_count(self):
        bad = "\t".join(["1", "a", "a", "NOUN", "_", "_", "0", "root", "_"])
        with pytest.raises(ConlluError, match="line 1"):
            parse_conllu(bad + "\n")

    def test_duplicate_token_id(self):
        text = ("1\ta\ta\tNOUN\t_\t_\t0\troot\t_\t_\n"
                "1\tb\tb\tNOUN\t_\t_\t0\tdep\t_\t_\n")
        with pytest.raises(ConlluError, match="duplicate token id"):
            parse_conllu(text)

    def test_non_contiguous_ids(self):
        text = ("1\ta\ta\tNOUN\t_\t_\t0\troot\t_\t_\n"
                "3\tb\tb\tNOUN\t_\t_\t1\tdep\t_\t_\n")
        with pytest.raises(ConlluError, match="contiguous"):
            parse_conllu(text)

    def test_self_head(self):
        with pytest.raises(ConlluError, match="own head"):
            parse_conllu("1\ta\ta\tNOUN\t_\t_\t1\troot\t_\t_\n")

    def test_duplicate_sent_id(self):
        block = "# sent_id = x\n1\ta\ta\tNOUN\t_\t_\t0\troot\t_\t_\n"
        with pytest.raises(ConlluError, match="duplicate sent_id"):
            parse_conllu(block + "\n" + block)

    def test_head_out_of_range(self):
        with pytest.raises(ConlluError, match="out of range"):
            parse_conllu("1\ta\ta\tNOUN\t_\t_\t0\troot\t_\t_\n"
                         "2\tb\tb\tNOUN\t_\t_\t9\tdep\t_\t_\n")


class TestFeats:
    def test_case_insensitive_sort(self):
        feats = parse_feats("Number=Sing|Case=Nom")
        assert format_feats(feats) == "Case=Nom|Number=Sing"
        # lowercase names interleave with uppercase ones
        assert format_feats({"b": "1", "A": "2"}) == "A=2|b=1"

    def test_empty(self):
        assert parse_feats("_") == {}
        assert format_feats({}) == "_"

    def test_malformed(self):
        with pytest.raises(ConlluError):
            parse_feats("NoEquals")


class TestRoundTrip:
    @pytest.mark.parametrize("lang", MINI_LANGS)
    def test_mini_corpus_byte_exact(self, lang):
        raw = (DATA / f"{lang}.conllu").read_text(encoding="utf-8")
        assert serialize(parse_conllu(raw)) == raw

    def test_mwt_round_trip(self):
        assert serialize(parse_conllu(MWT_SAMPLE)) == MWT_SAMPLE + "\n"

    def test_empty_node_round_trip(self):
        tb = parse_conllu(EMPTY_NODE_SAMPLE)
        assert len(tb.sentences[0].tokens) == 4
        assert serialize(tb) == EMPTY_NODE_SAMPLE + "\n"

    def test_misc_and_deps_verbatim(self):
        line = "1\ta\ta\tNOUN\t_\t_\t0\troot\t0:root\tSpaceAfter=No|X=1\n"
        assert serialize(parse_conllu(line)) == line + "\n"


class TestDetokenize:
    def test_space_after(self):
        s = parse_conllu(SAMPLE).sentences[0]
        assert s.detokenize() == "The service was friendly and fast."

    def test_mwt_surface(self):
        s = parse_conllu(MWT_SAMPLE).sentences[0]
        assert s.detokenize() == "Paul parle du match."


class TestTreeValidation:
    def test_two_roots(self):
        text = ("1\ta\ta\tNOUN\t_\t_\t0\troot\t_\t_\n"
                "2\tb\tb\tNOUN\t_\t_\t0\troot\t_\t_\n")
        with pytest.raises(ConlluError, match="exactly one root"):
            parse_conllu(text)

    def test_cycle(self):
        text = ("1\ta\ta\tNOUN\t_\t_\t0\troot\t_\t_\n"
                "2\tb\tb\tNOUN\t_\t_\t3\tdep\t_\t_\n"
                "3\tc\tc\tNOUN\t_\t_\t2\tdep\t_\t_\n")
        with pytest.raises(ConlluError, match="cycle or disconnected"):
            parse_conllu(text)

    def test_fuzzed_head_perturbations(self):
        rng = random.Random(7)
        for _ in range(200):
            n = rng.randint(2, 12)
            heads = random_heads(n, rng)
            s = heads_sentence("f", heads)
            validate_tree(s.tokens)
            bad = heads_sentence("f", heads)
            mode = rng.choice(["second_root", "cycle"])
            if mode == "second_root":
                victim = rng.choice([t for t in bad.tokens if t.head != 0])
                victim.head = 0
            else:
                root = next(t for t in bad.tokens if t.head == 0)
                root.head = rng.randint(1, n)
                if root.head == root.id:
                    root.head = root.id % n + 1
            with pytest.raises(ConlluError):
                validate_tree(bad.tokens)


def bfs_oracle(heads: list[int]) -> np.ndarray:
    n = len(heads)
    adj = [[] for _ in range(n)]
    for i, h in enumerate(heads):
        if h:
            adj[i].append(h - 1)
            adj[h - 1].append(i)
    out = np.zeros((n, n), dtype=int)
    for start in range(n):
        seen = {start: 0}
        q = deque([start])
        while q:
            u = q.popleft()
            for v in adj[u]:
                if v not in seen:
                    seen[v] = seen[u] + 1
                    q.append(v)
        for j, d in seen.items():
            out[start, j] = d
    return out


class TestPathDistance:
    def test_known_values(self):
        # why does my snake refuse to eat ?
        heads = [5, 5, 4, 5, 0, 7, 5, 5]
        s = heads_sentence("snake", heads)
        d = path_distance_matrix(s)
        assert d[2, 5] == 4  # my .. to
        assert d[4, 6] == 1  # refuse .. eat
        assert np.array_equal(d, d.T)
        assert np.all(np.diag(d) == 0)

    def test_single_token(self):
        s = heads_sentence("one", [0])
        assert path_distance_matrix(s).tolist() == [[0]]

    def test_random_trees_vs_oracle(self):
        rng = random.Random(11)
        for _ in range(500):
            n = rng.randint(1, 20)
            heads = random_heads(n, rng)
            s = heads_sentence("r", heads)
            assert np.array_equal(path_distance_matrix(s), bfs_oracle(heads))


class TestFilterShort:
    def test_threshold(self):
        sents = [heads_sentence(f"s{n}", random_heads(n, random.Random(n)))
                 for n in (3, 4, 5)]
        tb = Treebank(sentences=sents)
        kept = filter_short(tb, 4)
        assert [len(s.tokens) for s in kept.sentences] == [4, 5]

    def test_identity(self):
        tb = Treebank(sentences=[heads_sentence("a", [0])])
        assert len(filter_short(tb, 1)) == 1

    def test_bad_min(self):
        with pytest.raises(ValueError):
            filter_short(Treebank(sentences=[]), 0)
