#!/usr/bin/env python3
"""Project a UDLexicons .conllul file onto the 4-column lexicon format.

The toolkit's lexicon loader expects tab-separated `form lemma upos feats`
rows. UDLexicons distributes richer CoNLL-UL entries whose lines carry a
leading numeric id (plain or range), then FORM, LEMMA, UPOS, XPOS, FEATS and
further columns. This script keeps the four relevant columns, drops comment
lines, deduplicates, and writes the rows sorted for reproducible output.

Usage:
    python tools/extract_udlexicon.py UDLex_English-Apertium.conllul out.lex \
        [--upos NOUN,VERB,ADJ,ADV,PROPN]
"""

from __future__ import annotations

import argparse
import sys


def is_index(field: str) -> bool:
    return field.replace("-", "", 1).replace(".", "", 1).isdigit()


def extract(lines, upos_filter=None):
    rows = set()
    skipped = 0
    for raw in lines:
        line = raw.rstrip("\n")
        if not line or line.startswith("#"):
            continue
        cols = line.split("\t")
        if cols and is_index(cols[0]):
            cols = cols[1:]
        if len(cols) < 5:
            skipped += 1
            continue
        form, lemma, upos, _xpos, feats = cols[:5]
        if not form or not lemma or not upos:
            skipped += 1
            continue
        if upos_filter and upos not in upos_filter:
            continue
        rows.add((form, lemma, upos, feats or "_"))
    return sorted(rows), skipped


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("conllul", help="UDLexicons .conllul input")
    parser.add_argument("out", help="4-column tab-separated output")
    parser.add_argument("--upos", default=None,
                        help="comma-separated UPOS whitelist")
    args = parser.parse_args(argv)
    upos_filter = set(args.upos.split(",")) if args.upos else None
    with open(args.conllul, encoding="utf-8") as f:
        rows, skipped = extract(f, upos_filter)
    with open(args.out, "w", encoding="utf-8") as f:
        for row in rows:
            f.write("\t".join(row) + "\n")
    print(f"wrote {len(rows)} entries ({skipped} malformed lines skipped)",
          file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
