"""Command-line entry point: score and reprs extraction."""

from __future__ import annotations

import argparse
import logging
import sys

from .config import REGIMES, AdapterConfig
from .reprs import extract_reprs
from .scores import extract_scores

log = logging.getLogger("spud_adapter")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="spud-adapter", description=__doc__)
    parser.add_argument("--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    score = sub.add_parser("score", help="emit per-token log-probabilities")
    score.add_argument("--model", required=True)
    score.add_argument("--regime", required=True, choices=REGIMES)
    score.add_argument("--orig-treebank", required=True)
    score.add_argument("--nonce-treebank", default=None)
    score.add_argument("--device", default="cpu")
    score.add_argument("--batch-size", type=int, default=16)
    score.add_argument("--out", required=True)

    reprs = sub.add_parser("reprs", help="emit mean-pooled word vectors")
    reprs.add_argument("--model", required=True)
    reprs.add_argument("--treebank", required=True)
    reprs.add_argument("--layer", type=int, required=True,
                       help="hidden-state layer; 0 is the embedding layer")
    reprs.add_argument("--random-weights", action="store_true",
                       help="randomly initialized parameters (baseline runs)")
    reprs.add_argument("--device", default="cpu")
    reprs.add_argument("--batch-size", type=int, default=16)
    reprs.add_argument("--out", required=True)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(stream=sys.stderr,
                        level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    from .hf import HuggingFaceBackend

    try:
        if args.command == "score":
            config = AdapterConfig(model=args.model, regime=args.regime,
                                   batch_size=args.batch_size,
                                   device=args.device)
            backend = HuggingFaceBackend(config)
            stats = extract_scores(config, backend, args.out,
                                   args.orig_treebank, args.nonce_treebank)
            log.info("scored %d sentences", stats.scored_sentences)
        else:
            config = AdapterConfig(model=args.model, layer=args.layer,
                                   batch_size=args.batch_size,
                                   device=args.device,
                                   randomize_weights=args.random_weights)
            backend = HuggingFaceBackend(config, kind="masked")
            stats = extract_reprs(config, backend, args.out, args.treebank)
            log.info("wrote %d sentences", stats.written_sentences)
    except (ValueError, OSError) as e:
        print(f"spud-adapter: {e}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
