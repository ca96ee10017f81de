"""Command-line entry point.

Subcommands: generate, stats, score, ttr, probe train, probe eval. Options
can be preloaded from a TOML config file (`--config`); explicit flags win.
Every run that produces output also writes a `run-manifest.json` with the
resolved configuration and SHA-256 digests of its input files. Exit codes:
0 success, 1 usage error, 2 data error.
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import hashlib
import json
import logging
import sys
from pathlib import Path

try:
    import tomllib
except ModuleNotFoundError:
    import tomli as tomllib

from . import __version__, conllu, context, generator, lexicon, scoring
from .probe import io as probe_io
from .probe.decode import decode as decode_tree
from .probe.decode import evaluate
from .probe.model import relation_probs, subspace_distance
from .probe.train import Hyper, build_dataset, build_inventory
from .probe.train import train as train_probe

log = logging.getLogger("spud")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}\n{self.format_usage()}")


def _sha256(path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as f:
        for chunk in iter(lambda: f.read(1 << 20), b""):
            h.update(chunk)
    return h.hexdigest()


def _write_manifest(directory: Path, args: argparse.Namespace, inputs) -> None:
    config = {}
    for key, value in sorted(vars(args).items()):
        if key in ("func", "config"):
            continue
        config[key] = str(value) if isinstance(value, Path) else value
    manifest = {
        "tool": f"spud {__version__}",
        "command": args.command,
        "config": config,
        "inputs": {str(p): _sha256(p) for p in inputs if p is not None},
    }
    directory.mkdir(parents=True, exist_ok=True)
    with open(directory / "run-manifest.json", "w", encoding="utf-8") as f:
        json.dump(manifest, f, indent=2, sort_keys=True, ensure_ascii=False)
        f.write("\n")


def _write_json(path: Path, payload) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as f:
        json.dump(payload, f, indent=2, sort_keys=True, ensure_ascii=False)
        f.write("\n")


def _strip_lexicon(lex: lexicon.Lexicon) -> lexicon.Lexicon:
    """Arabic lexicons are matched diacritic-free on both form and lemma."""
    out = lexicon.Lexicon()
    for bucket in lex.entries.values():
        for e in bucket:
            out.add(generator.strip_arabic_diacritics(e.form),
                    generator.strip_arabic_diacritics(e.lemma),
                    e.upos, e.feats_dict())
    out.finalize()
    return out


# --------------------------------------------------------------------------
# generate / stats

RECORD_COLUMNS = ["variant", "sent_id", "token_id", "upos", "original_lemma",
                  "original_form", "new_lemma", "new_form", "replaced",
                  "failure_reason"]


def cmd_generate(args) -> int:
    tb = conllu.load(args.treebank)
    if args.min_words > 1:
        tb = conllu.filter_short(tb, args.min_words)

    lex = lexicon.load_udlexicon(args.lexicon)
    hints = None
    if args.wiktextract:
        wikt_lex, hints = lexicon.load_wiktextract(args.wiktextract, args.lang)
        lex = lexicon.merge_lexicons(lex, wikt_lex)
    if args.lang == "ar":
        lex = _strip_lexicon(lex)

    transform = generator.strip_arabic_diacritics if args.lang == "ar" else None
    if args.pool_cache and Path(args.pool_cache).exists():
        pool = context.load_pool(args.pool_cache)
    else:
        pool_tb = conllu.load(args.pool_from) if args.pool_from else tb
        pool = context.build_pools(pool_tb, ignore_deprels=args.ignore_deprels,
                                   drop_punct_deps=args.drop_punct_deps,
                                   lemma_transform=transform)
        if args.pool_cache:
            context.dump_pool(pool, args.pool_cache)

    opts = generator.GenOptions(seed=args.seed, language=args.lang,
                                ignore_deprels=args.ignore_deprels,
                                n_variants=args.variants,
                                drop_punct_deps=args.drop_punct_deps)
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)

    reports = []
    with open(out_dir / "records.tsv", "w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f, delimiter="\t", lineterminator="\n")
        writer.writerow(RECORD_COLUMNS)
        for variant in range(args.variants):
            nonce, records, report = generator.generate(tb, pool, lex, hints,
                                                        opts, variant=variant)
            conllu.save(nonce, out_dir / f"nonce-{variant:02d}.conllu")
            for r in records:
                writer.writerow([variant, r.sent_id, r.token_id, r.upos,
                                 r.original_lemma, r.original_form, r.new_lemma,
                                 r.new_form, int(r.replaced),
                                 r.failure_reason or ""])
            reports.append({"variant": variant,
                            "per_upos_ratio": report.per_upos_ratio,
                            "total_ratio": report.total_ratio,
                            "failure_counts": report.failure_counts})

    _write_json(out_dir / "report.json",
                {"language": args.lang, "seed": args.seed,
                 "sentences": len(tb.sentences), "variants": reports})
    inputs = [args.treebank, args.lexicon, args.wiktextract, args.pool_from]
    if args.pool_cache and Path(args.pool_cache).exists():
        inputs.append(args.pool_cache)
    _write_manifest(out_dir, args, inputs)
    return 0


def _read_records_tsv(path):
    records = []
    with open(path, encoding="utf-8", newline="") as f:
        reader = csv.DictReader(f, delimiter="\t")
        for row in reader:
            records.append((int(row["variant"]), generator.ReplacementRecord(
                sent_id=row["sent_id"], token_id=int(row["token_id"]),
                original_lemma=row["original_lemma"],
                original_form=row["original_form"],
                new_lemma=row["new_lemma"], new_form=row["new_form"],
                upos=row["upos"], replaced=bool(int(row["replaced"])),
                failure_reason=row["failure_reason"] or None)))
    return records


def cmd_stats(args) -> int:
    rows = _read_records_tsv(args.records)
    total_tokens = None
    if args.treebank:
        tb = conllu.load(args.treebank)
        total_tokens = sum(len(s.tokens) for s in tb.sentences)
    payload = {}
    for variant in sorted({v for v, _ in rows}):
        records = [r for v, r in rows if v == variant]
        report = generator.replacement_stats(records, total_tokens=total_tokens)
        payload[str(variant)] = {"per_upos_ratio": report.per_upos_ratio,
                                 "total_ratio": report.total_ratio,
                                 "failure_counts": report.failure_counts}
    if args.out:
        _write_json(Path(args.out), payload)
        _write_manifest(Path(args.out).parent, args,
                        [args.records, args.treebank])
    else:
        json.dump(payload, sys.stdout, indent=2, sort_keys=True)
        print()
    return 0


# --------------------------------------------------------------------------
# score / ttr


def _texts_by_sent_id(path):
    if not path:
        return {}
    tb = conllu.load(path)
    return {s.sent_id: s.text or s.detokenize() for s in tb.sentences}


def _summary_dict(summary: scoring.RatioSummary) -> dict:
    return dataclasses.asdict(summary)


def _wilcoxon_dict(a_name, b_name, a_vals, b_vals):
    try:
        w, p_two, p_one = scoring.wilcoxon_signed_rank(a_vals, b_vals)
    except ValueError as e:
        return {"a": a_name, "b": b_name, "n": len(a_vals), "error": str(e)}
    return {"a": a_name, "b": b_name, "n": len(a_vals), "w": w,
            "p_two_sided": p_two, "p_one_sided": p_one}


def cmd_score(args) -> int:
    records = scoring.read_token_scores(args.records)
    if not records:
        raise ValueError(f"no token scores in {args.records}")
    sent_scores = scoring.group_sentence_scores(records)
    per_regime, dropped = scoring.pair_ratios(sent_scores)

    orig_texts = _texts_by_sent_id(args.orig_treebank)
    nonce_texts = _texts_by_sent_id(args.nonce_treebank)

    payload = {"dropped_pairs": dropped, "threshold": args.threshold,
               "regimes": {}, "wilcoxon": []}
    ratio_maps = {}
    for regime, ratios in sorted(per_regime.items()):
        ratio_maps[regime] = {p.sent_id: p.r for p in ratios}
        entry = {"summary": _summary_dict(scoring.summarize(ratios, args.threshold))}
        if args.raw_nll:
            nll = {}
            for variant in scoring.VARIANTS:
                vals = [s.mean_nll for (sid, var, reg), s in sent_scores.items()
                        if var == variant and reg == regime]
                if vals:
                    nll[variant] = sum(vals) / len(vals)
            entry["mean_nll"] = nll
        if args.extremes_k > 0:
            pairs = [scoring.ExtremePair(
                sent_id=p.sent_id, r=p.r,
                orig_text=orig_texts.get(p.sent_id),
                nonce_text=nonce_texts.get(p.sent_id),
                per_regime={reg: m[p.sent_id] for reg, m in ratio_maps.items()
                            if p.sent_id in m}) for p in ratios]
            extremes = scoring.extremes_report(pairs, args.extremes_k)
            entry["extremes"] = {
                "top": [dataclasses.asdict(p) for p in extremes.top],
                "bottom": [dataclasses.asdict(p) for p in extremes.bottom],
            }
        payload["regimes"][regime] = entry

    regimes = sorted(per_regime)
    for i, reg_a in enumerate(regimes):
        for reg_b in regimes[i + 1:]:
            common = sorted(set(ratio_maps[reg_a]) & set(ratio_maps[reg_b]))
            if not common:
                continue
            a_vals = [ratio_maps[reg_a][sid] for sid in common]
            b_vals = [ratio_maps[reg_b][sid] for sid in common]
            comparison = {"unfiltered": _wilcoxon_dict(reg_a, reg_b, a_vals, b_vals)}
            kept = [(x, y) for x, y in zip(a_vals, b_vals)
                    if x <= args.threshold and y <= args.threshold]
            if kept:
                xs, ys = zip(*kept)
                comparison["outlier_filtered"] = _wilcoxon_dict(reg_a, reg_b,
                                                                list(xs), list(ys))
            payload["wilcoxon"].append(comparison)

    _write_json(Path(args.out), payload)
    _write_manifest(Path(args.out).parent, args,
                    [args.records, args.orig_treebank, args.nonce_treebank])
    return 0


def cmd_ttr(args) -> int:
    if bool(args.treebank) == bool(args.records):
        raise UsageError("ttr: exactly one of --treebank or --records is required")
    payload = {}
    if args.treebank:
        tb = conllu.load(args.treebank)
        tokens = [t.form.lower() for s in tb.sentences for t in s.tokens]
        payload["ttr"] = scoring.ttr(tokens)
        payload["tokens"] = len(tokens)
    else:
        records = scoring.read_token_scores(args.records)
        streams = {}
        for rec in records:
            if rec.token is None:
                raise ValueError("token-score file lacks surface tokens; "
                                 "cannot compute a subword TTR")
            streams.setdefault((rec.variant, rec.regime), []).append(rec.token)
        payload = {f"{variant}/{regime}":
                   {"ttr": scoring.ttr(toks), "tokens": len(toks)}
                   for (variant, regime), toks in sorted(streams.items())}
    if args.out:
        _write_json(Path(args.out), payload)
        _write_manifest(Path(args.out).parent, args,
                        [args.treebank, args.records])
    else:
        json.dump(payload, sys.stdout, indent=2, sort_keys=True)
        print()
    return 0


# --------------------------------------------------------------------------
# probe


def cmd_probe_train(args) -> int:
    tb = conllu.load(args.treebank)
    reprs_dist = probe_io.load_reprs(args.reprs_dist)
    reprs_rel = probe_io.load_reprs(args.reprs_rel)
    inventory = build_inventory(tb)
    train_set = build_dataset(tb, reprs_dist, reprs_rel)

    if args.dev_treebank:
        dev_tb = conllu.load(args.dev_treebank)
        dev_dist = probe_io.load_reprs(args.dev_reprs_dist or args.reprs_dist)
        dev_rel = probe_io.load_reprs(args.dev_reprs_rel or args.reprs_rel)
        dev_set = build_dataset(dev_tb, dev_dist, dev_rel)
    else:
        log.warning("no dev treebank given; selecting on the training set")
        dev_set = train_set

    hyper = Hyper(lr=args.lr, batch_size=args.batch_size, epochs=args.epochs,
                  patience=args.patience, seed=args.seed, b_dim=args.b_dim)
    params = train_probe(train_set, dev_set, inventory, hyper)
    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    probe_io.save_params(params, out)
    _write_manifest(out.parent, args,
                    [args.treebank, args.reprs_dist, args.reprs_rel,
                     args.dev_treebank, args.dev_reprs_dist, args.dev_reprs_rel])
    return 0


def cmd_probe_eval(args) -> int:
    tb = conllu.load(args.treebank)
    params = probe_io.load_params(args.model)
    reprs_dist = probe_io.load_reprs(args.reprs_dist)
    reprs_rel = probe_io.load_reprs(args.reprs_rel)
    dataset = build_dataset(tb, reprs_dist, reprs_rel)
    aligned_ids = {ex.sent_id for ex in dataset.examples}
    gold = conllu.Treebank(
        sentences=[s for s in tb.sentences if s.sent_id in aligned_ids])

    preds = []
    for ex in dataset.examples:
        probs = relation_probs(params, ex.reprs_rel)
        dist = subspace_distance(params, ex.reprs_dist)
        preds.append(decode_tree(probs, dist, params.inventory))
    report = evaluate(preds, gold, by_direction=args.by_direction)

    payload = {"rel_acc": report.rel_acc, "uas": report.uas, "las": report.las,
               "tokens": report.tokens, "roots": report.roots,
               "sentences": len(gold.sentences)}
    if args.by_direction:
        payload["left"] = dataclasses.asdict(report.left)
        payload["right"] = dataclasses.asdict(report.right)
    _write_json(Path(args.out), payload)
    _write_manifest(Path(args.out).parent, args,
                    [args.model, args.treebank, args.reprs_dist, args.reprs_rel])
    return 0


# --------------------------------------------------------------------------


def build_parser() -> _Parser:
    parser = _Parser(prog="spud", description=__doc__)
    parser.add_argument("--config", type=Path, default=None,
                        help="TOML file with default option values")
    parser.add_argument("--verbose", action="store_true",
                        help="log progress to standard error")
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", help="produce nonce variants of a treebank")
    gen.add_argument("--treebank", required=True)
    gen.add_argument("--pool-from", default=None,
                     help="treebank to build candidate pools from "
                          "(default: the input treebank)")
    gen.add_argument("--pool-cache", default=None,
                     help="pool dump to load if present, else to write")
    gen.add_argument("--lexicon", required=True,
                     help="tab-separated form/lemma/upos/feats lexicon")
    gen.add_argument("--wiktextract", default=None,
                     help="wiktextract JSONL dump for extra forms and phonology")
    gen.add_argument("--lang", required=True, choices=generator.LANGUAGES)
    gen.add_argument("--seed", type=int, required=True)
    gen.add_argument("--variants", type=int, default=1)
    gen.add_argument("--min-words", type=int, default=1)
    gen.add_argument("--ignore-deprels", action="store_true",
                     help="match candidates on UPOS only")
    gen.add_argument("--drop-punct-deps", action="store_true",
                     help="ignore punct dependents when matching contexts")
    gen.add_argument("--out", required=True)
    gen.set_defaults(func=cmd_generate)

    stats = sub.add_parser("stats", help="replacement statistics from records.tsv")
    stats.add_argument("--records", required=True)
    stats.add_argument("--treebank", default=None,
                       help="source treebank, for the all-token denominator")
    stats.add_argument("--out", default=None)
    stats.set_defaults(func=cmd_stats)

    score = sub.add_parser("score", help="aggregate token log-probabilities")
    score.add_argument("--records", required=True,
                       help="line-JSON token-score file")
    score.add_argument("--out", required=True)
    score.add_argument("--threshold", type=float,
                       default=scoring.DEFAULT_OUTLIER_THRESHOLD)
    score.add_argument("--raw-nll", action="store_true",
                       help="also report non-exponentiated mean NLLs")
    score.add_argument("--extremes-k", type=int, default=5)
    score.add_argument("--orig-treebank", default=None)
    score.add_argument("--nonce-treebank", default=None)
    score.set_defaults(func=cmd_score)

    ttr = sub.add_parser("ttr", help="type-token ratio")
    ttr.add_argument("--treebank", default=None)
    ttr.add_argument("--records", default=None,
                     help="token-score file with surface tokens (subword TTR)")
    ttr.add_argument("--out", default=None)
    ttr.set_defaults(func=cmd_ttr)

    probe = sub.add_parser("probe", help="structural probe training and evaluation")
    probe_sub = probe.add_subparsers(dest="probe_command", required=True)

    ptrain = probe_sub.add_parser("train")
    ptrain.add_argument("--reprs-dist", required=True)
    ptrain.add_argument("--reprs-rel", required=True)
    ptrain.add_argument("--treebank", required=True)
    ptrain.add_argument("--dev-treebank", default=None)
    ptrain.add_argument("--dev-reprs-dist", default=None)
    ptrain.add_argument("--dev-reprs-rel", default=None)
    ptrain.add_argument("--b-dim", type=int, default=128)
    ptrain.add_argument("--seed", type=int, default=0)
    ptrain.add_argument("--lr", type=float, default=1e-3)
    ptrain.add_argument("--batch-size", type=int, default=32)
    ptrain.add_argument("--epochs", type=int, default=30)
    ptrain.add_argument("--patience", type=int, default=5)
    ptrain.add_argument("--out", required=True)
    ptrain.set_defaults(func=cmd_probe_train)

    peval = probe_sub.add_parser("eval")
    peval.add_argument("--model", required=True)
    peval.add_argument("--reprs-dist", required=True)
    peval.add_argument("--reprs-rel", required=True)
    peval.add_argument("--treebank", required=True)
    peval.add_argument("--by-direction", action="store_true")
    peval.add_argument("--out", required=True)
    peval.set_defaults(func=cmd_probe_eval)

    return parser


def _apply_config(parser: _Parser, argv: list[str]) -> None:
    """Use values from a TOML config file as option defaults."""
    path = None
    for i, arg in enumerate(argv):
        if arg == "--config" and i + 1 < len(argv):
            path = argv[i + 1]
        elif arg.startswith("--config="):
            path = arg.split("=", 1)[1]
    if path is None:
        return
    with open(path, "rb") as f:
        table = tomllib.load(f)
    flat = {}
    for key, value in table.items():
        if isinstance(value, dict):
            for inner, v in value.items():
                flat[inner.replace("-", "_")] = v
        else:
            flat[key.replace("-", "_")] = value
    parser.set_defaults(**flat)
    for action in parser._subparsers._group_actions:
        for sub in action.choices.values():
            sub.set_defaults(**flat)
            if sub._subparsers is not None:
                for inner_action in sub._subparsers._group_actions:
                    for inner in inner_action.choices.values():
                        inner.set_defaults(**flat)


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        _apply_config(parser, argv)
        args = parser.parse_args(argv)
    except UsageError as e:
        print(e, file=sys.stderr)
        return 1
    except OSError as e:
        print(f"spud: cannot read config: {e}", file=sys.stderr)
        return 1
    logging.basicConfig(stream=sys.stderr,
                        level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except UsageError as e:
        print(e, file=sys.stderr)
        return 1
    except (conllu.ConlluError, probe_io.FormatError) as e:
        print(f"spud: {e}", file=sys.stderr)
        return 2
    except (ValueError, KeyError, OSError) as e:
        print(f"spud: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
