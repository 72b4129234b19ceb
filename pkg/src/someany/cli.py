"""Command-line pipeline: ingest -> classify -> aggregate -> train-lm -> detect,
plus corpus statistics, MDS projection, and synthetic-corpus generation.

Exit codes: 0 success, 1 validation error (bad flags, missing files, schema
violations), 2 runtime error (scorer transport failures and the like).
Diagnostics go to stderr; data goes to files or stdout ("-").
"""

from __future__ import annotations

import argparse
import contextlib
import csv
import json
import os
import sys

from . import analysis, annotation, classifier, corpus, lm, synth, typology
from .annotation import GoldLabel
from .classifier import CoarseClass
from .corpus import CorpusFormatError, Population, Pronoun

ENV_ENDPOINT = "SOMEANY_SCORER_ENDPOINT"
ENV_TIMEOUT = "SOMEANY_SCORER_TIMEOUT"

RULE_KEYS = {"negators", "conditional_openers", "clause_boundaries", "comparison_window"}


class UsageError(ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # exit 1 instead of argparse's default 2
        raise UsageError(message)


def _read_kv(path) -> dict[str, str]:
    values: dict[str, str] = {}
    with open(path, encoding="utf-8") as fh:
        for line_number, line in enumerate(fh, start=1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise UsageError(f"{path}: line {line_number}: expected 'key = value'")
            key, _, value = line.partition("=")
            values[key.strip().replace("-", "_")] = value.strip()
    return values


def _apply_config(args: argparse.Namespace, allowed: dict[str, type]) -> None:
    """Fill flags not given on the command line from the --config file."""
    if not getattr(args, "config", None):
        return
    for key, raw in _read_kv(args.config).items():
        if key not in allowed:
            raise UsageError(f"{args.config}: unknown key {key!r}")
        if getattr(args, key, None) is None:
            caster = allowed[key]
            setattr(args, key, caster(raw))


@contextlib.contextmanager
def _open_out(path):
    if path == "-":
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            yield fh


def _load_idioms(path: str | None) -> list[str]:
    if path is None:
        return []
    if path == "builtin":
        from .data import default_idiom_patterns

        return default_idiom_patterns()
    with open(path, encoding="utf-8") as fh:
        return [line.strip() for line in fh
                if line.strip() and not line.startswith("#")]


# ---------------------------------------------------------------- ingest


def _cmd_ingest(args) -> None:
    _apply_config(args, {"population": str, "idioms": str})
    population = Population((args.population or "LEARNER").upper())
    patterns = _load_idioms(args.idioms)
    n_in = n_out = 0
    with open(args.infile, encoding="utf-8") as fh, _open_out(args.out) as out:
        for line_number, line in enumerate(fh, start=1):
            text = line.strip()
            if not text:
                continue
            n_in += 1
            tokens = corpus.tokenize(text)
            for k, (ip_index, pron) in enumerate(corpus.locate_ips(tokens)):
                record = corpus.SentenceRecord(
                    id=f"s{line_number:06d}-{k}",
                    tokens=tuple(tokens),
                    ip_index=ip_index,
                    original=pron,
                    population=population,
                    raw_text=text,
                )
                extra = {}
                idiom = annotation.matches_idiom(tokens, ip_index, patterns) if patterns else None
                if idiom:
                    extra["idiom"] = idiom
                out.write(corpus.record_to_json(record, extra) + "\n")
                n_out += 1
    print(f"ingest: {n_in} sentences -> {n_out} records", file=sys.stderr)


# -------------------------------------------------------------- classify


def _cmd_classify(args) -> None:
    rules = classifier.DEFAULT_RULES
    if args.config:
        kv = _read_kv(args.config)
        rule_kv = {k: v for k, v in kv.items() if k in RULE_KEYS}
        flag_kv = {k: v for k, v in kv.items() if k not in RULE_KEYS}
        if rule_kv:
            rules = classifier.rule_config_from_kv(rule_kv)
        for key, value in flag_kv.items():
            if key not in ("infile", "out"):
                raise UsageError(f"{args.config}: unknown key {key!r}")
            if getattr(args, key, None) is None:
                setattr(args, key, value)
    if args.out is None:
        raise UsageError("classify: --out is required")
    n = 0
    with _open_out(args.out) as out:
        for record, extra in corpus.iter_corpus(args.infile):
            label = classifier.classify_usage(record, rules)
            extra = dict(extra)
            extra["coarse_class"] = label.value
            out.write(corpus.record_to_json(record, extra) + "\n")
            n += 1
    print(f"classify: {n} records", file=sys.stderr)


# ------------------------------------------------------------- aggregate


def _cmd_aggregate(args) -> None:
    _apply_config(args, {"threshold": float, "corpus": str, "idioms": str})
    threshold = args.threshold if args.threshold is not None else 0.8
    items = annotation.load_annotation_items(args.infile)
    aggregates = [annotation.aggregate(item, threshold) for item in items]

    merged: dict[str, tuple] = {}
    flagged: set[str] = set()
    if args.corpus:
        patterns = _load_idioms(args.idioms)
        for record, extra in corpus.iter_corpus(args.corpus):
            merged[record.id] = (record, extra)
            idiom = extra.get("idiom") or (
                annotation.matches_idiom(record.tokens, record.ip_index, patterns)
                if patterns else None)
            if idiom:
                flagged.add(record.id)

    n = 0
    with _open_out(args.out) as out:
        for agg in aggregates:
            if args.corpus:
                if agg.sentence_id not in merged:
                    continue
                record, extra = merged[agg.sentence_id]
                extra = dict(extra)
                extra.update({
                    "majority": agg.majority.value,
                    "confidence": agg.confidence,
                    "gold": agg.gold.value,
                })
                out.write(corpus.record_to_json(record, extra) + "\n")
            else:
                out.write(json.dumps({
                    "sentence_id": agg.sentence_id,
                    "original": agg.original.lemma,
                    "majority": agg.majority.value,
                    "confidence": agg.confidence,
                    "gold": agg.gold.value,
                }, ensure_ascii=False) + "\n")
            n += 1

    considered = [a for a in aggregates if a.sentence_id not in flagged]
    if considered:
        try:
            rate = annotation.infelicity_rate(considered, threshold)
            print(f"aggregate: {n} items, infelicity rate {rate:.3f} "
                  f"at threshold {threshold}", file=sys.stderr)
        except ValueError:
            print(f"aggregate: {n} items", file=sys.stderr)


# -------------------------------------------------------------- train-lm


def _iter_training_sentences(path):
    if str(path).endswith(".jsonl"):
        for record, _ in corpus.iter_corpus(path):
            yield list(record.tokens)
    else:
        with open(path, encoding="utf-8") as fh:
            for line in fh:
                line = line.strip()
                if line:
                    yield corpus.tokenize(line)


def _cmd_train_lm(args) -> None:
    _apply_config(args, {"order": int, "add_k": float, "min_count": int,
                         "lambdas": str})
    order = args.order if args.order is not None else 3
    add_k = args.add_k if args.add_k is not None else 1.0
    min_count = args.min_count if args.min_count is not None else 1
    lambdas = None
    if args.lambdas:
        lambdas = tuple(float(x) for x in args.lambdas.split(","))
    sentences = list(_iter_training_sentences(args.infile))
    model = lm.train(sentences, order=order, lambdas=lambdas, add_k=add_k,
                     min_count=min_count)
    lm.save_model(model, args.out)
    print(f"train-lm: {len(sentences)} sentences, order {order}, "
          f"vocab {len(model.vocab)}", file=sys.stderr)


# ---------------------------------------------------------------- detect


def _make_scorer(spec: str, timeout: float | None):
    if spec == "remote":
        endpoint = os.environ.get(ENV_ENDPOINT)
        if not endpoint:
            raise UsageError(f"scorer 'remote' requires {ENV_ENDPOINT} to be set")
        spec = f"remote:{endpoint}"
    kind, _, rest = spec.partition(":")
    if kind == "ngram":
        if not rest:
            raise UsageError("scorer spec 'ngram:' needs a model path")
        return lm.load_model(rest)
    if kind == "remote":
        if not rest:
            raise UsageError("scorer spec 'remote:' needs an endpoint URL")
        if timeout is None:
            timeout = float(os.environ.get(ENV_TIMEOUT, "10"))
        return lm.RemoteScorer(rest, timeout=timeout)
    raise UsageError(f"unknown scorer kind {kind!r} (use ngram:PATH or remote:URL)")


def _cmd_detect(args) -> None:
    _apply_config(args, {"scorer": str, "confidence": float, "report": str,
                         "out": str, "timeout": float})
    if args.scorer is None:
        raise UsageError("detect: --scorer is required")
    confidence = args.confidence if args.confidence is not None else 0.8
    if confidence not in (0.8, 1.0):
        raise UsageError("detect: --confidence must be 0.8 or 1.0")
    scorer = _make_scorer(args.scorer, args.timeout)

    records = []
    gold: dict[str, GoldLabel] = {}
    conf: dict[str, float] = {}
    for record, extra in corpus.iter_corpus(args.infile):
        if "gold" not in extra:
            raise CorpusFormatError(f"record {record.id!r} lacks a 'gold' field")
        records.append(record)
        gold[record.id] = GoldLabel(extra["gold"])
        conf[record.id] = float(extra.get("confidence", 1.0))

    outcomes = analysis.detect_all(records, scorer)
    pairs = []
    kept_ids = []
    for outcome in outcomes:
        label = gold[outcome.sentence_id]
        if label not in (GoldLabel.FELICITOUS, GoldLabel.INFELICITOUS):
            continue
        if conf[outcome.sentence_id] < confidence:
            continue
        pairs.append((label, outcome.predicted))
        kept_ids.append(outcome.sentence_id)
    report = analysis.binary_report(pairs, threshold=confidence)

    if args.out:
        with _open_out(args.out) as out:
            for outcome in outcomes:
                out.write(json.dumps({
                    "id": outcome.sentence_id,
                    "original": outcome.original.lemma,
                    "model_choice": outcome.model_choice.lemma,
                    "score_original": outcome.score_original,
                    "score_alternative": outcome.score_alternative,
                    "predicted": outcome.predicted.value,
                }, ensure_ascii=False) + "\n")
    if args.report:
        with _open_out(args.report) as out:
            json.dump(report.to_dict(), out, indent=2)
            out.write("\n")
    print(f"detect: {report.n} of {len(records)} records kept at "
          f"confidence {confidence}; accuracy {report.accuracy:.3f} "
          f"(baseline {report.baseline_accuracy:.3f})", file=sys.stderr)


# ----------------------------------------------------------------- stats


def _cmd_stats(args) -> None:
    _apply_config(args, {"out": str})
    records = []
    classes = []
    golds = []
    for record, extra in corpus.iter_corpus(args.infile):
        if "coarse_class" not in extra:
            raise CorpusFormatError(f"record {record.id!r} lacks 'coarse_class' "
                                    "(run classify first)")
        records.append(record)
        classes.append(CoarseClass(extra["coarse_class"]))
        golds.append(GoldLabel(extra["gold"]) if "gold" in extra else None)

    dist = analysis.usage_shares(records, classes)
    keys = [c.value for c in CoarseClass] + [analysis.TOTAL_KEY]
    populations = [p for p in Population
                   if any(k[1] is p for k in dist.cells)]
    with _open_out(args.out) as out:
        writer = csv.writer(out)
        writer.writerow(["class", "population", "some_count", "any_count",
                         "some_share", "any_share", "marker"])
        for key in keys if args.by_class else [analysis.TOTAL_KEY]:
            for population in populations:
                cell = dist.cells.get((key, population))
                if cell is None:
                    continue
                marker = dist.markers.get((key, population), "")
                writer.writerow([key, population.value, cell.some_count,
                                 cell.any_count, f"{cell.some_share:.4f}",
                                 f"{cell.any_share:.4f}", marker])
        if args.by_class and any(g is not None for g in golds):
            labeled = [(g, c) for g, c in zip(golds, classes) if g is not None]
            table = analysis.infelicity_by_class([g for g, _ in labeled],
                                                 [c for _, c in labeled])
            writer.writerow([])
            writer.writerow(["class", "annotated", "infelicitous", "pct_infelicitous"])
            for cls, cell in table.items():
                writer.writerow([cls.value, cell.annotated, cell.infelicitous,
                                 f"{cell.percent:.1f}"])
    print(f"stats: {len(records)} records", file=sys.stderr)


# ------------------------------------------------------------------- mds


def _cmd_mds(args) -> None:
    _apply_config(args, {"kind": str, "languages": int, "transform": str,
                         "dims": int, "out": str})
    kind = args.kind or "counts"
    transform = args.transform or "complement"
    dims = args.dims if args.dims is not None else 2
    names, grid = typology.load_matrix_csv(args.matrix)
    if kind == "counts":
        total = args.languages if args.languages is not None else int(grid.max())
        classes = tuple(classifier.UsageClass(n) for n in names)
        matrix = typology.ColexMatrix(classes=classes, counts=grid.astype(int),
                                      total_languages=total)
        d = typology.to_distance(matrix, transform=transform)
    elif kind == "distance":
        d = grid
    else:
        raise UsageError("mds: --kind must be 'counts' or 'distance'")
    embedding = typology.mds_project(d, dims=dims, classes=names)
    with _open_out(args.out) as out:
        writer = csv.writer(out)
        writer.writerow(["class"] + [f"dim{i + 1}" for i in range(dims)])
        for name, row in zip(names, embedding.coords):
            writer.writerow([name] + [repr(float(x)) for x in row])
        out.write("# eigenvalues: "
                  + " ".join(repr(float(v)) for v in embedding.eigenvalues) + "\n")
    print(f"mds: {len(names)} classes -> {dims} dims", file=sys.stderr)


# ----------------------------------------------------------------- synth


def _cmd_synth(args) -> None:
    _apply_config(args, {"seed": int, "size": int, "corruption_rate": float,
                         "lm_corpus": str, "lm_size": int})
    seed = args.seed if args.seed is not None else 0
    if args.size is None:
        raise UsageError("synth: --size is required")
    rate = args.corruption_rate if args.corruption_rate is not None else 0.2
    generated, _ = synth.synth_corpus(seed, args.size, rate)
    corpus.save_corpus(generated, args.out)
    if args.lm_corpus:
        size = args.lm_size if args.lm_size is not None else 5000
        sentences = synth.synth_sentences(seed + 1, size)
        with _open_out(args.lm_corpus) as out:
            out.write("\n".join(sentences) + "\n")
    print(f"synth: {len(generated)} records (seed {seed}, corruption {rate})",
          file=sys.stderr)


# ------------------------------------------------------------------ main


def build_parser() -> _Parser:
    parser = _Parser(prog="someany",
                     description="some-/any- indefinite-pronoun corpus toolkit")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")

    def add(name, func, help_text):
        p = sub.add_parser(name, help=help_text, description=help_text)
        p.set_defaults(func=func)
        p.add_argument("--config", help="key = value file overriding flags")
        return p

    p = add("ingest", _cmd_ingest, "raw sentences (one per line) to corpus JSONL")
    p.add_argument("--in", dest="infile", required=True, help="input text file")
    p.add_argument("--out", required=True, help="output corpus JSONL ('-' = stdout)")
    p.add_argument("--population", help="NATIVE | ADVANCED_L2 | LEARNER (default LEARNER)")
    p.add_argument("--idioms", help="idiom stoplist file, or 'builtin'")

    p = add("classify", _cmd_classify, "assign coarse usage classes to a corpus")
    p.add_argument("--in", dest="infile", required=True, help="corpus JSONL")
    p.add_argument("--out", help="labeled JSONL ('-' = stdout)")

    p = add("aggregate", _cmd_aggregate, "aggregate 5-way choice annotations to gold labels")
    p.add_argument("--in", dest="infile", required=True, help="annotation CSV")
    p.add_argument("--threshold", type=float, help="confidence threshold (default 0.8)")
    p.add_argument("--out", required=True, help="gold JSONL ('-' = stdout)")
    p.add_argument("--corpus", help="corpus JSONL to merge records with gold labels")
    p.add_argument("--idioms", help="idiom stoplist file, or 'builtin'")

    p = add("train-lm", _cmd_train_lm, "train the n-gram scorer")
    p.add_argument("--in", dest="infile", required=True,
                   help="training text (one sentence per line) or corpus JSONL")
    p.add_argument("--out", required=True, help="model file")
    p.add_argument("--order", type=int, help="n-gram order (default 3)")
    p.add_argument("--lambdas", help="comma-separated interpolation weights, highest order first")
    p.add_argument("--add-k", dest="add_k", type=float, help="unigram smoothing constant (default 1.0)")
    p.add_argument("--min-count", dest="min_count", type=int,
                   help="map rarer tokens to <unk> (default 1)")

    p = add("detect", _cmd_detect, "flag infelicitous pronoun choices by score comparison")
    p.add_argument("--in", dest="infile", required=True,
                   help="corpus JSONL with 'gold' (and optional 'confidence') fields")
    p.add_argument("--scorer", help="ngram:MODEL_PATH or remote:URL (or 'remote' + env)")
    p.add_argument("--confidence", type=float, help="0.8 or 1.0 (default 0.8)")
    p.add_argument("--report", help="metrics JSON output path")
    p.add_argument("--out", help="per-sentence outcomes JSONL")
    p.add_argument("--timeout", type=float, help="remote scorer timeout in seconds")

    p = add("stats", _cmd_stats, "usage-share and infelicity distributions")
    p.add_argument("--in", dest="infile", required=True, help="labeled corpus JSONL")
    p.add_argument("--by-class", dest="by_class", action="store_true",
                   help="break shares down by usage class")
    p.add_argument("--out", required=True, help="CSV output ('-' = stdout)")

    p = add("mds", _cmd_mds, "project a colexification matrix to 2D")
    p.add_argument("--matrix", required=True, help="matrix CSV with class-name header")
    p.add_argument("--kind", help="'counts' (default) or 'distance'")
    p.add_argument("--languages", type=int,
                   help="language total for the counts transform (default: max entry)")
    p.add_argument("--transform", help="'complement' (default) or 'sqrt_diff'")
    p.add_argument("--dims", type=int, help="output dimensions (default 2)")
    p.add_argument("--out", required=True, help="coordinates CSV ('-' = stdout)")

    p = add("synth", _cmd_synth, "generate a synthetic gold-labeled corpus")
    p.add_argument("--seed", type=int, help="random seed (default 0)")
    p.add_argument("--size", type=int, help="number of records")
    p.add_argument("--corruption-rate", dest="corruption_rate", type=float,
                   help="fraction of records with the pronoun flipped (default 0.2)")
    p.add_argument("--out", required=True, help="corpus JSONL with gold labels")
    p.add_argument("--lm-corpus", dest="lm_corpus",
                   help="also write uncorrupted sentences for LM training")
    p.add_argument("--lm-size", dest="lm_size", type=int,
                   help="number of LM training sentences (default 5000)")

    return parser


def run(argv) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(f"someany: {exc}", file=sys.stderr)
        return 1
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    if not getattr(args, "command", None):
        parser.print_help(sys.stderr)
        return 1
    try:
        args.func(args)
    except (UsageError, CorpusFormatError) as exc:
        print(f"someany {args.command}: {exc}", file=sys.stderr)
        return 1
    except (FileNotFoundError, IsADirectoryError) as exc:
        print(f"someany {args.command}: missing file: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"someany {args.command}: {exc}", file=sys.stderr)
        return 1
    except lm.ScorerError as exc:
        print(f"someany {args.command}: scorer failure: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"someany {args.command}: {exc}", file=sys.stderr)
        return 2
    return 0


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
