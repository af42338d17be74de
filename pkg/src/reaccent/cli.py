"""Command-line interface.

Subcommands: train, restore, eval, inspect, synth. Exit codes: 0 success,
1 lookup failure (inspect), 2 bad usage, 3 unreadable input, 4 empty or
insufficient corpus, 5 unparseable model file. The REACCENT_CONFIG
environment variable may point at a JSON file of flag defaults, keyed by
flag destination name (e.g. {"window": 6, "alpha": 0.2}).
"""

from __future__ import annotations

import argparse
import difflib
import json
import os
import random
import sys
import unicodedata

from .corpus import InsufficientDataError, PatternTable, load_corpus
from .decision_list import InterpolationConfig, SmoothingConfig, load_class_specs
from .evaluate import compare_best_vs_combined, evaluate_split, kfold
from .features import LemmaLexicon, Lexicons, TagLexicon, WordClassSet
from .model_io import ModelFormatError, load_model, save_model
from .restore import restore
from .synth import SynthConfig, generate
from .text import DiacriticMap
from .train import TrainConfig, train_model

EXIT_INPUT = 3
EXIT_DATA = 4
EXIT_MODEL = 5


def _onoff(value: str) -> bool:
    if value not in ("on", "off"):
        raise argparse.ArgumentTypeError(f"expected 'on' or 'off', got {value!r}")
    return value == "on"


def _positive_float(value: str) -> float:
    try:
        x = float(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {value!r}") from None
    if not x > 0:
        raise argparse.ArgumentTypeError(f"must be > 0, got {value}")
    return x


def _fold_count(value: str) -> int:
    try:
        n = int(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {value!r}") from None
    if n < 2:
        raise argparse.ArgumentTypeError("need at least 2 folds")
    return n


def _beta_gamma(value: str) -> InterpolationConfig:
    try:
        beta, gamma = (float(x) for x in value.split(","))
        return InterpolationConfig(beta, gamma)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad --beta-gamma {value!r}: {exc}") from None


def _read_text(path: str) -> str:
    raw = sys.stdin.read() if path == "-" else open(path, encoding="utf-8").read()
    return unicodedata.normalize("NFC", raw)


def _write_text(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as f:
            f.write(text)


def _note(msg: str) -> None:
    print(msg, file=sys.stderr)


def _training_parent() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("corpus", nargs="+", help="training files or directories")
    p.add_argument("--lang", default="es", help="built-in diacritic map (es, fr)")
    p.add_argument("--map", help="custom diacritic map file (accented<TAB>plain)")
    p.add_argument("-k", "--window", type=int, default=4,
                   help="context window for per-word lists")
    p.add_argument("--class-window", type=int, default=20,
                   help="context window for pooled class lists")
    p.add_argument("--alpha", type=_positive_float, default=0.1,
                   help="additive smoothing for count ratios")
    p.add_argument("--beta-gamma", type=_beta_gamma,
                   default=InterpolationConfig(), metavar="B,G",
                   help="global,residual interpolation weights (default 1,0)")
    p.add_argument("--prune-cv", type=_onoff, default=True, metavar="on|off",
                   help="drop entries that net-misclassify held-out contexts (default on)")
    p.add_argument("--prune-unused", type=_onoff, default=False, metavar="on|off",
                   help="drop entries never consulted on held-out contexts (default off)")
    p.add_argument("--suffix", type=_onoff, default=False, metavar="on|off",
                   help="also extract adjacent-word suffix features (default off)")
    p.add_argument("--min-count", type=int, default=2, metavar="N",
                   help="ignore keys seen fewer than N times")
    p.add_argument("--classes", metavar="FILE", help="word-class file (NAME<TAB>members)")
    p.add_argument("--tags", metavar="FILE", help="tag lexicon (word<TAB>TAG,TAG)")
    p.add_argument("--lemmas", metavar="FILE", help="lemma lexicon (word<TAB>lemma)")
    p.add_argument("--classes-spec", metavar="FILE",
                   help="ambiguity class definitions (name<TAB>plain<TAB>accented[<TAB>members])")
    p.add_argument("--seed", type=int, default=0, help="holdout-split seed")
    return p


def _training_setup(args):
    dmap = DiacriticMap.from_file(args.map) if args.map else DiacriticMap.builtin(args.lang)
    lex = Lexicons(
        classes=WordClassSet.from_file(args.classes) if args.classes else WordClassSet(),
        tags=TagLexicon.from_file(args.tags) if args.tags else TagLexicon(),
        lemmas=LemmaLexicon.from_file(args.lemmas) if args.lemmas else LemmaLexicon(),
    )
    specs = tuple(load_class_specs(args.classes_spec)) if args.classes_spec else ()
    cfg = TrainConfig(
        k=args.window,
        class_k=args.class_window,
        smoothing=SmoothingConfig(args.alpha),
        interpolation=args.beta_gamma,
        min_count=args.min_count,
        prune_cv=args.prune_cv,
        prune_unused=args.prune_unused,
        suffix=args.suffix,
        seed=args.seed,
    )
    return dmap, lex, specs, cfg


def cmd_train(args) -> int:
    dmap, lex, specs, cfg = _training_setup(args)
    docs = load_corpus(args.corpus)
    if not docs:
        raise InsufficientDataError("no documents found")
    lang = "" if args.map else args.lang
    model = train_model(docs, dmap, cfg, lex, specs, progress=_note, lang=lang)
    if not model.lists and not model.class_lists:
        _note("warning: no ambiguous keys; the model holds only the pattern table")
    save_model(model, args.output)
    print(f"wrote {args.output}: {len(model.lists)} word lists, "
          f"{len(model.class_lists)} class lists, {len(model.assignment)} assignments")
    return 0


def cmd_restore(args) -> int:
    model = load_model(args.model)
    text = _read_text(args.input)
    trace = [] if args.trace else None
    out = restore(
        model, text,
        trust_existing=args.trust_existing,
        combined=args.combined,
        trace=trace,
    )
    _write_text(args.output, out)
    if trace is not None:
        for ev in trace:
            _note(str(ev))
    return 0


def cmd_eval(args) -> int:
    docs = load_corpus(args.corpus)
    if not docs:
        raise InsufficientDataError("no documents found")
    if args.model:
        model = load_model(args.model)
        if args.compare:
            print(compare_best_vs_combined(model, docs).summary())
            return 0
        report = evaluate_split(model, docs, combined=args.combined)
        table = model.table
    else:
        dmap, lex, specs, cfg = _training_setup(args)
        report = kfold(
            docs, args.folds,
            lambda split: train_model(split, dmap, cfg, lex, specs),
            combined=args.combined,
        )
        table = PatternTable.build(docs, dmap, cfg.min_count)
    if args.ambiguous_only:
        report = report.filtered(table.ambiguous_keys())
        print(report.summary())
    else:
        print(report.summary(table))
    if args.per_key:
        _write_text(args.per_key, report.tsv(table))
    return 0


def _render_list(model, key: str) -> str:
    dl = model.list_for(key)
    patterns = model.table.patterns(key)
    head = [f"{key}: patterns {', '.join(patterns)} "
            f"(counts {', '.join(map(str, model.table.counts(key)))})"]
    if dl is None:
        head.append("no decision list; majority pattern applies")
        return "\n".join(head)
    if dl.list_kind == "class":
        head.append(f"routed to class list {dl.target!r} "
                    f"(slots {dl.labels[0]!r}/{dl.labels[1]!r}, k={dl.k})")
    else:
        head.append(f"word list, k={dl.k}, {len(dl.entries)} entries")
    head.append(f"default: {dl.labels[dl.default]}")
    rows = [f"{'LL':>8}  {'evidence':32}  choice"]
    for e in dl.entries:
        rows.append(f"{e.ll:8.4f}  {str(e.feature):32}  {dl.labels[e.cls]}")
    return "\n".join(head) + "\n\n" + "\n".join(rows)


def cmd_inspect(args) -> int:
    model = load_model(args.model)
    if not args.word:
        n_amb = len(model.table.ambiguous_keys())
        print(f"keys: {len(model.table)} ({n_amb} ambiguous)")
        print(f"word lists: {len(model.lists)}")
        print(f"class lists: {len(model.class_lists)} "
              f"({len(model.assignment)} words assigned)")
        return 0
    key = model.dmap.strip(args.word)
    if key not in model.table:
        near = difflib.get_close_matches(key, list(model.table.entries), n=5)
        msg = f"unknown word {args.word!r}"
        if near:
            msg += "; nearest known keys: " + ", ".join(near)
        print(msg, file=sys.stderr)
        return 1
    print(_render_list(model, key))
    return 0


def cmd_synth(args) -> int:
    cfg = SynthConfig(
        keys=args.keys,
        occurrences=args.occurrences,
        k=args.window,
        noise=args.noise,
        sentences_per_doc=args.doc_sentences,
    )
    _write_text(args.output, generate(cfg, random.Random(args.seed)))
    return 0


def build_parser() -> tuple[argparse.ArgumentParser, list[argparse.ArgumentParser]]:
    parser = argparse.ArgumentParser(
        prog="reaccent",
        description="Train and apply diacritic-restoration models.",
    )
    subs = parser.add_subparsers(dest="command", required=True)
    training = _training_parent()

    p_train = subs.add_parser("train", parents=[training],
                              help="train a model from accented text")
    p_train.add_argument("-o", "--output", required=True, help="model file to write")
    p_train.set_defaults(func=cmd_train)

    p_restore = subs.add_parser("restore", help="restore accents in stripped text")
    p_restore.add_argument("input", help="input file, or - for stdin")
    p_restore.add_argument("--model", required=True, help="trained model file")
    p_restore.add_argument("-o", "--output", help="output file (default stdout)")
    p_restore.add_argument("--trust-existing", action="store_true",
                           help="leave tokens that already carry a diacritic untouched")
    p_restore.add_argument("--combined", action="store_true",
                           help="sum all matching evidence instead of using the best entry")
    p_restore.add_argument("--trace", action="store_true",
                           help="print one decision line per word to stderr")
    p_restore.set_defaults(func=cmd_restore)

    p_eval = subs.add_parser("eval", parents=[training],
                             help="strip-and-restore agreement on accented text")
    p_eval.add_argument("--model", help="evaluate an existing model instead of cross-validating")
    p_eval.add_argument("--folds", type=_fold_count, default=5,
                        help="folds for cross-validation (default 5)")
    p_eval.add_argument("--combined", action="store_true",
                        help="score the summed-evidence variant")
    p_eval.add_argument("--compare", action="store_true",
                        help="tabulate best-evidence vs summed-evidence (needs --model)")
    p_eval.add_argument("--ambiguous-only", action="store_true",
                        help="restrict scoring to ambiguous keys")
    p_eval.add_argument("--per-key", metavar="FILE",
                        help="write a per-key TSV (key, n, agreement, prior)")
    p_eval.set_defaults(func=cmd_eval)

    p_inspect = subs.add_parser("inspect", help="show the decision list for a word")
    p_inspect.add_argument("--model", required=True, help="trained model file")
    p_inspect.add_argument("word", nargs="?", help="word to look up (omit for a summary)")
    p_inspect.set_defaults(func=cmd_inspect)

    p_synth = subs.add_parser("synth", help="generate a planted-signal corpus")
    p_synth.add_argument("-o", "--output", help="output file (default stdout)")
    p_synth.add_argument("--keys", type=int, default=8)
    p_synth.add_argument("--occurrences", type=int, default=120)
    p_synth.add_argument("-k", "--window", type=int, default=4)
    p_synth.add_argument("--noise", type=float, default=0.0)
    p_synth.add_argument("--doc-sentences", type=int, default=1,
                         help="sentences per generated document")
    p_synth.add_argument("--seed", type=int, default=0)
    p_synth.set_defaults(func=cmd_synth)

    return parser, [p_train, p_restore, p_eval, p_inspect, p_synth]


def main(argv=None) -> int:
    parser, subparsers = build_parser()
    config_path = os.environ.get("REACCENT_CONFIG")
    if config_path:
        try:
            with open(config_path, encoding="utf-8") as f:
                defaults = json.load(f)
        except (OSError, json.JSONDecodeError) as exc:
            print(f"cannot read REACCENT_CONFIG: {exc}", file=sys.stderr)
            return EXIT_INPUT
        if not isinstance(defaults, dict):
            print("REACCENT_CONFIG must hold a JSON object", file=sys.stderr)
            return EXIT_INPUT
        for sub in subparsers:
            sub.set_defaults(**defaults)
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except BrokenPipeError:
        # Downstream pager/head closed the pipe; suppress the shutdown noise.
        os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
        return 0
    except ModelFormatError as exc:
        print(f"bad model file: {exc}", file=sys.stderr)
        return EXIT_MODEL
    except InsufficientDataError as exc:
        print(f"not enough data: {exc}", file=sys.stderr)
        return EXIT_DATA
    except (OSError, UnicodeDecodeError, ValueError) as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
