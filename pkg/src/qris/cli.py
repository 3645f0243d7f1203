"""Operator command line tying the pipeline together.

Each subcommand prints a single JSON summary line on stdout; progress
and diagnostics go to stderr (level via the QRIS_LOG environment
variable).  Exit codes: 0 success, 1 runtime error, 2 usage error.
All file outputs are written atomically, so reruns are idempotent.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .errors import QrisError
from .util import setup_logging


def _emit(summary: dict) -> None:
    print(json.dumps(summary, sort_keys=True))


def _fractions(text: str) -> tuple[float, float, float]:
    parts = text.split(",")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(
            "expected three comma-separated fractions, e.g. 0.7,0.15,0.15")
    try:
        values = tuple(float(p) for p in parts)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None
    if any(f <= 0 for f in values) or abs(sum(values) - 1.0) > 1e-9:
        raise argparse.ArgumentTypeError(
            "fractions must be positive and sum to 1")
    return values


def _jobs(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("--jobs must be at least 1")
    return min(value, os.cpu_count() or 1)


def _load_params(kind: str, path: str | None):
    if path is None:
        return None
    from .model import ForestParams, GbdtParams
    with open(path, encoding="utf-8") as fh:
        raw = json.load(fh)
    cls = GbdtParams if kind == "gbdt" else ForestParams
    return cls(**raw)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qris",
        description="Structural QR-code phishing detection toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen-dataset",
                       help="encode a url,label CSV into the feature CSV")
    p.add_argument("input", help="CSV with url and label columns")
    p.add_argument("--out", required=True, help="output feature CSV")
    p.add_argument("--manifest", help="output JSON manifest path")
    p.add_argument("--per-label", type=int, required=True,
                   help="rows to generate for each label")
    p.add_argument("--seed", type=int, default=42)

    p = sub.add_parser("split",
                       help="stratified train/validation/test split")
    p.add_argument("input", help="feature CSV")
    p.add_argument("--train", required=True)
    p.add_argument("--validation", required=True)
    p.add_argument("--test", required=True)
    p.add_argument("--fractions", type=_fractions,
                   default=(0.7, 0.15, 0.15),
                   help="train,validation,test (default 0.7,0.15,0.15)")
    p.add_argument("--seed", type=int, default=42)

    p = sub.add_parser("train", help="train a classifier on a feature CSV")
    p.add_argument("input", help="training feature CSV")
    p.add_argument("--kind", choices=("gbdt", "rf"), default="gbdt")
    p.add_argument("--out", required=True, help="output model file")
    p.add_argument("--params", help="JSON file with hyperparameters")
    p.add_argument("--seed", type=int, default=42)

    p = sub.add_parser("tune",
                       help="random-search hyperparameters by 5-fold CV")
    p.add_argument("input", help="training feature CSV")
    p.add_argument("--kind", choices=("gbdt", "rf"), default="gbdt")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--time-cap", type=float, default=3600.0,
                   help="search budget in seconds")
    p.add_argument("--out", help="write best hyperparameters as JSON")
    p.add_argument("--model-out",
                   help="refit the best configuration and save the model")
    p.add_argument("--jobs", type=_jobs, default=1)
    p.add_argument("--seed", type=int, default=42)

    p = sub.add_parser("eval", help="evaluate a model on a labeled CSV")
    p.add_argument("input", help="feature CSV with labels")
    p.add_argument("--model", required=True)

    p = sub.add_parser("extract",
                       help="extract the 24 features from a QR image")
    p.add_argument("image", help="PNG image of a QR code")

    p = sub.add_parser("predict", help="classify a QR image")
    p.add_argument("image", help="PNG image of a QR code")
    p.add_argument("--model", required=True)

    p = sub.add_parser("serve", help="run the HTTP prediction service")
    p.add_argument("--model", required=True)
    p.add_argument("--host", default=os.environ.get("QRIS_HOST",
                                                    "127.0.0.1"))
    p.add_argument("--port", type=int,
                   default=int(os.environ.get("QRIS_PORT", "8000")))
    p.add_argument("--jobs", type=_jobs, default=None,
                   help="max concurrent image-processing jobs")

    return parser


def _cmd_gen_dataset(args, log) -> dict:
    from .dataset import build_dataset
    log.info("generating %d rows per label from %s",
             args.per_label, args.input)
    manifest = build_dataset(args.input, args.per_label, args.seed,
                             args.out, args.manifest)
    return {"command": "gen-dataset", "out": args.out,
            "manifest": args.manifest, **manifest}


def _cmd_split(args, log) -> dict:
    from .dataset import stratified_split
    counts = stratified_split(
        args.input, args.fractions, args.seed,
        (args.train, args.validation, args.test))
    return {"command": "split", "counts": counts,
            "fractions": list(args.fractions), "seed": args.seed}


def _cmd_train(args, log) -> dict:
    from .dataset import load_feature_matrix
    from .model import save_model, train
    X, y = load_feature_matrix(args.input)
    log.info("training %s on %d rows", args.kind, X.shape[0])
    model = train(args.kind, X, y,
                  params=_load_params(args.kind, args.params),
                  seed=args.seed)
    save_model(args.out, model)
    accuracy = float(((model.predict_proba(X) >= 0.5) == (y == 1)).mean())
    return {"command": "train", "kind": args.kind, "out": args.out,
            "rows": int(X.shape[0]), "seed": args.seed,
            "train_accuracy": round(100.0 * accuracy, 4)}


def _cmd_tune(args, log) -> dict:
    import dataclasses

    from .dataset import load_feature_matrix
    from .model import save_model, train, tune
    X, y = load_feature_matrix(args.input)

    def progress(trial, params, accuracy):
        log.info("trial %d: cv accuracy %.4f", trial, accuracy)

    best, best_accuracy, completed = tune(
        args.kind, X, y, trials=args.trials, time_cap=args.time_cap,
        seed=args.seed, progress=progress, jobs=args.jobs)
    best_dict = dataclasses.asdict(best)
    if args.out:
        from .util import atomic_write_text
        atomic_write_text(args.out, json.dumps(best_dict, indent=2,
                                               sort_keys=True) + "\n")
    if args.model_out:
        model = train(args.kind, X, y, params=best, seed=args.seed)
        save_model(args.model_out, model)
    return {"command": "tune", "kind": args.kind,
            "best_params": best_dict,
            "best_cv_accuracy": round(100.0 * best_accuracy, 4),
            "trials_completed": completed, "seed": args.seed,
            "out": args.out, "model_out": args.model_out}


def _cmd_eval(args, log) -> dict:
    from .dataset import load_feature_matrix
    from .model import evaluate, read_model
    model = read_model(args.model)
    X, y = load_feature_matrix(args.input)
    report = evaluate(model, X, y)
    summary = report.as_dict()
    summary.pop("roc", None)  # keep the stdout line short
    return {"command": "eval", "model": args.model,
            "rows": int(X.shape[0]), **summary}


def _extract_vector(path: str):
    from .features import extract_all
    from .imaging import binarize_to_grid, load_image, preprocess
    image = load_image(path)
    grid = binarize_to_grid(preprocess(image))
    return extract_all(grid)


def _cmd_extract(args, log) -> dict:
    vector = _extract_vector(args.image)
    return {"command": "extract", "image": args.image,
            "features": vector.as_dict()}


def _cmd_predict(args, log) -> dict:
    from .model import read_model
    model = read_model(args.model)
    vector = _extract_vector(args.image)
    label, confidence = model.predict_vector(vector)
    return {"command": "predict", "image": args.image, "label": label,
            "confidence": confidence, "features": vector.as_dict()}


def _cmd_serve(args, log) -> dict:
    from .service import serve
    log.info("serving model %s on %s:%d", args.model, args.host, args.port)
    serve(args.model, host=args.host, port=args.port, jobs=args.jobs)
    return {"command": "serve", "model": args.model}


_COMMANDS = {
    "gen-dataset": _cmd_gen_dataset,
    "split": _cmd_split,
    "train": _cmd_train,
    "tune": _cmd_tune,
    "eval": _cmd_eval,
    "extract": _cmd_extract,
    "predict": _cmd_predict,
    "serve": _cmd_serve,
}


def run(argv=None) -> int:
    args = build_parser().parse_args(argv)
    log = setup_logging()
    try:
        _emit(_COMMANDS[args.command](args, log))
    except (QrisError, OSError, ValueError) as exc:
        code = getattr(exc, "code", type(exc).__name__.lower())
        log.error("%s: %s", code, exc)
        return 1
    return 0


def main() -> None:
    raise SystemExit(run())


if __name__ == "__main__":
    main()
