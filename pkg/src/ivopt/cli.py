"""Command-line interface.

Verbs:
  gallery        run the worked-example gallery (optionally one case)
  check          efficiency / Fritz John / KKT certificates at a point
  svm-train      fit the hard-margin interval SVM and write a model file
  svm-classify   apply a model file to a dataset

Exit codes: 0 success (or all cases pass); 1 an expectation failed (a gallery
case, a missing certificate, inseparable data); 2 usage or input errors
(malformed files, unknown case ids, infeasible query points).  Reports in
``--format json`` are canonical: two identical invocations produce
byte-identical output.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import fileformats
from .config import Config
from .exceptions import (
    DimensionError,
    InfeasiblePoint,
    IvoptError,
    LinearIndependenceViolated,
    NotSeparable,
    ParseError,
    PreconditionFailed,
    ScaleExceeded,
    SlacknessViolated,
    UnknownCaseId,
)
from .gallery import run_gallery
from .optimality import (
    fritz_john_check,
    is_efficient,
    kkt_necessary_check,
    kkt_sufficient_check,
)
from .svm import classify, kkt_verify, train

USAGE_ERROR = 2
EXPECTATION_FAILED = 1


def _add_globals(parser, suppress: bool) -> None:
    # the same three options are accepted before or after the verb; the
    # per-verb copies use SUPPRESS so they never clobber a pre-verb value
    sup = argparse.SUPPRESS
    parser.add_argument("--seed", type=int, default=sup if suppress else None,
                        help="override the config seed (default 0)")
    parser.add_argument("--format", choices=("json", "text"),
                        default=sup if suppress else "text",
                        help="report format (json output is byte-reproducible)")
    parser.add_argument("--config", default=sup if suppress else None,
                        metavar="FILE", help="JSON file with config overrides")


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="ivopt",
        description="calculus and optimization with compact-interval-valued functions")
    _add_globals(p, suppress=False)
    sub = p.add_subparsers(dest="verb", required=True)

    g = sub.add_parser("gallery", help="run the worked-example gallery")
    _add_globals(g, suppress=True)
    g.add_argument("--filter", default=None, metavar="CASE_ID",
                   help="run a single case by id")

    c = sub.add_parser("check", help="certificates for a problem at a point")
    _add_globals(c, suppress=True)
    c.add_argument("--point", required=True,
                   help="comma-separated coordinates, e.g. '0.5,0.5'")
    c.add_argument("--what", default="all",
                   choices=("all", "efficiency", "fritz-john",
                            "kkt-necessary", "kkt-sufficient"))
    c.add_argument("problem", metavar="PROBLEM.json")

    t = sub.add_parser("svm-train", help="fit the hard-margin interval SVM")
    _add_globals(t, suppress=True)
    t.add_argument("--out", default=None, metavar="MODEL.json",
                   help="where to write the trained model")
    t.add_argument("data", metavar="DATA.csv")

    k = sub.add_parser("svm-classify", help="apply a trained model to a dataset")
    _add_globals(k, suppress=True)
    k.add_argument("model", metavar="MODEL.json")
    k.add_argument("data", metavar="DATA.csv")
    return p


def _load_cfg(args) -> Config:
    cfg = fileformats.load_config(args.config) if args.config else Config()
    if args.seed is not None:
        cfg = cfg.replace(seed=args.seed)
    return cfg


def _parse_point(text: str) -> np.ndarray:
    try:
        vals = [float(v) for v in text.split(",") if v.strip() != ""]
    except ValueError as e:
        raise ParseError(f"bad --point value {text!r}: {e}") from e
    if not vals:
        raise ParseError("--point needs at least one coordinate")
    return np.asarray(vals, float)


def _emit(report: dict, fmt: str, text_lines) -> None:
    if fmt == "json":
        sys.stdout.write(fileformats.dump_report(report))
    else:
        for line in text_lines():
            print(line)


# ---------------------------------------------------------------------------
# verbs
# ---------------------------------------------------------------------------

def _cmd_gallery(args, cfg: Config) -> int:
    ids = [args.filter] if args.filter else None
    report = run_gallery(ids, cfg)

    def lines():
        for case in report["cases"]:
            mark = "PASS" if case["pass"] else "FAIL"
            yield f"{mark}  {case['case_id']}: {case['description']}"
            if not case["pass"]:
                for ck in case.get("checks", []):
                    if not ck["ok"]:
                        yield f"      failed check: {ck['name']}"
        yield f"{report['passed']} passed, {report['failed']} failed"

    _emit(report, args.format, lines)
    return 0 if report["all_pass"] else EXPECTATION_FAILED


def _cmd_check(args, cfg: Config) -> int:
    instance = fileformats.load_problem(args.problem)
    point = _parse_point(args.point)
    if point.size != instance.dim:
        raise ParseError(f"--point has {point.size} coordinates,"
                         f" problem has dimension {instance.dim}")
    report = {"schema_version": 1, "tool": "ivopt-check", "problem": instance.name,
              "point": list(point), "config": cfg.to_dict(), "results": {}}
    positive = []

    def run(name, fn, good):
        try:
            out = fn()
        except (PreconditionFailed, LinearIndependenceViolated, SlacknessViolated) as e:
            report["results"][name] = {"error": type(e).__name__, "message": str(e)}
            positive.append(False)
            return
        report["results"][name] = fileformats.encode(out)
        positive.append(good(out))

    what = args.what
    if what in ("all", "efficiency"):
        run("efficiency", lambda: is_efficient(instance, point, cfg),
            lambda r: r.efficient)
    if what in ("all", "fritz-john"):
        run("fritz_john", lambda: fritz_john_check(instance, point, cfg),
            lambda r: r.found)
    if what in ("all", "kkt-necessary"):
        run("kkt_necessary", lambda: kkt_necessary_check(instance, point, cfg),
            lambda r: r.found)
    if what in ("all", "kkt-sufficient"):
        run("kkt_sufficient", lambda: kkt_sufficient_check(instance, point, cfg),
            lambda r: r.holds)
    ok = all(positive)
    report["ok"] = ok

    def lines():
        for name, res in report["results"].items():
            if "error" in res:
                yield f"{name}: {res['error']} — {res['message']}"
            elif name == "efficiency":
                verdict = "efficient" if res["efficient"] else "not efficient"
                extra = (f" (better point at {res['witness_point']})"
                         if res.get("witness_point") else "")
                yield f"{name}: {verdict}{extra}"
            elif name == "kkt_sufficient":
                yield f"{name}: {'holds' if res['holds'] else 'fails'} — {res['reason']}"
            else:
                verdict = "certificate found" if res["found"] else "no certificate"
                mult = f" multipliers={res['multipliers']}" if res.get("multipliers") else ""
                yield f"{name}: {verdict}{mult}"
        yield f"overall: {'ok' if ok else 'failed'}"

    _emit(report, args.format, lines)
    return 0 if ok else EXPECTATION_FAILED


def _cmd_svm_train(args, cfg: Config) -> int:
    dataset = fileformats.load_dataset_csv(args.data)
    if dataset.labels is None:
        raise ParseError("training data must carry a 'label' column")
    try:
        solution = train(dataset, cfg)
    except NotSeparable as e:
        report = {"schema_version": 1, "tool": "ivopt-svm-train",
                  "status": "not_separable", "message": str(e),
                  "witness_pair": list(e.witness_pair) if e.witness_pair else None}
        _emit(report, args.format,
              lambda: [f"not separable: {e}"]
                      + ([f"overlapping opposite-label samples: {e.witness_pair}"]
                         if e.witness_pair else []))
        return EXPECTATION_FAILED
    verification = kkt_verify(solution, dataset, cfg)
    if args.out:
        fileformats.save_model(solution, args.out)
    report = {"schema_version": 1, "tool": "ivopt-svm-train", "status": "trained",
              "model": fileformats.encode(solution),
              "kkt": {"passes": verification["passes"],
                      "stationarity_residual": verification["stationarity_residual"],
                      "worst_margin": verification["worst_margin"]},
              "written_to": args.out}

    def lines():
        yield f"w = {list(solution.w)}   b = {solution.b}"
        yield f"margin width = {solution.margin_width}"
        yield f"support samples = {list(solution.support_indices)}"
        yield f"duals = {list(solution.duals)}"
        yield f"KKT verification: {'pass' if verification['passes'] else 'FAIL'}"
        if args.out:
            yield f"model written to {args.out}"

    _emit(report, args.format, lines)
    return 0


def _cmd_svm_classify(args, cfg: Config) -> int:
    solution = fileformats.load_model(args.model)
    dataset = fileformats.load_dataset_csv(args.data)
    results = classify(solution, dataset, cfg)
    agree = None
    if dataset.labels is not None:
        agree = sum(1 for r, y in zip(results, dataset.labels) if r["label"] == y)
    report = {"schema_version": 1, "tool": "ivopt-svm-classify",
              "results": fileformats.encode(results)}
    if agree is not None:
        n = dataset.n_samples
        report["labeled_agreement"] = agree / n if n else 1.0
        report["n_labeled"] = n

    def lines():
        for i, r in enumerate(results):
            tag = {1: "+1", -1: "-1", 0: "ambiguous"}[r["label"]]
            yield (f"sample {i}: {tag}  score=[{r['score'].lo}, {r['score'].hi}]"
                   f"  midpoint_label={r['midpoint_label']:+d}")
        if agree is not None:
            yield f"agreement with labels: {agree}/{dataset.n_samples}"

    _emit(report, args.format, lines)
    return 0


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 0 if e.code in (0, None) else USAGE_ERROR
    try:
        cfg = _load_cfg(args)
        if args.verb == "gallery":
            return _cmd_gallery(args, cfg)
        if args.verb == "check":
            return _cmd_check(args, cfg)
        if args.verb == "svm-train":
            return _cmd_svm_train(args, cfg)
        if args.verb == "svm-classify":
            return _cmd_svm_classify(args, cfg)
        raise AssertionError(f"unhandled verb {args.verb!r}")
    except (ParseError, UnknownCaseId, InfeasiblePoint, ScaleExceeded,
            DimensionError) as e:
        print(f"ivopt: error: {e}", file=sys.stderr)
        return USAGE_ERROR
    except IvoptError as e:
        print(f"ivopt: {type(e).__name__}: {e}", file=sys.stderr)
        return EXPECTATION_FAILED


if __name__ == "__main__":
    sys.exit(main())
