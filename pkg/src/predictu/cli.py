"""Command-line interface.

Subcommands cover the full pipeline: ``curve`` (estimate and emit a
predictiveness curve), ``summarize`` (summary indices plus inference),
``links`` (ROC and Lorenz views with identity checks), ``validate``
(train/test evaluation with optional isotonic refit), ``simulate``
(bias and coverage harness) and ``report`` (merge prior results).

Exit codes: 0 success, 2 invalid input or configuration, 3 numeric
failure.  All outputs are deterministic given inputs, flags and seed.
"""

from __future__ import annotations

import argparse
import os
import sys

from . import __version__
from .curve_links import check_lorenz_identity, check_roc_identity, lorenz_from_table, roc_from_table
from .errors import NumericError, ValidationError
from .fileio import (
    curve_metadata,
    parse_counts_file,
    parse_subject_file,
    read_json,
    run_provenance,
    write_curve_csv,
    write_eval_csv,
    write_json,
    write_xy_csv,
)
from .inference import (
    ResamplePlan,
    Scheme,
    asymptotic_ci,
    bootstrap_ci,
    partial_u_variance,
    permutation_test,
    two_sample_u,
)
from .isotonic import pava
from .risk_model import CurvePoints, apply_model_to_test, curve_points, estimate_risk_table
from .simulate import (
    INDEX_TOKENS,
    build_population,
    load_model_spec,
    preset,
    run_bias_coverage,
)
from .summary_indices import (
    average_entropy,
    partial_u,
    predictiveness_u,
    predictiveness_u_std,
    r_square,
    total_gain,
)


def _band(text: str) -> tuple[float, float]:
    try:
        q0, q1 = (float(part) for part in text.split(":"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"band must be q0:q1, got {text!r}")
    return q0, q1


def _tokens(text: str) -> tuple[str, ...]:
    tokens = tuple(t.strip().lower() for t in text.split(",") if t.strip())
    unknown = [t for t in tokens if t not in INDEX_TOKENS]
    if unknown:
        raise argparse.ArgumentTypeError(
            f"unknown indices {unknown}; choose from {', '.join(INDEX_TOKENS)}"
        )
    if not tokens:
        raise argparse.ArgumentTypeError("at least one index required")
    return tokens


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="predictu",
        description="Predictiveness-curve summary indices for genetic risk models.",
    )
    parser.add_argument("--version", action="version", version=f"predictu {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_io(p, rho_required=True):
        p.add_argument("--rho", type=float, required=rho_required,
                       help="population prevalence (required; not identifiable from case-control data)")
        p.add_argument("--laplace", type=float, default=0.0,
                       help="additive smoothing for plug-in risks (default 0)")
        p.add_argument("--max-bad-rows", type=float, default=0.01,
                       help="tolerated fraction of malformed subject rows (default 0.01)")
        p.add_argument("--out", default=".", help="output directory (default current)")
        p.add_argument("--format", choices=("csv", "json"), default="csv",
                       help="format of the merged tabular artifact where applicable")

    p = sub.add_parser("curve", help="estimate a predictiveness curve from one dataset")
    p.add_argument("input", help="subject file (sample_id,status,markers) or counts file (genotype_id,n_case,n_control)")
    add_io(p)

    p = sub.add_parser("summarize", help="summary indices with variance and intervals")
    p.add_argument("input")
    add_io(p)
    p.add_argument("--indices", type=_tokens, default=_tokens("u,ustd,r,tg,ae"))
    p.add_argument("--band", type=_band, default=None, help="partial-U band as q0:q1")
    p.add_argument("--bootstrap", type=int, default=0, metavar="N",
                   help="bootstrap replicates for percentile intervals (default: asymptotic only)")
    p.add_argument("--permutation", type=int, default=0, metavar="N",
                   help="permutation replicates for a null test of U (default: off)")
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("links", help="ROC and Lorenz views of the same risk table")
    p.add_argument("input")
    add_io(p)

    p = sub.add_parser("validate", help="evaluate a trained ordering on independent test data")
    p.add_argument("--train", required=True)
    p.add_argument("--test", required=True)
    add_io(p)
    p.add_argument("--indices", type=_tokens, default=_tokens("u,ustd,r,tg,ae"))
    p.add_argument("--band", type=_band, default=None)
    p.add_argument("--isotonic", action="store_true",
                   help="also report indices after a monotone refit of the test curve")

    p = sub.add_parser("simulate", help="bias and coverage of indices on a simulated population")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--preset", help="bundled population name")
    src.add_argument("--model", help="model specification YAML")
    p.add_argument("--replicates", type=int, default=300)
    p.add_argument("--n-cases", type=int, default=1000)
    p.add_argument("--n-controls", type=int, default=1000)
    p.add_argument("--indices", type=_tokens, default=_tokens("u,ustd,r,tg,ae"))
    p.add_argument("--band", type=_band, default=None)
    p.add_argument("--isotonic", action="store_true")
    p.add_argument("--bootstrap", type=int, default=400, metavar="N",
                   help="bootstrap replicates per dataset for coverage intervals")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=None,
                   help="process count (default: PREDICTU_THREADS or all cores)")
    p.add_argument("--out", default=".")
    p.add_argument("--format", choices=("csv", "json"), default="csv")

    p = sub.add_parser("report", help="merge prior JSON results into one comparison table")
    p.add_argument("inputs", nargs="*", help="indices.json / eval.json files from earlier runs")
    p.add_argument("--out", default=".")
    p.add_argument("--format", choices=("csv", "json"), default="csv")

    return parser


# ---------------------------------------------------------------------------
# shared helpers


def _load_counts(path, rho, max_bad_rows):
    """Auto-detect subject versus pre-aggregated layout by header."""
    with open(path, "r", encoding="utf-8") as fh:
        header = fh.readline().lower()
    if "genotype_id" in header:
        return parse_counts_file(path, rho=rho)
    return parse_subject_file(path, rho=rho, max_bad_rows=max_bad_rows)


def _outdir(args) -> str:
    os.makedirs(args.out, exist_ok=True)
    return args.out


def _provenance(args, seed=None) -> dict:
    return run_provenance(vars(args), seed)


def _index_blocks(table_or_curve, tokens, band):
    results = []
    for token in tokens:
        if token == "u":
            results.append(predictiveness_u(table_or_curve))
        elif token == "ustd":
            results.append(predictiveness_u_std(table_or_curve))
        elif token in ("upartial", "upartialstd"):
            if band is None:
                raise ValidationError("--band q0:q1 is required for partial U indices")
            results.append(
                partial_u(table_or_curve, band[0], band[1], standardized=token.endswith("std"))
            )
        elif token == "r":
            results.append(r_square(table_or_curve))
        elif token == "rstd":
            results.append(r_square(table_or_curve, standardized=True))
        elif token == "tg":
            results.append(total_gain(table_or_curve))
        elif token == "ae":
            results.append(average_entropy(table_or_curve))
    return results


def _isotonic_curve(curve: CurvePoints) -> CurvePoints:
    fit = pava(curve.r, curve.masses)
    return CurvePoints(
        q=curve.q, r=fit.fitted, rho=curve.rho,
        genotypes=curve.genotypes, unseen=curve.unseen,
    )


def _report_line(report) -> str:
    return (
        f"{report.model:>12s} {report.index_name:>13s}  true={report.true_value:.6g}"
        f"  mean={report.mean:.6g}  %bias={report.pct_bias:.2f}  %cov={report.pct_coverage:.1f}"
    )


# ---------------------------------------------------------------------------
# subcommands


def cmd_curve(args) -> int:
    counts, report = _load_counts(args.input, args.rho, args.max_bad_rows)
    table = estimate_risk_table(counts, laplace=args.laplace)
    curve = curve_points(table)
    out = _outdir(args)
    prov = _provenance(args)
    write_curve_csv(os.path.join(out, "curve.csv"), curve.q, curve.r, prov)
    meta = curve_metadata(table)
    meta["parse"] = {"rows": report.n_rows, "dropped": report.n_dropped,
                     "warnings": list(report.warnings)}
    write_json(os.path.join(out, "curve.json"), meta, prov)
    for warning in report.warnings:
        print(f"warning: {warning}", file=sys.stderr)
    print(f"curve: {table.n_genotypes} genotypes, rho={table.rho:g} -> {out}/curve.csv")
    return 0


def cmd_summarize(args) -> int:
    counts, report = _load_counts(args.input, args.rho, args.max_bad_rows)
    table = estimate_risk_table(counts, laplace=args.laplace)
    curve = curve_points(table)
    out = _outdir(args)
    prov = _provenance(args, seed=args.seed)

    blocks = [res.to_dict() for res in _index_blocks(table, args.indices, args.band)]
    write_curve_csv(os.path.join(out, "curve.csv"), curve.q, curve.r, prov)
    write_json(os.path.join(out, "indices.json"), {"indices": blocks}, prov)

    order = table.genotypes
    if args.bootstrap > 0:
        plan = ResamplePlan(n_replicates=args.bootstrap, seed=args.seed)
        estimate = bootstrap_ci(counts, order, plan)
    else:
        estimate = asymptotic_ci(two_sample_u(counts, order))
    inference = {"global": estimate.to_dict()}
    if args.band is not None and args.bootstrap > 0:
        plan = ResamplePlan(n_replicates=args.bootstrap, seed=args.seed)
        inference["partial"] = partial_u_variance(
            counts, order, args.band, plan
        ).to_dict()
    if args.permutation > 0:
        plan = ResamplePlan(
            n_replicates=args.permutation, seed=args.seed, scheme=Scheme.LABEL_PERMUTATION
        )
        inference["permutation_p"] = permutation_test(counts, order, plan)
    write_json(os.path.join(out, "inference.json"), inference, prov)

    for block in blocks:
        print(f"{block['name']:>13s} = {block['value']:.6g}")
    ci = estimate.ci
    print(f"U = {estimate.u_hat:.6g}  ci=[{ci.lower:.6g}, {ci.upper:.6g}]  ({estimate.method.value})")
    return 0


def cmd_links(args) -> int:
    counts, _ = _load_counts(args.input, args.rho, args.max_bad_rows)
    table = estimate_risk_table(counts, laplace=args.laplace)
    roc = roc_from_table(table)
    lorenz = lorenz_from_table(table)
    roc_check = check_roc_identity(table)
    lorenz_check = check_lorenz_identity(table)
    out = _outdir(args)
    prov = _provenance(args)
    write_xy_csv(os.path.join(out, "roc.csv"), "fpr", roc.f, "tpr", roc.t, prov)
    write_xy_csv(os.path.join(out, "lorenz.csv"), "q", lorenz.q, "h", lorenz.h, prov)
    write_json(
        os.path.join(out, "links.json"),
        {
            "u": roc_check.u,
            "auc_roc": roc.auc,
            "auc_lorenz": lorenz.auc,
            "roc_identity_residual": roc_check.residual,
            "lorenz_identity_residual": lorenz_check.residual,
        },
        prov,
    )
    print(f"AUC(ROC)={roc.auc:.6g}  AUC(Lorenz)={lorenz.auc:.6g}  "
          f"residuals {roc_check.residual:.2e} / {lorenz_check.residual:.2e}")
    return 0


def cmd_validate(args) -> int:
    train_counts, _ = _load_counts(args.train, args.rho, args.max_bad_rows)
    test_counts, _ = _load_counts(args.test, args.rho, args.max_bad_rows)
    train_table = estimate_risk_table(train_counts, laplace=args.laplace)
    test_curve = apply_model_to_test(train_table.genotypes, test_counts, laplace=args.laplace)

    doc = {
        "train": {"indices": [r.to_dict() for r in _index_blocks(train_table, args.indices, args.band)]},
        "test": {
            "indices": [r.to_dict() for r in _index_blocks(test_curve, args.indices, args.band)],
            "monotone": test_curve.monotone,
            "unseen": [str(g) for g in test_curve.unseen],
        },
    }
    if args.isotonic:
        refit = _isotonic_curve(test_curve)
        doc["refit"] = {"indices": [r.to_dict() for r in _index_blocks(refit, args.indices, args.band)]}
    out = _outdir(args)
    prov = _provenance(args)
    write_curve_csv(os.path.join(out, "test_curve.csv"), test_curve.q, test_curve.r, prov)
    write_json(os.path.join(out, "validate.json"), doc, prov)

    def _value(section, name):
        for block in doc[section]["indices"]:
            if block["name"] == name:
                return block["value"]
        return float("nan")

    name = doc["train"]["indices"][0]["name"]
    print(f"{name}: train={_value('train', name):.6g}  test={_value('test', name):.6g}"
          + ("" if test_curve.monotone else "  (test curve non-monotone)"))
    return 0


def cmd_simulate(args) -> int:
    spec = preset(args.preset) if args.preset else load_model_spec(args.model)
    population = build_population(spec)
    reports = run_bias_coverage(
        [population],
        indices=args.indices,
        n_replicates=args.replicates,
        n_cases=args.n_cases,
        n_controls=args.n_controls,
        isotonic=args.isotonic,
        seed=args.seed,
        band=args.band,
        n_bootstrap=args.bootstrap,
        workers=args.workers,
    )
    out = _outdir(args)
    prov = _provenance(args, seed=args.seed)
    if args.format == "json":
        write_json(os.path.join(out, "eval.json"), {"reports": [r.to_dict() for r in reports]}, prov)
    else:
        write_eval_csv(os.path.join(out, "eval.csv"), reports, prov)
    for report in reports:
        print(_report_line(report))
    return 0


def cmd_report(args) -> int:
    if not args.inputs:
        raise ValidationError("report needs at least one prior result file")
    rows = []
    for path in args.inputs:
        try:
            doc = read_json(path)
        except (OSError, ValueError) as exc:
            raise ValidationError(f"{path}: not a readable JSON result file ({exc})") from exc
        source = os.path.basename(path)
        for block in doc.get("indices", []):
            rows.append({
                "source": source, "model": "", "index": block["name"],
                "value": block["value"], "true_value": "", "pct_bias": "", "pct_coverage": "",
            })
        for block in doc.get("reports", []):
            rows.append({
                "source": source, "model": block["model"], "index": block["index"],
                "value": block["mean"], "true_value": block["true_value"],
                "pct_bias": block["pct_bias"], "pct_coverage": block["pct_coverage"],
            })
    if not rows:
        raise ValidationError("no index or evaluation blocks found in the inputs")
    out = _outdir(args)
    prov = _provenance(args)
    if args.format == "json":
        write_json(os.path.join(out, "report.json"), {"rows": rows}, prov)
        print(f"report: {len(rows)} rows -> {out}/report.json")
    else:
        import csv as _csv

        with open(os.path.join(out, "report.csv"), "w", encoding="utf-8", newline="") as fh:
            fh.write("# predictu %s config=%s seed=%s\n"
                     % (prov["version"], prov["config_sha256"], prov["seed"]))
            writer = _csv.DictWriter(fh, fieldnames=list(rows[0]))
            writer.writeheader()
            writer.writerows(rows)
        print(f"report: {len(rows)} rows -> {out}/report.csv")
    return 0


_COMMANDS = {
    "curve": cmd_curve,
    "summarize": cmd_summarize,
    "links": cmd_links,
    "validate": cmd_validate,
    "simulate": cmd_simulate,
    "report": cmd_report,
}


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return _COMMANDS[args.command](args)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except NumericError as exc:
        print(f"numeric error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
