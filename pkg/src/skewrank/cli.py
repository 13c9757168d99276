"""Command-line front end emitting machine-readable verification reports.

Commands:
    verify     run one theorem verifier at an instance (p, n)
    oracle     whole-field rank census with predicate cross-validation
    section6   certificate chain for the rational 3-dimensional subspace
    report-all every check applicable to an instance, in one document

Exit codes: 0 pass, 1 usage or hypothesis error, 2 verification failure.
JSON is the stable contract; the text format is a readable summary.
"""

from __future__ import annotations

import argparse
import json
import sys

import sympy

from . import __version__
from .cyclotomic import verify_section6
from .decomposition import (
    FULL_FIELD_CEILING,
    oracle_survey,
    remark_C_check,
    verify_direct_sum,
    verify_theorem_A,
    verify_theorem_C,
)
from .errors import SkewrankError
from .fields import ExtensionContext
from .galois import two_adic_shape

THEOREMS = ("T1", "T2", "TA", "TC", "RemarkC", "direct-sum")

EXIT_PASS = 0
EXIT_USAGE = 1
EXIT_FAILED = 2


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="skewrank",
        description="Exact verification of constant-rank decompositions of skew-forms",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(sp, with_instance=True):
        if with_instance:
            sp.add_argument("--p", type=int, required=True, help="odd prime base field size")
            sp.add_argument("--n", type=int, required=True, help="extension degree, 2..64")
        sp.add_argument("--seed", type=int, default=0, help="seed for sampled checks")
        sp.add_argument("--sample-cap", type=int, default=10_000,
                        help="max elements checked per subspace before sampling")
        sp.add_argument("--format", choices=("json", "text"), default="json")
        sp.add_argument("--output", default=None, help="write the report here instead of stdout")

    sp = sub.add_parser("verify", help="verify one theorem at an instance")
    sp.add_argument("--theorem", choices=THEOREMS, required=True)
    sp.add_argument("--i", type=int, default=None,
                    help="eigenspace index for RemarkC (default: smallest valid)")
    add_common(sp)

    sp = sub.add_parser("oracle", help="whole-field rank census")
    add_common(sp)

    sp = sub.add_parser("section6", help="rational 3-dimensional subspace certificate")
    sp.add_argument("--grid", type=int, default=10, help="integer grid bound")
    sp.add_argument("--samples", type=int, default=1000, help="random rational tuples")
    sp.add_argument("--form", default=None,
                    help="a,b,c override of the certified ternary form (testing hook)")
    add_common(sp, with_instance=False)

    sp = sub.add_parser("report-all", help="every applicable check for an instance")
    sp.add_argument("--grid", type=int, default=10)
    sp.add_argument("--samples", type=int, default=1000)
    add_common(sp)
    return parser


def _validate_instance(p: int, n: int) -> None:
    if not sympy.isprime(p) or p == 2:
        raise SkewrankError(f"p must be an odd prime, got {p}")
    if not 2 <= n <= 64:
        raise SkewrankError(f"n must be in [2, 64], got {n}")


def _validate_common(args) -> None:
    if getattr(args, "sample_cap", 1) < 1:
        raise SkewrankError("sample-cap must be >= 1")


def _config_dict(args) -> dict:
    keys = ("command", "theorem", "p", "n", "i", "seed", "sample_cap", "format", "grid", "samples")
    out = {}
    for key in keys:
        out[key] = getattr(args, key, None)
    return out


def _wrap(args, report_dict: dict) -> dict:
    return {"tool_version": __version__, "config": _config_dict(args), **report_dict}


def _format_text(doc: dict) -> str:
    lines = [f"skewrank {doc['tool_version']}  check={doc.get('theorem', '?')}"]
    instance = doc.get("instance")
    if instance:
        lines.append("instance: " + " ".join(f"{k}={v}" for k, v in instance.items()))
    comps = doc.get("components")
    if comps:
        lines.append(f"{'label':<42} {'dim':>4} {'expected':>8} {'mode':>10} {'checked':>8}  spectrum")
        for c in comps:
            spec = ",".join(f"{r}:{k}" for r, k in c["rank_spectrum"].items())
            exp = c["expected_rank"] if c["expected_rank"] is not None else "-"
            mark = "ok" if c["pass"] else "FAIL"
            lines.append(
                f"{c['label']:<42} {c['dimension']:>4} {exp:>8} {c['mode']:>10} "
                f"{c['checked']:>8}  {{{spec}}} {mark}"
            )
    if "histograms" in doc:
        for i, h in doc["histograms"].items():
            spec = ",".join(f"{r}:{k}" for r, k in h.items())
            lines.append(f"i={i}: {{{spec}}}")
    if "direct_sum_ok" in doc and doc["direct_sum_ok"] is not None:
        lines.append(f"direct sum certificate: {'ok' if doc['direct_sum_ok'] else 'FAIL'}")
    if "anisotropic" in doc:
        lines.append(f"anisotropic: {str(doc['anisotropic']).lower()}")
    lines.append("PASS" if doc["pass"] else "FAIL")
    return "\n".join(lines) + "\n"


def _emit(args, doc: dict) -> int:
    if args.format == "json":
        text = json.dumps(doc, sort_keys=True, indent=2) + "\n"
    else:
        text = _format_text(doc)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_PASS if doc["pass"] else EXIT_FAILED


def _run_verify(args) -> int:
    _validate_instance(args.p, args.n)
    ctx = ExtensionContext(args.p, args.n)
    theorem = args.theorem
    if theorem == "T1" and args.n % 2 == 0:
        raise SkewrankError("n must be odd for T1")
    if theorem == "T2" and args.n % 2 == 1:
        raise SkewrankError("n must be even for T2")
    if theorem in ("T1", "T2", "direct-sum"):
        report = verify_direct_sum(ctx, seed=args.seed, sample_cap=args.sample_cap)
    elif theorem == "TA":
        report = verify_theorem_A(ctx, seed=args.seed, sample_cap=args.sample_cap)
    elif theorem == "TC":
        report = verify_theorem_C(ctx, seed=args.seed, sample_cap=args.sample_cap)
    else:  # RemarkC
        i_index = args.i
        if i_index is None:
            a, _ = two_adic_shape(args.p + 1)
            i_index = a + 1
        report = remark_C_check(ctx, i_index, seed=args.seed)
    return _emit(args, _wrap(args, report.to_json_dict()))


def _run_oracle(args) -> int:
    _validate_instance(args.p, args.n)
    ctx = ExtensionContext(args.p, args.n)
    report = oracle_survey(ctx, seed=args.seed, sample_cap=args.sample_cap)
    return _emit(args, _wrap(args, report.to_json_dict()))


def _run_section6(args) -> int:
    override = None
    if args.form is not None:
        parts = args.form.split(",")
        try:
            override = tuple(int(x) for x in parts)
        except ValueError:
            override = ()
        if len(override) != 3:
            raise SkewrankError("--form needs three comma-separated integers")
    report = verify_section6(grid=args.grid, samples=args.samples, seed=args.seed,
                             form_override=override)
    return _emit(args, _wrap(args, report.to_json_dict()))


def _run_report_all(args) -> int:
    _validate_instance(args.p, args.n)
    ctx = ExtensionContext(args.p, args.n)
    runs: list[dict] = []
    skipped: list[dict] = []

    def attempt(name, fn):
        try:
            runs.append({"check": name, **fn().to_json_dict()})
        except SkewrankError as exc:
            skipped.append({"check": name, "reason": str(exc)})

    attempt("direct-sum", lambda: verify_direct_sum(ctx, seed=args.seed, sample_cap=args.sample_cap))
    attempt("TA", lambda: verify_theorem_A(ctx, seed=args.seed, sample_cap=args.sample_cap))
    attempt("TC", lambda: verify_theorem_C(ctx, seed=args.seed, sample_cap=args.sample_cap))
    alpha, _ = two_adic_shape(args.n)
    a, l = two_adic_shape(args.p + 1)
    if l > 1 and alpha > a + 1:
        for idx in range(a + 1, alpha):
            attempt(f"RemarkC[i={idx}]", lambda idx=idx: remark_C_check(ctx, idx, seed=args.seed))
    if ctx.order <= FULL_FIELD_CEILING:
        attempt("oracle", lambda: oracle_survey(ctx, seed=args.seed, sample_cap=args.sample_cap))
    attempt("section6", lambda: verify_section6(grid=args.grid, samples=args.samples, seed=args.seed))
    doc = _wrap(args, {
        "theorem": "report-all",
        "runs": runs,
        "skipped": skipped,
        "pass": all(r["pass"] for r in runs),
    })
    return _emit(args, doc)


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        _validate_common(args)
        if args.command == "verify":
            return _run_verify(args)
        if args.command == "oracle":
            return _run_oracle(args)
        if args.command == "section6":
            return _run_section6(args)
        return _run_report_all(args)
    except SkewrankError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
