"""Command line interface.

    thfactor analyze SPEC
    thfactor factorize SPEC [--grid G]
    thfactor matrix SPEC N --operator {T,H,M,Phi,Psi}
    thfactor mellin-sweep SPEC TAU [--z-max Z] [--steps S]
    thfactor verify {SPEC | identities | curated | random | toeplitz}

Exit codes: 0 success, 1 invalid input (or a failed verification, or a
non-Fredholm symbol where Fredholmness is required), 2 numerical failure.
"""

from __future__ import annotations

import argparse
import math
import sys

from . import __version__
from .errors import (InternalConsistencyError, NotFredholmError, NumericFailure,
                     ProbeUnsupportedError, TruncationError)
from .factorization import factor_pc, validate_factorization
from .fredholm import analyze
from .harness import (SuiteReport, equivalence_probe, finite_section_probe, formal_inverse_suite,
                      identity_suite, sweep_cross_check, toeplitz_baseline)
from .library import curated_library, random_library, toeplitz_cases
from .mellin import local_symbol, pair_tag, sweep_nonvanishing
from .operators import KINDS, build_section
from .serialization import (SpecError, complex_pair, format_matrix, load_spec, report_document,
                            symbol_to_dict)

EXIT_OK, EXIT_INPUT, EXIT_NUMERIC = 0, 1, 2
SUITES = ("identities", "curated", "random", "toeplitz")


class UsageError(ValueError):
    pass


def _emit(text: str, out):
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")


def _analysis_body(sym, report) -> dict:
    sel = report.selection
    params = None
    if sel is not None:
        params = {"beta_plus": complex_pair(sel.beta_plus),
                  "beta_minus": complex_pair(sel.beta_minus),
                  "pairs": [{"theta": th, "beta_r_plus": complex_pair(bp),
                             "beta_r_minus": complex_pair(bm)} for th, bp, bm in sel.pairs]}
    return {
        "symbol": symbol_to_dict(sym),
        "conditions": [{"location": c.location, "theta": c.theta, "ratio": complex_pair(c.ratio),
                        "normalized_arg": c.normalized_arg, "forbidden": c.forbidden,
                        "distance": c.distance, "passes": c.passes} for c in report.conditions],
        "is_fredholm": report.is_fredholm,
        "boundary": report.boundary,
        "parameters": params,
        "kappa": report.kappa,
        "index": report.index,
        "dim_kernel": report.dim_kernel,
        "dim_cokernel": report.dim_cokernel,
        "is_invertible": report.is_invertible,
    }


def cmd_analyze(args) -> int:
    sym = load_spec(args.spec)
    _emit(report_document("analyze", _analysis_body(sym, analyze(sym, grid=args.grid))), args.out)
    return EXIT_OK


def _term(t) -> dict:
    return {"kind": t.kind, "sigma": t.sigma, "exponent": complex_pair(t.exponent),
            "label": t.label()}


def cmd_factorize(args) -> int:
    sym = load_spec(args.spec)
    fact = factor_pc(sym)
    rep = validate_factorization(fact, sym, grid=args.grid)
    body = {
        "symbol": symbol_to_dict(sym),
        "kappa": fact.kappa,
        "t_power": fact.kappa,
        "gamma": complex_pair(fact.gamma),
        "minus_terms": [_term(t) for t in fact.minus_terms],
        "zero_terms": [_term(t) for t in fact.zero_terms],
        "smooth_minus": {str(n): complex_pair(c) for n, c in fact.smooth_minus.items},
        "smooth_zero": {str(n): complex_pair(c) for n, c in fact.smooth_zero.items},
        "defects": {"residual": rep.residual, "evenness": rep.evenness_defect,
                    "minus_support": rep.minus_support_defect,
                    "minus_inverse_support": rep.minus_inverse_support_defect,
                    "truncation": rep.truncation, "grid": args.grid},
    }
    _emit(report_document("factorize", body), args.out)
    return EXIT_OK


def cmd_matrix(args) -> int:
    sym = load_spec(args.spec)
    section = build_section(sym, args.operator, args.N)
    _emit(format_matrix(section.entries), args.out)
    return EXIT_OK


def parse_tau(text: str):
    """'1', '-1' or 'theta:<radians>' with 0 < theta < pi."""
    text = text.strip()
    if text in ("1", "+1"):
        return 1
    if text == "-1":
        return -1
    if text.startswith("theta:"):
        try:
            theta = float(text[len("theta:"):])
        except ValueError:
            raise UsageError(f"cannot read the angle in {text!r}") from None
        if not 0 < theta < math.pi:
            raise UsageError("a pair is tagged by its angle in (0, pi), in radians")
        return pair_tag(theta)
    raise UsageError(f"tau must be 1, -1 or theta:<radians>, got {text!r}")


def cmd_mellin_sweep(args) -> int:
    sym = load_spec(args.spec)
    ls = local_symbol(sym, parse_tau(args.tau))
    rep = sweep_nonvanishing(ls, z_max=args.z_max, steps=args.steps)
    lines = ["z,re,im,modulus"]
    for z, v in zip(rep.z, rep.values):
        lines.append(f"{z:.17g},{v.real:.17g},{v.imag:.17g},{abs(v):.17g}")
    for tag, v in (("+inf", rep.plus_inf), ("-inf", rep.minus_inf)):
        lines.append(f"{tag},{v.real:.17g},{v.imag:.17g},{abs(v):.17g}")
    _emit("\n".join(lines) + "\n", args.out)
    print(f"min modulus {rep.min_modulus:.6e} at z = {rep.z_at_min}", file=sys.stderr)
    return EXIT_OK


def _parse_sizes(text: str) -> tuple:
    try:
        sizes = tuple(int(s) for s in text.split(","))
    except ValueError:
        raise UsageError(f"--sizes must be comma-separated integers, got {text!r}") from None
    if len(sizes) < 2 or any(n < 1 for n in sizes):
        raise UsageError("--sizes needs at least two positive sizes")
    return sizes


def _verify_symbol(sym, args) -> SuiteReport:
    sizes = _parse_sizes(args.sizes)
    out = SuiteReport("verify symbol")
    report = analyze(sym, grid=args.grid)
    sweep = sweep_cross_check(sym, z_max=args.z_max, steps=args.steps)
    out.add("conditions agree with Mellin sweeps", 0.0, 0.0,
            f"engine={sweep.engine_fredholm} sweeps={sweep.sweep_fredholm}", passed=sweep.agree)
    if report.is_fredholm:
        fact = factor_pc(sym)
        rep = validate_factorization(fact, sym, grid=args.grid)
        out.add("factorization residual", rep.residual, 1e-8)
        out.add("phi_0 evenness", rep.evenness_defect, 1e-8)
        out.add("(1+1/t) phi_- one-sided", rep.minus_support_defect, 1e-8)
        out.add("(1-1/t) / phi_- one-sided", rep.minus_inverse_support_defect, 1e-8)
    if report.is_invertible:
        out.checks.extend(formal_inverse_suite(sym, trials=args.trials, seed=args.seed).checks)
    if sym.p == 2.0:
        probe = finite_section_probe(sym, sizes)
        out.add("finite-section probe", 0.0, 0.0, f"expected {probe.expected}, "
                f"sigma_min={probe.sigma_min}", passed=probe.verdict_consistent)
        eq = equivalence_probe(sym, sizes[-2])
        out.add("M / Phi / Psi equivalence", 0.0, 0.0, f"verdicts={eq.verdicts}",
                passed=eq.consistent)
    return out


def _verify_suite(name, args) -> SuiteReport:
    out = SuiteReport(f"verify {name}")
    if name == "identities":
        for d in (1, 2, 3):
            out.checks.extend(identity_suite(d, args.trials, args.seed + d).checks)
    elif name == "curated":
        sizes = _parse_sizes(args.sizes)
        for e in curated_library():
            probe = finite_section_probe(e.symbol, sizes, e.symbol_id)
            out.add(f"{e.symbol_id}: probe", 0.0, 0.0, probe.expected,
                    passed=probe.verdict_consistent)
            eq = equivalence_probe(e.symbol, sizes[-2], e.symbol_id)
            out.add(f"{e.symbol_id}: equivalence", 0.0, 0.0, f"verdicts={eq.verdicts}",
                    passed=eq.consistent)
    elif name == "random":
        for e in random_library(seed=args.seed):
            a = sweep_cross_check(e.symbol, e.symbol_id, z_max=args.z_max, steps=args.steps)
            out.add(f"{e.symbol_id}: sweep", 0.0, 0.0,
                    f"engine={a.engine_fredholm} sweeps={a.sweep_fredholm}", passed=a.agree)
    elif name == "toeplitz":
        out.checks.extend(toeplitz_baseline(toeplitz_cases()).checks)
    return out


def cmd_verify(args) -> int:
    if args.target in SUITES:
        report = _verify_suite(args.target, args)
    else:
        report = _verify_symbol(load_spec(args.target), args)
    _emit(report_document("verify", report.to_dict()), args.out)
    return EXIT_OK if report.passed else EXIT_INPUT


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="thfactor",
        description="Fredholm theory and factorization for Toeplitz-plus-Hankel operators "
                    "with piecewise continuous symbols.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, spec=True):
        if spec:
            p.add_argument("spec", help="symbol specification (JSON)")
        p.add_argument("--out", help="write the result here instead of stdout")

    p = sub.add_parser("analyze", help="Fredholm conditions, kappa, index, invertibility")
    common(p)
    p.add_argument("--grid", type=int, default=1024, help="winding-number grid")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("factorize", help="asymmetric factorization and its defect table")
    common(p)
    p.add_argument("--grid", type=int, default=1024, help="validation grid")
    p.set_defaults(func=cmd_factorize)

    p = sub.add_parser("matrix", help="finite section of T, H, M, Phi or Psi")
    common(p)
    p.add_argument("N", type=int, help="section size")
    p.add_argument("--operator", choices=KINDS, default="M")
    p.set_defaults(func=cmd_matrix)

    p = sub.add_parser("mellin-sweep", help="local symbol along the real line (CSV)")
    common(p)
    p.add_argument("tau", help="1, -1 or theta:<radians> for the pair at e^{i theta}")
    p.add_argument("--z-max", type=float, default=12.0)
    p.add_argument("--steps", type=int, default=2048)
    p.set_defaults(func=cmd_mellin_sweep)

    p = sub.add_parser("verify", help="run checks on a symbol or a named suite")
    p.add_argument("target", help=f"symbol specification or one of {', '.join(SUITES)}")
    p.add_argument("--out")
    p.add_argument("--grid", type=int, default=1024)
    p.add_argument("--sizes", default="128,256", help="finite-section sizes, comma-separated")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--z-max", type=float, default=12.0)
    p.add_argument("--steps", type=int, default=2048)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (SpecError, UsageError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except NotFredholmError as exc:
        print(f"error: not Fredholm: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ProbeUnsupportedError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (NumericFailure, InternalConsistencyError, TruncationError, FloatingPointError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
