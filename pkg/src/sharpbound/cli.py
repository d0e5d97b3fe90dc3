"""Command-line interface.

Exit codes: 0 verified / converged, 1 mathematical failure (bound violated,
negativity, non-convergence), 2 usage or input error.
"""

from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path

from . import fileformat as ff
from .chebyshev import DEFAULT_CLUSTER_TOL, extremal_polynomial, zero_structure
from .errors import ContractError, NotNonnegativeError, SharpBoundError, UnboundedLPError
from .factorization import DEFAULT_TOL as FACTOR_TOL, fejer_riesz
from .inequalities import CERT_RTOL, admissibility_check, bound_report, carleson_constant
from .lp import LP_TOL
from .polycore import ComplexPoly, LaurentPoly
from .search import (
    SearchConfig,
    extremal_complex_lp,
    extremal_lp,
    uniqueness_probe,
)
from .transforms import CandidateInput, laurent_f, poly_g

DEFAULT_SEED = 20240611
EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _finite(x):
    return None if x is None or not math.isfinite(x) else float(x)


def _sidecar(path: Path) -> Path:
    return path.with_name(path.stem + ".report.json")


def _emit(text: str, path=None) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def _require_n(n):
    if n is None or n < 1:
        raise UsageError(f"--n must be a positive integer, got {n}")


def cmd_extremal(args) -> int:
    _require_n(args.n)
    p = extremal_polynomial(args.n)
    poly = p.to_complex_poly()
    zs = None
    if args.n >= 3:
        z = zero_structure(args.n, args.tol_cluster)
        zs = {
            "all_positive_real": z.all_positive_real,
            "all_double": z.all_double,
            "clusters": [{"re": c.real, "im": c.imag, "multiplicity": m} for c, m in z.clusters],
        }
    pfile = ff.polynomial_to_dict(poly)
    outputs = {
        "p0": p.coeffs[0],
        "degree": p.degree,
        "integer_coeffs": [str(v) for v in p.coeffs],
        "zero_structure": zs,
        "polynomial": pfile,
    }
    report = ff.run_report("extremal", {"n": args.n}, outputs, {"tol_cluster": args.tol_cluster})
    if args.out:
        out = Path(args.out)
        ff.dump_json(pfile, out)
        ff.dump_json(report, _sidecar(out))
    if args.json:
        _emit(ff.dump_json(report))
    elif args.out:
        print(f"p_{args.n}: degree {p.degree}, p(0) = {p.coeffs[0]}; wrote {args.out}")
    else:
        _emit(ff.dump_json(pfile))
    return EXIT_OK


def _load(path, kind):
    try:
        obj = ff.load_polynomial(path)
    except (ff.FileFormatError, ContractError) as exc:
        raise UsageError(str(exc)) from exc
    want = ComplexPoly if kind == "polynomial" else LaurentPoly
    if not isinstance(obj, want):
        raise UsageError(f"{path}: expected a {kind} file")
    return obj


def cmd_verify(args) -> int:
    _require_n(args.n)
    p = _load(args.poly, "polynomial")
    tol = {"tol_cert": args.tol_cert}
    inputs = {"poly": str(args.poly), "n": args.n, "coeffs": ff.polynomial_to_dict(p)["coeffs"]}
    if p.degree > args.n - 1:
        msg = f"growth condition violated: degree {p.degree} exceeds n - 1 = {args.n - 1}"
        outputs = {"verified": False, "failures": [{"bound": "growth", "detail": msg}]}
        if args.json:
            _emit(ff.dump_json(ff.run_report("verify", inputs, outputs, tol)))
        else:
            print(msg)
        return EXIT_FAIL
    c = CandidateInput(p, args.n)
    rep = bound_report(c, rtol=args.tol_cert)
    adm = admissibility_check(c, require_positive=False, rtol=args.tol_cert)
    failures = []
    if not rep.admissible:
        failures.append({"bound": "growth", "margin": adm.worst_margin, "worst_s": _finite(adm.worst_s)})
    failures += [{"bound": name, "margin": m} for name, m in rep.violations(args.tol_cert)]
    outputs = {
        "verified": not failures,
        "p0_modulus": rep.p0_modulus,
        "admissible": rep.admissible,
        "positive_on_halfline": rep.positive_on_halfline,
        "bounds": {
            "sharp": rep.sharp_bound,
            "weak": rep.weak_bound,
            "nazarov_sodin": rep.nazarov_sodin_bound,
            "naive": rep.naive_bound,
        },
        "margins": rep.margins,
        "growth_margin": adm.worst_margin,
        "worst_s": _finite(adm.worst_s),
        "failures": failures,
    }
    if args.json:
        _emit(ff.dump_json(ff.run_report("verify", inputs, outputs, tol)))
    else:
        print(f"|p(0)| = {rep.p0_modulus:.12g}   n = {args.n}")
        print(f"growth condition: {'holds' if rep.admissible else 'VIOLATED'} "
              f"(margin {adm.worst_margin:.3e})")
        print(f"nonnegative on s >= 0: {rep.positive_on_halfline}")
        for name in ("sharp", "weak", "nazarov_sodin", "naive"):
            bad = any(f["bound"] == name for f in failures)
            applies = rep.admissible and (name != "sharp" or rep.positive_on_halfline)
            state = "VIOLATED" if bad else ("holds" if applies else "n/a")
            print(f"  {name:14s} {outputs['bounds'][name]:12.6g}  margin {rep.margins[name]:+.6g}  {state}")
    return EXIT_OK if not failures else EXIT_FAIL


def cmd_transform(args) -> int:
    _require_n(args.n)
    p = _load(args.poly, "polynomial")
    try:
        c = CandidateInput(p, args.n)
    except ContractError as exc:
        raise UsageError(str(exc)) from exc
    out = laurent_f(c) if args.kind == "f" else poly_g(c)
    pfile = ff.polynomial_to_dict(out)
    if args.out:
        ff.dump_json(pfile, args.out)
    if args.json:
        _emit(ff.dump_json(ff.run_report("transform", {"poly": str(args.poly), "n": args.n,
                                                       "kind": args.kind}, {"result": pfile}, {})))
    elif not args.out:
        _emit(ff.dump_json(pfile))
    return EXIT_OK


def cmd_factor(args) -> int:
    f = _load(args.laurent, "laurent")
    tol = {"tol_factor": args.tol_factor}
    inputs = {"laurent": str(args.laurent), "coeffs": ff.polynomial_to_dict(f)["coeffs"]}
    if f.is_zero or not f.hermitian:
        raise UsageError("factor needs a nonzero Hermitian Laurent polynomial (a_{-k} = conj(a_k))")
    try:
        sf = fejer_riesz(f, args.tol_factor)
    except NotNonnegativeError as exc:
        outputs = {"factored": False, "error": str(exc), "witness_angle": exc.witness_angle}
        if args.json:
            _emit(ff.dump_json(ff.run_report("factor", inputs, outputs, tol)))
        else:
            print(f"{exc} (witness angle {exc.witness_angle:.12g})")
        return EXIT_FAIL
    pfile = ff.polynomial_to_dict(sf.P)
    outputs = {
        "factored": True,
        "factor": pfile,
        "residual": sf.residual,
        "min_root_modulus": _finite(sf.min_root_modulus),
    }
    report = ff.run_report("factor", inputs, outputs, tol)
    if args.out:
        out = Path(args.out)
        ff.dump_json(pfile, out)
        ff.dump_json(report, _sidecar(out))
    if args.json:
        _emit(ff.dump_json(report))
    elif args.out:
        print(f"factor of degree {sf.P.degree}, residual {sf.residual:.3e}; wrote {args.out}")
    else:
        _emit(ff.dump_json(pfile))
    return EXIT_OK


def _search_dict(res) -> dict:
    return {
        "mode": res.mode,
        "n": res.n,
        "optimal_value": res.optimal_value,
        "optimizer": ff.polynomial_to_dict(res.optimizer),
        "active_points": [
            {"s": a.s, "theta": a.theta, "family": a.family, "phase": a.phase, "slack": a.slack}
            for a in res.active_points
        ],
        "iterations": res.iterations,
        "converged": res.converged,
        "final_violation": res.final_violation,
        "trace": [list(t) for t in res.trace],
    }


def cmd_search(args) -> int:
    _require_n(args.n)
    try:
        cfg = SearchConfig(
            n=args.n,
            initial_grid=args.initial_grid if args.initial_grid is not None else max(64, 2 * args.n + 2),
            max_exchange_rounds=args.max_rounds,
            violation_tol=args.tol_violation,
            phase_count=args.phase_count,
            full_degree=args.full_degree,
            lp_tol=args.tol_lp,
        )
    except ContractError as exc:
        raise UsageError(str(exc)) from exc
    inputs = {
        "n": cfg.n, "mode": args.mode, "initial_grid": cfg.initial_grid,
        "max_exchange_rounds": cfg.max_exchange_rounds, "phase_count": cfg.phase_count,
        "fine_grid": cfg.fine_grid, "full_degree": cfg.full_degree,
        "perturbations": args.perturbations, "seed": args.seed,
    }
    tol = {"tol_violation": cfg.violation_tol, "tol_lp": cfg.lp_tol}
    try:
        if args.mode == "real":
            res = extremal_lp(cfg)
        elif args.mode == "complex":
            res = extremal_complex_lp(cfg)
        else:
            rep = uniqueness_probe(cfg, args.perturbations, seed=args.seed)
    except UnboundedLPError as exc:
        print(f"search failed: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except ContractError as exc:
        raise UsageError(str(exc)) from exc

    if args.mode == "uniqueness":
        outputs = {
            "optimizers": [ff.polynomial_to_dict(p) for p in rep.optimizers],
            "values": list(rep.values),
            "max_pairwise_distance": rep.max_pairwise_distance,
            "matches_extremal": rep.matches_extremal,
            "all_converged": rep.all_converged,
        }
        ok = rep.all_converged
    else:
        outputs = _search_dict(res)
        ok = res.converged
        csv_path = args.csv or (Path(args.out).with_suffix(".csv") if args.out else None)
        if csv_path:
            rows = [[a.s, a.theta, a.family, a.phase, a.slack] for a in res.active_points]
            Path(csv_path).write_text(ff.csv_text(ff.ACTIVE_POINTS_HEADER, rows), encoding="utf-8")
    _emit(ff.dump_json(ff.run_report("search", inputs, outputs, tol)), args.out)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_constants(args) -> int:
    if args.d_max is None or args.d_max < 1:
        raise UsageError("--d-max must be a positive integer")
    rows = []
    for d in range(1, args.d_max + 1):
        k = carleson_constant(d)
        rows.append([d, k.new, k.old, k.old / k.new, "A <= 4B, optimal" if d == 1 else ""])
    text = ff.csv_text(ff.CONSTANTS_HEADER, rows)
    if args.json:
        outputs = {"rows": [dict(zip(ff.CONSTANTS_HEADER, r)) for r in rows]}
        _emit(ff.dump_json(ff.run_report("constants", {"d_max": args.d_max}, outputs, {})))
    else:
        _emit(text, args.out)
    return EXIT_OK


def cmd_schema(args) -> int:
    _emit(ff.dump_json(ff.SCHEMAS[args.name]))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sharpbound",
        description="Construct and certify the sharp bound |p(0)| <= n^2 for polynomials "
                    "nonnegative on the half-line under the growth bound |p(s)| <= (1+s)^n / s.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("extremal", help="write the extremal polynomial p_n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--out")
    p.add_argument("--json", action="store_true")
    p.add_argument("--tol-cluster", type=float, default=DEFAULT_CLUSTER_TOL)
    p.set_defaults(func=cmd_extremal)

    p = sub.add_parser("verify", help="check a candidate against the growth bound and all constants")
    p.add_argument("poly")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--json", action="store_true")
    p.add_argument("--tol-cert", type=float, default=CERT_RTOL)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("transform", help="write the auxiliary f (Laurent) or g of a candidate")
    p.add_argument("poly")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--kind", choices=["f", "g"], default="f")
    p.add_argument("--out")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_transform)

    p = sub.add_parser("factor", help="Fejér–Riesz factor of a nonnegative Laurent polynomial")
    p.add_argument("laurent")
    p.add_argument("--out")
    p.add_argument("--json", action="store_true")
    p.add_argument("--tol-factor", type=float, default=FACTOR_TOL)
    p.set_defaults(func=cmd_factor)

    p = sub.add_parser("search", help="recover the constant by semi-infinite LP")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--mode", choices=["real", "complex", "uniqueness"], default="real")
    p.add_argument("--initial-grid", type=int)
    p.add_argument("--max-rounds", type=int, default=400)
    p.add_argument("--phase-count", type=int, default=32)
    p.add_argument("--perturbations", type=int, default=8)
    p.add_argument("--full-degree", action="store_true")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--tol-violation", type=float, default=1e-8)
    p.add_argument("--tol-lp", type=float, default=LP_TOL)
    p.add_argument("--out")
    p.add_argument("--csv")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("constants", help="CSV table of the embedding constants 4d^2 and 4e^2 d^2")
    p.add_argument("--d-max", type=int, required=True)
    p.add_argument("--out")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_constants)

    p = sub.add_parser("schema", help="print a published JSON schema")
    p.add_argument("name", choices=sorted(ff.SCHEMAS))
    p.set_defaults(func=cmd_schema)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SharpBoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
