"""Command-line front door.

Subcommands: ``verify`` (exact checks of named or file-loaded solutions),
``nullspace`` (complete rational solution basis of a prescribed shape),
``series`` (local series families at a pole), ``monodromy`` (numerical
loop transport), ``eigen`` (integer spectrum of the generator sum).

All exact values are serialized as strings like ``-3/2`` or
``(1/2,-1/3)``, never floats, so exact-mode reports are lossless and
byte-identical across runs. Solution files are JSON objects with keys
``n``, ``rho``, ``points``, ``pole_coefficients`` (per pole, one vector
per pole order) and ``poly_coefficients`` (one vector per polynomial
degree, ascending). Exit codes: 0 all checks pass, 1 verification
failure, 2 usage or specification error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from . import ansatz, frobenius, numverify, symrep
from .exactalg import GaussianRational, Vector, parse_scalar
from .kzcore import KZSystem, new_system
from .s4explicit import y1, y2, y3, y4


class UsageError(Exception):
    pass


def _split_top_level(text: str) -> list[str]:
    """Split a comma list while respecting parenthesized complex literals."""
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise UsageError(f"unbalanced parentheses in {text!r}")
        if ch == "," and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    if depth != 0:
        raise UsageError(f"unbalanced parentheses in {text!r}")
    parts.append("".join(cur))
    return [p for p in (s.strip() for s in parts) if p]


def _parse_points(text: str) -> list[GaussianRational]:
    try:
        return [parse_scalar(p) for p in _split_top_level(text)]
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _build_system(args) -> KZSystem:
    try:
        return new_system(args.n, args.rho, _parse_points(args.points))
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _vector_json(v: Vector) -> list[str]:
    return [str(c) for c in v]


def _solution_json(fn: ansatz.RationalVectorFunction, n: int, rho: int) -> dict:
    return {
        "n": n,
        "rho": rho,
        "points": [str(p) for p in fn.points],
        "pole_coefficients": [
            [_vector_json(vec) for vec in group] for group in fn.pole_coeffs
        ],
        "poly_coefficients": [_vector_json(vec) for vec in fn.poly_coeffs],
    }


def _solution_from_json(data: dict, sys_: KZSystem) -> ansatz.RationalVectorFunction:
    try:
        n = int(data["n"])
        rho = int(data["rho"])
        points = tuple(parse_scalar(p) for p in data["points"])
        poles = tuple(
            tuple(Vector([parse_scalar(e) for e in vec]) for vec in group)
            for group in data["pole_coefficients"]
        )
        poly = tuple(
            Vector([parse_scalar(e) for e in vec])
            for vec in data["poly_coefficients"]
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"malformed solution file: {exc}") from exc
    if n != sys_.n or rho != sys_.rho:
        raise UsageError("solution file n/rho disagree with the requested system")
    if points != sys_.points:
        raise UsageError("solution file pole locations disagree with --points")
    return ansatz.RationalVectorFunction(
        dim=n, points=points, pole_coeffs=poles, poly_coeffs=poly
    )


def _check(name: str, residual_text: str, ok: bool) -> dict:
    return {
        "name": name,
        "residual": residual_text,
        "verdict": "pass" if ok else "fail",
    }


def _exact_report(command: str, checks: list[dict], extra: dict | None = None) -> dict:
    report = {
        "command": command,
        "mode": "exact",
        "checks": checks,
        "overall": "pass" if all(c["verdict"] == "pass" for c in checks) else "fail",
        "timing_ms": None,
    }
    if extra:
        report.update(extra)
    return report


def _emit(report: dict, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(report, sort_keys=True, indent=2))
        return
    print(f"# {report['command']} ({report['mode']})")
    for c in report["checks"]:
        print(f"{c['verdict']:4s}  {c['name']}  residual={c['residual']}")
    print(f"overall: {report['overall']}")


def _condition_checks(sys_: KZSystem, label: str, fn) -> list[dict]:
    checks = []
    rep = ansatz.check_conditions(sys_, fn)
    for k, v in enumerate(rep.residue_symmetry, start=1):
        checks.append(_check(f"{label}: residue-symmetry k={k}", str(v), v.is_zero()))
    for k, v in enumerate(rep.pole_balance, start=1):
        checks.append(_check(f"{label}: pole-balance k={k}", str(v), v.is_zero()))
    checks.append(_check(f"{label}: growth", str(rep.growth), rep.growth.is_zero()))
    return checks


def _residual_checks(sys_: KZSystem, label: str, fn, count: int) -> list[dict]:
    checks = []
    for z in ansatz.sample_points(sys_.points, count):
        r = ansatz.residual(sys_, fn, z)
        checks.append(_check(f"{label}: residual z={z}", str(r), r.is_zero()))
    return checks


def cmd_verify(args) -> int:
    sys_ = _build_system(args)
    selector = args.solution
    named = {"y1": y1, "y2": y2, "y3": y3, "y4": y4}
    targets: list[tuple[str, ansatz.RationalVectorFunction]] = []
    if selector in named or selector == "all":
        if sys_.n != 4:
            raise UsageError("named solutions exist for n = 4 only")
        if sys_.rho != -1:
            raise UsageError("named solutions exist for rho = -1 only")
        keys = list(named) if selector == "all" else [selector]
        for key in keys:
            targets.append((key, named[key](sys_.points)))
    elif selector.startswith("file:"):
        path = selector[len("file:"):]
        try:
            with open(path, "r", encoding="utf-8") as fh:
                data = json.load(fh)
        except OSError as exc:
            raise UsageError(f"cannot read solution file: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise UsageError(f"solution file is not valid JSON: {exc}") from exc
        targets.append((path, _solution_from_json(data, sys_)))
    else:
        raise UsageError(f"unknown solution selector {selector!r}")

    checks: list[dict] = []
    full_count = sys_.s * (1 + 1) + 1
    for label, fn in targets:
        simple_shape = fn.pole_order <= 1 and fn.poly_degree <= 1
        if sys_.rho == -1 and simple_shape:
            checks.extend(_condition_checks(sys_, label, fn))
        count = max(
            full_count,
            sys_.s * (fn.pole_order + 1) + max(fn.poly_degree, 0),
        )
        checks.extend(_residual_checks(sys_, label, fn, count))
    report = _exact_report("verify", checks)
    _emit(report, args.format)
    return 0 if report["overall"] == "pass" else 1


def cmd_nullspace(args) -> int:
    sys_ = _build_system(args)
    try:
        basis = ansatz.solve_ansatz(
            sys_, pole_order=args.pole_order, poly_degree=args.poly_degree
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    probe = ansatz.sample_points(sys_.points, 1)[0]
    checks = []
    for i, fn in enumerate(basis):
        r = ansatz.residual(sys_, fn, probe)
        checks.append(
            _check(f"basis[{i}]: residual z={probe}", str(r), r.is_zero())
        )
    extra = {
        "dimension": len(basis),
        "basis": [_solution_json(fn, sys_.n, sys_.rho) for fn in basis],
    }
    report = _exact_report("nullspace", checks, extra)
    _emit(report, args.format)
    return 0


def cmd_series(args) -> int:
    sys_ = _build_system(args)
    try:
        window = frobenius.exponent_window(sys_, args.pole)
        families = frobenius.frobenius_solve(sys_, args.pole, args.order)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    fam_json = []
    for fam in families:
        members = []
        for i in range(fam.dimension):
            coeffs = {
                str(q): _vector_json(fam.basis[q][i])
                for q in range(fam.start, fam.order + 1)
            }
            members.append(coeffs)
        fam_json.append(
            {
                "start": fam.start,
                "dimension": fam.dimension,
                "order": fam.order,
                "basis_series": members,
            }
        )
    checks = [
        _check(
            f"family start={fam.start}: leading coefficient nonzero",
            "0",
            not all(col.is_zero() for col in fam.basis[fam.start]),
        )
        for fam in families
    ]
    extra = {
        "pole": args.pole,
        "window": {"least": window[0], "greatest": window[1]},
        "families": fam_json,
    }
    report = _exact_report("series", checks, extra)
    _emit(report, args.format)
    return 0


def cmd_monodromy(args) -> int:
    sys_ = _build_system(args)
    t0 = time.perf_counter()
    try:
        result = numverify.monodromy(sys_, args.pole, args.radius, args.tol)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    elapsed = (time.perf_counter() - t0) * 1000.0
    transport = [
        [[float(v.real), float(v.imag)] for v in row] for row in result.transport
    ]
    checks = [
        _check(
            f"monodromy pole={args.pole}: transport computed",
            f"{result.deviation:.6e}",
            True,
        )
    ]
    report = {
        "command": "monodromy",
        "mode": "float",
        "checks": checks,
        "overall": "pass",
        "timing_ms": elapsed,
        "pole": args.pole,
        "radius": args.radius,
        "tol": args.tol,
        "deviation": result.deviation,
        "steps": result.steps,
        "transport": transport,
    }
    _emit(report, args.format)
    return 0


def cmd_eigen(args) -> int:
    try:
        spectrum = symrep.t_spectrum(args.n)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    checks = [
        _check(
            f"spectrum contains {v}",
            "0",
            v in spectrum.eigenvalues,
        )
        for v in (args.n - 1, args.n - 2, -1)
    ]
    checks.append(
        _check(
            "multiplicities sum to n",
            str(sum(spectrum.eigenvalues.values()) - args.n),
            sum(spectrum.eigenvalues.values()) == args.n,
        )
    )
    extra = {
        "n": args.n,
        "spectrum": {str(k): v for k, v in sorted(spectrum.eigenvalues.items())},
        "least": spectrum.least,
        "greatest": spectrum.greatest,
    }
    report = _exact_report("eigen", checks, extra)
    _emit(report, args.format)
    return 0 if report["overall"] == "pass" else 1


def _add_system_args(p: argparse.ArgumentParser):
    p.add_argument("--n", type=int, required=True, help="matrix dimension")
    p.add_argument("--rho", type=int, required=True, help="integer coupling")
    p.add_argument(
        "--points",
        type=str,
        required=True,
        help="comma-separated exact pole locations, e.g. 0,1,2 or (0,1),1,2",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kz",
        description="exact and numerical checks for KZ systems over symmetric-group residues",
    )
    sub = parser.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("verify", help="check a solution against the system exactly")
    _add_system_args(p)
    p.add_argument(
        "--solution",
        type=str,
        required=True,
        help="y1|y2|y3|y4|all|file:PATH",
    )
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("nullspace", help="complete rational solution basis")
    _add_system_args(p)
    p.add_argument("--pole-order", type=int, default=1, dest="pole_order")
    p.add_argument("--poly-degree", type=int, default=1, dest="poly_degree")
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.set_defaults(func=cmd_nullspace)

    p = sub.add_parser("series", help="local series families at a pole")
    _add_system_args(p)
    p.add_argument("--pole", type=int, required=True, help="pole index, 1-based")
    p.add_argument("--order", type=int, required=True, help="truncation order")
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.set_defaults(func=cmd_series)

    p = sub.add_parser("monodromy", help="numerical loop transport around a pole")
    _add_system_args(p)
    p.add_argument("--pole", type=int, required=True, help="pole index, 1-based")
    p.add_argument("--radius", type=float, required=True)
    p.add_argument("--tol", type=float, default=1e-12)
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.set_defaults(func=cmd_monodromy)

    p = sub.add_parser("eigen", help="integer spectrum of the generator sum")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.set_defaults(func=cmd_eigen)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ArithmeticError, RuntimeError) as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
