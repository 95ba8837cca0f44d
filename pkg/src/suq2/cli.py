"""Command-line front end: eval (function tables), verify (suites), gram.

Exit codes: 0 success / all cases pass; 1 verification failure; 2 argument
or evaluation errors.  Output is assembled in full before printing, so a
failure never leaves a partial table on stdout.
"""
from __future__ import annotations

import argparse
import json
import sys
import time

import numpy as np

from .qcore import HalfInt, QParam, q_factorial, q_number
from .qinner import gram as gram_matrix
from .qinner import kind_for
from .qspecial import l_function, psi, q_function, r_polynomial, vilenkin
from .quadrature import QuadratureConfig
from .report import build_report
from .suites import SUITE_NAMES, run_suite

EVAL_FNS = ("qnum", "qfact", "R", "Q", "L", "vilenkin", "psi")

# which flag supplies the evaluation variable for each function
_POINT_FLAG = {"qnum": "x", "qfact": "x", "R": "eta", "Q": "eta", "L": "eta",
               "vilenkin": "xi", "psi": "rho"}


def _parse_half(text: str, flag: str) -> HalfInt:
    try:
        return HalfInt.of(float(text))
    except ValueError:
        raise SystemExit(_fail(f"{flag} must be an integer or half-integer, got {text!r}"))


def _fail(msg: str) -> int:
    print(f"error: {msg}", file=sys.stderr)
    return 2


def _param_from_args(args) -> QParam:
    if (args.q is None) == (args.tau is None):
        raise SystemExit(_fail("specify exactly one of --q or --tau"))
    if args.q is not None:
        return QParam.from_q(args.q)
    return QParam.unit_circle(args.tau)


def _grid(args, flag: str) -> np.ndarray:
    if args.grid is not None:
        parts = args.grid.split(":")
        if len(parts) != 3:
            raise SystemExit(_fail("--grid must be lo:hi:n"))
        try:
            lo, hi, n = float(parts[0]), float(parts[1]), int(parts[2])
        except ValueError:
            raise SystemExit(_fail("--grid must be lo:hi:n with numeric fields"))
        if n < 1:
            raise SystemExit(_fail("--grid needs n >= 1"))
        return np.linspace(lo, hi, n)
    value = getattr(args, flag if flag != "rho" else "rho", None)
    if value is None:
        raise SystemExit(_fail(f"--fn {args.fn} needs --{flag} or --grid"))
    return np.array([value], dtype=float)


def _require(args, *flags):
    for flag in flags:
        if getattr(args, flag.replace("-", "_")) is None:
            raise SystemExit(_fail(f"--fn {args.fn} requires --{flag}"))


def cmd_eval(args) -> int:
    p = _param_from_args(args)
    flag = _POINT_FLAG[args.fn]
    pts = _grid(args, flag)
    params = {}
    if args.fn in ("qnum",):
        vals = np.array([q_number(float(x), p) for x in pts], dtype=complex)
    elif args.fn == "qfact":
        vals = []
        for x in pts:
            if abs(x - round(x)) > 1e-12:
                raise SystemExit(_fail(f"qfact needs integer points, got {x}"))
            vals.append(q_factorial(int(round(x)), p))
        vals = np.array(vals, dtype=complex)
    elif args.fn in ("R", "Q", "L", "vilenkin", "psi"):
        if args.fn == "L":
            vals = np.asarray(l_function(p, pts), dtype=complex).reshape(-1)
        elif args.fn == "Q":
            _require(args, "J")
            J = _parse_half(str(args.J), "--J")
            params["J"] = str(J)
            vals = np.asarray(q_function(J, p, pts), dtype=complex).reshape(-1)
        else:
            _require(args, "J", "M", "N")
            J = _parse_half(str(args.J), "--J")
            M = _parse_half(str(args.M), "--M")
            N = _parse_half(str(args.N), "--N")
            params.update({"J": str(J), "M": str(M), "N": str(N)})
            if args.fn == "R":
                vals = np.asarray(r_polynomial(J, M, N, p, pts), dtype=complex).reshape(-1)
            elif args.fn == "vilenkin":
                vals = np.asarray(vilenkin(J, M, N, p, pts), dtype=complex).reshape(-1)
            else:
                vals = np.asarray(psi(J, M, N, p, pts, pts), dtype=complex).reshape(-1)
    else:  # pragma: no cover - argparse choices guard this
        raise SystemExit(_fail(f"unknown --fn {args.fn}"))

    if args.format == "csv":
        header = f"# fn={args.fn}," + ",".join(
            [f"{k}={v}" for k, v in params.items()]
            + [f"{k}={v}" for k, v in p.describe().items()])
        lines = [header, "point,re,im"]
        lines += [f"{float(x):.17g},{v.real:.17g},{v.imag:.17g}" for x, v in zip(pts, vals)]
        sys.stdout.write("\n".join(lines) + "\n")
    else:
        doc = {
            "schema": 1,
            "fn": args.fn,
            "params": params,
            "q_descriptor": p.describe(),
            "rows": [{"point": float(x), "re": v.real, "im": v.imag}
                     for x, v in zip(pts, vals)],
        }
        sys.stdout.write(json.dumps(doc, indent=2) + "\n")
    return 0


def _quad_config(args) -> QuadratureConfig:
    return QuadratureConfig(radial_nodes=args.radial_nodes,
                            angular_nodes=args.angular_nodes)


def cmd_verify(args) -> int:
    p = _param_from_args(args)
    j_max = None if args.J_max is None else _parse_half(str(args.J_max), "--J-max")
    j_list = None if args.J is None else [_parse_half(str(args.J), "--J")]
    N = _parse_half(str(args.N), "--N") if args.N is not None else HalfInt.of(0)
    start = time.perf_counter()
    cases = run_suite(args.suite, p, j_max=j_max, j_list=j_list, N=N,
                      seed=args.seed, tol=args.tol, cfg=_quad_config(args))
    runtime_ms = int(round((time.perf_counter() - start) * 1000))
    doc = build_report(args.suite, p, cases, runtime_ms)
    sys.stdout.write(doc.to_json())
    return 0 if doc.passed else 1


def cmd_gram(args) -> int:
    p = _param_from_args(args)
    kind = kind_for(p)
    N = _parse_half(str(args.N), "--N") if args.N is not None else HalfInt.of(0)
    if args.J is not None:
        j_list = [_parse_half(str(args.J), "--J")]
    else:
        j_max = _parse_half(str(args.J_max), "--J-max") if args.J_max is not None else HalfInt.of(2)
        j_list = [HalfInt(t) for t in range(abs(N.twice), j_max.twice + 1, 2)]
    rep = gram_matrix(N, j_list, p, kind, _quad_config(args))
    labels = [f"{J}:{M}" for (J, M) in rep.labels]
    if args.format == "csv":
        lines = [
            "# gram,N=" + str(N) + ",J=" + ("|".join(str(HalfInt.of(J)) for J in j_list) or "(empty)")
            + ",kind=" + kind.value,
            f"# max_offdiag={rep.max_offdiag:.17g},max_diag_dev={rep.max_diag_dev:.17g}",
            "i,j,bra,ket,re,im",
        ]
        n = len(labels)
        for i in range(n):
            for j in range(n):
                v = rep.matrix[i, j]
                lines.append(f"{i},{j},{labels[i]},{labels[j]},{v.real:.17g},{v.imag:.17g}")
        sys.stdout.write("\n".join(lines) + "\n")
    else:
        doc = {
            "schema": 1,
            "q_descriptor": p.describe(),
            "kind": kind.value,
            "N": str(N),
            "labels": labels,
            "matrix": [[[rep.matrix[i, j].real, rep.matrix[i, j].imag]
                        for j in range(len(labels))] for i in range(len(labels))],
            "max_offdiag": rep.max_offdiag,
            "max_diag_dev": rep.max_diag_dev,
        }
        sys.stdout.write(json.dumps(doc, indent=2) + "\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="suq2",
        description="Evaluate and verify the q-deformed special functions, "
                    "operators, and scalar products of the plane realization.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(sp):
        sp.add_argument("--q", type=float, help="positive real q (1 = classical)")
        sp.add_argument("--tau", type=float, help="circle parameter tau, q = exp(i tau)")
        sp.add_argument("--J", type=float, default=None)
        sp.add_argument("--M", type=float, default=None)
        sp.add_argument("--N", type=float, default=None)
        sp.add_argument("--format", choices=("csv", "json"), default="csv")
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--radial-nodes", type=int, default=16, dest="radial_nodes")
        sp.add_argument("--angular-nodes", type=int, default=16, dest="angular_nodes")

    pe = sub.add_parser("eval", help="tabulate one function on a point or grid")
    add_common(pe)
    pe.add_argument("--fn", choices=EVAL_FNS, required=True)
    pe.add_argument("--x", type=float, default=None, help="argument for qnum/qfact")
    pe.add_argument("--eta", type=float, default=None)
    pe.add_argument("--xi", type=float, default=None)
    pe.add_argument("--rho", type=float, default=None, help="radial point for psi (u=v=rho)")
    pe.add_argument("--grid", type=str, default=None, help="lo:hi:n")
    pe.set_defaults(func=cmd_eval)

    pv = sub.add_parser("verify", help="run a verification suite, report JSON")
    add_common(pv)
    pv.add_argument("--suite", choices=SUITE_NAMES, required=True)
    pv.add_argument("--J-max", type=float, default=None, dest="J_max")
    pv.add_argument("--tol", type=float, default=None)
    pv.set_defaults(func=cmd_verify)

    pg = sub.add_parser("gram", help="Gram matrix of a basis tower")
    add_common(pg)
    pg.add_argument("--J-max", type=float, default=None, dest="J_max")
    pg.set_defaults(func=cmd_gram)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SystemExit:
        raise
    except (ValueError, RuntimeError) as exc:
        return _fail(str(exc))


if __name__ == "__main__":
    sys.exit(main())
