"""Command-line front end: ``rml info|dual|expand|weights|genweights|polymatroid|equiv|verify``.

Every report is a JSON tree (``--format json``) or an aligned key/value
listing (``--format text``).  Reports embed the canonical form of every code
they produce, so the output of ``dual`` or ``expand`` can be fed back in.
Timing is only reported with ``--timing`` to keep reports byte-identical.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import genweights as gw
from . import macwilliams as mw
from . import qpolymatroid as qp
from . import verify as vf
from .codefile import code_to_dict, dump_code, load_code, parse_basis
from .errors import DEFAULT_BUDGET, RmlError
from .kernels import BACKEND
from .linalg import Subspace
from .matrix_codes import (
    MatrixCode,
    are_equivalent,
    classify,
    dual,
    max_rank,
    min_distance,
    weight_distribution,
)
from .vector_codes import (
    VectorCode,
    expand,
    expansion,
    v_equivalent,
    vclassify,
    vdual,
    vmax_rank,
    vmin_distance,
    vweight_distribution,
)

COMMANDS = ("info", "dual", "expand", "weights", "genweights", "polymatroid", "equiv", "verify")


class UsageError(RmlError, ValueError):
    """A flag combination that does not apply to the given code."""


# -- serialization helpers ----------------------------------------------------


def _jsonable(x):
    if isinstance(x, Fraction):
        return str(x) if x.denominator != 1 else int(x)
    if isinstance(x, (MatrixCode, VectorCode)):
        return code_to_dict(x)
    if isinstance(x, Subspace):
        return x.gen.tolist()
    if isinstance(x, np.ndarray):
        return x.tolist()
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, (np.bool_,)):
        return bool(x)
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


def _flatten(prefix: str, x, out: list[tuple[str, str]]):
    if isinstance(x, dict) and x and not _is_code(x):
        for k, v in x.items():
            _flatten(f"{prefix}.{k}" if prefix else str(k), v, out)
    elif isinstance(x, list) and x and all(isinstance(v, dict) and ("suite" in v or "name" in v) for v in x):
        # suite and check lists are keyed by their names
        for v in x:
            key = v.get("suite", v.get("name"))
            _flatten(f"{prefix}[{key}]", {k: w for k, w in v.items() if k not in ("suite", "name")}, out)
    else:
        out.append((prefix, json.dumps(x, separators=(",", ":"))))


def _is_code(x: dict) -> bool:
    return "kind" in x and "generators" in x


def render(report: dict, fmt: str) -> str:
    report = _jsonable(report)
    if fmt == "json":
        return json.dumps(report, indent=2) + "\n"
    rows: list[tuple[str, str]] = []
    _flatten("", report, rows)
    width = max(len(k) for k, _ in rows)
    return "".join(f"{k.ljust(width)}  {v}\n" for k, v in rows)


def _mat(C) -> MatrixCode:
    if not isinstance(C, MatrixCode):
        raise UsageError("this command needs a matrix code; convert a vector code with 'rml expand'")
    return C


# -- commands -----------------------------------------------------------------


def cmd_info(args) -> dict:
    C = load_code(args.file)
    b = args.budget
    if isinstance(C, MatrixCode):
        cl = classify(C, b)
        res = {
            "dim": C.dim,
            "d_min": min_distance(C, b),
            "max_rank": max_rank(C, b),
            "weight_distribution": weight_distribution(C, b),
            "is_mrd": cl.is_mrd,
            "is_optimal_anticode": cl.is_optimal_anticode,
            "is_dually_quasi_mrd": cl.is_dually_quasi_mrd,
        }
    else:
        cl = vclassify(C, b)
        res = {
            "dim": C.dim,
            "d_min": vmin_distance(C, b),
            "max_rank": vmax_rank(C, b),
            "weight_distribution": vweight_distribution(C, b),
            "is_mrd": cl.is_mrd,
            "is_optimal_vector_anticode": cl.is_optimal_vector_anticode,
        }
    return {"code": C, "results": res}


def _write_code(code, path: str | None):
    if path:
        Path(path).write_text(dump_code(code), encoding="utf-8")


def cmd_dual(args) -> dict:
    C = load_code(args.file)
    D = dual(C) if isinstance(C, MatrixCode) else vdual(C)
    _write_code(D, args.output)
    return {"code": C, "results": {"dual": D, "dim": D.dim}}


def cmd_expand(args) -> dict:
    C = load_code(args.file)
    if not isinstance(C, VectorCode):
        raise UsageError("expand needs a vector code")
    G = parse_basis(args.basis, C.field)
    M = expand(C, G)
    _write_code(M, args.output)
    basis = C.field.digits[np.asarray(G.elements)].tolist()
    images = expansion(C.fq_basis(), G) if C.dim else np.zeros((0, C.n, C.m), dtype=np.int64)
    return {
        "code": C,
        "results": {"basis": basis, "basis_images": images, "expanded": M, "dim": M.dim},
    }


def cmd_weights(args) -> dict:
    """Weight distribution, and the dual distribution predicted by MacWilliams."""
    C = _mat(load_code(args.file))
    A = weight_distribution(C, args.budget)
    B = mw.macwilliams_transform(A, C.n, C.m, C.q, C.q ** C.dim)
    enumerated = weight_distribution(dual(C), args.budget)
    return {
        "code": C,
        "results": {
            "weight_distribution": A,
            "dual_distribution_macwilliams": B,
            "dual_distribution_enumerated": enumerated,
            "agree": tuple(B) == tuple(enumerated),
        },
    }


def _profile_dict(P: gw.WeightProfile) -> dict:
    return {"kind": P.kind, "values": list(P.values), "witnesses": list(P.witnesses)}


def cmd_genweights(args) -> dict:
    C = load_code(args.file)
    kind = args.kind
    D = load_code(args.subcode) if args.subcode else None
    if D is not None and type(D) is not type(C):
        raise UsageError("--subcode must have the same kind as the code")
    res: dict = {"kind": kind}
    if isinstance(C, MatrixCode):
        if kind == "d":
            if D is not None:
                raise UsageError("--subcode applies to --kind=delta or --kind=relative")
            P = gw.d_weights(C)
        elif kind in ("delta", "relative"):
            if kind == "relative" and D is None:
                raise UsageError("--kind=relative needs --subcode")
            P = gw.delta_weights(C, D)
        else:
            raise UsageError(f"--kind={kind} applies to vector codes; matrix codes take d, delta or relative")
    else:
        if kind == "w":
            if D is not None:
                raise UsageError("--subcode applies to --kind=relative")
            res["definition"] = args.definition
            P = gw.w_weights(C, args.definition, args.budget)
        elif kind == "relative":
            P = gw.relative_w(C, D)
        else:
            raise UsageError(f"--kind={kind} applies to matrix codes; vector codes take w or relative")
    res["profile"] = _profile_dict(P)
    if D is not None:
        res["subcode"] = D
    return {"code": C, "results": res}


def _rho_table(P: qp.QPolymatroid) -> list[dict]:
    return [{"V": S, "dim": S.dim, "rho": v} for S, v in zip(P.subspaces, P.values)]


def cmd_polymatroid(args) -> dict:
    C = load_code(args.file)
    if isinstance(C, VectorCode):
        C = expand(C, parse_basis(args.basis, C.field))
    P = qp.from_code(C)
    Ps = P if isinstance(P, tuple) else (P,)
    names = ("P(C)", "P(C^T)")[: len(Ps)]
    res: dict = {}
    for name, X in zip(names, Ps):
        ax = X.axioms()
        res[name] = {
            "ground_dim": X.ell,
            "rho": _rho_table(X),
            "axioms": {"P1": ax.p1, "P2": ax.p2, "P3": ax.p3},
        }
    res["recovered"] = qp.recover(P).as_dict()
    if C.n <= C.m:
        res["enumerator"] = str(qp.weight_enumerator(Ps[0], C.n, C.m, C.q))
    res["characterization"] = qp.pm_characterize(P, args.budget).as_dict()
    return {"code": C, "results": res}


def cmd_equiv(args) -> dict:
    C, D = load_code(args.file), load_code(args.other)
    if type(C) is not type(D):
        raise UsageError("both files must hold the same kind of code")
    if isinstance(C, MatrixCode):
        w = are_equivalent(C, D, args.budget)
    else:
        w = v_equivalent(C, D, args.budget)
    return {
        "code": C,
        "other": D,
        "results": {"equivalent": w is not None, "witness": None if w is None else w.as_dict()},
    }


def cmd_verify(args) -> dict:
    grid = vf.parse_grid(args.grid)
    only = [s for s in args.only.split(",") if s] if args.only else None
    suites = vf.run_suites(grid, only, args.inject_mutant, args.jobs)
    return {
        "grid": grid.as_dict(),
        "mutant": args.inject_mutant,
        "ok": all(s["ok"] for s in suites),
        "suites": suites,
    }


HANDLERS = {
    "info": cmd_info,
    "dual": cmd_dual,
    "expand": cmd_expand,
    "weights": cmd_weights,
    "genweights": cmd_genweights,
    "polymatroid": cmd_polymatroid,
    "equiv": cmd_equiv,
    "verify": cmd_verify,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rml", description="Exact computations with linear rank-metric codes.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="enumeration cap (default 10^7)")
    common.add_argument("--timing", action="store_true", help="add wall-clock seconds to the report")
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    def add(name, help_, file=True):
        p = sub.add_parser(name, parents=[common], help=help_)
        if file:
            p.add_argument("file", help="JSON code file")
        return p

    add("info", "dimension, distances, weight distribution and classification")
    p = add("dual", "trace dual (matrix) or standard dual (vector)")
    p.add_argument("-o", "--output", help="also write the result as a code file")
    p = add("expand", "matrix code of a vector code in a GF(q) basis")
    p.add_argument("--basis", default="power", help="'power', 'dual' or a JSON list of coefficient arrays")
    p.add_argument("-o", "--output", help="also write the result as a code file")
    add("weights", "weight distribution checked against MacWilliams")
    p = add("genweights", "generalized weights")
    p.add_argument("--kind", choices=gw.KINDS, default="d")
    p.add_argument("--definition", choices=gw.W_DEFINITIONS, default="support", help="for --kind=w")
    p.add_argument("--subcode", help="code file of a proper subcode, for relative weights")
    p = add("polymatroid", "associated q-polymatroid(s) and what they recover")
    p.add_argument("--basis", default="power", help="expansion basis for vector codes")
    p = add("equiv", "search for an isometry between two codes")
    p.add_argument("other", help="second JSON code file")
    p = add("verify", "run the theorem-verification suites", file=False)
    p.add_argument("--grid", default="default", help="e.g. 'q=2,3;n=1-3;m=1-3;ext=2-3;samples=4;seed=0'")
    p.add_argument("--only", help=f"comma-separated suites from: {','.join(vf.SUITES)}")
    p.add_argument("--inject-mutant", choices=vf.MUTANTS, help="negative control: perturb one formula")
    p.add_argument("--jobs", type=int, default=1, help="worker processes for independent suites")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    start = time.perf_counter()
    try:
        body = HANDLERS[args.command](args)
    except (RmlError, ValueError) as e:
        print(f"rml {args.command}: error: {e}", file=sys.stderr)
        return 2
    report = {"command": args.command, **body}
    if args.command == "verify":
        report["backend"] = BACKEND
    if args.timing:
        report["seconds"] = round(time.perf_counter() - start, 3)
    sys.stdout.write(render(report, args.format))
    if args.command == "verify" and not body["ok"]:
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
