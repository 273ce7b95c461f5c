"""Command line entry point: ``structconst <command> ...``.

Every command prints JSON on stdout.  Errors from the engines are printed on
stderr with exit status 2; verification commands exit with status 1 when any
check fails.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import harness
from .errors import StructConstError
from .fiber import equidimensionality_audit, point_count_recursion
from .hecke import structure_constants
from .latoracle import enumerate_fiber
from .repring import tensor_decompose, tensor_multiplicity
from .rgon import special_rgon_crosscheck, tree_rgon
from .rootdata import WeightVec, allowed_fundamental_indices, root_datum


def _ints(text: str) -> list[int]:
    return [int(x) for x in text.split(",") if x.strip()]


def _weights(d, texts: Sequence[str]) -> list[WeightVec]:
    return [d.parse(t) for t in texts]


def _key(v) -> str:
    return ",".join(map(str, v))


def _emit(obj) -> None:
    print(json.dumps(obj, indent=2, sort_keys=False))


def cmd_hecke(args) -> int:
    d = root_datum(args.type)
    mus = _weights(d, args.mu)
    sc = structure_constants(mus, method=args.method)
    if args.text:
        for lam, c in sorted(sc.items(), reverse=True):
            print(f"{_key(lam.coords)}\t{c!r}")
    else:
        _emit({_key(lam.coords): c.to_json() for lam, c in sorted(sc.items(), reverse=True)})
    return 0


def cmd_rep(args) -> int:
    d = root_datum(args.type)
    mus = _weights(d, args.mu)
    if args.lam is not None:
        lam = d.parse(args.lam)
        _emit({"lambda": lam.to_json(), "multiplicity": tensor_multiplicity(mus, lam)})
    else:
        td = tensor_decompose(mus)
        _emit({"constituents": td.to_json(), "dimension": td.mass()})
    return 0


def cmd_fiber(args) -> int:
    d = root_datum(args.type)
    mus = _weights(d, args.mu)
    lam = d.parse(args.lam)
    if args.action == "count":
        _emit(point_count_recursion(mus, lam).to_json())
        return 0
    report = equidimensionality_audit(mus, lam)
    _emit(report)
    return 0 if report["status"] != "FAIL" else 1


def cmd_oracle(args) -> int:
    d = root_datum(f"A{args.n - 1}")
    mus = _weights(d, args.mu)
    res = enumerate_fiber(mus, d.parse(args.lam), args.q, witnesses=args.witnesses)
    _emit(res.to_json())
    return 0


def cmd_rgon(args) -> int:
    if args.action == "special":
        d = root_datum(args.type)
        coeffs = _ints(args.a)
        choice = args.allowed
        if choice is None:
            choice = []
            for k in range(len(d.factors)):
                allowed = allowed_fundamental_indices(d, k)
                if not allowed:
                    raise StructConstError(f"factor {k + 1} of {d.label} has no allowed coweight")
                choice.append(allowed[0])
        mus = []
        for a in coeffs:
            v = [0] * d.rank
            for k, i in enumerate(choice):
                w = d.fundamental_coweights[d.factor_indices[k][i - 1]]
                v = [x + a * y for x, y in zip(v, w)]
            mus.append(WeightVec(tuple(v), d))
        report = special_rgon_crosscheck(mus, choice)
        _emit(report)
        return 1 if report["status"] == "FAIL" else 0
    if args.u is None:
        raise StructConstError("rgon needs --u")
    _emit(tree_rgon(_ints(args.u)).to_json())
    return 0


VERIFY = {
    "agreement": ["agreement"],
    "weak-satake": ["weak_satake"],
    "audit": ["audit"],
    "equivalence": ["equivalence"],
    "saturation": ["saturation"],
    "prv": ["prv"],
    "examples": ["examples"],
    "table": ["table"],
    "all": list(harness.SUITES),
}


def cmd_verify(args) -> int:
    grid = harness.load_grid(args.grid)
    suites = VERIFY[args.suite]
    results = harness.run_all(grid, suites, workers=args.workers, gate_full=args.suite == "all")
    counts = {name: harness.summarize(rs) for name, rs in results.items()}
    payload = {
        "schema_version": harness.REPORT_SCHEMA_VERSION,
        "grid_seed": grid.get("seed"),
        "summary": counts,
        "reports": {name: [r.to_json() for r in rs] for name, rs in results.items()},
    }
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(payload, fh, indent=1)
    for name, c in counts.items():
        print(f"{name:12s} PASS {c['PASS']:4d}  FAIL {c['FAIL']:4d}  SKIPPED {c['SKIPPED']:4d}")
        for r in results[name]:
            if r.status == "FAIL":
                print(f"  FAIL {r.check_id} {json.dumps(r.instance)}")
    failed = any(c["FAIL"] for c in counts.values())
    skipped_by_gate = any(r.evidence.get("reason") == "an earlier gate failed" for rs in results.values() for r in rs)
    return 1 if failed or skipped_by_gate else 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="structconst", description="Tensor and spherical Hecke structure constants.")
    sub = p.add_subparsers(dest="command", required=True)

    h = sub.add_parser("hecke", help="all structure constants c^lambda of f_mu1 * ... * f_mur")
    h.add_argument("--type", required=True)
    h.add_argument("--mu", action="append", required=True)
    h.add_argument("--method", choices=["spherical", "direct"], default="spherical")
    h.add_argument("--text", action="store_true", help="print polynomials instead of JSON")
    h.set_defaults(func=cmd_hecke)

    r = sub.add_parser("rep", help="tensor product decomposition or one multiplicity")
    r.add_argument("--type", required=True)
    r.add_argument("--mu", action="append", required=True)
    r.add_argument("--lambda", dest="lam")
    r.set_defaults(func=cmd_rep)

    f = sub.add_parser("fiber", help="fiber point count or equidimensionality audit (minuscule mu)")
    f.add_argument("action", choices=["count", "audit"])
    f.add_argument("--type", required=True)
    f.add_argument("--mu", action="append", required=True)
    f.add_argument("--lambda", dest="lam", required=True)
    f.set_defaults(func=cmd_fiber)

    o = sub.add_parser("oracle", help="count lattice chains over F_q for GL_n")
    o.add_argument("--n", type=int, required=True)
    o.add_argument("--q", type=int, required=True)
    o.add_argument("--mu", action="append", required=True)
    o.add_argument("--lambda", dest="lam", required=True)
    o.add_argument("--witnesses", action="store_true")
    o.set_defaults(func=cmd_oracle)

    g = sub.add_parser("rgon", help="tree polygon from side lengths, or `rgon special` for a group")
    g.add_argument("action", nargs="?", choices=["special"])
    g.add_argument("--u")
    g.add_argument("--type")
    g.add_argument("--a", help="coefficients a_1..a_r of the allowed coweight")
    g.add_argument("--allowed", type=int, action="append", help="allowed index per simple factor")
    g.set_defaults(func=cmd_rgon)

    v = sub.add_parser("verify", help="batch verification suites")
    v.add_argument("suite", choices=list(VERIFY))
    v.add_argument("--grid", help="grid JSON file (default: the shipped grid)")
    v.add_argument("--json", help="write the full report here")
    v.add_argument("--workers", type=int, default=1)
    v.set_defaults(func=cmd_verify)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "rgon" and args.action == "special" and (args.type is None or args.a is None):
        parser.error("rgon special needs --type and --a")
    try:
        return args.func(args)
    except StructConstError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
