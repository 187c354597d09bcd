"""Command-line front end: sums, tables, identity checks and sweeps as JSON."""
from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from itertools import product

from . import __version__
from .algebra import AlgebraSpec, InvalidAlgebra, parse_algebra
from .arith.laurent import render
from .arith.variables import T
from .fermionic import ShapeError, SumInstance, m_sum, make_instance, n_sum

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(ValueError):
    """Bad user input; ``field`` names the offending JSON field or flag."""

    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field


# -- instance I/O ------------------------------------------------------------------

def instance_to_json(inst: SumInstance) -> dict:
    return {"algebra": inst.spec.name, "k": inst.k, "lambda": list(inst.lam),
            "n": {str(a): list(inst.n[a - 1]) for a in inst.spec.nodes}}


def instance_from_json(obj) -> SumInstance:
    if not isinstance(obj, dict):
        raise InputError("/", "instance must be a JSON object")
    for key in ("algebra", "k", "lambda", "n"):
        if key not in obj:
            raise InputError(f"/{key}", "missing")
    try:
        spec = parse_algebra(obj["algebra"])
    except (InvalidAlgebra, TypeError) as e:
        raise InputError("/algebra", str(e)) from None
    k = obj["k"]
    if not isinstance(k, int) or isinstance(k, bool) or k < 1:
        raise InputError("/k", "must be a positive integer")
    lam = obj["lambda"]
    if not isinstance(lam, list) or len(lam) != spec.rank or not all(isinstance(x, int) and x >= 0 for x in lam):
        raise InputError("/lambda", f"must be {spec.rank} nonnegative integers")
    n = obj["n"]
    if not isinstance(n, dict):
        raise InputError("/n", "must map node labels to rows")
    rows = {}
    for key, row in n.items():
        try:
            a = int(key)
        except ValueError:
            raise InputError(f"/n/{key}", "node label must be an integer") from None
        if a not in spec.nodes:
            raise InputError(f"/n/{key}", f"no such node in {spec.name}")
        if not isinstance(row, list) or not all(isinstance(x, int) and x >= 0 for x in row):
            raise InputError(f"/n/{key}", "row must be a list of nonnegative integers")
        if len(row) != spec.t_of(a) * k:
            raise InputError(f"/n/{key}", f"row needs {spec.t_of(a) * k} entries, got {len(row)}")
        rows[a] = row
    try:
        return make_instance(spec, lam, rows, k)
    except ShapeError as e:
        raise InputError("/n", str(e)) from None


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def parse_n_flags(spec: AlgebraSpec, values, k: int) -> dict:
    """``--n 1:4,0 --n 2:0,1`` (or ``1:4,0;2:0,1``) -> {node: row}, rows checked against t_a k."""
    rows = {}
    for value in values or []:
        for part in value.split(";"):
            part = part.strip()
            if not part:
                continue
            if ":" not in part:
                raise InputError("--n", f"expected node:v1,v2,... got {part!r}")
            key, body = part.split(":", 1)
            try:
                a = int(key)
                row = [int(x) for x in body.split(",")] if body.strip() else []
            except ValueError:
                raise InputError("--n", f"non-integer entry in {part!r}") from None
            if a not in spec.nodes:
                raise InputError("--n", f"no node {a} in {spec.name}")
            if len(row) != spec.t_of(a) * k:
                raise InputError("--n", f"row {a} needs {spec.t_of(a) * k} entries, got {len(row)}")
            if any(x < 0 for x in row):
                raise InputError("--n", f"row {a} has a negative entry")
            rows[a] = row
    return rows


def instance_from_args(args) -> SumInstance:
    if getattr(args, "instance", None):
        text = args.instance
        if not text.lstrip().startswith("{"):
            with open(text) as fh:
                text = fh.read()
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as e:
            raise InputError("/", f"malformed JSON: {e}") from None
        return instance_from_json(obj)
    spec = _algebra(args)
    k = args.k
    if k is None or k < 1:
        raise InputError("--k", "a positive level is required")
    if args.lam is None:
        lam = [0] * spec.rank
    else:
        try:
            lam = [int(x) for x in args.lam.split(",")]
        except ValueError:
            raise InputError("--lambda", "expected comma-separated integers") from None
    if len(lam) != spec.rank or any(x < 0 for x in lam):
        raise InputError("--lambda", f"needs {spec.rank} nonnegative entries")
    rows = parse_n_flags(spec, args.n, k)
    return make_instance(spec, lam, rows, k)


def _algebra(args) -> AlgebraSpec:
    if not args.algebra:
        raise InputError("--algebra", "required")
    try:
        return parse_algebra(args.algebra)
    except InvalidAlgebra as e:
        raise InputError("--algebra", str(e)) from None


# -- grids -------------------------------------------------------------------------

def _compositions(total: int, parts: int):
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def instance_grid(spec: AlgebraSpec, k: int, max_n: int, max_lambda: int) -> list:
    """All instances with sum of n entries <= max_n and sum of lambda <= max_lambda."""
    cells = [(a, i) for a in spec.nodes for i in range(1, spec.t_of(a) * k + 1)]
    ns = [c for tot in range(max_n + 1) for c in _compositions(tot, len(cells))]
    lams = [c for tot in range(max_lambda + 1) for c in _compositions(tot, spec.rank)]
    out = []
    for nv in ns:
        rows = {a: [0] * (spec.t_of(a) * k) for a in spec.nodes}
        for (a, i), x in zip(cells, nv):
            rows[a][i - 1] = x
        for lam in lams:
            out.append(make_instance(spec, list(lam), rows, k))
    return out


def _mn_row(inst: SumInstance) -> tuple:
    return canonical_json(instance_to_json(inst)), m_sum(inst), n_sum(inst)


def _pool_map(fn, items, jobs: int):
    if jobs <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=jobs) as ex:
        return list(ex.map(fn, items, chunksize=max(1, len(items) // (jobs * 8))))


def mn_sweep(spec: AlgebraSpec, k: int, max_n: int, max_lambda: int, jobs: int = 1) -> dict:
    rows = sorted(_pool_map(_mn_row, instance_grid(spec, k, max_n, max_lambda), jobs))
    failures = [{"instance": json.loads(key), "M": m, "N": n} for key, m, n in rows if m != n]
    return {"algebra": spec.name, "k": k, "max_n": max_n, "max_lambda": max_lambda,
            "checked": len(rows), "failures": len(failures), "failing_instances": failures[:20]}


# -- commands ----------------------------------------------------------------------

def _report(args, payload: dict, ok: bool = True) -> int:
    payload = dict(payload)
    payload["version"] = __version__
    text = json.dumps(payload, sort_keys=True, indent=2)
    if getattr(args, "out", None):
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    print(text)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_sum(args) -> int:
    inst = instance_from_args(args)
    key, fn = ("M", m_sum) if args.command == "msum" else ("N", n_sum)
    return _report(args, {key: fn(inst), "instance": instance_to_json(inst)})


def cmd_verify_mn(args) -> int:
    spec = _algebra(args)
    if args.k is None or args.k < 1:
        raise InputError("--k", "a positive level is required")
    rep = mn_sweep(spec, args.k, args.max_n, args.max_lambda, args.jobs)
    return _report(args, rep, rep["failures"] == 0)


def q_names(spec: AlgebraSpec) -> dict:
    return {T(1): "t"} if spec.rank == 1 else {}


def cmd_qsystem(args) -> int:
    from .qsystem import PolynomialityFailure, solve_q_system
    spec = _algebra(args)
    try:
        table = solve_q_system(spec, args.levels)
    except PolynomialityFailure as e:
        return _report(args, {"algebra": spec.name, "status": "fail", "error": str(e)}, False)
    names = q_names(spec)
    entries = {f"Q[{a},{i}]": render(p, names) for (a, i), p in sorted(table.entries.items())}
    return _report(args, {"algebra": spec.name, "levels": args.levels, "status": "pass", "table": entries})


def cmd_deformed(args) -> int:
    from .deformed import all_shift_recursion_failures, build_deformed_table
    spec = _algebra(args)
    table = build_deformed_table(spec, args.levels)
    out = {"algebra": spec.name, "levels": args.levels}
    if args.show:
        out["table"] = {f"Q[{a},{i}]": {"num": render(q.num), "den": render(q.den)}
                        for (a, i), q in sorted(table.entries.items())}
    ok = True
    if args.verify_recursion:
        bad = all_shift_recursion_failures(table)
        out["recursion_failures"] = [list(b) for b in bad]
        out["status"] = "pass" if not bad else "fail"
        ok = not bad
    return _report(args, out, ok)


def _window(args, spec):
    from .genfun import CoefficientWindow
    if args.window is None:
        return CoefficientWindow.default(spec.rank)
    return CoefficientWindow.box(spec.rank, -args.window, args.window)


def cmd_verify(args) -> int:
    from .genfun import StatementNotApplicable, parse_statement, verify_factorization
    inst = instance_from_args(args)
    try:
        statement = parse_statement(args.statement)
    except ValueError as e:
        raise InputError("--statement", str(e)) from None
    try:
        rep = verify_factorization(inst, statement, _window(args, inst.spec), j=args.j, p=args.p)
    except (StatementNotApplicable, ValueError) as e:
        raise InputError("--statement", str(e)) from None
    out = rep.as_dict()
    out["status"] = "pass" if rep.ok else "fail"
    out["instance"] = instance_to_json(inst)
    return _report(args, out, rep.ok)


def cmd_ps_check(args) -> int:
    from .genfun import end_to_end_ps, ps_steps, verify_ps_identity
    inst = instance_from_args(args)
    spec = inst.spec
    bound = args.bound if args.bound is not None else {1: 8, 2: 4}.get(spec.rank, 3)
    results = []
    for name, K, K2, phi, _ in ps_steps(spec, inst.k):
        rep = verify_ps_identity(inst, K, K2, phi, bound)
        d = rep.as_dict()
        d["name"] = name
        results.append(d)
    e2e = end_to_end_ps(inst, bound).as_dict()
    e2e["name"] = "end-to-end"
    results.append(e2e)
    ok = all(r["ok"] for r in results)
    return _report(args, {"instance": instance_to_json(inst), "checks": results,
                          "status": "pass" if ok else "fail"}, ok)


def _sl2_oracle_row(args) -> dict:
    from .oracle import catalan_residue_multiplicity, clebsch_gordan_multiplicity, stable_level
    l, n = args
    spec = parse_algebra("A1")
    row = [n.get(i, 0) for i in range(1, max(n) + 1)] if n else []
    k = stable_level(spec, [l], {1: row})
    inst = make_instance(spec, [l], {1: row}, k)
    vals = {"clebsch_gordan": clebsch_gordan_multiplicity(l, n),
            "catalan_residue": catalan_residue_multiplicity(l, n),
            "N": n_sum(inst), "M": m_sum(inst)}
    shifted = dict(n)
    if l:
        shifted[l] = shifted.get(l, 0) + 1
    vals["N_shifted_to_trivial"] = clebsch_gordan_multiplicity(0, shifted)
    return {"l": l, "n": {str(i): x for i, x in sorted(n.items()) if x}, "values": vals,
            "ok": len(set(vals.values())) == 1}


def sl2_oracle_grid(max_weight: int) -> list:
    items = []
    for l in range(max_weight + 1):
        for parts in _partitions_by_weight(max_weight):
            items.append((l, parts))
    return items


def _partitions_by_weight(max_weight: int) -> list:
    """All n = {i: n_i} with sum i*n_i <= max_weight."""
    out = []

    def rec(i, left, cur):
        if i > max_weight:
            out.append(dict(cur))
            return
        for x in range(left // i + 1):
            if x:
                cur[i] = x
            rec(i + 1, left - x * i, cur)
            cur.pop(i, None)

    rec(1, max_weight, {})
    return out


def cmd_oracle_check(args) -> int:
    from .oracle import verify_hkoty_character_identity
    grid = args.grid or "sl2"
    if grid == "sl2":
        rows = _pool_map(_sl2_oracle_row, sl2_oracle_grid(args.max_weight), args.jobs)
        rows.sort(key=lambda r: canonical_json(r))
        ok = all(r["ok"] for r in rows)
        return _report(args, {"grid": grid, "max_weight": args.max_weight, "checked": len(rows),
                              "failures": sum(not r["ok"] for r in rows), "rows": rows}, ok)
    try:
        spec = parse_algebra(grid)
    except InvalidAlgebra as e:
        raise InputError("--grid", str(e)) from None
    if spec.family != "A" or spec.rank > 3:
        raise InputError("--grid", "character checks support sl2 and A1..A3")
    rows = []
    cells = [(a, i) for a in spec.nodes for i in (1, 2)]
    for tot in range(1, args.max_weight + 1):
        for nv in _compositions(tot, len(cells)):
            n = {}
            for (a, i), x in zip(cells, nv):
                n.setdefault(a, [0, 0])[i - 1] = x
            if sum(i * x for (a, i), x in zip(cells, nv)) > args.max_weight:
                continue
            rows.append({"n": {str(a): r for a, r in sorted(n.items())},
                         "ok": verify_hkoty_character_identity(spec, n)})
    ok = all(r["ok"] for r in rows)
    return _report(args, {"grid": grid, "max_weight": args.max_weight, "checked": len(rows),
                          "failures": sum(not r["ok"] for r in rows), "rows": rows}, ok)


def parse_grid(text: str) -> list:
    """``A1:1-3,B2:1-2,G2:1`` -> [(spec, k), ...]."""
    out = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        name, _, levels = part.partition(":")
        try:
            spec = parse_algebra(name)
        except InvalidAlgebra as e:
            raise InputError("--grid", str(e)) from None
        try:
            if not levels:
                ks = [1]
            elif "-" in levels:
                lo, hi = levels.split("-")
                ks = list(range(int(lo), int(hi) + 1))
            else:
                ks = [int(levels)]
        except ValueError:
            raise InputError("--grid", f"bad level range in {part!r}") from None
        out.extend((spec, k) for k in ks)
    if not out:
        raise InputError("--grid", "empty grid")
    return out


def cmd_sweep(args) -> int:
    grid = parse_grid(args.grid)
    reports = [mn_sweep(spec, k, args.max_n, args.max_lambda, args.jobs) for spec, k in grid]
    ok = all(r["failures"] == 0 for r in reports)
    return _report(args, {"grid": args.grid, "reports": reports,
                          "checked": sum(r["checked"] for r in reports),
                          "failures": sum(r["failures"] for r in reports)}, ok)


# -- parser ------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="krsums", description=__doc__)
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def instance_flags(p):
        p.add_argument("--algebra")
        p.add_argument("--k", type=int)
        p.add_argument("--lambda", dest="lam")
        p.add_argument("--n", action="append", help="node:v1,v2,... (repeatable)")
        p.add_argument("--instance", help="JSON instance, inline or a file path")

    def common(p):
        p.add_argument("--out")
        p.add_argument("--jobs", type=int, default=1)

    for name in ("msum", "nsum"):
        p = sub.add_parser(name, help=f"compute the {'restricted' if name == 'msum' else 'unrestricted'} sum")
        instance_flags(p)
        common(p)
        p.set_defaults(func=cmd_sum)

    p = sub.add_parser("verify-mn", help="check M = N on a grid of instances")
    p.add_argument("--algebra")
    p.add_argument("--k", type=int)
    p.add_argument("--max-n", type=int, default=3)
    p.add_argument("--max-lambda", type=int, default=4)
    common(p)
    p.set_defaults(func=cmd_verify_mn)

    p = sub.add_parser("qsystem", help="solve the Q-system")
    p.add_argument("--algebra")
    p.add_argument("--levels", type=int, default=3)
    common(p)
    p.set_defaults(func=cmd_qsystem)

    p = sub.add_parser("deformed", help="build the deformed Q-system table")
    p.add_argument("--algebra")
    p.add_argument("--levels", type=int, default=2)
    p.add_argument("--verify-recursion", action="store_true")
    p.add_argument("--show", action="store_true", help="include the table itself")
    common(p)
    p.set_defaults(func=cmd_deformed)

    p = sub.add_parser("verify", help="check a factorization statement on a window")
    instance_flags(p)
    p.add_argument("--statement", required=True)
    p.add_argument("--window", type=int, help="box [-W, W] per node")
    p.add_argument("--j", type=int)
    p.add_argument("--p", type=int)
    common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("ps-check", help="check the power-series identities")
    instance_flags(p)
    p.add_argument("--bound", type=int)
    common(p)
    p.set_defaults(func=cmd_ps_check)

    p = sub.add_parser("oracle-check", help="compare sums with independent multiplicity oracles")
    p.add_argument("--grid", default="sl2")
    p.add_argument("--max-weight", type=int, default=8)
    common(p)
    p.set_defaults(func=cmd_oracle_check)

    p = sub.add_parser("sweep", help="M = N over several algebras and levels")
    p.add_argument("--grid", required=True, help="e.g. A1:1-3,B2:1-2")
    p.add_argument("--max-n", type=int, default=3)
    p.add_argument("--max-lambda", type=int, default=4)
    common(p)
    p.set_defaults(func=cmd_sweep)
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_INPUT if e.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except (InputError, ShapeError) as e:
        print(json.dumps({"error": str(e), "field": getattr(e, "field", None),
                          "version": __version__}, sort_keys=True), file=sys.stderr)
        return EXIT_INPUT


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
