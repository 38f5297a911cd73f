"""Command-line front end.

Commands: analyze, omega, count, verify, repro, search-sharpness,
verify-lemmas.  Exit codes: 0 success (and, for verify, no violations),
2 parse error, 3 budget exceeded, 4 internal inconsistency.
"""

from __future__ import annotations

import argparse
import json
import math
import random
import sys as _sys

from . import counting, padic, theorems
from .counting import DEFAULT_BUDGET, count_system, system
from .errors import BudgetExceeded, FqError, InternalInconsistency, ParseError
from .gf import field, prime_power
from .instances import load_instance, system_to_dict
from .multipoly import index_set, multipoly
from .unipoly import INF, analyze, u_invariant, unipoly
from .weights import omega_invariant


def _field_header(ctx) -> dict:
    return ctx.as_dict()


def _emit(args, data: dict, human: str | None = None) -> None:
    if getattr(args, "json", False) or human is None:
        print(json.dumps(data, indent=2, sort_keys=True))
    else:
        print(human)


def _parse_inline_poly(args) -> tuple:
    if args.p is None or args.coeffs is None:
        raise ParseError("need --p (and optionally --s) plus --coeffs, or a file")
    ctx = field(args.p, args.s, args.modulus)
    coeffs = [int(c) for c in args.coeffs.split(",")]
    return ctx, unipoly(ctx, coeffs)


def _modulus_arg(text: str) -> list[int]:
    return [int(c) for c in text.split(",")]


def cmd_analyze(args) -> int:
    targets = []
    if args.file:
        inst = load_instance(args.file)
        targets = [(inst.ctx, f) for f in inst.f_list]
    else:
        targets = [_parse_inline_poly(args)]
    reports = []
    for ctx, f in targets:
        rep = analyze(ctx, f)
        data = {"field": _field_header(ctx), "f": f.to_dict()}
        data.update(rep.to_dict())
        if not f.is_constant:
            q, deg = ctx.q, f.degree
            bounds = {
                "lower_times_deg": (q - 1) <= rep.omega * deg,
                "omega_le_u": rep.u is INF or rep.omega <= rep.u,
            }
            if (q - 1) % deg == 0:
                bounds["deg_divides_q_minus_1"] = \
                    rep.omega == rep.u == (q - 1) // deg
            data["omega_bounds"] = bounds
        reports.append(data)
    out = reports[0] if len(reports) == 1 else {"analyses": reports}
    _emit(args, out)
    return 0


def cmd_omega(args) -> int:
    ctx, f = _parse_inline_poly(args)
    _emit(args, {"field": _field_header(ctx), "f": f.to_dict(),
                 "omega": omega_invariant(ctx, f)})
    return 0


def cmd_count(args) -> int:
    inst = load_instance(args.file)
    result = count_system(inst, args.method, args.budget)
    data = {"field": _field_header(inst.ctx), **result.to_dict()}
    _emit(args, data, f"count = {result.count} (ord_p = {result.ord_p}, "
                      f"method = {result.method})")
    return 0


def cmd_verify(args) -> int:
    inst = load_instance(args.file)
    if args.all_subsets:
        subset, best = theorems.best_guarantee(inst)
        report = theorems.verify(inst, subset, method=args.method,
                                 budget=args.budget)
        data = report.to_dict()
        data["best"] = {"I": list(subset.as_sorted()), **best.to_dict()}
    else:
        subset = index_set(args.I, inst.n) if args.I else None
        report = theorems.verify(inst, subset, method=args.method,
                                 budget=args.budget)
        data = report.to_dict()
    _emit(args, data)
    return 0 if not report.violations else 4


def _repro_example2(args) -> tuple[dict, bool]:
    ctx = field(3, 4)
    f1 = unipoly(ctx, [1, 0, 1, 1])
    f3 = unipoly(ctx, [0, 1] + [0] * 9 + [1, 0, 1])
    p1 = multipoly(ctx, 3, [(1, (1, 0, 0)), (1, (0, 1, 0)), (1, (0, 0, 1))])
    inst = system(ctx, [f1, f1, f3], [p1])
    report = theorems.verify(inst, method="weighted")
    u_vals = [theorems.InstanceProfile(inst).u(i) for i in (1, 2, 3)]
    main = next(g for g in report.guarantees if g.theorem_id == "MAIN")
    count = report.count_result.count
    checks = {
        "u_values": (u_vals, [40, 40, 14]),
        "hypothesis_80_lt_94": ((ctx.q - 1) * 1 < sum(u_vals), True),
        "main_applicable": (main.applicable, True),
        "count": (count, 27 * 13 * 19),
        "ord_3": (report.count_result.ord_p, 3),
        "not_divisible_by_q": (count % ctx.q != 0, True),
        "violations": (list(report.violations), []),
    }
    data, ok = _check_table("example2", checks)
    data["field"] = _field_header(ctx)
    return data, ok


def _repro_example1(args) -> tuple[dict, bool]:
    rows = []
    ok = True
    for p, s in ((2, 2), (3, 2)):
        ctx = field(p, s)
        q = ctx.q
        t_poly = unipoly(ctx, [0, 1])
        f_last = unipoly(ctx, [0, ctx.neg(1)] + [0] * (p - 2) + [1])  # t^p - t
        for n in (2, 3):
            for r in (1, 2):
                if r > n:
                    continue
                p_list = [multipoly(ctx, n, [(1, tuple(1 if i == j else 0
                                                       for i in range(n)))])
                          for j in range(r - 1)]
                last = tuple(1 if i >= r - 1 else 0 for i in range(n))
                p_list.append(multipoly(ctx, n, [(1, last)]))
                f_list = [t_poly] * (n - 1) + [f_last]
                inst = system(ctx, f_list, p_list)
                count = counting.count_bruteforce(inst).count
                closed = q ** (n - r + 1) - (q - 1) ** (n - r) * (q - p)
                residue = (-1) ** (n - r) * p % q
                row_ok = count == closed and count % q == residue
                ok = ok and row_ok
                rows.append({"p": p, "s": s, "n": n, "r": r, "count": count,
                             "closed_form": closed, "count_mod_q": count % q,
                             "expected_residue": residue, "pass": row_ok})
    return {"name": "example1", "rows": rows, "pass": ok}, ok


def _repro_monomial_table(args) -> tuple[dict, bool]:
    rows = []
    mismatches = 0
    for q in range(2, 65):
        pp = prime_power(q)
        if pp is None:
            continue
        ctx = field(*pp)
        for m in range(1, 2 * (q - 1) + 1):
            u, _ = u_invariant(ctx, unipoly(ctx, [0] * m + [1]))
            expected = (q - 1) // math.gcd(m, q - 1)
            if u != expected:
                mismatches += 1
                rows.append({"q": q, "m": m, "u": u, "expected": expected})
    return ({"name": "monomial-table", "mismatches": mismatches,
             "bad_rows": rows, "pass": mismatches == 0}, mismatches == 0)


def _check_table(name: str, checks: dict) -> tuple[dict, bool]:
    rows = {}
    ok = True
    for label, (got, expected) in checks.items():
        good = got == expected
        ok = ok and good
        rows[label] = {"got": got, "expected": expected, "pass": good}
    return {"name": name, "checks": rows, "pass": ok}, ok


def cmd_repro(args) -> int:
    runner = {"example1": _repro_example1, "example2": _repro_example2,
              "monomial-table": _repro_monomial_table}[args.name]
    data, ok = runner(args)
    if args.json:
        _emit(args, data)
    else:
        print(f"[{'PASS' if ok else 'FAIL'}] repro {args.name}")
        for key, val in data.items():
            if key in ("name", "pass"):
                continue
            print(f"  {key}: {json.dumps(val, default=str)}")
    return 0 if ok else 4


def cmd_search_sharpness(args) -> int:
    ctx = field(args.p, args.s, args.modulus)
    hits = theorems.search_sharpness(
        ctx, n=args.n, r=args.r, trials=args.trials, seed=args.seed,
        f_degree=args.f_degree, p_degree=args.p_degree, f_kind=args.f_kind,
        theorem_ids=tuple(args.theorems.split(",")) if args.theorems
        else theorems.THEOREM_IDS)
    data = {
        "field": _field_header(ctx),
        "trials": args.trials,
        "seed": args.seed,
        "tight_instances": [
            {"instance": system_to_dict(h.instance), "theorem": h.theorem_id,
             "exponent": h.exponent, "count": str(h.count)}
            for h in hits
        ],
    }
    _emit(args, data, f"found {len(hits)} tight instance(s) in {args.trials} trials")
    return 0


def cmd_verify_lemmas(args) -> int:
    ctx = field(args.p, args.s, args.modulus)
    pctx = padic.padic_ctx(ctx, args.k)
    rng = random.Random(args.seed)
    results = {"lift": True, "unit_power": True, "teichmuller_power_sum": True}
    max_n_lift = pctx.k - 1
    max_n_unit = pctx.k // pctx.s
    for _ in range(args.trials):
        x = tuple(rng.randrange(pctx.pk) for _ in range(pctx.s))
        delta_digits = tuple(rng.randrange(pctx.p) for _ in range(pctx.s))
        y = pctx.add(x, pctx.scalar_mul(pctx.p, delta_digits))
        if max_n_lift >= 1:
            n = rng.randint(1, max_n_lift)
            results["lift"] &= padic.verify_lift_lemma(pctx, x, y, n)
        if max_n_unit >= 1:
            n = rng.randint(1, max_n_unit)
            results["unit_power"] &= padic.verify_unit_power(pctx, x, n)
        deg = rng.randint(1, 4)
        coeffs = [rng.randrange(ctx.q) for _ in range(deg)] + [rng.randrange(1, ctx.q)]
        delta = rng.randint(0, 8)
        results["teichmuller_power_sum"] &= padic.check_power_sum_closed_form(
            pctx, unipoly(ctx, coeffs), delta)
    ok = all(results.values())
    _emit(args, {"field": _field_header(ctx), "k": args.k,
                 "trials": args.trials, "results": results, "pass": ok})
    return 0 if ok else 4


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fqcount",
        description="Exact counting and p-adic divisibility certificates for "
                    "substituted polynomial systems over finite fields.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_field_args(sp, required=False):
        sp.add_argument("--p", type=int, required=required)
        sp.add_argument("--s", type=int, default=1)
        sp.add_argument("--modulus", type=_modulus_arg, default=None,
                        help="comma-separated coefficients, low to high")

    sp = sub.add_parser("analyze", help="value set, fibers, u, C, omega, w_p")
    sp.add_argument("file", nargs="?", help="instance file (analyzes each f)")
    add_field_args(sp)
    sp.add_argument("--coeffs", help="inline univariate f, comma-separated")
    sp.add_argument("--json", action="store_true")

    sp = sub.add_parser("omega", help="exponent-minimization invariant")
    add_field_args(sp, required=True)
    sp.add_argument("--coeffs", required=True)
    sp.add_argument("--json", action="store_true")

    sp = sub.add_parser("count", help="exact solution count of an instance file")
    sp.add_argument("file")
    sp.add_argument("--method", choices=["auto", "brute", "weighted", "diagonal"],
                    default="auto")
    sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    sp.add_argument("--json", action="store_true")

    sp = sub.add_parser("verify", help="count and confront every guarantee")
    sp.add_argument("file")
    sp.add_argument("--I", type=int, nargs="+", default=None)
    sp.add_argument("--all-subsets", action="store_true",
                    help="search every nonempty index subset")
    sp.add_argument("--method", choices=["auto", "brute", "weighted", "diagonal"],
                    default="auto")
    sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    sp.add_argument("--json", action="store_true")

    sp = sub.add_parser("repro", help="re-derive the worked examples")
    sp.add_argument("name", choices=["example1", "example2", "monomial-table"])
    sp.add_argument("--json", action="store_true")

    sp = sub.add_parser("search-sharpness",
                        help="random search for instances attaining a guarantee")
    add_field_args(sp, required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--r", type=int, default=1)
    sp.add_argument("--trials", type=int, default=100)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--f-degree", type=int, default=3)
    sp.add_argument("--p-degree", type=int, default=2)
    sp.add_argument("--f-kind", choices=["random", "monomial", "identity"],
                    default="random")
    sp.add_argument("--theorems", default=None,
                    help="comma-separated theorem ids to consider")
    sp.add_argument("--json", action="store_true")

    sp = sub.add_parser("verify-lemmas",
                        help="fuzz the truncated p-adic congruences")
    add_field_args(sp, required=True)
    sp.add_argument("--k", type=int, default=4)
    sp.add_argument("--trials", type=int, default=100)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--json", action="store_true")
    return parser


_COMMANDS = {
    "analyze": cmd_analyze,
    "omega": cmd_omega,
    "count": cmd_count,
    "verify": cmd_verify,
    "repro": cmd_repro,
    "search-sharpness": cmd_search_sharpness,
    "verify-lemmas": cmd_verify_lemmas,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=_sys.stderr)
        return 2
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=_sys.stderr)
        return 3
    except InternalInconsistency as exc:
        print(f"internal inconsistency: {exc}", file=_sys.stderr)
        return 4
    except FqError as exc:
        print(f"error: {exc}", file=_sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
