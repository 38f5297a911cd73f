"""Exact solution counting for substituted polynomial systems.

The central object is the system

    X = { (x_1, ..., x_n) in F_q^n : P_j(f_1(x_1), ..., f_n(x_n)) = 0 for all j }

counted three ways: brute-force enumeration of F_q^n (the ground truth),
value-set-weighted enumeration (each tuple (y_1, ..., y_n) of values stands
for e_1(y_1) * ... * e_n(y_n) points, so only the product of value sets is
visited), and an additive-convolution counter for diagonal equations.  All
counts are arbitrary-precision integers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import grid
from .errors import ArityMismatch, BudgetExceeded, ZeroCoefficient
from .gf import FieldCtx
from .multipoly import IndexSet, MultiPoly, deg_I, full_index_set
from .unipoly import INF, UniPoly, eval_map, power_sum, u_invariant, value_fibers

DEFAULT_BUDGET = 1 << 32

METHOD_BRUTE = "brute"
METHOD_WEIGHTED = "weighted"
METHOD_DIAGONAL = "diagonal"


@dataclass(frozen=True)
class SystemInstance:
    ctx: FieldCtx
    n: int
    f_list: tuple[UniPoly, ...]
    p_list: tuple[MultiPoly, ...]
    index_set: IndexSet | None = None

    def __post_init__(self):
        if self.n < 1:
            raise ArityMismatch(f"n must be >= 1, got {self.n}")
        if len(self.f_list) != self.n:
            raise ArityMismatch(
                f"{len(self.f_list)} substitution polynomials for n = {self.n}")
        if not self.p_list:
            raise ArityMismatch("need at least one system polynomial")
        for pj in self.p_list:
            if pj.n_vars != self.n:
                raise ArityMismatch(
                    f"system polynomial in {pj.n_vars} variables, expected {self.n}")

    @property
    def r(self) -> int:
        return len(self.p_list)

    def effective_index_set(self) -> IndexSet:
        return self.index_set if self.index_set is not None \
            else full_index_set(self.n)


def system(ctx: FieldCtx, f_list, p_list, index_set: IndexSet | None = None) -> SystemInstance:
    f_list = tuple(f_list)
    return SystemInstance(ctx, len(f_list), f_list, tuple(p_list), index_set)


@dataclass(frozen=True)
class CountResult:
    count: int
    ord_p: int | float  # infinity when count = 0
    method: str

    def to_dict(self) -> dict:
        return {"count": str(self.count),
                "ord_p": "inf" if self.ord_p is INF else self.ord_p,
                "method": self.method}


def ord_p(count: int, p: int) -> int | float:
    """Exact p-adic valuation; infinity for 0."""
    if count < 0:
        raise ValueError("count must be nonnegative")
    if count == 0:
        return INF
    v = 0
    while count % p == 0:
        count //= p
        v += 1
    return v


def count_bruteforce(sys: SystemInstance, budget: int = DEFAULT_BUDGET) -> CountResult:
    """Exact count by enumerating all q^n points (each f_i's evaluation map
    is precomputed once; later P_j are only evaluated on points where the
    earlier ones already vanished)."""
    needed = sys.ctx.q**sys.n
    if needed > budget:
        raise BudgetExceeded(needed, budget)
    vectors = [eval_map(sys.ctx, f) for f in sys.f_list]
    count = grid.count_solutions(sys.ctx, sys.p_list, vectors)
    return CountResult(count, ord_p(count, sys.ctx.p), METHOD_BRUTE)


def count_weighted(sys: SystemInstance, budget: int = DEFAULT_BUDGET) -> CountResult:
    """Exact count visiting only the product of value sets: a value tuple
    (y_1, ..., y_n) with all P_j(y) = 0 accounts for prod_i e_i(y_i) points.
    Always equals count_bruteforce."""
    all_fibers = [value_fibers(sys.ctx, f) for f in sys.f_list]
    needed = math.prod(len(fib) for fib in all_fibers)
    if needed > budget:
        raise BudgetExceeded(needed, budget)
    vectors, weights = [], []
    for fib in all_fibers:
        ys = sorted(fib)
        vectors.append(ys)
        weights.append([fib[y] for y in ys])
    count = grid.count_solutions(sys.ctx, sys.p_list, vectors, weights=weights)
    return CountResult(count, ord_p(count, sys.ctx.p), METHOD_WEIGHTED)


def count_auto(sys: SystemInstance, budget: int = DEFAULT_BUDGET) -> CountResult:
    """Weighted when the value-set grid is smaller than q^n, else brute."""
    value_cells = math.prod(len(set(eval_map(sys.ctx, f))) for f in sys.f_list)
    if value_cells < sys.ctx.q**sys.n:
        return count_weighted(sys, budget)
    return count_bruteforce(sys, budget)


def diagonal_parts(sys: SystemInstance):
    """(a, m, b) when the system is a single equation
    a_1 x_1^{m_1} + ... + a_n x_n^{m_n} = b (every f_i a unit monomial t^m,
    one polynomial of degree one touching every variable), else None."""
    if sys.r != 1:
        return None
    exponents = []
    for f in sys.f_list:
        sup = f.support
        if len(sup) == 1 and sup[0][1] == 1 and sup[0][0] >= 1:
            exponents.append(sup[0][0])
        else:
            return None
    coeffs = [0] * sys.n
    b = 0
    for coeff, evec in sys.p_list[0].terms:
        total = sum(evec)
        if total == 0:
            b = sys.ctx.neg(coeff)
        elif total == 1:
            coeffs[evec.index(1)] = coeff
        else:
            return None
    if any(c == 0 for c in coeffs):
        return None
    return coeffs, exponents, b


def count_system(sys: SystemInstance, method: str = "auto",
                 budget: int = DEFAULT_BUDGET) -> CountResult:
    if method == "auto":
        return count_auto(sys, budget)
    if method == METHOD_BRUTE:
        return count_bruteforce(sys, budget)
    if method == METHOD_WEIGHTED:
        return count_weighted(sys, budget)
    if method == METHOD_DIAGONAL:
        parts = diagonal_parts(sys)
        if parts is None:
            raise ArityMismatch(
                "the diagonal method needs one degree-one equation in "
                "monomial substitutions touching every variable")
        a, m, b = parts
        return count_diagonal(sys.ctx, a, m, b)
    raise ValueError(f"unknown counting method {method!r}")


def count_diagonal(ctx: FieldCtx, a, m, b: int) -> CountResult:
    """Solutions of a_1 x_1^{m_1} + ... + a_n x_n^{m_n} = b, by folding the
    per-coordinate value distributions with additive convolution (O(n q^2))."""
    a = list(a)
    m = list(m)
    if len(a) != len(m):
        raise ArityMismatch(f"{len(a)} coefficients vs {len(m)} exponents")
    if any(ai == 0 for ai in a):
        raise ZeroCoefficient("diagonal coefficients must be nonzero")
    if any(mi < 1 for mi in m):
        raise ValueError("diagonal exponents must be positive")
    dist = [0] * ctx.q
    dist[0] = 1  # empty sum
    for ai, mi in zip(a, m):
        term_dist = [0] * ctx.q
        for x in ctx.elements():
            term_dist[ctx.mul(ai, ctx.pow(x, mi))] += 1
        nxt = [0] * ctx.q
        for u, cu in enumerate(dist):
            if cu:
                for v, cv in enumerate(term_dist):
                    if cv:
                        nxt[ctx.add(u, v)] += cu * cv
        dist = nxt
    count = dist[b]
    return CountResult(count, ord_p(count, ctx.p), METHOD_DIAGONAL)


def substituted_power_sum(ctx: FieldCtx, poly: MultiPoly, f_list,
                          index_set: IndexSet | None = None) -> tuple[int, bool]:
    """Sum over all of F_q^n of P(f_1(x_1), ..., f_n(x_n)), computed exactly
    per monomial as the product of univariate power sums (never by q^n
    enumeration).  The companion flag reports whether
    deg_I(P) < sum_{i in I} u(f_i) holds (u = infinity counts as satisfying
    it); under that hypothesis the sum always vanishes."""
    f_list = tuple(f_list)
    if poly.n_vars != len(f_list):
        raise ArityMismatch(
            f"polynomial in {poly.n_vars} variables, got {len(f_list)} substitutions")
    subset = index_set if index_set is not None else full_index_set(len(f_list))
    u_values = {i: u_invariant(ctx, f_list[i - 1])[0] for i in subset}
    u_total = INF if any(u is INF for u in u_values.values()) \
        else sum(u_values.values())
    hypothesis = bool(deg_I(poly, subset) < u_total)

    sums_cache: list[dict[int, int]] = [{} for _ in f_list]
    total = 0
    for coeff, exps in poly.terms:
        term = coeff
        for i, e in enumerate(exps):
            cache = sums_cache[i]
            ps = cache.get(e)
            if ps is None:
                ps = power_sum(ctx, f_list[i], e)
                cache[e] = ps
            term = ctx.mul(term, ps)
            if term == 0:
                break
        total = ctx.add(total, term)
    return total, hypothesis
