"""Univariate polynomials over F_q: evaluation maps, value sets and fiber
sizes, power sums, the invariant u(f) with its leading value C(f), and the
value-set classification with its derivative certificate.

u(f) is the least positive exponent d with sum over x in F_q of f(x)^d
nonzero (infinity when every such sum vanishes), and C(f) is that first
nonzero sum.  f is classified by how u relates to the value set:
u = q-1 exactly for permutation polynomials, u = #f(F_q)-1 for the
"tight" polynomials whose fiber sizes are determined by the derivative of
phi(t) = prod over the value set of (t-y), and u = infinity exactly when
every fiber size is divisible by p.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import grid, weights
from .errors import InternalInconsistency, ZeroPolynomial
from .gf import FieldCtx

INF = math.inf


@dataclass(frozen=True)
class UniPoly:
    """Coefficients lowest-degree first, trailing zeros trimmed; the zero
    polynomial has an empty coefficient tuple."""

    coeffs: tuple[int, ...]

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1  # -1 for the zero polynomial

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    @property
    def support(self) -> tuple[tuple[int, int], ...]:
        """(exponent, coefficient) pairs with nonzero coefficient, ascending."""
        return tuple((m, c) for m, c in enumerate(self.coeffs) if c != 0)

    def to_dict(self) -> dict:
        return {"coeffs": list(self.coeffs)}


def unipoly(ctx: FieldCtx, coeffs) -> UniPoly:
    cs = [int(c) for c in coeffs]
    for c in cs:
        if not 0 <= c < ctx.q:
            raise ValueError(f"coefficient {c} outside [0, {ctx.q})")
    while cs and cs[-1] == 0:
        cs.pop()
    return UniPoly(tuple(cs))


def monomial(ctx: FieldCtx, m: int, coeff: int = 1) -> UniPoly:
    if coeff == 0:
        return UniPoly(())
    return unipoly(ctx, [0] * m + [coeff])


def identity_poly(ctx: FieldCtx) -> UniPoly:
    return UniPoly((0, 1))


def eval_at(ctx: FieldCtx, f: UniPoly, x: int) -> int:
    acc = 0
    for c in reversed(f.coeffs):
        acc = ctx.add(ctx.mul(acc, x), c)
    return acc


def eval_map(ctx: FieldCtx, f: UniPoly) -> list[int]:
    """[f(x) for x in F_q], in increasing encoding order of x."""
    if ctx.has_tables:
        xs = np.arange(ctx.q, dtype=np.int64)
        vals = np.zeros(ctx.q, dtype=np.int64)
        for c in reversed(f.coeffs):
            vals = ctx.vadd(ctx.vmul(vals, xs), np.int64(c))
        return vals.tolist()
    return [eval_at(ctx, f, x) for x in ctx.elements()]


def value_fibers(ctx: FieldCtx, f: UniPoly) -> dict[int, int]:
    """Map y -> e(y) = #{x : f(x) = y} over the value set."""
    return dict(Counter(eval_map(ctx, f)))


def power_sum(ctx: FieldCtx, f: UniPoly, delta: int) -> int:
    """Sum over x in F_q of f(x)^delta, exactly (delta >= 0, 0^0 = 1)."""
    total = 0
    for y, e in value_fibers(ctx, f).items():
        k = e % ctx.p
        if k:
            total = ctx.add(total, ctx.mul(k, ctx.pow(y, delta)))
    return total


def u_invariant(ctx: FieldCtx, f: UniPoly) -> tuple[int | float, int | None]:
    """(u(f), C(f)); (inf, None) when every power sum vanishes.

    Scans delta = 1 .. q-1 and stops at the first nonzero sum.  The scan
    bound is enough to certify u = infinity: for delta >= 1 each f(x)^delta
    depends only on delta mod (q-1) when f(x) != 0 and vanishes otherwise,
    so the power sums are (q-1)-periodic in delta >= 1.
    """
    fib = value_fibers(ctx, f)
    # y = 0 contributes nothing for delta >= 1, and fibers of size divisible
    # by p contribute nothing at all
    terms = [(y, e % ctx.p) for y, e in fib.items() if y != 0 and e % ctx.p]
    if not terms:
        return INF, None
    powers = [y for y, _ in terms]
    for delta in range(1, ctx.q):
        if delta > 1:
            powers = [ctx.mul(pw, y) for pw, (y, _) in zip(powers, terms)]
        total = 0
        for pw, (_, k) in zip(powers, terms):
            total = ctx.add(total, ctx.mul(k, pw))
        if total != 0:
            return delta, total
    return INF, None


def u_batch(ctx: FieldCtx, coeffs: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Bulk u over many polynomials at once (rows of `coeffs`, low to high
    degree).  Returns (u, C) arrays; u = 0 encodes infinity.  Used by
    exhaustive sweeps; agrees with u_invariant row by row."""
    coeffs = np.asarray(coeffs, dtype=np.int64)
    n_rows = coeffs.shape[0]
    xs = np.arange(ctx.q, dtype=np.int64)[None, :]
    vals = np.zeros((n_rows, ctx.q), dtype=np.int64)
    for j in range(coeffs.shape[1] - 1, -1, -1):
        vals = ctx.vadd(ctx.vmul(vals, xs), coeffs[:, j : j + 1])
    u = np.zeros(n_rows, dtype=np.int64)
    c_out = np.zeros(n_rows, dtype=np.int64)
    active = np.arange(n_rows)
    cur = vals
    for delta in range(1, ctx.q):
        if delta > 1:
            cur = ctx.vmul(cur, vals)
        sums = ctx.vsum(cur, axis=1)
        sums = np.atleast_1d(sums)
        hit = sums != 0
        if hit.any():
            rows = active[hit]
            u[rows] = delta
            c_out[rows] = sums[hit]
            keep = ~hit
            active, vals, cur = active[keep], vals[keep], cur[keep]
            if active.size == 0:
                break
    return u, c_out


# ---------------------------------------------------------------------------
# value-set classification


class WscClass(Enum):
    PERMUTATION = "permutation"
    WSC = "wsc"
    WEAKLY_WSC_ONLY = "weakly_wsc_only"
    NOT_WEAKLY_WSC = "not_weakly_wsc"


def phi_from_roots(ctx: FieldCtx, roots) -> UniPoly:
    """Monic product of (t - y) over the given distinct roots."""
    coeffs = [1]
    for y in roots:
        nxt = [0] * (len(coeffs) + 1)
        for i, c in enumerate(coeffs):
            nxt[i + 1] = ctx.add(nxt[i + 1], c)
            nxt[i] = ctx.sub(nxt[i], ctx.mul(y, c))
        coeffs = nxt
    return UniPoly(tuple(coeffs))


def derivative(ctx: FieldCtx, f: UniPoly) -> UniPoly:
    cs = [ctx.scalar_mul(i, c) for i, c in enumerate(f.coeffs)][1:]
    while cs and cs[-1] == 0:
        cs.pop()
    return UniPoly(tuple(cs))


def phi_pair(ctx: FieldCtx, f: UniPoly) -> tuple[UniPoly, dict[int, int]]:
    """phi(t) = prod over y in f(F_q) of (t - y), and phi'(y) for each y."""
    return _phi_derivative_values(ctx, sorted(value_fibers(ctx, f)))


@dataclass(frozen=True)
class WscVerdict:
    classification: WscClass
    certificate: int | None  # the constant e(y) * phi'(y), when WSC


def wsc_classify(ctx: FieldCtx, f: UniPoly) -> WscVerdict:
    """Classify f, computing the verdict two independent ways.

    Route one is definitional: compare u(f) against q-1 and against
    #f(F_q)-1.  Route two checks whether e(y) * phi'(y) is one nonzero
    constant across the value set; that constancy holds exactly for the WSC
    classes and the constant must equal C(f).  The u = infinity verdict is
    cross-checked against "every fiber size is divisible by p".  Any
    disagreement raises InternalInconsistency.
    """
    fib = value_fibers(ctx, f)
    u, c_val = u_invariant(ctx, f)
    n_values = len(fib)
    if u is INF:
        cls = WscClass.NOT_WEAKLY_WSC
    elif u == ctx.q - 1:
        cls = WscClass.PERMUTATION
    elif u == n_values - 1:
        cls = WscClass.WSC
    else:
        cls = WscClass.WEAKLY_WSC_ONLY

    if u is not INF and u > n_values - 1:
        raise InternalInconsistency(f"u = {u} exceeds #f(F_q) - 1 = {n_values - 1}")
    if (u == ctx.q - 1) != (n_values == ctx.q):
        raise InternalInconsistency("permutation test disagrees with value-set size")

    _, dphi = phi_pair(ctx, f)
    products = {ctx.mul(e % ctx.p, dphi[y]) for y, e in fib.items()}
    certificate = None
    if len(products) == 1:
        only = next(iter(products))
        if only != 0:
            certificate = only

    is_wsc_def = cls in (WscClass.PERMUTATION, WscClass.WSC)
    if is_wsc_def != (certificate is not None):
        raise InternalInconsistency(
            f"definitional classification {cls} disagrees with the "
            f"derivative certificate for f = {f.coeffs}")
    if certificate is not None and certificate != c_val:
        raise InternalInconsistency(
            f"certificate constant {certificate} != C(f) = {c_val}")

    all_fibers_divisible = all(e % ctx.p == 0 for e in fib.values())
    if (cls is WscClass.NOT_WEAKLY_WSC) != all_fibers_divisible:
        raise InternalInconsistency(
            "u = infinity disagrees with fiber sizes mod p")

    return WscVerdict(cls, certificate)


@dataclass(frozen=True)
class FAnalysis:
    """Everything this package knows about one univariate polynomial."""

    value_set: tuple[int, ...]
    fibers: dict[int, int]
    u: int | float
    C: int | None
    classification: WscClass
    omega: int | None  # None for constant f
    p_weight: int | None

    def to_dict(self) -> dict:
        return {
            "value_set_size": len(self.value_set),
            "value_set": list(self.value_set),
            "fibers": {str(y): e for y, e in sorted(self.fibers.items())},
            "u": "inf" if self.u is INF else self.u,
            "C": self.C,
            "classification": self.classification.value,
            "omega": self.omega,
            "p_weight": self.p_weight,
        }


def analyze(ctx: FieldCtx, f: UniPoly) -> FAnalysis:
    fib = value_fibers(ctx, f)
    u, c_val = u_invariant(ctx, f)
    verdict = wsc_classify(ctx, f)
    omega = pw = None
    if not f.is_constant:
        omega = weights.omega_invariant(ctx, f)
        pw = weights.p_weight(ctx, f)
    return FAnalysis(
        value_set=tuple(sorted(fib)),
        fibers=fib,
        u=u,
        C=c_val,
        classification=verdict.classification,
        omega=omega,
        p_weight=pw,
    )


# ---------------------------------------------------------------------------
# reciprocal-derivative weighted sum over a restricted zero set


def reciprocal_derivative_sum(ctx: FieldCtx, p_list, y_list) -> tuple[int, bool]:
    """Sum of 1 / prod_i phi_i'(y_i) over the common zero set of the given
    polynomials inside prod_i Y_i, where phi_i(t) = prod_{y in Y_i} (t - y).

    Returns (sum, hypothesis_met) where the flag reports whether
    (q-1) * sum_j deg(P_j) < sum_i (#Y_i - 1) holds; under that hypothesis
    the sum always vanishes.  phi_i is squarefree by construction, so
    phi_i'(y) is invertible on Y_i.
    """
    if not p_list:
        raise ZeroPolynomial("need at least one polynomial")
    total_deg = 0
    for pj in p_list:
        if not pj.terms:
            raise ZeroPolynomial("zero polynomial in P list")
        total_deg += max(sum(e) for _, e in pj.terms)
    ys_sorted = []
    weight_vectors = []
    for ys in y_list:
        ys = sorted(set(ys))
        if not ys:
            raise ValueError("empty Y_i subset")
        _, dphi_poly = _phi_derivative_values(ctx, ys)
        ys_sorted.append(ys)
        weight_vectors.append([ctx.inv(dphi_poly[y]) for y in ys])
    hypothesis = (ctx.q - 1) * total_deg < sum(len(ys) - 1 for ys in ys_sorted)
    value = grid.field_weighted_solution_sum(ctx, p_list, ys_sorted, weight_vectors)
    return value, hypothesis


def _phi_derivative_values(ctx: FieldCtx, roots) -> tuple[UniPoly, dict[int, int]]:
    phi = phi_from_roots(ctx, roots)
    dphi = derivative(ctx, phi)
    return phi, {y: eval_at(ctx, dphi, y) for y in roots}
