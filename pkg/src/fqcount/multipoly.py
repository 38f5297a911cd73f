"""Sparse multivariate polynomials over F_q, index-restricted degrees, and
function-level normalization of univariate polynomials."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ArityMismatch, BadIndexSet, ZeroPolynomial
from .gf import FieldCtx
from .unipoly import UniPoly
from .weights import digit_sum

NEG_INFINITY = -math.inf


@dataclass(frozen=True)
class MultiPoly:
    """Terms are (coefficient, exponent-vector) pairs with nonzero
    coefficients and pairwise distinct exponent vectors, sorted
    lexicographically for deterministic serialization."""

    n_vars: int
    terms: tuple[tuple[int, tuple[int, ...]], ...]

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def total_degree(self) -> int | float:
        if not self.terms:
            return NEG_INFINITY
        return max(sum(e) for _, e in self.terms)

    def to_dict(self) -> dict:
        return {"n": self.n_vars,
                "terms": [{"c": c, "e": list(e)} for c, e in self.terms]}


def multipoly(ctx: FieldCtx, n_vars: int, terms) -> MultiPoly:
    """Build a normalized polynomial: duplicate exponent vectors are merged
    by field addition and zero coefficients dropped."""
    if n_vars < 1:
        raise ArityMismatch(f"n_vars must be >= 1, got {n_vars}")
    merged: dict[tuple[int, ...], int] = {}
    for coeff, exps in terms:
        coeff = int(coeff)
        if not 0 <= coeff < ctx.q:
            raise ValueError(f"coefficient {coeff} outside [0, {ctx.q})")
        exps = tuple(int(e) for e in exps)
        if len(exps) != n_vars:
            raise ArityMismatch(
                f"exponent vector {exps} has length {len(exps)}, expected {n_vars}")
        if any(e < 0 for e in exps):
            raise ValueError(f"negative exponent in {exps}")
        merged[exps] = ctx.add(merged.get(exps, 0), coeff)
    cleaned = sorted((e, c) for e, c in merged.items() if c != 0)
    return MultiPoly(n_vars, tuple((c, e) for e, c in cleaned))


def multipoly_from_dict(ctx: FieldCtx, d: dict) -> MultiPoly:
    return multipoly(ctx, d["n"], [(t["c"], t["e"]) for t in d["terms"]])


@dataclass(frozen=True)
class IndexSet:
    """Nonempty set of 1-based variable positions."""

    members: frozenset[int]

    def __iter__(self):
        return iter(sorted(self.members))

    def __len__(self) -> int:
        return len(self.members)

    def as_sorted(self) -> tuple[int, ...]:
        return tuple(sorted(self.members))


def index_set(members, n_vars: int) -> IndexSet:
    ms = frozenset(int(i) for i in members)
    if not ms:
        raise BadIndexSet("index set must be nonempty")
    if any(i < 1 or i > n_vars for i in ms):
        raise BadIndexSet(f"indices {sorted(ms)} out of range 1..{n_vars}")
    return IndexSet(ms)


def full_index_set(n_vars: int) -> IndexSet:
    return index_set(range(1, n_vars + 1), n_vars)


def deg_I(poly: MultiPoly, subset: IndexSet) -> int | float:
    """Max over terms of the exponent sum at the subset's positions;
    -infinity for the zero polynomial."""
    _validate_subset(poly.n_vars, subset)
    if poly.is_zero:
        return NEG_INFINITY
    positions = [i - 1 for i in subset]
    return max(sum(e[i] for i in positions) for _, e in poly.terms)


def w_pI(ctx: FieldCtx, poly: MultiPoly, subset: IndexSet) -> int:
    """p-weight degree w.r.t. the subset: max over terms of the sum of
    base-p digit sums of the exponents at the subset's positions."""
    _validate_subset(poly.n_vars, subset)
    if poly.is_zero:
        raise ZeroPolynomial("p-weight degree of the zero polynomial")
    positions = [i - 1 for i in subset]
    return max(sum(digit_sum(e[i], ctx.p) for i in positions)
               for _, e in poly.terms)


def eval_point(ctx: FieldCtx, poly: MultiPoly, point) -> int:
    if len(point) != poly.n_vars:
        raise ArityMismatch(
            f"point has {len(point)} coordinates, expected {poly.n_vars}")
    pow_cache: dict[tuple[int, int], int] = {}
    acc = 0
    for coeff, exps in poly.terms:
        term = coeff
        for i, e in enumerate(exps):
            if e:
                key = (i, e)
                pw = pow_cache.get(key)
                if pw is None:
                    pw = ctx.pow(point[i], e)
                    pow_cache[key] = pw
                term = ctx.mul(term, pw)
        acc = ctx.add(acc, term)
    return acc


def reduce_function(ctx: FieldCtx, f: UniPoly) -> UniPoly:
    """The unique representative of degree < q with the same evaluation map,
    by folding exponents e >= 1 to ((e-1) mod (q-1)) + 1 (since x^q = x)."""
    acc: dict[int, int] = {}
    for m, c in f.support:
        mm = m if m == 0 else (m - 1) % (ctx.q - 1) + 1
        acc[mm] = ctx.add(acc.get(mm, 0), c)
    top = max((m for m, c in acc.items() if c != 0), default=-1)
    coeffs = [acc.get(i, 0) for i in range(top + 1)]
    return UniPoly(tuple(coeffs))


def _validate_subset(n_vars: int, subset: IndexSet) -> None:
    if not subset.members:
        raise BadIndexSet("index set must be nonempty")
    if any(i < 1 or i > n_vars for i in subset.members):
        raise BadIndexSet(
            f"indices {sorted(subset.members)} out of range 1..{n_vars}")
