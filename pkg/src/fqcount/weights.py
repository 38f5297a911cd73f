"""Digit sums, the exponent-minimization invariant omega, p-weights, and
the factorial valuation."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import TYPE_CHECKING

from .errors import BadBase, ConstantPolynomial
from .gf import is_prime

if TYPE_CHECKING:  # pragma: no cover
    from .gf import FieldCtx
    from .unipoly import UniPoly


@dataclass(frozen=True)
class DigitProfile:
    value: int
    base: int
    digits: tuple[int, ...]  # lowest significance first
    sigma: int


def digit_profile(value: int, base: int) -> DigitProfile:
    if base < 2:
        raise BadBase(f"base must be >= 2, got {base}")
    if value < 0:
        raise ValueError("value must be nonnegative")
    digits = []
    v = value
    while v:
        v, d = divmod(v, base)
        digits.append(d)
    if not digits:
        digits = [0]
    return DigitProfile(value, base, tuple(digits), sum(digits))


def digit_sum(m: int, base: int) -> int:
    """sigma_base(m): sum of the base-`base` digits of m; sigma(0) = 0."""
    if base < 2:
        raise BadBase(f"base must be >= 2, got {base}")
    if m < 0:
        raise ValueError("m must be nonnegative")
    total = 0
    while m:
        m, d = divmod(m, base)
        total += d
    return total


def omega_invariant(ctx: FieldCtx, f: UniPoly) -> int:
    """Minimal sum(g_l) over tuples 0 <= g_l <= q-1 with sum(m_l * g_l) a
    positive multiple of q-1, where the m_l are f's written exponents.

    Computed by unit-cost BFS on residues mod (q-1): each step adds one
    exponent, and the answer is the shortest closed walk of length >= 1 at
    residue 0.  Exponent-0 terms are dropped (they increase the cost without
    contributing).  The per-variable caps g_l <= q-1 never bind: an optimum
    with total <= q-1 always exists (take g = (q-1)/gcd(m, q-1) for a single
    exponent m >= 1), and any walk of total length <= q-1 satisfies the caps.
    """
    exps = [m for m, _ in f.support if m >= 1]
    if not exps:
        raise ConstantPolynomial("omega is defined for nonconstant f only")
    modulus = ctx.q - 1
    if modulus == 1:
        return 1  # every positive integer is a positive multiple of 1
    steps = sorted({m % modulus for m in exps})
    dist = [-1] * modulus
    dist[0] = 0
    queue = deque([0])
    while queue:
        v = queue.popleft()
        for st in steps:
            w = (v + st) % modulus
            if dist[w] < 0:
                dist[w] = dist[v] + 1
                queue.append(w)
    best = None
    for st in steps:
        pre = (modulus - st) % modulus
        if dist[pre] >= 0:
            cand = dist[pre] + 1
            if best is None or cand < best:
                best = cand
    assert best is not None and 1 <= best <= ctx.q - 1
    return best


def p_weight(ctx: FieldCtx, f: UniPoly) -> int:
    """Max of sigma_p(m) over the written exponents m of f (nonconstant f)."""
    exps = [m for m, _ in f.support]
    if not any(m >= 1 for m in exps):
        raise ConstantPolynomial("p-weight is defined for nonconstant f only")
    return max(digit_sum(m, ctx.p) for m in exps)


def ord_p_factorial(m: int, p: int) -> int:
    """Legendre's formula: ord_p(m!) = (m - sigma_p(m)) / (p - 1)."""
    if not is_prime(p):
        raise ValueError(f"p = {p} is not prime")
    if m < 0:
        raise ValueError("m must be nonnegative")
    return (m - digit_sum(m, p)) // (p - 1)
