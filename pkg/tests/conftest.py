"""Shared fixtures and independent oracles.

The oracles here deliberately avoid the library's counting/minimization
paths: counting is done by nested scalar loops over F_q^n, omega by direct
enumeration of exponent tuples, and factorial valuations by the floor-sum
formula.  They are slow and only used on small inputs.
"""

from functools import lru_cache
from itertools import product

import pytest

from fqcount import field
from fqcount.gf import prime_power
from fqcount.multipoly import eval_point
from fqcount.unipoly import eval_at


@lru_cache(maxsize=None)
def F(p, s=1):
    return field(p, s)


def prime_powers_upto(limit):
    return [q for q in range(2, limit + 1) if prime_power(q) is not None]


def field_for_q(q):
    p, s = prime_power(q)
    return F(p, s)


def slow_count(ctx, f_list, p_list):
    """Ground-truth count by scalar enumeration of F_q^n (no numpy, no
    shared kernel)."""
    n = len(f_list)
    total = 0
    for point in product(ctx.elements(), repeat=n):
        values = [eval_at(ctx, f, x) for f, x in zip(f_list, point)]
        if all(eval_point(ctx, pj, values) == 0 for pj in p_list):
            total += 1
    return total


def slow_substituted_sum(ctx, poly, f_list):
    """Ground-truth sum over F_q^n of P(f_1(x_1), ..., f_n(x_n)) by scalar
    enumeration."""
    n = len(f_list)
    acc = 0
    for point in product(ctx.elements(), repeat=n):
        values = [eval_at(ctx, f, x) for f, x in zip(f_list, point)]
        acc = ctx.add(acc, eval_point(ctx, poly, values))
    return acc


def slow_omega(ctx, exponents):
    """Oracle for the minimization invariant: enumerate all tuples
    0 <= g_l <= q-1 directly."""
    q = ctx.q
    exps = [m for m in exponents if m >= 1]
    best = None
    for gamma in product(range(q), repeat=len(exps)):
        weighted = sum(m * g for m, g in zip(exps, gamma))
        if weighted > 0 and weighted % (q - 1 if q > 2 else 1) == 0:
            total = sum(gamma)
            if best is None or total < best:
                best = total
    return best


def slow_ord_factorial(m, p):
    """Floor-sum formula for ord_p(m!)."""
    total = 0
    pk = p
    while pk <= m:
        total += m // pk
        pk *= p
    return total


@pytest.fixture
def f9():
    return F(3, 2)


@pytest.fixture
def f81():
    return F(3, 4)
