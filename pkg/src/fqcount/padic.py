"""Truncated unramified p-adic arithmetic.

Elements of the ring O/p^k, where O is the ring of integers of the
unramified degree-s extension of Q_p, are represented as s-tuples of
integers in [0, p^k) against the basis 1, x, ..., x^{s-1}, with x a root of
a monic lift of the residue field's modulus.  Every congruence checked here
is to a finite modulus, so a fixed precision k loses nothing; the lift is
taken with the same integer coefficients as the field modulus, which keeps
the construction reproducible.
"""

from __future__ import annotations

import math

from .errors import BudgetExceeded, PrecisionInsufficient
from .gf import FieldCtx
from .unipoly import UniPoly

PadicElem = tuple[int, ...]


class PadicCtx:
    """O/p^k over the given residue field; immutable after construction."""

    def __init__(self, field_ctx: FieldCtx, k: int):
        if k < 1:
            raise ValueError(f"precision k must be >= 1, got {k}")
        self.field = field_ctx
        self.p = field_ctx.p
        self.s = field_ctx.s
        self.q = field_ctx.q
        self.k = k
        self.pk = field_ctx.p**k
        self.modulus_lift = tuple(field_ctx.modulus)
        self._teich_cache: list[PadicElem] | None = None

    # -- ring elements -------------------------------------------------------

    @property
    def zero(self) -> PadicElem:
        return (0,) * self.s

    @property
    def one(self) -> PadicElem:
        return (1,) + (0,) * (self.s - 1)

    def from_int(self, n: int) -> PadicElem:
        return (n % self.pk,) + (0,) * (self.s - 1)

    def lift(self, a: int) -> PadicElem:
        """The coefficient-wise (naive) lift of a residue-field element."""
        return tuple(self.field.digits(a))

    def reduce(self, z: PadicElem) -> int:
        """Reduction mod p back to the residue field's encoding."""
        return self.field.encode([c % self.p for c in z])

    # -- arithmetic -----------------------------------------------------------

    def add(self, a: PadicElem, b: PadicElem) -> PadicElem:
        return tuple((x + y) % self.pk for x, y in zip(a, b))

    def sub(self, a: PadicElem, b: PadicElem) -> PadicElem:
        return tuple((x - y) % self.pk for x, y in zip(a, b))

    def neg(self, a: PadicElem) -> PadicElem:
        return tuple(-x % self.pk for x in a)

    def scalar_mul(self, n: int, a: PadicElem) -> PadicElem:
        return tuple(n * x % self.pk for x in a)

    def mul(self, a: PadicElem, b: PadicElem) -> PadicElem:
        s, pk = self.s, self.pk
        if s == 1:
            return (a[0] * b[0] % pk,)
        conv = [0] * (2 * s - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    conv[i + j] += x * y
        mod = self.modulus_lift
        for i in range(2 * s - 2, s - 1, -1):
            c = conv[i] % pk
            if c:
                conv[i] = 0
                for j in range(s):
                    conv[i - s + j] -= c * mod[j]
        return tuple(c % pk for c in conv[:s])

    def pow(self, a: PadicElem, e: int) -> PadicElem:
        """a^e for e >= 0 (no order reduction: valid for non-units too)."""
        if e < 0:
            raise ValueError("negative exponent")
        result = self.one
        base = a
        while e:
            if e & 1:
                result = self.mul(result, base)
            e >>= 1
            if e:
                base = self.mul(base, base)
        return result

    # -- valuations -----------------------------------------------------------

    def divisible(self, z: PadicElem, j: int) -> bool:
        """Whether p^j divides z in O/p^k (requires j <= k to be observable)."""
        if j > self.k:
            raise PrecisionInsufficient(f"p^{j} is invisible at precision {self.k}")
        pj = self.p**j
        return all(c % pj == 0 for c in z)

    # -- Teichmuller lifts ----------------------------------------------------

    def teichmuller(self, a: int) -> PadicElem:
        """The unique lift b of a with b^q = b in O/p^k, reached by iterating
        b -> b^q from the naive lift (each step fixes at least one more
        p-digit, so at most k steps are needed)."""
        b = self.lift(a)
        for _ in range(self.k + 1):
            nxt = self.pow(b, self.q)
            if nxt == b:
                return b
            b = nxt
        raise AssertionError("Teichmuller iteration failed to stabilize")

    def teichmuller_set(self) -> list[PadicElem]:
        """All q Teichmuller points, indexed by residue encoding; cached."""
        if self._teich_cache is None:
            self._teich_cache = [self.teichmuller(a) for a in range(self.q)]
        return self._teich_cache


def padic_ctx(field_ctx: FieldCtx, k: int = 4) -> PadicCtx:
    return PadicCtx(field_ctx, k)


# ---------------------------------------------------------------------------
# verified congruences


def verify_lift_lemma(pctx: PadicCtx, x: PadicElem, y: PadicElem, n: int) -> bool:
    """If p | (x - y) then p^{n+1} | (x^{p^n} - y^{p^n}); vacuously true when
    the premise fails.  Needs precision k >= n+1."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if n + 1 > pctx.k:
        raise PrecisionInsufficient(f"need k >= {n + 1}, have {pctx.k}")
    if not pctx.divisible(pctx.sub(x, y), 1):
        return True
    e = pctx.p**n
    return pctx.divisible(pctx.sub(pctx.pow(x, e), pctx.pow(y, e)), n + 1)


def verify_unit_power(pctx: PadicCtx, x: PadicElem, n: int) -> bool:
    """x^{(q-1) q^n} is 0 mod q^n when p | x and 1 mod q^n otherwise.
    Needs precision k >= n*s."""
    if n < 1:
        raise ValueError("n must be >= 1")
    ns = n * pctx.s
    if ns > pctx.k:
        raise PrecisionInsufficient(f"need k >= {ns}, have {pctx.k}")
    z = pctx.pow(x, (pctx.q - 1) * pctx.q**n)
    if pctx.divisible(x, 1):
        return pctx.divisible(z, ns)
    return pctx.divisible(pctx.sub(z, pctx.one), ns)


DEFAULT_COMPOSITION_BUDGET = 1 << 21


def teichmuller_power_sum(pctx: PadicCtx, f: UniPoly, delta: int) -> PadicElem:
    """sum over the Teichmuller points x of ftilde(x)^delta, where ftilde
    lifts each coefficient of f to its Teichmuller representative.  Reducing
    the result mod p recovers the power sum of f over F_q."""
    if delta < 0:
        raise ValueError("delta must be nonnegative")
    lifted = [(m, pctx.teichmuller(c)) for m, c in f.support]
    total = pctx.zero
    for point in pctx.teichmuller_set():
        val = pctx.zero
        for m, b in lifted:
            val = pctx.add(val, pctx.mul(b, pctx.pow(point, m)))
        total = pctx.add(total, pctx.pow(val, delta))
    return total


def check_power_sum_closed_form(pctx: PadicCtx, f: UniPoly, delta: int,
                 composition_budget: int = DEFAULT_COMPOSITION_BUDGET) -> bool:
    """Check, in O/p^k, the closed form for the power sum of a lifted
    polynomial over the Teichmuller points:

        sum_{x in T_q} ftilde(x)^delta
            = q * ftilde(0)^delta
            + (q-1) * sum  delta!/(d_1! ... d_R!) * b_1^{d_1} ... b_R^{d_R}

    where the sum runs over compositions (d_1, ..., d_R) of delta whose
    exponent-weighted total sum(m_l * d_l) is a positive multiple of q-1.
    Multinomial coefficients are computed as exact integers and reduced
    mod p^k.
    """
    if delta < 0:
        raise ValueError("delta must be nonnegative")
    support = f.support
    if len([m for m, _ in support if m >= 1]) == 0:
        raise ValueError("f must be nonconstant")
    n_terms = len(support)
    n_compositions = math.comb(delta + n_terms - 1, n_terms - 1) if delta else 1
    if n_compositions > composition_budget:
        raise BudgetExceeded(n_compositions, composition_budget, "compositions")

    lifted = [(m, pctx.teichmuller(c)) for m, c in support]
    lhs = teichmuller_power_sum(pctx, f, delta)

    # right side: q * ftilde(0)^delta plus the composition sum
    f0 = next((b for m, b in lifted if m == 0), pctx.zero)
    rhs = pctx.scalar_mul(pctx.q, pctx.pow(f0, delta))

    q_minus_1 = pctx.q - 1
    powers = [[pctx.one] for _ in lifted]
    for (_, b), plist in zip(lifted, powers):
        for _ in range(delta):
            plist.append(pctx.mul(plist[-1], b))

    comp_sum = pctx.zero

    def descend(idx: int, remaining: int, weighted: int, coeff_mod: int,
                prod: PadicElem) -> None:
        nonlocal comp_sum
        if idx == n_terms - 1:
            d = remaining
            w = weighted + lifted[idx][0] * d
            if w > 0 and w % q_minus_1 == 0:
                c = coeff_mod * math.comb(remaining, d) % pctx.pk
                term = pctx.scalar_mul(c, pctx.mul(prod, powers[idx][d]))
                comp_sum = pctx.add(comp_sum, term)
            return
        for d in range(remaining + 1):
            descend(idx + 1, remaining - d,
                    weighted + lifted[idx][0] * d,
                    coeff_mod * math.comb(remaining, d) % pctx.pk,
                    pctx.mul(prod, powers[idx][d]))

    if delta > 0:
        descend(0, delta, 0, 1, pctx.one)
    rhs = pctx.add(rhs, pctx.scalar_mul(q_minus_1, comp_sum))
    return lhs == rhs
