"""Exact arithmetic in F_q = F_{p^s}.

Elements are encoded as integers in [0, q): the element sum(a_i * x^i) in the
polynomial basis is stored as sum(a_i * p^i).  The encoding is a bijection,
0 is the zero element and 1 is the identity, and elements of the prime
subfield are encoded by themselves.

A field context is built deterministically: the default modulus is the monic
irreducible of degree s over F_p whose coefficient encoding sum(c_i * p^i) is
minimal, and the multiplicative generator is the element of full order with
minimal encoding.  Two runs (on any machine) therefore produce identical
tables and identical reports.

For q up to ``table_cap`` (default 2^20) the context carries generator
power / discrete log tables and multiplication runs through them; above the
cap arithmetic falls back to polynomial-basis computation.
"""

from __future__ import annotations

import numpy as np

from .errors import DegreeMismatch, DivisionByZero, NonPrime, Reducible

DEFAULT_TABLE_CAP = 1 << 20
# full q x q add/mul tables are kept below this size (dense path)
DENSE_TABLE_CAP = 512


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def prime_power(q: int) -> tuple[int, int] | None:
    """(p, s) with q = p^s, or None when q is not a prime power >= 2."""
    if q < 2:
        return None
    factors = distinct_prime_factors(q)
    if len(factors) != 1:
        return None
    p = factors[0]
    s = 0
    while q % p == 0:
        q //= p
        s += 1
    return (p, s) if q == 1 else None


def distinct_prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# ---------------------------------------------------------------------------
# polynomial-basis helpers (coefficient lists over F_p, lowest degree first)


def _poly_deg(a: list[int]) -> int:
    d = len(a) - 1
    while d >= 0 and a[d] == 0:
        d -= 1
    return d


def _poly_mul_mod(a: list[int], b: list[int], modulus: list[int], p: int) -> list[int]:
    s = len(modulus) - 1
    res = [0] * (2 * s - 1 if s > 1 else 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    res[i + j] = (res[i + j] + ai * bj) % p
    for i in range(len(res) - 1, s - 1, -1):
        c = res[i]
        if c:
            res[i] = 0
            for j in range(s):
                res[i - s + j] = (res[i - s + j] - c * modulus[j]) % p
    return res[:s] + [0] * (s - len(res))


def _poly_pow_mod(a: list[int], e: int, modulus: list[int], p: int) -> list[int]:
    s = len(modulus) - 1
    result = [1] + [0] * (s - 1)
    base = list(a)
    while e:
        if e & 1:
            result = _poly_mul_mod(result, base, modulus, p)
        e >>= 1
        if e:
            base = _poly_mul_mod(base, base, modulus, p)
    return result


def _poly_mod(a: list[int], b: list[int], p: int) -> list[int]:
    a = list(a)
    db = _poly_deg(b)
    inv_lead = pow(b[db], -1, p)
    da = _poly_deg(a)
    while da >= db:
        c = a[da] * inv_lead % p
        for j in range(db + 1):
            a[da - db + j] = (a[da - db + j] - c * b[j]) % p
        da = _poly_deg(a)
    return a


def _poly_gcd_deg(a: list[int], b: list[int], p: int) -> int:
    a, b = list(a), list(b)
    while _poly_deg(b) >= 0:
        a, b = b, _poly_mod(a, b, p)
    return _poly_deg(a)


def is_irreducible(modulus: list[int], p: int) -> bool:
    """Rabin's test: f of degree s is irreducible over F_p iff
    x^(p^s) = x (mod f) and gcd(x^(p^(s/l)) - x, f) = 1 for every prime l | s."""
    s = _poly_deg(modulus)
    if s < 1:
        return False
    if s == 1:
        return True
    x = [0, 1] + [0] * (s - 2)

    def frobenius_iterate(times: int) -> list[int]:
        t = list(x)
        for _ in range(times):
            t = _poly_pow_mod(t, p, modulus, p)
        return t

    for ell in distinct_prime_factors(s):
        t = frobenius_iterate(s // ell)
        diff = [(ti - xi) % p for ti, xi in zip(t, x)]
        if _poly_gcd_deg(list(modulus), diff, p) != 0:
            return False
    return frobenius_iterate(s) == x


def _minimal_irreducible(p: int, s: int) -> list[int]:
    for val in range(p**s):
        cand = [(val // p**i) % p for i in range(s)] + [1]
        if is_irreducible(cand, p):
            return cand
    raise Reducible(f"no irreducible of degree {s} over F_{p}")  # unreachable


class FieldCtx:
    """Immutable description of F_{p^s}; all operations are pure."""

    def __init__(self, p: int, s: int, modulus: list[int] | None = None,
                 table_cap: int = DEFAULT_TABLE_CAP):
        if not is_prime(p):
            raise NonPrime(f"p = {p} is not prime")
        if s < 1:
            raise ValueError(f"s must be >= 1, got {s}")
        self.p = p
        self.s = s
        self.q = p**s
        if modulus is None:
            modulus = _minimal_irreducible(p, s)
        else:
            modulus = [int(c) % p for c in modulus]
            if len(modulus) != s + 1 or modulus[s] != 1:
                raise DegreeMismatch(
                    f"modulus must be monic of degree {s}, got {modulus}")
            if not is_irreducible(modulus, p):
                raise Reducible(f"modulus {modulus} is reducible over F_{p}")
        self.modulus = tuple(modulus)
        self._ppows = [p**i for i in range(s)]
        self.has_tables = self.q <= table_cap
        if self.has_tables:
            self._build_tables()

    # -- construction ------------------------------------------------------

    def _build_tables(self) -> None:
        q, p = self.q, self.p
        if q == 2:
            self.generator = 1
        else:
            factors = distinct_prime_factors(q - 1)
            g = None
            for cand in range(2, q):
                if all(self._pow_polybasis(cand, (q - 1) // f) != 1 for f in factors):
                    g = cand
                    break
            assert g is not None
            self.generator = g
        exp = [0] * q
        log = [0] * q
        x = 1
        for i in range(q - 1):
            exp[i] = x
            log[x] = i
            x = self.mul_polybasis(x, self.generator)
        exp[q - 1] = 1  # wraps: g^(q-1) = 1
        self.exp_table = exp
        self.log_table = log
        self._neg = [self.encode([(-d) % p for d in self.digits(a)]) for a in range(q)]

        self._np_exp = np.array(exp[: q - 1] + exp[: q - 1], dtype=np.int64) \
            if q > 2 else np.array([1, 1], dtype=np.int64)
        self._np_log = np.array(log, dtype=np.int64)
        self._np_neg = np.array(self._neg, dtype=np.int64)
        self._np_digits = None
        if self.s > 1:
            dig = np.empty((q, self.s), dtype=np.int64)
            v = np.arange(q, dtype=np.int64)
            for i in range(self.s):
                dig[:, i] = v % p
                v //= p
            self._np_digits = dig
        self._np_ppows = np.array(self._ppows, dtype=np.int64)

        self._dense = q <= DENSE_TABLE_CAP
        if self._dense:
            a = np.arange(q, dtype=np.int64)
            self._np_add = self._vadd_digits(a[:, None], a[None, :])
            self._np_mul = self._vmul_logs(a[:, None], a[None, :])
            self._add_rows = [row.tolist() for row in self._np_add]
            self._mul_rows = [row.tolist() for row in self._np_mul]

    # -- encoding ----------------------------------------------------------

    def digits(self, a: int) -> list[int]:
        p = self.p
        return [(a // pw) % p for pw in self._ppows]

    def encode(self, digits: list[int]) -> int:
        return sum(d % self.p * pw for d, pw in zip(digits, self._ppows))

    def elements(self) -> range:
        return range(self.q)

    def scalar(self, k: int) -> int:
        """Embedding of the integer k via the prime subfield."""
        return k % self.p

    # -- polynomial-basis arithmetic (table-free; also the cross-check path)

    def mul_polybasis(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        prod = _poly_mul_mod(self.digits(a), self.digits(b),
                             list(self.modulus), self.p)
        return self.encode(prod)

    def _pow_polybasis(self, a: int, e: int) -> int:
        if e == 0:
            return 1
        if a == 0:
            return 0
        e %= self.q - 1
        if e == 0:
            return 1
        result = 1
        base = a
        while e:
            if e & 1:
                result = self.mul_polybasis(result, base)
            e >>= 1
            if e:
                base = self.mul_polybasis(base, base)
        return result

    # -- scalar field operations --------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        if self.s == 1:
            return (a + b) % self.p
        if self.has_tables and self._dense:
            return self._add_rows[a][b]
        p = self.p
        return self.encode([(x + y) % p
                            for x, y in zip(self.digits(a), self.digits(b))])

    def neg(self, a: int) -> int:
        if self.p == 2:
            return a
        if self.has_tables:
            return self._neg[a]
        return self.encode([(-d) % self.p for d in self.digits(a)])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self.has_tables:
            if self._dense:
                return self._mul_rows[a][b]
            return self.exp_table[(self.log_table[a] + self.log_table[b]) % (self.q - 1)]
        return self.mul_polybasis(a, b)

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("inverse of 0")
        if self.has_tables:
            return self.exp_table[(self.q - 1 - self.log_table[a]) % (self.q - 1)]
        return self._pow_polybasis(a, self.q - 2)

    def pow(self, a: int, e: int) -> int:
        """a^e for e >= 0 of arbitrary size; 0^0 = 1, and the exponent is
        reduced mod (q-1) for nonzero bases."""
        if e < 0:
            raise ValueError("negative exponent")
        if e == 0:
            return 1
        if a == 0:
            return 0
        if self.has_tables:
            return self.exp_table[(self.log_table[a] * (e % (self.q - 1))) % (self.q - 1)]
        return self._pow_polybasis(a, e)

    def scalar_mul(self, k: int, a: int) -> int:
        """(k mod p) times a, for an ordinary integer k (e.g. a fiber size)."""
        return self.mul(k % self.p, a)

    # -- vectorized operations on numpy arrays of encodings ------------------

    def _require_tables(self):
        if not self.has_tables:
            raise RuntimeError(f"q = {self.q} exceeds the table cap; "
                               "vectorized kernels unavailable")

    def _vadd_digits(self, a, b):
        if self.s == 1:
            return (a + b) % self.p
        da = self._np_digits[a]
        db = self._np_digits[b]
        return ((da + db) % self.p) @ self._np_ppows

    def _vmul_logs(self, a, b):
        out = self._np_exp[self._np_log[a] + self._np_log[b]]
        return np.where((a == 0) | (b == 0), 0, out)

    def vadd(self, a, b):
        self._require_tables()
        if self.p == 2:
            return np.bitwise_xor(a, b)
        if self._dense:
            return self._np_add[a, b]
        return self._vadd_digits(a, b)

    def vmul(self, a, b):
        self._require_tables()
        if self._dense:
            return self._np_mul[a, b]
        return self._vmul_logs(a, b)

    def vneg(self, a):
        self._require_tables()
        return self._np_neg[a]

    def vpow(self, a, e: int):
        self._require_tables()
        if e < 0:
            raise ValueError("negative exponent")
        a = np.asarray(a)
        if e == 0:
            return np.ones_like(a)
        ee = e % (self.q - 1) if self.q > 2 else 0
        out = self._np_exp[(self._np_log[a] * ee) % (self.q - 1)] \
            if self.q > 2 else np.ones_like(a)
        return np.where(a == 0, 0, out)

    def vsum(self, a, axis=None) -> int | np.ndarray:
        """Field sum of an array of encodings along an axis (all, if None)."""
        self._require_tables()
        a = np.asarray(a)
        if self.p == 2:
            r = np.bitwise_xor.reduce(a, axis=axis)
        elif self.s == 1:
            r = a.sum(axis=axis, dtype=np.int64) % self.p
        else:
            d = self._np_digits[a]
            ax = tuple(range(a.ndim)) if axis is None else axis
            r = (d.sum(axis=ax, dtype=np.int64) % self.p) @ self._np_ppows
        return int(r) if np.ndim(r) == 0 else r

    # -- misc ----------------------------------------------------------------

    def as_dict(self) -> dict:
        return {"p": self.p, "s": self.s, "modulus": list(self.modulus)}

    def __repr__(self) -> str:
        return f"FieldCtx(p={self.p}, s={self.s}, modulus={list(self.modulus)})"

    def __eq__(self, other) -> bool:
        return (isinstance(other, FieldCtx)
                and (self.p, self.s, self.modulus) == (other.p, other.s, other.modulus))

    def __hash__(self) -> int:
        return hash((self.p, self.s, self.modulus))


def field(p: int, s: int = 1, modulus: list[int] | None = None,
          table_cap: int = DEFAULT_TABLE_CAP) -> FieldCtx:
    """Construct F_{p^s} with the deterministic default modulus and generator."""
    return FieldCtx(p, s, modulus, table_cap)
