"""Hypothesis checkers and guaranteed p-adic valuations.

Every supported divisibility statement is a checker that inspects a
SystemInstance, records each hypothesis inequality with exact rational
sides, and reports the guaranteed exponent e such that p^e divides the
number of solutions whenever the hypotheses hold.  The verification harness
counts exactly and confronts every applicable guarantee with the true
valuation; a recorded violation is impossible for correct code, so the
violations list doubles as a self-check.

Theorem identifiers:

  CW             classical Chevalley-Warning (identity substitutions)
  MAIN           (q-1) sum deg_I(P_j) < sum u(f_i)        =>  p | #X
  COR2MAIN       same with ceil((q-1)/deg f_i) lower bounds for u
  CORMAINNEW     same with #f_i(F_q)-1 for WSC f_i
  CLASSICALMAIN  monomial f_i: sum deg_I(P_j) < sum 1/d_i =>  p | #X
  MORLAYE_JOLY   diagonal equations, sum 1/d_i > 1        =>  p | #X
  AXKATZ         classical Ax-Katz (identity substitutions)
  WAN            diagonal equations: q^ceil(sum 1/d_i - 1) | #X
  AXKATZ_GENERAL (q-1) sum deg_I < sum omega(f_i) with exponent
                 s * ceil((sum omega_i/(q-1) - sum deg_I) / max deg_I)
  QDIV           all deg(f_i) | (q-1) on I                =>  q | #X
  AXKATZ_COR1    1/deg(f_i) form of AXKATZ_GENERAL
  AXKATZ_COR     1/d_i form for monomial f_i
  MORENO_GENERAL p-weight version: hypothesis sum w_{p,I}(P_j) <= sum 1/w_p(f_i)
                 (non-strict; equality gives a vacuous exponent), exponent
                 ceil(s * (sum 1/w_p(f_i) - sum w_{p,I}) / max w_{p,I})
  MORENO_COR     monomial form with 1/sigma_p(d_i), strict inequality
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction

from .counting import (CountResult, DEFAULT_BUDGET, SystemInstance,
                       count_system, diagonal_parts, system)
from .errors import CapExceeded, PreconditionViolated, ZeroPolynomial
from .gf import FieldCtx
from .multipoly import IndexSet, MultiPoly, deg_I, index_set, multipoly, w_pI
from .unipoly import (INF, UniPoly, WscClass, u_invariant, unipoly,
                      value_fibers, wsc_classify)
from .weights import digit_sum, omega_invariant, p_weight

THEOREM_IDS = (
    "CW", "MAIN", "COR2MAIN", "CORMAINNEW", "CLASSICALMAIN", "MORLAYE_JOLY",
    "AXKATZ", "WAN", "AXKATZ_GENERAL", "QDIV", "AXKATZ_COR1", "AXKATZ_COR",
    "MORENO_GENERAL", "MORENO_COR",
)


@dataclass(frozen=True)
class TraceEntry:
    """One tested condition; lhs/rhs are exact (Fraction, int, or infinity)."""

    label: str
    relation: str  # "<", "<=", ">", or "holds"
    lhs: Fraction | int | float | None
    rhs: Fraction | int | float | None
    satisfied: bool

    def to_dict(self) -> dict:
        return {
            "label": self.label,
            "relation": self.relation,
            "lhs": _rational_dict(self.lhs),
            "rhs": _rational_dict(self.rhs),
            "satisfied": self.satisfied,
        }


def _rational_dict(x):
    if x is None:
        return None
    if x is INF:
        return "inf"
    fr = Fraction(x)
    return {"num": fr.numerator, "den": fr.denominator}


@dataclass(frozen=True)
class Guarantee:
    theorem_id: str
    applicable: bool
    hypothesis_trace: tuple[TraceEntry, ...]
    guaranteed_p_exponent: int

    def to_dict(self) -> dict:
        return {
            "theorem": self.theorem_id,
            "applicable": self.applicable,
            "guaranteed_p_exponent": self.guaranteed_p_exponent,
            "hypothesis_trace": [t.to_dict() for t in self.hypothesis_trace],
        }


def _guarantee(tid, applicable, trace, exponent=0) -> Guarantee:
    if not applicable:
        exponent = 0
    return Guarantee(tid, applicable, tuple(trace), exponent)


def _not_applicable(tid, reason) -> Guarantee:
    return _guarantee(tid, False, [TraceEntry(reason, "holds", None, None, False)])


def _ceil_exact(x: Fraction) -> int:
    return math.ceil(x)


# ---------------------------------------------------------------------------
# cached per-instance profile


class InstanceProfile:
    """Per-instance invariants shared across index subsets and checkers."""

    def __init__(self, sys: SystemInstance):
        self.sys = sys
        self.ctx = sys.ctx
        for pj in sys.p_list:
            if pj.is_zero:
                raise ZeroPolynomial("system polynomials must be nonzero")
        self._u: dict[int, int | float] = {}
        self._omega: dict[int, int] = {}
        self._wp: dict[int, int] = {}
        self._wsc: dict[int, tuple[WscClass, int]] = {}

    def f(self, i: int) -> UniPoly:
        return self.sys.f_list[i - 1]

    def u(self, i: int) -> int | float:
        if i not in self._u:
            self._u[i] = u_invariant(self.ctx, self.f(i))[0]
        return self._u[i]

    def omega(self, i: int) -> int:
        if i not in self._omega:
            self._omega[i] = omega_invariant(self.ctx, self.f(i))
        return self._omega[i]

    def wp(self, i: int) -> int:
        if i not in self._wp:
            self._wp[i] = p_weight(self.ctx, self.f(i))
        return self._wp[i]

    def wsc_and_value_count(self, i: int) -> tuple[WscClass, int]:
        if i not in self._wsc:
            cls = wsc_classify(self.ctx, self.f(i)).classification
            self._wsc[i] = (cls, len(value_fibers(self.ctx, self.f(i))))
        return self._wsc[i]

    def monomial_exponent(self, i: int) -> int | None:
        """m when f_i = t^m with unit coefficient, else None."""
        sup = self.f(i).support
        if len(sup) == 1 and sup[0][1] == 1 and sup[0][0] >= 1:
            return sup[0][0]
        return None

    def is_identity(self, i: int) -> bool:
        return self.f(i).coeffs == (0, 1)

    def deg_I_list(self, subset: IndexSet) -> list[int]:
        return [deg_I(pj, subset) for pj in self.sys.p_list]

    def w_pI_list(self, subset: IndexSet) -> list[int]:
        return [w_pI(self.ctx, pj, subset) for pj in self.sys.p_list]

    def diagonal_shape(self):
        """(a, m, b) for single diagonal equations; see counting.diagonal_parts."""
        return diagonal_parts(self.sys)


# ---------------------------------------------------------------------------
# individual checkers (soft: shape/precondition failures yield inapplicable)


def _check_cw(prof: InstanceProfile, subset: IndexSet) -> Guarantee:
    sys = prof.sys
    if not all(prof.is_identity(i) for i in range(1, sys.n + 1)):
        return _not_applicable("CW", "requires every f_i = t")
    degs = [pj.total_degree() for pj in sys.p_list]
    total = sum(degs)
    ok = total < sys.n
    trace = [TraceEntry("sum deg(P_j) < n", "<", total, sys.n, ok)]
    return _guarantee("CW", ok, trace, 1)


def _check_main(prof: InstanceProfile, subset: IndexSet) -> Guarantee:
    lhs = (prof.ctx.q - 1) * sum(prof.deg_I_list(subset))
    u_vals = [prof.u(i) for i in subset]
    trace = []
    if any(u is INF for u in u_vals):
        # some f_i is not weakly WSC: every one of its fiber sizes is a
        # multiple of p, so the conclusion holds with no degree hypothesis
        trace.append(TraceEntry("some u(f_i) = infinity on I",
                                "holds", None, None, True))
        rhs = INF
        ok = True
    else:
        rhs = sum(u_vals)
        ok = lhs < rhs
    trace.append(TraceEntry("(q-1) sum deg_I(P_j) < sum u(f_i)",
                            "<", lhs, rhs, ok))
    return _guarantee("MAIN", ok, trace, 1)


def _check_cor2main(prof: InstanceProfile, subset: IndexSet) -> Guarantee:
    q = prof.ctx.q
    for i in subset:
        if prof.f(i).is_constant:
            return _not_applicable("COR2MAIN", f"f_{i} is constant on I")
    lhs = (q - 1) * sum(prof.deg_I_list(subset))
    rhs = sum(-((q - 1) // -prof.f(i).degree) for i in subset)  # ceil
    ok = lhs < rhs
    trace = [TraceEntry("(q-1) sum deg_I(P_j) < sum ceil((q-1)/deg f_i)",
                        "<", lhs, rhs, ok)]
    return _guarantee("COR2MAIN", ok, trace, 1)


def _check_cormainnew(prof: InstanceProfile, subset: IndexSet) -> Guarantee:
    ctx = prof.ctx
    value_counts = []
    for i in subset:
        cls, n_values = prof.wsc_and_value_count(i)
        if cls not in (WscClass.PERMUTATION, WscClass.WSC):
            return _not_applicable("CORMAINNEW", f"f_{i} is not WSC")
        value_counts.append(n_values)
    lhs = (ctx.q - 1) * sum(prof.deg_I_list(subset))
    rhs = sum(n - 1 for n in value_counts)
    ok = lhs < rhs
    trace = [TraceEntry("(q-1) sum deg_I(P_j) < sum (#f_i(F_q) - 1)",
                        "<", lhs, rhs, ok)]
    return _guarantee("CORMAINNEW", ok, trace, 1)


def _check_classicalmain(prof: InstanceProfile, subset: IndexSet) -> Guarantee:
    q = prof.ctx.q
    inv_d = Fraction(0)
    for i in subset:
        m = prof.monomial_exponent(i)
        if m is None:
            return _not_applicable("CLASSICALMAIN", f"f_{i} is not a monomial t^m")
        inv_d += Fraction(1, math.gcd(m, q - 1))
    lhs = Fraction(sum(prof.deg_I_list(subset)))
    ok = lhs < inv_d
    trace = [TraceEntry("sum deg_I(P_j) < sum 1/d_i", "<", lhs, inv_d, ok)]
    return _guarantee("CLASSICALMAIN", ok, trace, 1)


def _check_morlaye_joly(prof: InstanceProfile, subset: IndexSet) -> Guarantee:
    q = prof.ctx.q
    shape = prof.diagonal_shape()
    if shape is None:
        return _not_applicable(
            "MORLAYE_JOLY", "requires one diagonal equation with monomial f_i")
    _, exps, _ = shape
    inv_d = sum(Fraction(1, math.gcd(m, q - 1)) for m in exps)
    ok = inv_d > 1
    trace = [TraceEntry("sum 1/d_i > 1", ">", inv_d, Fraction(1), ok)]
    return _guarantee("MORLAYE_JOLY", ok, trace, 1)


def _check_axkatz(prof: InstanceProfile, subset: IndexSet) -> Guarantee:
    sys = prof.sys
    if not all(prof.is_identity(i) for i in range(1, sys.n + 1)):
        return _not_applicable("AXKATZ", "requires every f_i = t")
    degs = [pj.total_degree() for pj in sys.p_list]
    if any(d < 1 for d in degs):
        return _not_applicable("AXKATZ", "requires every deg(P_j) >= 1")
    total = sum(degs)
    ok = total < sys.n
    trace = [TraceEntry("sum deg(P_j) < n", "<", total, sys.n, ok)]
    exponent = prof.ctx.s * _ceil_exact(Fraction(sys.n - total, max(degs))) if ok else 0
    return _guarantee("AXKATZ", ok, trace, exponent)


def _check_wan(prof: InstanceProfile, subset: IndexSet) -> Guarantee:
    q = prof.ctx.q
    shape = prof.diagonal_shape()
    if shape is None:
        return _not_applicable(
            "WAN", "requires one diagonal equation with monomial f_i")
    _, exps, _ = shape
    inv_d = sum(Fraction(1, math.gcd(m, q - 1)) for m in exps)
    exponent = prof.ctx.s * max(0, _ceil_exact(inv_d - 1))
    trace = [TraceEntry("exponent = s * max(0, ceil(sum 1/d_i - 1))",
                        "holds", inv_d, None, True)]
    return _guarantee("WAN", True, trace, exponent)


def _check_axkatz_general(prof: InstanceProfile, subset: IndexSet) -> Guarantee:
    q = prof.ctx.q
    for i in subset:
        if prof.f(i).is_constant:
            return _not_applicable("AXKATZ_GENERAL", f"f_{i} is constant on I")
    deg_list = prof.deg_I_list(subset)
    max_deg = max(deg_list)
    if max_deg <= 0:
        return _not_applicable("AXKATZ_GENERAL", "max deg_I(P_j) must be positive")
    omega_sum = sum(prof.omega(i) for i in subset)
    lhs = (q - 1) * sum(deg_list)
    ok = lhs < omega_sum
    trace = [TraceEntry("(q-1) sum deg_I(P_j) < sum omega(f_i)",
                        "<", lhs, omega_sum, ok)]
    exponent = 0
    if ok:
        exponent = prof.ctx.s * _ceil_exact(
            (Fraction(omega_sum, q - 1) - sum(deg_list)) / max_deg)
    return _guarantee("AXKATZ_GENERAL", ok, trace, exponent)


def _check_qdiv(prof: InstanceProfile, subset: IndexSet) -> Guarantee:
    q = prof.ctx.q
    for i in subset:
        fi = prof.f(i)
        if fi.is_constant:
            return _not_applicable("QDIV", f"f_{i} is constant on I")
        if (q - 1) % fi.degree != 0:
            return _not_applicable("QDIV", f"deg(f_{i}) does not divide q-1")
    u_vals = [prof.u(i) for i in subset]
    lhs = (q - 1) * sum(prof.deg_I_list(subset))
    rhs = INF if any(u is INF for u in u_vals) else sum(u_vals)
    ok = lhs < rhs
    trace = [TraceEntry("(q-1) sum deg_I(P_j) < sum u(f_i)", "<", lhs, rhs, ok)]
    return _guarantee("QDIV", ok, trace, prof.ctx.s)


def _check_axkatz_cor1(prof: InstanceProfile, subset: IndexSet) -> Guarantee:
    for i in subset:
        if prof.f(i).is_constant:
            return _not_applicable("AXKATZ_COR1", f"f_{i} is constant on I")
    deg_list = prof.deg_I_list(subset)
    max_deg = max(deg_list)
    if max_deg <= 0:
        return _not_applicable("AXKATZ_COR1", "max deg_I(P_j) must be positive")
    inv_sum = sum(Fraction(1, prof.f(i).degree) for i in subset)
    lhs = Fraction(sum(deg_list))
    ok = lhs < inv_sum
    trace = [TraceEntry("sum deg_I(P_j) < sum 1/deg(f_i)", "<", lhs, inv_sum, ok)]
    exponent = prof.ctx.s * _ceil_exact((inv_sum - lhs) / max_deg) if ok else 0
    return _guarantee("AXKATZ_COR1", ok, trace, exponent)


def _check_axkatz_cor(prof: InstanceProfile, subset: IndexSet) -> Guarantee:
    q = prof.ctx.q
    inv_sum = Fraction(0)
    for i in subset:
        m = prof.monomial_exponent(i)
        if m is None:
            return _not_applicable("AXKATZ_COR", f"f_{i} is not a monomial t^m")
        inv_sum += Fraction(1, math.gcd(m, q - 1))
    deg_list = prof.deg_I_list(subset)
    max_deg = max(deg_list)
    if max_deg <= 0:
        return _not_applicable("AXKATZ_COR", "max deg_I(P_j) must be positive")
    lhs = Fraction(sum(deg_list))
    ok = lhs < inv_sum
    trace = [TraceEntry("sum deg_I(P_j) < sum 1/d_i", "<", lhs, inv_sum, ok)]
    exponent = prof.ctx.s * _ceil_exact((inv_sum - lhs) / max_deg) if ok else 0
    return _guarantee("AXKATZ_COR", ok, trace, exponent)


def _check_moreno_general(prof: InstanceProfile, subset: IndexSet) -> Guarantee:
    for i in subset:
        if prof.f(i).is_constant:
            return _not_applicable("MORENO_GENERAL", f"f_{i} is constant on I")
    w_list = prof.w_pI_list(subset)
    max_w = max(w_list)
    if max_w <= 0:
        return _not_applicable("MORENO_GENERAL", "max w_pI(P_j) must be positive")
    inv_sum = sum(Fraction(1, prof.wp(i)) for i in subset)
    lhs = Fraction(sum(w_list))
    # the general form accepts equality, which yields a vacuous
    # exponent of 0; the monomial corollary below requires strict inequality
    ok = lhs <= inv_sum
    trace = [TraceEntry("sum w_pI(P_j) <= sum 1/w_p(f_i)", "<=", lhs, inv_sum, ok)]
    exponent = _ceil_exact(prof.ctx.s * (inv_sum - lhs) / max_w) if ok else 0
    return _guarantee("MORENO_GENERAL", ok, trace, exponent)


def _check_moreno_cor(prof: InstanceProfile, subset: IndexSet) -> Guarantee:
    ctx = prof.ctx
    inv_sum = Fraction(0)
    for i in subset:
        m = prof.monomial_exponent(i)
        if m is None:
            return _not_applicable("MORENO_COR", f"f_{i} is not a monomial t^m")
        d = math.gcd(m, ctx.q - 1)
        inv_sum += Fraction(1, digit_sum(d, ctx.p))
    w_list = prof.w_pI_list(subset)
    max_w = max(w_list)
    if max_w <= 0:
        return _not_applicable("MORENO_COR", "max w_pI(P_j) must be positive")
    lhs = Fraction(sum(w_list))
    ok = lhs < inv_sum
    trace = [TraceEntry("sum w_pI(P_j) < sum 1/sigma_p(d_i)", "<", lhs, inv_sum, ok)]
    exponent = _ceil_exact(ctx.s * (inv_sum - lhs) / max_w) if ok else 0
    return _guarantee("MORENO_COR", ok, trace, exponent)


_CHECKERS = {
    "CW": _check_cw,
    "MAIN": _check_main,
    "COR2MAIN": _check_cor2main,
    "CORMAINNEW": _check_cormainnew,
    "CLASSICALMAIN": _check_classicalmain,
    "MORLAYE_JOLY": _check_morlaye_joly,
    "AXKATZ": _check_axkatz,
    "WAN": _check_wan,
    "AXKATZ_GENERAL": _check_axkatz_general,
    "QDIV": _check_qdiv,
    "AXKATZ_COR1": _check_axkatz_cor1,
    "AXKATZ_COR": _check_axkatz_cor,
    "MORENO_GENERAL": _check_moreno_general,
    "MORENO_COR": _check_moreno_cor,
}


# ---------------------------------------------------------------------------
# public checkers (strict about preconditions)


def check_main(sys: SystemInstance, subset: IndexSet | None = None) -> Guarantee:
    prof = InstanceProfile(sys)
    return _check_main(prof, subset or sys.effective_index_set())


def check_axkatz_general(sys: SystemInstance,
                         subset: IndexSet | None = None) -> Guarantee:
    prof = InstanceProfile(sys)
    subset = subset or sys.effective_index_set()
    for i in subset:
        if prof.f(i).is_constant:
            raise PreconditionViolated(f"f_{i} is constant on I")
    if max(prof.deg_I_list(subset)) <= 0:
        raise PreconditionViolated("max deg_I(P_j) must be positive")
    return _check_axkatz_general(prof, subset)


def check_moreno_general(sys: SystemInstance,
                         subset: IndexSet | None = None) -> Guarantee:
    prof = InstanceProfile(sys)
    subset = subset or sys.effective_index_set()
    for i in subset:
        if prof.f(i).is_constant:
            raise PreconditionViolated(f"f_{i} is constant on I")
    if max(prof.w_pI_list(subset)) <= 0:
        raise PreconditionViolated("max w_pI(P_j) must be positive")
    return _check_moreno_general(prof, subset)


def all_guarantees(sys: SystemInstance, subset: IndexSet | None = None,
                   theorem_ids=THEOREM_IDS) -> list[Guarantee]:
    """Run every checker; shape mismatches and failed preconditions yield
    inapplicable guarantees rather than errors.  The four classical presets
    (CW, AXKATZ, WAN, MORLAYE_JOLY) are statements about all n variables and
    ignore the index subset."""
    prof = InstanceProfile(sys)
    subset = subset or sys.effective_index_set()
    return [_CHECKERS[tid](prof, subset) for tid in theorem_ids]


# ---------------------------------------------------------------------------
# verification harness


@dataclass(frozen=True)
class VerificationReport:
    instance: SystemInstance
    index_set: IndexSet
    count_result: CountResult
    guarantees: tuple[Guarantee, ...]
    violations: tuple[str, ...]

    def to_dict(self) -> dict:
        from .instances import system_to_dict

        return {
            "instance": system_to_dict(self.instance),
            "I": list(self.index_set.as_sorted()),
            "count": self.count_result.to_dict(),
            "guarantees": [g.to_dict() for g in self.guarantees],
            "violations": list(self.violations),
        }


def verify(sys: SystemInstance, subset: IndexSet | None = None,
           method: str = "auto", budget: int | None = None) -> VerificationReport:
    """Count exactly, run every checker, and record any applicable guarantee
    whose exponent exceeds the true valuation (there must never be one)."""
    subset = subset or sys.effective_index_set()
    guarantees = all_guarantees(sys, subset)
    result = count_system(sys, method, budget if budget is not None else DEFAULT_BUDGET)
    violations = tuple(
        g.theorem_id for g in guarantees
        if g.applicable and result.ord_p < g.guaranteed_p_exponent)
    return VerificationReport(sys, subset, result, tuple(guarantees), violations)


DEFAULT_SUBSET_CAP = 16


def best_guarantee(sys: SystemInstance, subset_cap: int = DEFAULT_SUBSET_CAP
                   ) -> tuple[IndexSet, Guarantee]:
    """Exhaustive search over nonempty index subsets for the largest
    guaranteed exponent.  Ties prefer smaller subsets, then lexicographically
    smaller ones, then the theorem order above."""
    if sys.n > subset_cap:
        raise CapExceeded(f"n = {sys.n} exceeds subset search cap {subset_cap}")
    prof = InstanceProfile(sys)
    best: tuple | None = None
    indices = list(range(1, sys.n + 1))
    for mask in range(1, 1 << sys.n):
        members = [i for b, i in enumerate(indices) if mask >> b & 1]
        subset = index_set(members, sys.n)
        for rank, tid in enumerate(THEOREM_IDS):
            g = _CHECKERS[tid](prof, subset)
            if not g.applicable:
                continue
            key = (-g.guaranteed_p_exponent, len(members), tuple(members), rank)
            if best is None or key < best[0]:
                best = (key, subset, g)
    if best is None:
        subset = index_set([1], sys.n)
        return subset, all_guarantees(sys, subset)[0]
    return best[1], best[2]


# ---------------------------------------------------------------------------
# random instances and sharpness search


def random_unipoly(rng: random.Random, ctx: FieldCtx, max_degree: int,
                   kind: str = "random") -> UniPoly:
    if kind == "identity":
        return unipoly(ctx, [0, 1])
    if kind == "monomial":
        return unipoly(ctx, [0] * rng.randint(1, max(1, max_degree)) + [1])
    deg = rng.randint(1, max(1, max_degree))
    coeffs = [rng.randrange(ctx.q) for _ in range(deg)]
    coeffs.append(rng.randrange(1, ctx.q))
    return unipoly(ctx, coeffs)


def random_multipoly(rng: random.Random, ctx: FieldCtx, n: int,
                     max_degree: int, max_terms: int = 4) -> MultiPoly:
    terms = []
    for _ in range(rng.randint(1, max_terms)):
        exps = [0] * n
        budget = rng.randint(0, max_degree)
        for _ in range(budget):
            exps[rng.randrange(n)] += 1
        terms.append((rng.randrange(1, ctx.q), tuple(exps)))
    poly = multipoly(ctx, n, terms)
    if poly.is_zero:  # merging may cancel; retry deterministically
        return random_multipoly(rng, ctx, n, max_degree, max_terms)
    return poly


@dataclass(frozen=True)
class SharpInstance:
    instance: SystemInstance
    index_set: IndexSet
    theorem_id: str
    exponent: int
    count: int


def search_sharpness(ctx: FieldCtx, *, n: int, r: int = 1, trials: int = 100,
                     seed: int = 0, f_degree: int = 3, p_degree: int = 2,
                     f_kind: str = "random", theorem_ids=THEOREM_IDS,
                     budget: int = 1 << 24) -> list[SharpInstance]:
    """Randomly search for instances where some applicable guarantee is
    attained exactly: ord_p(count) equals the best guaranteed exponent >= 1.
    Deterministic under the seed."""
    if ctx.q**n > budget:
        raise CapExceeded(f"q^n = {ctx.q ** n} exceeds budget {budget}")
    rng = random.Random(seed)
    hits = []
    for _ in range(trials):
        f_list = [random_unipoly(rng, ctx, f_degree, f_kind) for _ in range(n)]
        p_list = [random_multipoly(rng, ctx, n, p_degree) for _ in range(r)]
        sys = system(ctx, f_list, p_list)
        guarantees = all_guarantees(sys, theorem_ids=theorem_ids)
        applicable = [g for g in guarantees
                      if g.applicable and g.guaranteed_p_exponent >= 1]
        if not applicable:
            continue
        best = max(g.guaranteed_p_exponent for g in applicable)
        result = count_system(sys, "auto", budget)
        if result.ord_p == best:
            tid = next(g.theorem_id for g in applicable
                       if g.guaranteed_p_exponent == best)
            hits.append(SharpInstance(sys, sys.effective_index_set(),
                                      tid, best, result.count))
    return hits
