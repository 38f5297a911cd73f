import random
from fractions import Fraction

import pytest

from fqcount import field
from fqcount.counting import count_bruteforce, count_system, system
from fqcount.errors import (CapExceeded, PreconditionViolated, ZeroPolynomial)
from fqcount.multipoly import full_index_set, index_set, multipoly
from fqcount.theorems import (THEOREM_IDS, InstanceProfile, all_guarantees,
                              best_guarantee, check_axkatz_general, check_main,
                              check_moreno_general, random_multipoly,
                              random_unipoly, search_sharpness, verify)
from fqcount.unipoly import monomial, unipoly

from conftest import F, field_for_q


def _linear_sum(ctx, n):
    return multipoly(ctx, n, [(1, tuple(1 if i == j else 0 for i in range(n)))
                              for j in range(n)])


def _diagonal_system(ctx, exponents, coeffs=None, b=0):
    n = len(exponents)
    coeffs = coeffs or [1] * n
    terms = [(c, tuple(1 if i == j else 0 for i in range(n)))
             for j, c in enumerate(coeffs)]
    if b:
        terms.append((ctx.neg(b), (0,) * n))
    return system(ctx, [monomial(ctx, m) for m in exponents],
                  [multipoly(ctx, n, terms)])


def _identity_system(ctx, p_list):
    n = p_list[0].n_vars
    return system(ctx, [unipoly(ctx, [0, 1])] * n, p_list)


def _by_id(guarantees, tid):
    return next(g for g in guarantees if g.theorem_id == tid)


def _example2_instance():
    ctx = field(3, 4)
    f1 = unipoly(ctx, [1, 0, 1, 1])
    f3 = unipoly(ctx, [0, 1] + [0] * 9 + [1, 0, 1])
    return system(ctx, [f1, f1, f3], [_linear_sum(ctx, 3)])


def test_example2_guarantees():
    report = verify(_example2_instance(), method="weighted")
    main = _by_id(report.guarantees, "MAIN")
    assert main.applicable and main.guaranteed_p_exponent == 1
    ineq = next(t for t in main.hypothesis_trace if t.relation == "<")
    assert (ineq.lhs, ineq.rhs) == (80, 94)
    akg = _by_id(report.guarantees, "AXKATZ_GENERAL")
    assert not akg.applicable  # 80 < omega-sum 62 fails, as it must
    assert report.count_result.count == 6669
    assert report.count_result.ord_p == 3
    assert report.violations == ()


def test_main_boundary_not_applicable():
    for q in (3, 5, 9):
        ctx = field_for_q(q)
        inst = system(ctx, [unipoly(ctx, [0, 1])],
                      [multipoly(ctx, 1, [(1, (1,))])])
        g = check_main(inst)
        assert not g.applicable  # (q-1)*1 < q-1 is false
        assert g.guaranteed_p_exponent == 0


def test_main_applicable_via_infinite_u(f9):
    # one substitution that is not weakly WSC grants the conclusion with no
    # degree hypothesis at all
    inst = system(f9, [unipoly(f9, [0, 1]), unipoly(f9, [0, 2, 0, 1])],
                  [multipoly(f9, 2, [(1, (1, 1))])])
    g = check_main(inst)
    assert g.applicable
    assert any("infinity" in t.label for t in g.hypothesis_trace)
    rep = verify(inst)
    assert rep.count_result.count == 33 and rep.violations == ()


def test_main_zero_polynomial_rejected():
    ctx = F(3)
    inst = system(ctx, [unipoly(ctx, [0, 1])] * 2,
                  [multipoly(ctx, 2, [])])
    with pytest.raises(ZeroPolynomial):
        check_main(inst)
    with pytest.raises(ZeroPolynomial):
        verify(inst)


def test_morlaye_joly_preset():
    # q = 7, three squares: sum 1/d_i = 3/2 > 1
    ctx = F(7)
    inst = _diagonal_system(ctx, [2, 2, 2], coeffs=[1, 2, 3], b=5)
    gs = all_guarantees(inst)
    mj = _by_id(gs, "MORLAYE_JOLY")
    assert mj.applicable and mj.guaranteed_p_exponent == 1
    assert _by_id(gs, "CLASSICALMAIN").applicable
    rep = verify(inst)
    assert rep.violations == () and rep.count_result.count % 7 == 0


def test_wan_preset_exponent():
    # q = 9, squares: exponent s * ceil(3/2 - 1) = 2, so 9 | count
    ctx = F(3, 2)
    inst = _diagonal_system(ctx, [2, 2, 2], coeffs=[1, 4, 7], b=3)
    wan = _by_id(all_guarantees(inst), "WAN")
    assert wan.applicable and wan.guaranteed_p_exponent == 2
    rep = verify(inst)
    assert rep.count_result.count % 9 == 0 and rep.violations == ()


def test_wan_vacuous_exponent_is_zero():
    # single variable of full gcd: ceil(1/d - 1) clamps to zero
    ctx = F(5)
    inst = _diagonal_system(ctx, [4], b=2)
    wan = _by_id(all_guarantees(inst), "WAN")
    assert wan.applicable and wan.guaranteed_p_exponent == 0


def test_axkatz_preset():
    # one quadric in three variables over F_3: exponent ceil((3-2)/2) = 1
    ctx = F(3)
    quadric = multipoly(ctx, 3, [(1, (2, 0, 0)), (2, (1, 1, 0)), (1, (0, 0, 1))])
    inst = _identity_system(ctx, [quadric])
    ax = _by_id(all_guarantees(inst), "AXKATZ")
    assert ax.applicable and ax.guaranteed_p_exponent == 1
    rep = verify(inst)
    assert rep.count_result.count % 3 == 0 and rep.violations == ()


def test_axkatz_requires_positive_degree():
    ctx = F(3)
    inst = _identity_system(ctx, [multipoly(ctx, 2, [(1, (1, 0))]),
                                  multipoly(ctx, 2, [(2, (0, 0))])])
    ax = _by_id(all_guarantees(inst), "AXKATZ")
    assert not ax.applicable


def test_moreno_general_hand_case():
    # q = 4, P = t1 t2 + t3, identities: weights 2 <= 3, exponent
    # ceil(2 * (3 - 2) / 2) = 1
    ctx = F(2, 2)
    poly = multipoly(ctx, 3, [(1, (1, 1, 0)), (1, (0, 0, 1))])
    inst = _identity_system(ctx, [poly])
    g = check_moreno_general(inst)
    assert g.applicable and g.guaranteed_p_exponent == 1
    rep = verify(inst)
    assert rep.count_result.count == 16  # x3 determined by (x1, x2)
    assert rep.violations == ()


def test_moreno_general_nonstrict_equality_applicable():
    # equality in the printed hypothesis gives a vacuous exponent of zero
    ctx = F(2, 2)
    poly = multipoly(ctx, 2, [(1, (1, 1, )), (1, (0, 1))])
    inst = _identity_system(ctx, [poly])
    g = check_moreno_general(inst)
    assert g.applicable and g.guaranteed_p_exponent == 0


def test_moreno_cor_strict():
    ctx = F(3, 2)
    inst = _diagonal_system(ctx, [2, 2, 2])
    gs = all_guarantees(inst)
    cor = _by_id(gs, "MORENO_COR")
    # d_i = 2, sigma_3(2) = 2, so sum 1/sigma = 3/2 > w = 1: exponent
    # ceil(2 * (3/2 - 1) / 1) = 1
    assert cor.applicable and cor.guaranteed_p_exponent == 1


def test_preconditions_raise_in_strict_checkers():
    ctx = F(5)
    const = unipoly(ctx, [2])
    inst = system(ctx, [const, unipoly(ctx, [0, 1])], [_linear_sum(ctx, 2)])
    with pytest.raises(PreconditionViolated):
        check_axkatz_general(inst)
    with pytest.raises(PreconditionViolated):
        check_moreno_general(inst)
    # restricting I past the constant makes them well-posed
    g = check_axkatz_general(inst, index_set([2], 2))
    assert g.theorem_id == "AXKATZ_GENERAL"
    # a system polynomial constant in the I variables trips the degree guard
    inst2 = system(ctx, [unipoly(ctx, [0, 1])] * 2,
                   [multipoly(ctx, 2, [(1, (0, 3))])])
    with pytest.raises(PreconditionViolated):
        check_axkatz_general(inst2, index_set([1], 2))


def test_soft_checkers_never_raise_preconditions():
    ctx = F(5)
    const = unipoly(ctx, [2])
    inst = system(ctx, [const, unipoly(ctx, [0, 1])], [_linear_sum(ctx, 2)])
    gs = all_guarantees(inst)
    assert len(gs) == len(THEOREM_IDS)
    assert not _by_id(gs, "AXKATZ_GENERAL").applicable


def test_specialization_identity_matches_axkatz():
    rng = random.Random(31)
    matched = 0
    for _ in range(100):
        q = rng.choice((2, 3, 4, 5, 8, 9))
        ctx = field_for_q(q)
        n = rng.randint(2, 4)
        r = rng.randint(1, 2)
        p_list = [random_multipoly(rng, ctx, n, 2) for _ in range(r)]
        if any(pj.total_degree() < 1 for pj in p_list):
            continue
        inst = _identity_system(ctx, p_list)
        gs = all_guarantees(inst)
        ax, akg = _by_id(gs, "AXKATZ"), _by_id(gs, "AXKATZ_GENERAL")
        assert ax.applicable == akg.applicable
        if ax.applicable:
            matched += 1
            assert ax.guaranteed_p_exponent == akg.guaranteed_p_exponent
    assert matched > 10


def test_specialization_diagonal_matches_wan():
    rng = random.Random(32)
    matched = 0
    for _ in range(100):
        q = rng.choice((3, 4, 5, 8, 9))
        ctx = field_for_q(q)
        n = rng.randint(1, 4)
        inst = _diagonal_system(ctx, [rng.randint(1, 2 * q) for _ in range(n)],
                                coeffs=[rng.randrange(1, q) for _ in range(n)],
                                b=rng.randrange(q))
        gs = all_guarantees(inst)
        wan, akg = _by_id(gs, "WAN"), _by_id(gs, "AXKATZ_COR")
        if akg.applicable:
            matched += 1
            assert wan.guaranteed_p_exponent == akg.guaranteed_p_exponent
        mj, cm = _by_id(gs, "MORLAYE_JOLY"), _by_id(gs, "CLASSICALMAIN")
        assert mj.applicable == cm.applicable
    assert matched > 10


def test_qdiv_requires_divisor_degree():
    ctx = F(3, 2)
    inst = system(ctx, [monomial(ctx, 2)] * 3, [_linear_sum(ctx, 3)])
    qdiv = _by_id(all_guarantees(inst), "QDIV")
    assert qdiv.applicable and qdiv.guaranteed_p_exponent == 2  # q | count
    inst2 = system(ctx, [monomial(ctx, 3)] * 3, [_linear_sum(ctx, 3)])
    qdiv2 = _by_id(all_guarantees(inst2), "QDIV")
    assert not qdiv2.applicable  # 3 does not divide 8


def test_trace_rationals_are_exact():
    ctx = F(3, 2)
    inst = _diagonal_system(ctx, [2, 2, 2])
    cor = _by_id(all_guarantees(inst), "AXKATZ_COR")
    tr = cor.hypothesis_trace[0]
    assert tr.rhs == Fraction(3, 2)
    d = cor.to_dict()
    assert d["hypothesis_trace"][0]["rhs"] == {"num": 3, "den": 2}


def test_index_monotonicity():
    rng = random.Random(33)
    for _ in range(40):
        q = rng.choice((4, 5, 9))
        ctx = field_for_q(q)
        n = 3
        inst = system(ctx, [random_unipoly(rng, ctx, 3) for _ in range(n)],
                      [random_multipoly(rng, ctx, n, 3)])
        prof = InstanceProfile(inst)
        small = index_set([1, 2], n)
        large = full_index_set(n)
        u_small = sum(prof.u(i) for i in small)
        u_large = sum(prof.u(i) for i in large)
        assert u_large >= u_small
        assert sum(prof.omega(i) for i in large) \
            >= sum(prof.omega(i) for i in small)


def test_best_guarantee_single_variable():
    ctx = F(3)
    inst = system(ctx, [unipoly(ctx, [0, 1, 1])],
                  [multipoly(ctx, 1, [(1, (1,))])])
    subset, g = best_guarantee(inst)
    assert subset.as_sorted() == (1,)


def test_constant_coordinate_forces_exclusion_for_omega_paths():
    ctx = F(3)
    const = unipoly(ctx, [1])
    t = unipoly(ctx, [0, 1])
    poly = multipoly(ctx, 3, [(1, (0, 1, 0)), (1, (0, 0, 1))])
    inst = system(ctx, [const, t, t], [poly])
    # any subset containing the constant coordinate is out for the
    # omega/weight routes; excluding it makes them applicable
    for members in ([1], [1, 2], [1, 2, 3]):
        gs = all_guarantees(inst, index_set(members, 3))
        assert not _by_id(gs, "AXKATZ_GENERAL").applicable
        assert not _by_id(gs, "MORENO_GENERAL").applicable
    gs = all_guarantees(inst, index_set([2, 3], 3))
    assert _by_id(gs, "AXKATZ_GENERAL").applicable
    assert _by_id(gs, "MORENO_GENERAL").applicable
    # the exhaustive search still finds a sound best guarantee (MAIN applies
    # to {1} alone because the constant substitution is not weakly WSC)
    subset, g = best_guarantee(inst)
    assert g.applicable and g.guaranteed_p_exponent >= 1
    rep = verify(inst, subset)
    assert rep.violations == ()


def test_best_guarantee_diagonal_prefers_full_set():
    ctx = F(3, 2)
    inst = _diagonal_system(ctx, [2, 2, 2])
    subset, g = best_guarantee(inst)
    assert g.guaranteed_p_exponent == 2
    rep = verify(inst, subset)
    assert rep.violations == ()


def test_best_guarantee_cap():
    ctx = F(2)
    n = 17
    inst = system(ctx, [unipoly(ctx, [0, 1])] * n, [_linear_sum(ctx, n)])
    with pytest.raises(CapExceeded):
        best_guarantee(inst)


def test_verify_fuzz_no_violations():
    rng = random.Random(34)
    applicable_seen = 0
    for _ in range(120):
        q = rng.choice((2, 3, 4, 5, 8, 9))
        ctx = field_for_q(q)
        n = rng.randint(1, 3)
        kind = rng.choice(("identity", "monomial", "random"))
        f_list = [random_unipoly(rng, ctx, 3, kind) for _ in range(n)]
        p_list = [random_multipoly(rng, ctx, n, 3)
                  for _ in range(rng.randint(1, 2))]
        rep = verify(system(ctx, f_list, p_list))
        assert rep.violations == ()
        applicable_seen += sum(g.applicable for g in rep.guarantees)
    assert applicable_seen > 100


def test_sharpness_deterministic_and_sound():
    ctx = F(3)
    a = search_sharpness(ctx, n=2, r=1, trials=60, seed=5)
    b = search_sharpness(ctx, n=2, r=1, trials=60, seed=5)
    assert [(h.theorem_id, h.exponent, h.count) for h in a] == \
        [(h.theorem_id, h.exponent, h.count) for h in b]
    for hit in a:
        assert hit.exponent >= 1
        res = count_system(hit.instance, "auto")
        assert res.ord_p == hit.exponent


def test_sharpness_theorem_filter():
    # x1 + x2 + x3 = 0 over F_2 has 4 solutions: the first-power guarantee
    # alone is not attained (ord = 2), but the classical Ax-Katz bound is
    ctx = F(2)
    inst = _identity_system(ctx, [_linear_sum(ctx, 3)])
    gs = all_guarantees(inst)
    assert _by_id(gs, "MAIN").guaranteed_p_exponent == 1
    assert _by_id(gs, "AXKATZ").guaranteed_p_exponent == 2
    res = count_bruteforce(inst)
    assert res.count == 4 and res.ord_p == 2


def test_sharpness_linear_q3():
    # x1 + x2 = 0 over F_3 has 3 solutions: guarantee 3^1 attained exactly
    ctx = F(3)
    inst = _identity_system(ctx, [_linear_sum(ctx, 2)])
    best = max(g.guaranteed_p_exponent for g in all_guarantees(inst)
               if g.applicable)
    res = count_bruteforce(inst)
    assert best == 1 and res.count == 3 and res.ord_p == 1
