import pytest

from krsums import genfun
from krsums.algebra import parse_algebra
from krsums.arith import LaurentPoly, RationalFunction as RF, U, Ui
from krsums.fermionic import make_instance, m_sum, n_sum
from krsums.genfun import (
    CoefficientWindow, RestrictionK, Statement, StatementNotApplicable, constant_term_cross_check,
    deformed_table, end_to_end_ps, parse_statement, ps_steps, shifted_term_failures,
    statement_applies, verify_factorization, verify_ps_identity, widened_window, z_coefficient,
    z_constant_term,
)

A1, A2 = parse_algebra("A1"), parse_algebra("A2")


def test_level_one_coefficients():
    assert z_coefficient(make_instance(A1, [0], {}, 1), (0,)) == LaurentPoly.const(1)
    assert z_coefficient(make_instance(A1, [1], {}, 1), (1,)) == LaurentPoly.var(Ui(1, 1))
    inst = make_instance(A1, [0], {1: [2]}, 1)
    assert z_coefficient(inst, (0,), phi="all") == LaurentPoly.const(n_sum(inst))


def test_empty_fiber_is_zero():
    assert z_coefficient(make_instance(A1, [1], {1: [2]}, 1), (0,)).is_zero()


@pytest.mark.parametrize("name,lam,n,k,expected", [
    ("A1", [0], {1: [4, 0]}, 2, (2, 2)),
    ("B2", [0, 0], {}, 1, (1, 1)),
    ("G2", [1, 0], {1: [1]}, 1, (1, 1)),
])
def test_constant_term_examples(name, lam, n, k, expected):
    assert constant_term_cross_check(make_instance(parse_algebra(name), lam, n, k)) == expected


def test_constant_terms_match_sums_on_b2_grid():
    spec = parse_algebra("B2")
    for l1 in range(2):
        for l2 in range(3):
            for row2 in ([0, 0], [1, 0], [0, 1], [1, 1], [2, 1]):
                inst = make_instance(spec, [l1, l2], {1: [1, 0], 2: row2}, 1 + (len(row2) > 2))
                assert z_constant_term(inst) == n_sum(inst)
                assert z_constant_term(inst, RestrictionK.ones(spec)) == m_sum(inst)


def test_overall_top_factor():
    # the dependence on u_{a, t_a k} is the overall factor u_{a, t_a k}^{l_a}
    inst = make_instance(A2, [2, 1], {1: [1, 0], 2: [0, 1]}, 2)
    for t in CoefficientWindow.box(2, -2, 2).targets():
        for exps, _ in z_coefficient(inst, t).terms():
            assert exps.get(Ui(1, 2), 0) == 2 and exps.get(Ui(2, 2), 0) == 1


def test_stabilization_in_k():
    # targets q <= 4 need strings of length <= (q + 2) / 2 <= 3
    inst = make_instance(A1, [0], {1: [2]}, 4)
    big = make_instance(A1, [0], {1: [2]}, 6)
    for q in range(-2, 5):
        assert z_coefficient(inst, (q,), phi="all") == z_coefficient(big, (q,), phi="all")


def test_statement_parsing():
    assert parse_statement("gfactorization") is Statement.SIMPLY_LACED_FACTORIZATION
    assert parse_statement("Zgone") is Statement.LEVEL_ONE
    with pytest.raises(ValueError):
        parse_statement("nope")
    assert not statement_applies(Statement.SL2_LEVEL_ONE, A2, 1)
    with pytest.raises(StatementNotApplicable):
        verify_factorization(make_instance(A2, [0, 0], {}, 1), "gfact")


def test_sl2_level_one_closed_form():
    inst = make_instance(A1, [1], {1: [2]}, 1)
    rep = verify_factorization(inst, "Zkone", CoefficientWindow(((-4, 6),)))
    assert rep.ok and rep.checked_coefficients == 11


def test_gfactorization_a2():
    inst = make_instance(A2, [1, 0], {1: [1, 0], 2: [0, 1]}, 2)
    rep = verify_factorization(inst, "gfactorization", CoefficientWindow.box(2, -4, 4))
    assert rep.ok and rep.nonzero_coefficients >= 20


def test_recursion_c2():
    inst = make_instance(parse_algebra("C2"), [0, 1], {1: [1, 0, 0, 0], 2: [0, 1]}, 2)
    rep = verify_factorization(inst, "recuZ", CoefficientWindow.box(2, -3, 3))
    assert rep.ok, rep.first_failure


def test_mutated_closed_form_is_detected(monkeypatch):
    inst = make_instance(A2, [1, 0], {1: [1], 2: [1]}, 1)
    assert verify_factorization(inst, "Zfactorized").ok
    orig = genfun.factorized_form
    monkeypatch.setattr(genfun, "factorized_form",
                        lambda table, i: orig(table, i) * (RF.one() + RF.var(Ui(1, 1))))
    assert not verify_factorization(inst, "Zfactorized").ok


def test_mutated_level_one_sign_is_detected(monkeypatch):
    inst = make_instance(A1, [0], {1: [1]}, 1)
    orig = genfun.factorized_form
    monkeypatch.setattr(genfun, "factorized_form", lambda table, i: -orig(table, i))
    rep = verify_factorization(inst, "Zkone")
    assert not rep.ok and rep.first_failure is not None


@pytest.mark.parametrize("name,lam,n,k,p", [
    ("B2", [0, 1], {1: [1], 2: [1, 0]}, 1, 1),
    ("G2", [1, 0], {1: [0], 2: [1, 0, 0]}, 1, 1),
    ("G2", [0, 1], {1: [1], 2: [0, 1, 0]}, 1, 2),
])
def test_partial_sum(name, lam, n, k, p):
    inst = make_instance(parse_algebra(name), lam, n, k)
    rep = verify_factorization(inst, "partialfactorization", p=p)
    assert rep.ok, rep.first_failure


def test_shifted_partial_sum_b2():
    inst = make_instance(parse_algebra("B2"), [1, 0], {1: [0, 1], 2: [1, 0, 0, 1]}, 2)
    rep = verify_factorization(inst, "lastZfactor", j=1, p=1)
    assert rep.ok, rep.first_failure


@pytest.mark.parametrize("name,k,j,p", [("B2", 2, 1, 1), ("G2", 1, 0, 2), ("A2", 2, 1, 0)])
def test_shifted_terms_equal_explicit_form(name, k, j, p):
    spec = parse_algebra(name)
    inst = make_instance(spec, [1] + [0] * (spec.rank - 1), {a: [1] for a in spec.nodes}, k)
    assert shifted_term_failures(deformed_table(spec, k + 1), inst, j, p) == []


def test_ps_sl2_end_to_end():
    inst = make_instance(A1, [0], {1: [4, 0]}, 2)
    rep = verify_ps_identity(inst, RestrictionK((1,)), None, "all", 6)
    assert rep.ok and rep.checked_coefficients == 7


def test_ps_negative_control():
    inst = make_instance(A1, [0], {1: [1, 1]}, 2)
    assert verify_ps_identity(inst, RestrictionK((1,)), None, "all", 6).ok
    full = CoefficientWindow(((-6, 6),))
    rep = genfun.compare_on_window(inst, RestrictionK((1,)), None, "all", full)
    assert not rep.ok
    assert rep.first_failure["target"][0] < 0


@pytest.mark.parametrize("name,k,lam,n", [
    ("A2", 2, [1, 0], {1: [1, 1], 2: [0, 1]}),
    ("G2", 1, [0, 1], {1: [1], 2: [1, 1, 0]}),
    ("B2", 2, [1, 1], {1: [0, 1], 2: [1, 0, 0, 1]}),
])
def test_ps_single_steps(name, k, lam, n):
    spec = parse_algebra(name)
    inst = make_instance(spec, lam, n, k)
    steps = ps_steps(spec, k)
    assert steps
    for step, K, K2, phi, nodes in steps:
        rep = verify_ps_identity(inst, K, K2, phi, 3)
        assert rep.ok, (step, rep.first_failure)
    assert end_to_end_ps(inst, 3).ok


def test_widened_window_reaches_count():
    inst = make_instance(A1, [0], {1: [1]}, 1)
    w = widened_window(inst)
    assert genfun.nonzero_in_window(inst, w) >= 20
    assert w.bounds[0][0] == -8


def test_single_node_ps_reading_is_too_strong():
    # PS in u_2 alone with u_1 left unrestricted fails for this G2 step;
    # the identity holds once every u_a exponent is nonnegative
    spec = parse_algebra("G2")
    inst = make_instance(spec, [0, 0], {1: [0, 1], 2: [0, 0, 0, 0, 0, 1]}, 2)
    K, K2 = RestrictionK((1, 6)), RestrictionK((1, 5))
    assert not verify_ps_identity(inst, K, K2, (1, 2), 4, ps_nodes=[2]).ok
    assert verify_ps_identity(inst, K, K2, (1, 2), 6).ok
