import pytest

from krsums.algebra import parse_algebra
from krsums.arith import A, RationalFunction as RF, U, Ui
from krsums.deformed import (
    ShiftSpec, all_shift_recursion_failures, build_deformed_table,
    build_deformed_table_by_recursion, composition_failures, deformed_t_term, evaluate_phi,
    full_specialization_failures, independence_failures, phi_failures, quadratic_failures,
    shift_substitution, t_term_list_mismatches, table_mismatches, verify_shift_recursion,
)
from krsums.qsystem import chebyshev

A1 = parse_algebra("A1")


def u(a=1, e=1):
    return RF.var(U(a), e)


def ui(a, i, e=1):
    return RF.var(Ui(a, i), e)


def test_sl2_level_two():
    table = build_deformed_table(A1, 3)
    assert table.get(1, 0) == RF.one()
    assert table.get(1, 1) == u(1, -1)
    assert table.get(1, 2) == (u(1, -2) - RF.one()) / ui(1, 1)


@pytest.mark.parametrize("name", ["A2", "A3", "D4"])
def test_simply_laced_level_two(name):
    spec = parse_algebra(name)
    table = build_deformed_table(spec, 2)
    for a in spec.nodes:
        prod = RF.one()
        for b in spec.nodes:
            prod = prod * u(b, spec.C(b, a))
        assert table.get(a, 2) == (RF.one() - prod) / (u(a, 2) * ui(a, 1))


def test_g2_t_term_prefactor():
    table = build_deformed_table(parse_algebra("G2"), 1)
    assert deformed_t_term(table, 2, 1, 1) == RF.var(A(1), 2) * u(1, -1)


def test_shift_sl2():
    table = build_deformed_table(A1, 3)
    sub = shift_substitution(table, 1)
    assert sub[U(1)] == u(1, 2) * ui(1, 1) / (RF.one() - u(1, 2))
    assert sub[U(1)] == table.get(1, 2).inverse()
    assert sub[Ui(1, 2)] == ui(1, 3)
    assert shift_substitution(table, ShiftSpec.make(A1, 0, 0)) == {}


def test_shift_spec_tau():
    b3 = parse_algebra("B3")
    assert ShiftSpec.make(b3, 2, 1).tau == {1: 2, 2: 2, 3: 5}
    with pytest.raises(ValueError):
        ShiftSpec.make(b3, 1, 2)
    with pytest.raises(ValueError):
        ShiftSpec.make(b3, -1)


@pytest.mark.parametrize("name,depth,k,j", [("A1", 4, 2, 1), ("A2", 4, 2, 2), ("G2", 2, 1, 1)])
def test_shift_recursion_examples(name, depth, k, j):
    table = build_deformed_table(parse_algebra(name), depth)
    assert verify_shift_recursion(table, k, j)


@pytest.mark.parametrize("name,depth", [("A1", 5), ("A2", 3), ("B2", 2), ("C2", 2), ("G2", 2), ("B3", 2)])
def test_table_consistency(name, depth):
    spec = parse_algebra(name)
    table = build_deformed_table(spec, depth)
    assert quadratic_failures(table) == []
    assert table_mismatches(table, build_deformed_table_by_recursion(spec, depth)) == []
    assert all_shift_recursion_failures(table) == []
    assert full_specialization_failures(table) == []
    assert independence_failures(table) == []


@pytest.mark.parametrize("name", ["B2", "B3", "C2", "C3", "F4", "G2"])
def test_listed_deformed_t_terms(name):
    assert t_term_list_mismatches(build_deformed_table(parse_algebra(name), 2)) == []


def test_composition_sl2():
    table = build_deformed_table(A1, 5)
    assert composition_failures(table, 1, 1) == []
    assert composition_failures(table, 1, 2) == []


def test_phi_sl2_chebyshev():
    table = build_deformed_table(A1, 4)
    images = evaluate_phi(table, 2)
    us = chebyshev(3)
    for i in (1, 2):
        want = RF.from_poly(us[i].substitute_monomials({v: RF.var(U(1), -1).as_poly() for v in us[1].variables()}))
        assert images[(1, i)] == want
    want3 = RF.from_poly(us[3].substitute_monomials({v: RF.var(U(1), -1).as_poly() for v in us[1].variables()}))
    assert images[(1, 3)] == want3 / ui(1, 2)


@pytest.mark.parametrize("name,j,p", [("A2", 1, 0), ("A2", 2, 0), ("B2", 1, 0), ("B2", 0, 1), ("B2", 1, 1),
                                      ("G2", 0, 1), ("G2", 0, 2), ("C3", 1, 1)])
def test_phi_against_classical(name, j, p):
    table = build_deformed_table(parse_algebra(name), 2)
    assert phi_failures(table, j, p) == []


def test_phi_out_of_range():
    with pytest.raises(ValueError):
        evaluate_phi(build_deformed_table(parse_algebra("B2"), 1), 0, 2)
