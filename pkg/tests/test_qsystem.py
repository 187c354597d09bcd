import pytest

from krsums.algebra import parse_algebra
from krsums.arith import LaurentPoly, T, render
from krsums.oracle import CharacterElement, weyl_character
from krsums.qsystem import (
    MissingLevel, QSystemTable, chebyshev, chebyshev_check, explicit_t_term, solve_q_system,
    specialize_to_ones, t_term,
)


def tv(a, e=1):
    return LaurentPoly.var(T(a), e)


def test_sl2_entries():
    table = solve_q_system(parse_algebra("A1"), 3)
    assert table.get(1, 2) == tv(1, 2) - 1
    assert table.get(1, 3) == tv(1, 3) - 2 * tv(1)
    assert render(table.get(1, 3), {T(1): "t"}) == "t^3 - 2*t"


def test_a2_level_two():
    table = solve_q_system(parse_algebra("A2"), 2)
    assert table.get(1, 2) == tv(1, 2) - tv(2)
    # dimension check: Q_{1,2} at T(1)=3, T(2)=3 is 6
    assert table.get(1, 2).eval_int({T(1): 3, T(2): 3}) == 6


def test_b2_order():
    table = solve_q_system(parse_algebra("B2"), 2)
    assert table.get(2, 2) == tv(2, 2) - tv(1)
    assert table.get(1, 2) == tv(1, 2) - tv(2, 2) + tv(1)
    # the short entry is solved before the long one that depends on it
    assert table.order.index((2, 2)) < table.order.index((1, 2))


def test_t_term_examples():
    b2 = solve_q_system(parse_algebra("B2"), 2)
    assert t_term(b2, 1, 1) == b2.get(2, 2)
    assert t_term(b2, 2, 1) == tv(1)
    g2 = solve_q_system(parse_algebra("G2"), 3)
    assert t_term(g2, 1, 2) == g2.get(2, 6)


def test_missing_level_names_entry():
    table = QSystemTable(parse_algebra("A2"))
    with pytest.raises(MissingLevel) as err:
        t_term(table, 1, 2)
    assert (err.value.node, err.value.level) == (2, 2)


def test_rejects_zero_level():
    with pytest.raises(ValueError):
        solve_q_system(parse_algebra("A1"), 0)


def test_chebyshev():
    us = chebyshev(3)
    assert us[0] == LaurentPoly.const(1) and us[1] == tv(1)
    assert us[2] * us[2] - us[1] * us[3] == LaurentPoly.const(1)
    assert chebyshev_check(6)


def test_sl2_dimensions():
    table = solve_q_system(parse_algebra("A1"), 8)
    for j in range(9):
        assert specialize_to_ones(table.get(1, j)) == [1, 1, 0, -1, -1, 0, 1, 1, 0][j]
        assert table.get(1, j).eval_int({T(1): 2}) == j + 1


@pytest.mark.parametrize("name,depth", [("B2", 3), ("B3", 2), ("C2", 3), ("C3", 2), ("F4", 2), ("G2", 2)])
def test_floor_formula_matches_listed_t_terms(name, depth):
    spec = parse_algebra(name)
    table = solve_q_system(spec, depth)
    checked = 0
    for a in spec.nodes:
        for j in range(1, spec.t_of(a) * depth):
            prod = LaurentPoly.const(1)
            try:
                for b in spec.neighbors(a):
                    prod = prod * explicit_t_term(table, a, b, j)
            except MissingLevel:
                continue
            assert t_term(table, a, j) == prod, (a, j)
            checked += 1
    assert checked


def _push_to_characters(spec, poly):
    chars = {a: weyl_character(spec, tuple(int(b == a) for b in spec.nodes)) for a in spec.nodes}
    out = CharacterElement()
    for exps, c in poly.terms():
        term = CharacterElement({(0,) * spec.rank: c})
        for v, e in exps.items():
            assert e > 0
            for _ in range(e):
                term = term * chars[v.index[0]]
        out = out + term
    return out


@pytest.mark.parametrize("name,depth", [("A1", 4), ("A2", 3), ("A3", 2)])
def test_type_a_entries_are_kr_characters(name, depth):
    spec = parse_algebra(name)
    table = solve_q_system(spec, depth)
    for a in spec.nodes:
        for i in range(1, depth + 1):
            lam = tuple(i * int(b == a) for b in spec.nodes)
            assert _push_to_characters(spec, table.get(a, i)) == weyl_character(spec, lam)
