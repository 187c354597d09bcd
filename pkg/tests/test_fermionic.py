import random

import pytest
from hypothesis import given, settings, strategies as st

from krsums.algebra import parse_algebra
from krsums.oracle import stable_level
from krsums.fermionic import (
    ShapeError, compute_vacancy_data, enumerate_zero_spin_configs, m_sum, m_sum_reference,
    make_instance, n_sum, n_sum_reference, verify_q_recurrences,
)

A1, A2 = parse_algebra("A1"), parse_algebra("A2")


def test_vacancy_level_one():
    inst = make_instance(A1, [0], {1: [2]}, 1)
    v = compute_vacancy_data(inst, ((1,),))
    assert v.q_alpha == (0,)
    assert v.p == ((0,),)
    assert v.q == ((0,),)


def test_vacancy_level_two():
    inst = make_instance(A1, [0], {1: [4, 0]}, 2)
    v = compute_vacancy_data(inst, ((0, 1),))
    assert v.q_alpha == (0,)
    assert v.p == ((2, 0),)


@pytest.mark.parametrize("name,k", [("A2", 1), ("B2", 2), ("G2", 1), ("C3", 1)])
def test_vacancy_empty_sums(name, k):
    spec = parse_algebra(name)
    lam = list(range(1, spec.rank + 1))
    inst = make_instance(spec, lam, {}, k)
    m = tuple((0,) * inst.row_length(a) for a in spec.nodes)
    v = compute_vacancy_data(inst, m)
    assert list(v.q_alpha) == lam
    assert all(x == 0 for row in v.p for x in row)
    assert all(row == (lam[a],) * len(row) for a, row in enumerate(v.q))


def test_shape_mismatch_rejected():
    inst = make_instance(A1, [0], {1: [2]}, 1)
    with pytest.raises(ShapeError):
        compute_vacancy_data(inst, ((1, 0),))
    with pytest.raises(ShapeError):
        make_instance(A1, [0], [(1, 2, 3)], 1)
    with pytest.raises(ShapeError):
        make_instance(A1, [-1], {}, 1)


def test_enumerate_examples():
    inst = make_instance(A1, [0], {1: [4, 0]}, 2)
    assert sorted(enumerate_zero_spin_configs(inst, False)) == [((0, 1),), ((2, 0),)]
    assert list(enumerate_zero_spin_configs(make_instance(A1, [1], {1: [2]}, 1), False)) == []
    empty = make_instance(A2, [0, 0], {}, 2)
    assert list(enumerate_zero_spin_configs(empty, True)) == [((0, 0), (0, 0))]


@pytest.mark.parametrize("spec,lam,n,k,expected", [
    (A1, [0], {1: [2]}, 1, 1),
    (A1, [0], {1: [4, 0]}, 2, 2),
    (A1, [2], {1: [2]}, 1, 1),
    (A2, [0, 1], {1: [2]}, 1, 1),
])
def test_sum_examples(spec, lam, n, k, expected):
    inst = make_instance(spec, lam, n, k)
    assert n_sum(inst) == expected
    assert m_sum(inst) == expected


@pytest.mark.parametrize("name,k", [("A2", 2), ("B2", 2), ("C2", 1), ("G2", 1), ("B3", 1)])
def test_fast_sums_match_reference(name, k):
    spec = parse_algebra(name)
    rng = random.Random(7)
    for _ in range(15):
        lam = [rng.randint(0, 2) for _ in spec.nodes]
        n = {a: [rng.randint(0, 1) for _ in range(spec.t_of(a) * k)] for a in spec.nodes}
        inst = make_instance(spec, lam, n, k)
        assert m_sum(inst) == m_sum_reference(inst)
        assert n_sum(inst) == n_sum_reference(inst)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 3), st.lists(st.integers(0, 3), min_size=1, max_size=3))
def test_sl2_n_sum_stable_under_padding(l, row):
    k = max(len(row), stable_level(A1, [l], {1: row}))
    a = make_instance(A1, [l], {1: row}, k)
    b = make_instance(A1, [l], {1: row}, k + 2)
    assert n_sum(a) == n_sum(b)
    assert m_sum(a) == n_sum(a)


@pytest.mark.parametrize("name,k", [("A2", 2), ("B2", 2), ("C2", 1), ("G2", 1)])
def test_vacancy_invariants_on_enumerated_configs(name, k):
    spec = parse_algebra(name)
    inst = make_instance(spec, [1] * spec.rank, {a: [1] for a in spec.nodes}, k)
    for m in enumerate_zero_spin_configs(inst, False):
        v = compute_vacancy_data(inst, m)
        for a in spec.nodes:
            row = v.q[a - 1]
            assert row[-1] == inst.lam[a - 1]
            assert all(qq == pp + v.q_alpha[a - 1] for qq, pp in zip(row, v.p[a - 1]))


def _random_config(spec, rng):
    k = rng.randint(1, 3)
    lam = [rng.randint(0, 3) for _ in spec.nodes]
    n = {a: [rng.randint(0, 2) for _ in range(spec.t_of(a) * k)] for a in spec.nodes}
    inst = make_instance(spec, lam, n, k)
    m = tuple(tuple(rng.randint(0, 2) for _ in range(inst.row_length(a))) for a in spec.nodes)
    return inst, m


@pytest.mark.parametrize("name", ["A2", "A3", "D4"])
def test_q_recurrences_simply_laced(name):
    spec = parse_algebra(name)
    rng = random.Random(name)
    for _ in range(200):
        inst, m = _random_config(spec, rng)
        assert verify_q_recurrences(inst, m)["ok"]


def test_q_recurrences_trivial_config():
    spec = parse_algebra("B3")
    inst = make_instance(spec, [1, 2, 3], {}, 2)
    m = tuple((0,) * inst.row_length(a) for a in spec.nodes)
    assert verify_q_recurrences(inst, m) == {"ok": True, "failures": []}
