from fractions import Fraction

import pytest

from krsums.algebra import (
    InvalidAlgebra, all_supported, build_algebra, cartan_inverse, cartan_inverse_times,
    parse_algebra,
)


def test_a1():
    s = build_algebra("A", 1)
    assert s.cartan == ((2,),) and s.t == (1,)


def test_b2():
    s = build_algebra("B", 2)
    assert s.cartan == ((2, -1), (-2, 2))
    assert s.t == (1, 2)
    assert (s.gamma, s.gamma_prime) == (1, 2)


def test_g2():
    s = build_algebra("G", 2)
    assert s.cartan == ((2, -1), (-3, 2))
    assert s.t == (1, 3)
    assert (s.gamma, s.gamma_prime) == (1, 2)


def test_gamma_pairs():
    assert (parse_algebra("B4").gamma, parse_algebra("B4").gamma_prime) == (3, 4)
    assert (parse_algebra("C3").gamma, parse_algebra("C3").gamma_prime) == (3, 2)
    assert (parse_algebra("F4").gamma, parse_algebra("F4").gamma_prime) == (2, 3)
    assert parse_algebra("F4").t == (1, 1, 2, 2)
    assert parse_algebra("C3").t == (2, 2, 1)


@pytest.mark.parametrize("name,v,expected", [("A1", [2], [1]), ("A2", [1, 1], [1, 1]), ("B2", [0, 0], [0, 0])])
def test_cartan_inverse_times(name, v, expected):
    assert cartan_inverse_times(parse_algebra(name), v) == [Fraction(x) for x in expected]


@pytest.mark.parametrize("fam,rank", [("B", 1), ("C", 1), ("D", 2), ("E", 5), ("E", 9), ("F", 3), ("G", 3), ("A", 0), ("H", 2)])
def test_invalid_pairs_rejected(fam, rank):
    with pytest.raises(InvalidAlgebra):
        build_algebra(fam, rank)


def test_rank_cap_is_configurable():
    with pytest.raises(InvalidAlgebra):
        build_algebra("A", 9)
    assert build_algebra("A", 9, max_rank=9).rank == 9


def test_parse_rejects_garbage():
    with pytest.raises(InvalidAlgebra):
        parse_algebra("X2")


@pytest.mark.parametrize("spec", all_supported(8), ids=lambda s: s.name)
def test_invariants_every_family(spec):
    inv = cartan_inverse(spec)
    for a in spec.nodes:
        assert spec.C(a, a) == 2
        for b in spec.nodes:
            assert Fraction(spec.C(a, b), spec.t_of(a)) == Fraction(spec.C(b, a), spec.t_of(b))
            assert (b in spec.neighbors(a)) == (a in spec.neighbors(b))
            assert inv[a - 1][b - 1] > 0
    if spec.family in "ADE":
        assert spec.simply_laced
    else:
        assert spec.C(spec.gamma, spec.gamma_prime) == -1
