from fractions import Fraction
from itertools import product

import pytest

from twistorp1.errors import DomainError
from twistorp1.quaternion import QuaternionAlgebra
from twistorp1.rationals import Place, nonsquare_unit
from twistorp1.symbols import (
    DIVISION,
    SPLIT,
    brauer_class,
    brauer_mul,
    classify_quaternion,
    conic_point,
    find_zero_divisor,
    galois_conjugate,
    hilbert_reciprocity,
    hilbert_symbol,
    hilbert_symbol_oracle,
    is_fixed,
    quadratic_reciprocity,
    relevant_places,
)

INF = Place.infinite()


class TestClosedForms:
    def test_infinite_place(self):
        assert hilbert_symbol(-1, -1, INF) == -1
        assert hilbert_symbol(-1, 2, INF) == 1
        assert hilbert_symbol(3, 5, INF) == 1

    def test_known_values(self):
        assert hilbert_symbol(-1, -1, Place.finite(2)) == -1
        assert hilbert_symbol(-1, -1, Place.finite(3)) == 1
        assert hilbert_symbol(3, 2, Place.finite(3)) == -1
        assert hilbert_symbol(2, 7, Place.finite(7)) == 1

    def test_bilinearity_in_square_classes(self):
        vals = [Fraction(v) for v in (-6, -1, 2, 3, 5, 30)]
        for place in (INF, Place.finite(2), Place.finite(3), Place.finite(5)):
            for a, b, c in product(vals, repeat=3):
                assert hilbert_symbol(a * b, c, place) == hilbert_symbol(
                    a, c, place
                ) * hilbert_symbol(b, c, place)

    def test_symmetry_and_square_invariance(self):
        for place in (INF, Place.finite(2), Place.finite(5)):
            for a, b in product([Fraction(-3), Fraction(2), Fraction(10)], repeat=2):
                assert hilbert_symbol(a, b, place) == hilbert_symbol(b, a, place)
                assert hilbert_symbol(a * 9, b, place) == hilbert_symbol(a, b, place)

    def test_zero_rejected(self):
        with pytest.raises(DomainError):
            hilbert_symbol(0, 1, Place.finite(3))


class TestOracle:
    @pytest.mark.parametrize("p", [2, 3, 5, 7])
    def test_oracle_agrees(self, p):
        vals = [Fraction(v) for v in (-10, -5, -2, -1, 1, 2, 3, 6, 7)] + [
            Fraction(1, 2),
            Fraction(-3, 5),
            Fraction(p),
            Fraction(-p) * 3,
        ]
        for a, b in product(vals, repeat=2):
            assert hilbert_symbol(a, b, Place.finite(p)) == hilbert_symbol_oracle(
                a, b, p
            ), (a, b, p)


class TestReciprocity:
    def test_product_formula(self):
        for a in range(-12, 13):
            for b in range(-12, 13):
                if a and b:
                    assert hilbert_reciprocity(a, b)[1] == 1

    def test_relevant_places(self):
        places = relevant_places(Fraction(6), Fraction(-5))
        assert INF in places
        assert {v.p for v in places if v.is_finite} == {2, 3, 5}

    def test_quadratic_reciprocity(self):
        for p, q in [(3, 5), (3, 7), (5, 7), (11, 13), (7, 19)]:
            rec = quadratic_reciprocity(p, q)
            assert rec.holds
        with pytest.raises(DomainError):
            quadratic_reciprocity(2, 5)


class TestBrauer:
    def test_hamilton_ramification(self):
        cls = brauer_class(-1, -1)
        assert {str(v) for v in cls.ramified} == {"2", "inf"}

    def test_even_ramification_and_group_law(self):
        pairs = [(-1, -1), (3, 2), (5, -1), (7, -14)]
        for a, b in pairs:
            assert len(brauer_class(a, b).ramified) % 2 == 0
        c1, c2 = brauer_class(-1, -1), brauer_class(-1, -1)
        assert brauer_mul(c1, c2).is_trivial()

    def test_classify(self):
        assert classify_quaternion(-1, -1, INF) == DIVISION
        assert classify_quaternion(1, 1, INF) == SPLIT


class TestConicPoints:
    @pytest.mark.parametrize(
        "a,b,p", [(1, 1, 3), (-1, 2, 2), (2, 7, 7), (-1, 5, 5), (6, -5, 3)]
    )
    def test_split_padic_points(self, a, b, p):
        place = Place.finite(p)
        assert hilbert_symbol(a, b, place) == 1
        pt = conic_point(a, b, place)
        assert pt.conic_value().is_zero_at_precision()

    def test_division_base_returns_none(self):
        assert conic_point(3, 2, Place.finite(3)) is None
        assert conic_point(-1, -1, INF) is None

    @pytest.mark.parametrize("p,a,b", [(3, 3, 2), (5, 5, 2), (7, 7, 3), (2, -1, -1)])
    def test_extension_points(self, p, a, b):
        place = Place.finite(p)
        assert hilbert_symbol(a, b, place) == -1
        d = nonsquare_unit(p) if p != 2 else Fraction(-1)
        pt = conic_point(a, b, place, extension=d, prec=8)
        assert pt.conic_value().is_zero_at_precision()
        conj = galois_conjugate(pt)
        assert conj.conic_value().is_zero_at_precision()
        assert not is_fixed(pt)

    def test_real_points(self):
        pt = conic_point(2, 3, INF)
        assert pt.conic_value() == 0 or not pt.conic_value()
        pt = conic_point(-1, -1, INF, extension=-1)
        assert not pt.conic_value()
        assert not is_fixed(pt)


class TestZeroDivisorDispatch:
    def test_local_split(self):
        zd = find_zero_divisor(QuaternionAlgebra(-1, -1, "Qp:3"))
        assert zd is not None and zd.norm().is_zero_at_precision()

    def test_local_division(self):
        assert find_zero_divisor(QuaternionAlgebra(-1, -1, "Qp:2")) is None
        assert find_zero_divisor(QuaternionAlgebra(-1, -1, "R")) is None

    def test_real_split(self):
        zd = find_zero_divisor(QuaternionAlgebra(2, 3, "R"))
        assert zd is not None
        assert not zd.norm()
