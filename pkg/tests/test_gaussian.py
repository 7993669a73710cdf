from fractions import Fraction

import pytest

from twistorp1.errors import DomainError
from twistorp1.gaussian import GaussianRational, QuadSurd, parse_gaussian
from twistorp1.linalg import intersection_dim, rank, row_space_equal, rref


class TestGaussianRational:
    def test_field_axioms_samples(self):
        i = GaussianRational.i()
        assert i * i == -1
        x = GaussianRational(Fraction(2, 3), Fraction(-1, 5))
        assert x * x.inverse() == 1
        assert (x + i) - i == x

    def test_conjugate_norm(self):
        x = GaussianRational(3, 4)
        assert x.norm() == 25
        assert x * x.conjugate() == GaussianRational(25)

    def test_parse(self):
        assert parse_gaussian("2/3") == GaussianRational(Fraction(2, 3))
        assert parse_gaussian("1+2*i") == GaussianRational(1, 2)
        assert parse_gaussian("-i") == GaussianRational(0, -1)
        assert parse_gaussian("3-1/2*i") == GaussianRational(3, Fraction(-1, 2))
        assert parse_gaussian("5*i") == GaussianRational(0, 5)

    def test_zero_division(self):
        with pytest.raises(DomainError):
            GaussianRational(0, 0).inverse()


class TestQuadSurd:
    def test_arithmetic(self):
        x = QuadSurd(1, 1, 2)  # 1 + sqrt(2)
        assert x * x == QuadSurd(3, 2, 2)
        assert x * x.inverse() == QuadSurd(1, 0, 2)
        assert x.norm() == -1

    def test_mixed_fields_rejected(self):
        with pytest.raises(DomainError):
            QuadSurd(1, 1, 2) + QuadSurd(1, 1, 3)


class TestLinalg:
    def test_rref_rank(self):
        rows = [
            [Fraction(1), Fraction(2), Fraction(3)],
            [Fraction(2), Fraction(4), Fraction(6)],
            [Fraction(0), Fraction(1), Fraction(1)],
        ]
        reduced, pivots = rref(rows)
        assert len(reduced) == 2 and pivots == [0, 1]
        assert rank(rows) == 2

    def test_row_space_equal(self):
        a = [[Fraction(1), Fraction(0)], [Fraction(0), Fraction(1)]]
        b = [[Fraction(1), Fraction(1)], [Fraction(1), Fraction(-1)]]
        assert row_space_equal(a, b)
        assert not row_space_equal(a, [[Fraction(1), Fraction(1)]])

    def test_intersection_dim(self):
        a = [[Fraction(1), Fraction(0), Fraction(0)], [Fraction(0), Fraction(1), Fraction(0)]]
        b = [[Fraction(0), Fraction(1), Fraction(0)], [Fraction(0), Fraction(0), Fraction(1)]]
        assert intersection_dim(a, b) == 1

    def test_gaussian_entries(self):
        i = GaussianRational.i()
        one = GaussianRational(1)
        assert rank([[one, i], [i, -one]]) == 1
