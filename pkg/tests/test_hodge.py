import random
from fractions import Fraction

import pytest

from twistorp1.errors import DomainError
from twistorp1.gaussian import GaussianRational
from twistorp1.hodge import (
    EquivariantTwistorStructure,
    PureHodgeStructure,
    TwistorBundleType,
    descent_obstruction,
    from_equivariant,
    hodge_numbers,
    random_pure_structure,
    to_equivariant,
    to_twistor,
    validate_pure,
)

I = GaussianRational(0, 1)
ONE = GaussianRational(1)


def elliptic_curve_h1():
    # weight 1 on C^2: F^1 spanned by (1, i), generic against its conjugate
    return PureHodgeStructure.make(2, 1, {1: [[ONE, I]]})


class TestPureStructures:
    def test_elliptic_example(self):
        h = elliptic_curve_h1()
        ok, bad = validate_pure(h)
        assert ok and bad is None
        assert hodge_numbers(h) == {(1, 0): 1, (0, 1): 1}

    def test_weight_zero(self):
        h = PureHodgeStructure.make(3, 0, {0: [[1, 0, 0], [0, 1, 0], [0, 0, 1]]})
        assert validate_pure(h)[0]
        assert hodge_numbers(h) == {(0, 0): 3}

    def test_impure_detected(self):
        # F^1 spanned by a real vector equals its own conjugate: purity fails
        h = PureHodgeStructure.make(2, 1, {1: [[1, 0]]})
        ok, bad = validate_pure(h)
        assert not ok and bad == 1
        with pytest.raises(DomainError):
            hodge_numbers(h)

    def test_non_nested_rejected(self):
        with pytest.raises(DomainError):
            PureHodgeStructure.make(2, 2, {2: [[1, 0]], 1: [[0, 1]]})

    def test_basis_of_extremes(self):
        h = elliptic_curve_h1()
        assert len(h.basis_of(-3)) == 2
        assert h.basis_of(5) == []
        assert h.dim_f(1) == 1

    def test_random_structures_pure(self):
        rng = random.Random(77)
        for n, w in [(2, 1), (3, 2), (4, 3), (4, 2), (2, 0), (6, 1)]:
            h = random_pure_structure(n, w, rng)
            assert validate_pure(h)[0]
            nums = hodge_numbers(h)
            assert sum(nums.values()) == n
            for (p, q), d in nums.items():
                assert p + q == w
                assert nums[(q, p)] == d

    def test_odd_weight_odd_dim_rejected(self):
        with pytest.raises(DomainError):
            random_pure_structure(3, 1, random.Random(0))


class TestTwistorSide:
    def test_even_weight_type(self):
        h = PureHodgeStructure.make(2, 2, {2: [[ONE, I]], 0: [[1, 0], [0, 1]]})
        t = to_twistor(h)
        assert t.summands == ((Fraction(1), 2),)
        assert t.rank == 2 and t.degree == 2

    def test_odd_weight_type(self):
        t = to_twistor(elliptic_curve_h1())
        assert t.summands == ((Fraction(1, 2), 1),)
        assert t.rank == 2 and t.degree == 1

    def test_bundle_algebra(self):
        a = TwistorBundleType.make([(1, 2), (Fraction(3, 2), 1)])
        assert a.rank == 4 and a.degree == 5
        assert a.dual().degree == -5
        assert (a + a).rank == 8
        assert a.slope_total == Fraction(5, 4)

    def test_bad_slope_rejected(self):
        with pytest.raises(DomainError):
            TwistorBundleType.make([(Fraction(1, 3), 1)])


class TestEquivariantRoundTrip:
    def test_round_trip_examples(self):
        h = elliptic_curve_h1()
        eq = to_equivariant(h)
        assert from_equivariant(eq) == hodge_numbers(h)

    def test_round_trip_random(self):
        rng = random.Random(123)
        for _ in range(25):
            n = rng.randint(1, 5)
            w = rng.randint(0, 4)
            if w % 2 and n % 2:
                n += 1
            h = random_pure_structure(n, w, rng)
            eq = to_equivariant(h)
            assert from_equivariant(eq) == hodge_numbers(h)

    def test_asymmetric_weights_rejected(self):
        t = TwistorBundleType.make([(Fraction(1, 2), 1)])
        eq = EquivariantTwistorStructure.make(t, 1, [(1, 2)])
        with pytest.raises(DomainError):
            from_equivariant(eq)


class TestDescent:
    def test_sign_alternates_with_parity(self):
        for d in range(-4, 5):
            assert descent_obstruction(d) == (1 if d % 2 == 0 else -1)
