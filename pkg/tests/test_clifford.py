import pytest

from twistorp1.clifford import (
    AlgebraType,
    CliffordAlgebra,
    classify,
    classify_oracle,
    complexify,
    construct,
    sbr_class,
)
from twistorp1.errors import DomainError, ResourceError

# the eightfold periodicity tables
TABLE_S = [
    "M1(R)", "M1(C)", "M1(H)", "M1(H)+M1(H)",
    "M2(H)", "M4(C)", "M8(R)", "M8(R)+M8(R)", "M16(R)",
]
TABLE_R = [
    "M1(R)", "M1(R)+M1(R)", "M2(R)", "M2(C)",
    "M2(H)", "M2(H)+M2(H)", "M4(H)", "M8(C)", "M16(R)",
]


class TestStructure:
    @pytest.mark.parametrize("r,s", [(0, 0), (1, 0), (0, 1), (2, 1), (1, 3), (3, 2)])
    def test_relations(self, r, s):
        assert construct(r, s).verify_relations()

    def test_basis_product_signs(self):
        alg = CliffordAlgebra(1, 1)
        e1, e2 = 1, 2
        s12, m12 = alg.basis_product(e1, e2)
        s21, m21 = alg.basis_product(e2, e1)
        assert m12 == m21 == 3
        assert s12 == -s21

    def test_resource_limit(self):
        with pytest.raises(ResourceError):
            construct(7, 7)

    def test_negative_rejected(self):
        with pytest.raises(DomainError):
            construct(-1, 2)


class TestClassification:
    @pytest.mark.parametrize("s,expected", list(enumerate(TABLE_S)))
    def test_negative_definite_table(self, s, expected):
        assert str(classify(0, s)) == expected

    @pytest.mark.parametrize("r,expected", list(enumerate(TABLE_R)))
    def test_positive_definite_table(self, r, expected):
        assert str(classify(r, 0)) == expected

    def test_oracle_agreement(self):
        for n in range(7):
            for r in range(n + 1):
                assert classify(r, n - r) == classify_oracle(r, n - r)

    def test_real_dimension(self):
        for n in range(11):
            for r in range(n + 1):
                assert classify(r, n - r).real_dim == 2**n

    def test_mod8_dependence(self):
        seen = {}
        for n in range(11):
            for r in range(n + 1):
                t = classify(r, n - r)
                key = sbr_class(r, n - r)
                base = (t.division, t.doubled)
                assert seen.setdefault(key, base) == base


class TestComplexification:
    def test_even_odd(self):
        for n in range(9):
            for r in range(n + 1):
                t = complexify(r, n - r)
                assert t.division == "C"
                assert t.doubled == (n % 2 == 1)
                if n % 2 == 0:
                    assert t.matrix_size == 2 ** (n // 2)

    def test_type_string(self):
        assert str(AlgebraType("H", 2)) == "M2(H)"
        assert str(AlgebraType("R", 1, doubled=True)) == "M1(R)+M1(R)"
