"""Real Clifford algebras Cliff(r, s) and their classification.

The algebra is represented exactly on the 2^(r+s) basis of products of
generators (bitmask-indexed).  Classification is done two independent ways:

* :func:`classify_oracle` inspects the algebra itself: the center determines
  simplicity / complex structure, and the signature of the trace form
  T(x) = tr(L_x R_x-like diagonal) on the canonical basis separates the real,
  complex and quaternionic matrix types.
* :func:`classify` uses the dimension-shift recursions
  Cliff(r+1, s+1) = Cliff(r, s) (x) M2(R),
  Cliff(r+2, s) = Cliff(s, r) (x) M2(R),
  Cliff(r, s+2) = Cliff(s, r) (x) H,
  with small base cases taken from the oracle.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import DomainError, ResourceError

MAX_GENERATORS = 12


@dataclass(frozen=True)
class AlgebraType:
    """M_m(D) or M_m(D) + M_m(D) with D in {R, C, H}."""

    division: str  # "R", "C", or "H"
    matrix_size: int
    doubled: bool = False

    def __str__(self) -> str:
        core = f"M{self.matrix_size}({self.division})"
        return f"{core}+{core}" if self.doubled else core

    @property
    def real_dim(self) -> int:
        d = {"R": 1, "C": 2, "H": 4}[self.division]
        dim = d * self.matrix_size**2
        return 2 * dim if self.doubled else dim


def _popcount_between(mask: int, i: int) -> int:
    """Number of set bits in mask strictly above bit i."""
    return (mask >> (i + 1)).bit_count()


class CliffordAlgebra:
    """Cliff(r, s): r generators squaring to +1, then s squaring to -1.

    Elements are dicts basis-mask -> Fraction; the basis element for a mask
    is the ordered product of the generators whose bits are set.
    """

    def __init__(self, r: int, s: int):
        if r < 0 or s < 0:
            raise DomainError("signature must be nonnegative")
        if r + s > MAX_GENERATORS:
            raise ResourceError(
                f"Cliff({r},{s}) needs 2^{r+s} basis elements; limit is 2^{MAX_GENERATORS}"
            )
        self.r, self.s = r, s
        self.n = r + s
        self.dim = 1 << self.n

    def generator_square(self, i: int) -> int:
        return 1 if i < self.r else -1

    def basis_product(self, a: int, b: int) -> tuple[int, int]:
        """(sign, mask) of e_a * e_b for basis masks a, b."""
        sign = 1
        for i in range(self.n):
            if b >> i & 1:
                # move generator i of b leftwards past the tail of a
                sign *= -1 if _popcount_between(a, i) % 2 else 1
                if a >> i & 1:
                    sign *= self.generator_square(i)
        return sign, a ^ b

    def multiply(self, x: dict, y: dict) -> dict:
        out: dict[int, Fraction] = {}
        for a, ca in x.items():
            if not ca:
                continue
            for b, cb in y.items():
                if not cb:
                    continue
                sign, m = self.basis_product(a, b)
                out[m] = out.get(m, Fraction(0)) + sign * ca * cb
        return {m: c for m, c in out.items() if c}

    def generator(self, i: int) -> dict:
        if not 0 <= i < self.n:
            raise DomainError("generator index out of range")
        return {1 << i: Fraction(1)}

    def unit(self) -> dict:
        return {0: Fraction(1)}

    def basis_square_sign(self, mask: int) -> int:
        sign, m = self.basis_product(mask, mask)
        assert m == 0
        return sign

    def commutes_with_generators(self, mask: int) -> bool:
        """Whether the basis element e_mask commutes with every generator."""
        for i in range(self.n):
            g = 1 << i
            s1, m1 = self.basis_product(mask, g)
            s2, m2 = self.basis_product(g, mask)
            assert m1 == m2
            if s1 != s2:
                return False
        return True

    def center_basis(self) -> list[int]:
        return [m for m in range(self.dim) if self.commutes_with_generators(m)]

    def verify_relations(self) -> bool:
        """e_i e_j + e_j e_i = 0 (i != j), e_i^2 = +-1 as declared."""
        for i in range(self.n):
            gi = self.generator(i)
            sq = self.multiply(gi, gi)
            if sq != {0: Fraction(self.generator_square(i))}:
                return False
            for j in range(i + 1, self.n):
                gj = self.generator(j)
                anti = self.multiply(gi, gj)
                for m, c in self.multiply(gj, gi).items():
                    anti[m] = anti.get(m, Fraction(0)) + c
                if any(anti.values()):
                    return False
        return True


def construct(r: int, s: int) -> CliffordAlgebra:
    return CliffordAlgebra(r, s)


def classify_oracle(r: int, s: int) -> AlgebraType:
    """Classification read off the algebra itself.

    The center is spanned by 1 (simple) or by {1, omega} with omega the top
    basis element.  omega^2 = +1 splits the algebra into two factors;
    omega^2 = -1 makes it complex.  For the real-vs-quaternionic question on
    (each factor of) the algebra, the signature tau of the canonical trace
    form x -> sum over basis of sign(e^2) separates M_m(R) (tau = m^2... > 0)
    from M_m(H) (tau < 0): tau equals the signature of the reduced trace form,
    positive for split type and negative for quaternionic type.
    """
    alg = CliffordAlgebra(r, s)
    center = alg.center_basis()
    tau = sum(alg.basis_square_sign(m) for m in range(alg.dim))
    if len(center) == 1:
        if tau > 0:
            m2 = alg.dim
            m = _isqrt_exact(m2)
            return AlgebraType("R", m)
        if tau < 0:
            m = _isqrt_exact(alg.dim // 4)
            return AlgebraType("H", m)
        # simple with tau = 0 cannot occur for R or H type
        m = _isqrt_exact(alg.dim // 2)
        return AlgebraType("C", m)
    if len(center) != 2:
        raise DomainError("unexpected center dimension")
    omega = max(center)
    if alg.basis_square_sign(omega) == 1:
        half = tau // 2
        if half > 0:
            m = _isqrt_exact(alg.dim // 2)
            return AlgebraType("R", m, doubled=True)
        if half < 0:
            m = _isqrt_exact(alg.dim // 8)
            return AlgebraType("H", m, doubled=True)
        raise DomainError("split algebra with vanishing component trace form")
    return AlgebraType("C", _isqrt_exact(alg.dim // 2))


def _isqrt_exact(n: int) -> int:
    from math import isqrt

    m = isqrt(n)
    if m * m != n:
        raise DomainError(f"{n} is not a perfect square")
    return m


_TENSOR_M2 = {"R": ("R", 2), "C": ("C", 2), "H": ("H", 2)}


def _tensor_m2r(t: AlgebraType) -> AlgebraType:
    return AlgebraType(t.division, 2 * t.matrix_size, t.doubled)


def _tensor_h(t: AlgebraType) -> AlgebraType:
    # D (x) H over R: R->H, H->M4(R)... careful: H (x) H = M4(R); C (x) H = M2(C)
    if t.division == "R":
        return AlgebraType("H", t.matrix_size, t.doubled)
    if t.division == "H":
        return AlgebraType("R", 4 * t.matrix_size, t.doubled)
    return AlgebraType("C", 2 * t.matrix_size, t.doubled)


@lru_cache(maxsize=None)
def classify(r: int, s: int) -> AlgebraType:
    """Cliff(r, s) type via the standard recursions (works for all r, s >= 0)."""
    if r < 0 or s < 0:
        raise DomainError("signature must be nonnegative")
    if r + s <= 2:
        return classify_oracle(r, s)
    if r >= 1 and s >= 1:
        return _tensor_m2r(classify(r - 1, s - 1))
    if r >= 2:
        return _tensor_m2r(classify(s, r - 2))
    return _tensor_h(classify(s - 2, r))  # here s >= 2 and r in {0, 1}


def complexify_type(t: AlgebraType) -> AlgebraType:
    """Type of the complexification C (x) M_m(D) (doubling collapses/forms)."""
    if t.doubled:
        base = complexify_type(AlgebraType(t.division, t.matrix_size))
        return AlgebraType("C", base.matrix_size, doubled=True)
    if t.division == "R":
        return AlgebraType("C", t.matrix_size)
    if t.division == "H":
        return AlgebraType("C", 2 * t.matrix_size)
    return AlgebraType("C", t.matrix_size, doubled=True)


def complexify(r: int, s: int) -> AlgebraType:
    """The complex Clifford algebra type: M_{2^k}(C) for even r+s, doubled
    for odd, depending only on r + s."""
    return complexify_type(classify(r, s))


def sbr_class(r: int, s: int) -> int:
    """The mod-8 residue (s - r) mod 8 that determines the type."""
    return (s - r) % 8
