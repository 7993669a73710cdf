"""The generalized quaternion algebra (a,b/F).

The 4x4 multiplication table is derived once per algebra from the two
generator relations i^2 = a, j^2 = b, ij = -ji (with k := ij) by word
rewriting, and cached; nothing about the table is hard-coded.

Elements are generic over the coefficient arithmetic: rationals, p-adic
elements, Gaussian rationals or quadratic surds all work, as long as they
support +, -, * with each other and with Fractions.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .errors import DomainError

_BASIS_WORDS = ((), ("i",), ("j",), ("i", "j"))
_BASIS_NAMES = ("1", "i", "j", "k")


def _reduce_word(word):
    """Normalize a word in {i,j} using ji -> -ij, ii -> a, jj -> b.

    Returns (sign, a_power, b_power, canonical_basis_index).
    """
    letters = list(word)
    sign, ea, eb = 1, 0, 0
    changed = True
    while changed:
        changed = False
        for t in range(len(letters) - 1):
            x, y = letters[t], letters[t + 1]
            if x == y:
                if x == "i":
                    ea += 1
                else:
                    eb += 1
                del letters[t : t + 2]
                changed = True
                break
            if x == "j" and y == "i":
                letters[t], letters[t + 1] = "i", "j"
                sign = -sign
                changed = True
                break
    idx = _BASIS_WORDS.index(tuple(letters))
    return sign, ea, eb, idx


@dataclass(frozen=True)
class QuaternionAlgebra:
    """(a,b/F) with i^2 = a, j^2 = b, ij = -ji = k."""

    a: Fraction
    b: Fraction
    field: str = "Q"  # descriptive tag: "Q", "R", or "Qp:<p>"

    def __post_init__(self):
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))
        if self.a == 0 or self.b == 0:
            raise DomainError("a and b must be invertible")
        table = {}
        for s, t in product(range(4), repeat=2):
            sign, ea, eb, idx = _reduce_word(_BASIS_WORDS[s] + _BASIS_WORDS[t])
            table[s, t] = (sign * self.a**ea * self.b**eb, idx)
        object.__setattr__(self, "_table", table)

    def element(self, t, x=0, y=0, z=0) -> "QuatElement":
        return QuatElement(self, (t, x, y, z))

    def one(self) -> "QuatElement":
        return self.element(Fraction(1))

    def i(self) -> "QuatElement":
        return self.element(0, Fraction(1))

    def j(self) -> "QuatElement":
        return self.element(0, 0, Fraction(1))

    def k(self) -> "QuatElement":
        return self.element(0, 0, 0, Fraction(1))


HAMILTON_Q = QuaternionAlgebra(Fraction(-1), Fraction(-1), "Q")


class QuatElement:
    """t + x i + y j + z k in a fixed QuaternionAlgebra."""

    __slots__ = ("algebra", "coeffs")

    def __init__(self, algebra: QuaternionAlgebra, coeffs):
        self.algebra = algebra
        self.coeffs = tuple(coeffs)
        if len(self.coeffs) != 4:
            raise DomainError("quaternion needs 4 coefficients")

    def _check(self, other: "QuatElement"):
        if other.algebra is not self.algebra and other.algebra != self.algebra:
            raise DomainError("elements of different quaternion algebras")

    def __add__(self, other: "QuatElement") -> "QuatElement":
        self._check(other)
        return QuatElement(self.algebra, [u + v for u, v in zip(self.coeffs, other.coeffs)])

    def __neg__(self) -> "QuatElement":
        return QuatElement(self.algebra, [-u for u in self.coeffs])

    def __sub__(self, other: "QuatElement") -> "QuatElement":
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, QuatElement):
            return QuatElement(self.algebra, [u * other for u in self.coeffs])
        self._check(other)
        table = self.algebra._table
        out = [None, None, None, None]
        for s in range(4):
            cs = self.coeffs[s]
            for t in range(4):
                term = cs * other.coeffs[t]
                factor, idx = table[s, t]
                term = term * factor
                out[idx] = term if out[idx] is None else out[idx] + term
        return QuatElement(self.algebra, out)

    def __rmul__(self, other):
        return QuatElement(self.algebra, [other * u for u in self.coeffs])

    def conj(self) -> "QuatElement":
        t, x, y, z = self.coeffs
        return QuatElement(self.algebra, (t, -x, -y, -z))

    def norm(self):
        """q * conj(q) = t^2 - a x^2 - b y^2 + a b z^2, as a scalar."""
        t, x, y, z = self.coeffs
        a, b = self.algebra.a, self.algebra.b
        return t * t - a * (x * x) - b * (y * y) + (a * b) * (z * z)

    def scalar_part(self):
        return self.coeffs[0]

    def is_zero(self) -> bool:
        return not any(_nonzero(c) for c in self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, QuatElement):
            return NotImplemented
        return self.algebra == other.algebra and all(
            not _nonzero(u - v) for u, v in zip(self.coeffs, other.coeffs)
        )

    def __hash__(self):
        return hash((self.algebra.a, self.algebra.b, self.coeffs))

    def __repr__(self):
        parts = [f"{c}*{n}" for c, n in zip(self.coeffs, _BASIS_NAMES)]
        return "(" + " + ".join(parts) + ")"


def _nonzero(c) -> bool:
    if hasattr(c, "definitely_nonzero"):
        return c.definitely_nonzero()
    if hasattr(c, "is_zero_at_precision"):
        return not c.is_zero_at_precision()
    return bool(c)


def quat_mul(q1: QuatElement, q2: QuatElement) -> QuatElement:
    return q1 * q2


def quat_conj(q: QuatElement) -> QuatElement:
    return q.conj()


def quat_norm(q: QuatElement):
    return q.norm()


def find_zero_divisor_rational(alg: QuaternionAlgebra, bound: int = 12):
    """A nonzero norm-0 element with integer coefficients of height <= bound.

    Enumerates primitive 4-tuples by increasing max-norm; returns None when
    none exists within the bound (not a proof of division).
    """
    a, b = alg.a, alg.b
    for h in range(1, bound + 1):
        rng = range(-h, h + 1)
        for t, x, y, z in product(rng, repeat=4):
            if max(abs(t), abs(x), abs(y), abs(z)) != h:
                continue
            from math import gcd

            if gcd(gcd(abs(t), abs(x)), gcd(abs(y), abs(z))) != 1:
                continue
            if t * t - a * x * x - b * y * y + a * b * z * z == 0:
                return alg.element(Fraction(t), Fraction(x), Fraction(y), Fraction(z))
    return None
