"""Exact scalar arithmetic.

Arbitrary-precision rationals (``fractions.Fraction``), places of the
rationals, p-adic valuations and norms, Legendre symbols, square testing in
completions, Hensel lifting, p-adic elements with tracked precision, and
quadratic extensions of the p-adic fields.

Precision model: a :class:`PAdic` value is known modulo ``p**(base + rel)``.
Arithmetic propagates the worst-case precision; operations that would need
digits beyond what is carried raise :class:`PrecisionError` instead of
guessing.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import sympy

from .errors import DomainError, NoLiftError, PrecisionError

DEFAULT_PRECISION = 8

RationalLike = int | Fraction


@lru_cache(maxsize=None)
def is_prime(n: int) -> bool:
    return bool(sympy.isprime(n))


@lru_cache(maxsize=None)
def factorint(n: int) -> tuple[tuple[int, int], ...]:
    """Prime factorization of ``|n|`` as a sorted tuple of (prime, exponent)."""
    if n == 0:
        raise DomainError("cannot factor zero")
    return tuple(sorted(sympy.factorint(abs(n)).items()))


def squarefree_part(x: Fraction | int) -> Fraction:
    """The canonical square-class representative of a nonzero rational.

    Signed product of the primes appearing to an odd power; x / squarefree_part(x)
    is a square.
    """
    x = Fraction(x)
    if x == 0:
        raise DomainError("zero has no square class")
    out = -1 if x < 0 else 1
    for n in (x.numerator, x.denominator):
        for p, e in factorint(n):
            if e % 2:
                out *= p
    return Fraction(out)


@dataclass(frozen=True)
class Place:
    """A place of the rationals: a finite prime or the infinite place."""

    p: int | None = None

    def __post_init__(self):
        if self.p is not None and not is_prime(self.p):
            raise DomainError(f"{self.p} is not prime")

    @classmethod
    def infinite(cls) -> "Place":
        return cls(None)

    @classmethod
    def finite(cls, p: int) -> "Place":
        return cls(p)

    @classmethod
    def parse(cls, text: str) -> "Place":
        if text in ("inf", "oo", "infinity"):
            return cls.infinite()
        try:
            p = int(text)
        except ValueError as exc:
            raise DomainError(f"bad place {text!r}") from exc
        return cls.finite(p)

    @property
    def is_finite(self) -> bool:
        return self.p is not None

    def __str__(self) -> str:
        return "inf" if self.p is None else str(self.p)


def parse_rational(text: str) -> Fraction:
    """Parse the CLI rational literal ``-?[0-9]+(/[0-9]+)?``."""
    try:
        f = Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise DomainError(f"bad rational literal {text!r}") from exc
    return f


def padic_valuation(x: RationalLike, p: int) -> tuple[int, Fraction]:
    """v_p(x) together with the unit u such that x = p**a * u.

    Raises :class:`DomainError` for x = 0 (the valuation is +infinity there;
    callers must branch).
    """
    if not is_prime(p):
        raise DomainError(f"{p} is not prime")
    x = Fraction(x)
    if x == 0:
        raise DomainError("valuation of zero is +infinity")
    a = 0
    num, den = x.numerator, x.denominator
    while num % p == 0:
        num //= p
        a += 1
    while den % p == 0:
        den //= p
        a -= 1
    return a, x / Fraction(p) ** a


def padic_norm(x: RationalLike, p: int) -> Fraction:
    """|x|_p = p**(-v_p(x)); |0|_p = 0."""
    x = Fraction(x)
    if x == 0:
        if not is_prime(p):
            raise DomainError(f"{p} is not prime")
        return Fraction(0)
    a, _ = padic_valuation(x, p)
    return Fraction(1, p**a) if a >= 0 else Fraction(p ** (-a))


def legendre_symbol(a: int, p: int) -> int:
    """Legendre symbol (a/p) for odd prime p, by the Euler criterion."""
    if not is_prime(p) or p == 2:
        raise DomainError("legendre_symbol needs an odd prime")
    r = pow(a % p, (p - 1) // 2, p)
    if r == 0:
        return 0
    return 1 if r == 1 else -1


def unit_residue(x: Fraction, p: int, modulus: int) -> int:
    """The p-adic unit x as a residue modulo ``modulus`` (a power of p)."""
    num, den = x.numerator, x.denominator
    if num % p == 0 or den % p == 0:
        raise DomainError(f"{x} is not a p-adic unit at {p}")
    return num * pow(den, -1, modulus) % modulus


def is_square(x, place: Place) -> bool:
    """Whether x is a square in the completion at ``place``.

    Accepts a rational or a :class:`PAdic` (whose prime must match the place).
    """
    if isinstance(x, PAdic):
        if not place.is_finite or place.p != x.p:
            raise DomainError("place does not match p-adic element")
        v = x.valuation  # raises on (indistinguishable-from-)zero
        if v % 2:
            return False
        u = x.unit_residue(3 if x.p == 2 else 1)
        return u % 8 == 1 if x.p == 2 else legendre_symbol(u, x.p) == 1
    x = Fraction(x)
    if x == 0:
        raise DomainError("is_square of zero")
    if not place.is_finite:
        return x > 0
    p = place.p
    a, u = padic_valuation(x, p)
    if a % 2:
        return False
    if p == 2:
        return unit_residue(u, 2, 8) == 1
    return legendre_symbol(unit_residue(u, p, p), p) == 1


def _poly_eval(coeffs: list[int], x: int) -> int:
    acc = 0
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _poly_deriv(coeffs: list[int]) -> list[int]:
    return [i * c for i, c in enumerate(coeffs)][1:]


def _int_valuation(n: int, p: int) -> int:
    if n == 0:
        raise DomainError("valuation of zero")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def hensel_lift(coeffs: list[int], r: int, p: int, k: int) -> int:
    """Lift an approximate root of an integer polynomial to a root mod p**k.

    ``coeffs`` lists the coefficients in ascending degree order.  Uses the
    general (possibly singular) criterion: with t = v_p(f'(r)), requires
    f(r) = 0 mod p**(2t+1).  Returns r* = r mod p**(t+1) with f(r*) = 0
    mod p**k.  Raises :class:`NoLiftError` when the criterion fails.
    """
    if not is_prime(p):
        raise DomainError(f"{p} is not prime")
    if k < 1:
        raise DomainError("target precision must be >= 1")
    deriv = _poly_deriv(coeffs)
    fr = _poly_eval(coeffs, r)
    dr = _poly_eval(deriv, r)
    if fr == 0:
        return r % p**k
    if dr == 0:
        raise NoLiftError("derivative vanishes identically at the root")
    t = _int_valuation(dr, p)
    if _int_valuation(fr, p) < 2 * t + 1:
        raise NoLiftError(
            f"Hensel criterion fails: v(f(r))={_int_valuation(fr, p)} < 2t+1={2 * t + 1}"
        )
    work = p ** (k + 2 * t + 1)
    for _ in range(k.bit_length() + 40):
        fr = _poly_eval(coeffs, r) % work
        if fr % p**k == 0:
            break
        dr = _poly_eval(deriv, r)
        dunit = dr // p**t
        delta = (fr // p**t) * pow(dunit % work, -1, work) % work
        r = (r - delta) % work
    result = r % p**k
    if _poly_eval(coeffs, result) % p**k != 0:
        raise NoLiftError("lifting failed to converge")
    return result


def sqrt_mod_p(u: int, p: int) -> int:
    """A square root of u modulo p by exhaustive search (oracle-grade)."""
    u %= p
    for w in range(p):
        if w * w % p == u:
            return w
    raise DomainError(f"{u} is not a square mod {p}")


def padic_sqrt(x: Fraction, p: int, prec: int = DEFAULT_PRECISION) -> "PAdic":
    """Square root of a rational inside Q_p, as a PAdic at relative precision prec."""
    x = Fraction(x)
    if not is_square(x, Place.finite(p)):
        raise DomainError(f"{x} is not a square in Q_{p}")
    a, u = padic_valuation(x, p)
    # (den*w)^2 = num*den for the unit part u = num/den.
    n, d = u.numerator, u.denominator
    target = n * d
    work = prec + (4 if p == 2 else 2)
    if p == 2:
        r0 = 1
    else:
        r0 = sqrt_mod_p(target, p)
    root = hensel_lift([-target, 0, 1], r0, p, work)
    w = Fraction(root, d)
    val = PAdic.from_rational(w, p, work) * PAdic.from_rational(
        Fraction(p) ** (a // 2), p, work
    )
    return val


class PAdic:
    """An element of Q_p carried at explicit finite precision.

    Internally ``p**base * res`` with ``res`` known modulo ``p**rel``;
    the element is therefore known modulo ``p**(base+rel)``.  ``res`` may be
    divisible by p (e.g. after a cancelling addition); :meth:`valuation`
    normalizes and raises :class:`PrecisionError` when the element is
    indistinguishable from zero at the carried precision.
    """

    __slots__ = ("p", "base", "res", "rel", "exact_zero")

    def __init__(self, p: int, base: int, res: int, rel: int, exact_zero: bool = False):
        if not is_prime(p):
            raise DomainError(f"{p} is not prime")
        if rel < 1 and not exact_zero:
            raise PrecisionError("no significant digits left")
        self.p = p
        self.exact_zero = exact_zero
        if exact_zero:
            self.base, self.res, self.rel = 0, 0, 0
        else:
            self.base = base
            self.rel = rel
            self.res = res % p**rel

    @classmethod
    def zero(cls, p: int) -> "PAdic":
        return cls(p, 0, 0, 0, exact_zero=True)

    @classmethod
    def from_rational(
        cls, x: RationalLike, p: int, prec: int = DEFAULT_PRECISION
    ) -> "PAdic":
        x = Fraction(x)
        if x == 0:
            return cls.zero(p)
        a, u = padic_valuation(x, p)
        return cls(p, a, unit_residue(u, p, p**prec), prec)

    # -- structure ---------------------------------------------------------

    def _normalized(self) -> "PAdic":
        if self.exact_zero or self.res == 0:
            return self
        s = _int_valuation(self.res, self.p)
        if s == 0:
            return self
        if self.rel - s < 1:
            raise PrecisionError("all carried digits cancelled")
        return PAdic(self.p, self.base + s, self.res // self.p**s, self.rel - s)

    @property
    def abs_precision(self) -> int:
        return self.base + self.rel

    @property
    def valuation(self) -> int:
        if self.exact_zero:
            raise DomainError("valuation of exact zero is +infinity")
        if self.res == 0:
            raise PrecisionError(
                "element indistinguishable from zero at carried precision"
            )
        return self._normalized().base

    @property
    def precision(self) -> int:
        """Relative precision N: the element is known modulo p**(valuation+N)."""
        return self.abs_precision - self.valuation

    def unit_residue(self, ndigits: int) -> int:
        """The unit part modulo p**ndigits."""
        n = self._normalized()
        if n.exact_zero or n.res == 0:
            raise PrecisionError("no unit part available")
        if ndigits > n.rel:
            raise PrecisionError(f"only {n.rel} digits carried, {ndigits} requested")
        return n.res % self.p**ndigits

    @property
    def unit_digits(self) -> list[int]:
        """Base-p digits of the unit part, little-endian."""
        n = self._normalized()
        r = n.res
        out = []
        for _ in range(n.rel):
            out.append(r % self.p)
            r //= self.p
        return out

    def is_zero_at_precision(self) -> bool:
        """True when no carried digit distinguishes the element from zero."""
        return self.exact_zero or self.res == 0

    def definitely_nonzero(self) -> bool:
        return not self.is_zero_at_precision()

    # -- arithmetic --------------------------------------------------------

    def _coerce(self, other) -> "PAdic":
        if isinstance(other, PAdic):
            if other.p != self.p:
                raise DomainError("mixed primes in p-adic arithmetic")
            return other
        if isinstance(other, (int, Fraction)):
            return PAdic.from_rational(other, self.p, max(self.rel, 1) + 2)
        return NotImplemented  # type: ignore[return-value]

    def __add__(self, other) -> "PAdic":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.exact_zero:
            return other
        if other.exact_zero:
            return self
        m = min(self.abs_precision, other.abs_precision)
        base = min(self.base, other.base)
        rel = m - base
        if rel < 1:
            raise PrecisionError("addition has no significant digits")
        mod = self.p**rel
        r = (
            self.res * self.p ** (self.base - base)
            + other.res * self.p ** (other.base - base)
        ) % mod
        return PAdic(self.p, base, r, rel)

    __radd__ = __add__

    def __neg__(self) -> "PAdic":
        if self.exact_zero:
            return self
        return PAdic(self.p, self.base, -self.res % self.p**self.rel, self.rel)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other) -> "PAdic":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.exact_zero or other.exact_zero:
            return PAdic.zero(self.p)
        a, b = self._normalized(), other._normalized()
        if a.res == 0 and b.res == 0:
            return PAdic(self.p, a.base + b.base, 0, a.rel + b.rel)
        if a.res == 0:
            return PAdic(self.p, a.base + b.base, 0, a.rel)
        if b.res == 0:
            return PAdic(self.p, a.base + b.base, 0, b.rel)
        rel = min(a.rel, b.rel)
        return PAdic(self.p, a.base + b.base, a.res * b.res, rel)

    __rmul__ = __mul__

    def inverse(self) -> "PAdic":
        if self.exact_zero:
            raise DomainError("division by exact zero")
        n = self._normalized()
        if n.res == 0:
            raise PrecisionError("cannot invert element indistinguishable from zero")
        mod = self.p**n.rel
        return PAdic(self.p, -n.base, pow(n.res, -1, mod), n.rel)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def same(self, other) -> bool:
        """Agreement modulo the coarser of the two carried precisions."""
        other = self._coerce(other)
        diff = self - other if not (self.exact_zero and other.exact_zero) else None
        return True if diff is None else diff.is_zero_at_precision()

    def __repr__(self) -> str:
        if self.exact_zero:
            return f"PAdic(0; p={self.p})"
        if self.res == 0:
            return f"PAdic(O({self.p}^{self.abs_precision}))"
        n = self._normalized()
        return (
            f"PAdic({n.res}*{self.p}^{n.base} + O({self.p}^{self.abs_precision}))"
        )


@lru_cache(maxsize=None)
def nonsquare_unit(p: int) -> Fraction:
    """The canonical non-square unit at p.

    Odd p: the smallest positive non-residue.  p = 2: 5 (a representative of
    the unit square classes {1,3,5,7} mod 8 other than 1; the three-extension
    statement is only asserted for odd p).
    """
    if p == 2:
        return Fraction(5)
    for u in range(2, p):
        if legendre_symbol(u, p) == -1:
            return Fraction(u)
    raise DomainError(f"{p} is not an odd prime")


class QuadExt:
    """x + y*sqrt(d) with x, y in Q_p and d a verified non-square."""

    __slots__ = ("p", "d", "x", "y")

    def __init__(self, p: int, d: Fraction, x: PAdic, y: PAdic):
        d = Fraction(d)
        if is_square(d, Place.finite(p)):
            raise DomainError(f"{d} is a square in Q_{p}; not a quadratic extension")
        if x.p != p or y.p != p:
            raise DomainError("coordinate prime mismatch")
        self.p, self.d, self.x, self.y = p, d, x, y

    @classmethod
    def from_rationals(
        cls,
        p: int,
        d: Fraction,
        x: RationalLike,
        y: RationalLike,
        prec: int = DEFAULT_PRECISION,
    ) -> "QuadExt":
        return cls(
            p, Fraction(d), PAdic.from_rational(x, p, prec), PAdic.from_rational(y, p, prec)
        )

    def _coerce(self, other) -> "QuadExt":
        if isinstance(other, QuadExt):
            if other.p != self.p or other.d != self.d:
                raise DomainError("mixed quadratic extensions")
            return other
        if isinstance(other, (int, Fraction)):
            return QuadExt(
                self.p,
                self.d,
                PAdic.from_rational(other, self.p, DEFAULT_PRECISION + 2),
                PAdic.zero(self.p),
            )
        if isinstance(other, PAdic):
            return QuadExt(self.p, self.d, other, PAdic.zero(self.p))
        raise DomainError(f"cannot coerce {other!r} into QuadExt")

    def __add__(self, other):
        o = self._coerce(other)
        return QuadExt(self.p, self.d, self.x + o.x, self.y + o.y)

    __radd__ = __add__

    def __neg__(self):
        return QuadExt(self.p, self.d, -self.x, -self.y)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        x = self.x * o.x + self.d * (self.y * o.y)
        y = self.x * o.y + self.y * o.x
        return QuadExt(self.p, self.d, x, y)

    __rmul__ = __mul__

    def conjugate(self) -> "QuadExt":
        return QuadExt(self.p, self.d, self.x, -self.y)

    def norm(self) -> PAdic:
        return self.x * self.x - self.d * (self.y * self.y)

    def is_zero_at_precision(self) -> bool:
        return self.x.is_zero_at_precision() and self.y.is_zero_at_precision()

    def same(self, other) -> bool:
        o = self._coerce(other)
        return (self - o).is_zero_at_precision()

    def __repr__(self):
        return f"({self.x!r}) + ({self.y!r})*sqrt({self.d})"
