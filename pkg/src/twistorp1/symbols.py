"""Local-global engine.

Hilbert symbols at every place of Q (closed forms from local field theory),
an independent brute-force conic oracle that validates them, quaternion
classification, 2-torsion Brauer bookkeeping, Hilbert and quadratic
reciprocity, explicit conic points over completions and their quadratic
extensions, and the Galois action on extension points.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import count, product
from math import gcd

from .errors import DomainError, PrecisionError, ResourceError
from .gaussian import QuadSurd
from .quaternion import QuaternionAlgebra
from .rationals import (
    DEFAULT_PRECISION,
    PAdic,
    Place,
    QuadExt,
    factorint,
    is_square,
    legendre_symbol,
    nonsquare_unit,
    padic_sqrt,
    padic_valuation,
    squarefree_part,
    unit_residue,
)

SPLIT = "Split"
DIVISION = "Division"


def _check_nonzero(a: Fraction, b: Fraction):
    if a == 0 or b == 0:
        raise DomainError("Hilbert symbol arguments must be nonzero")


def hilbert_symbol(a, b, place: Place) -> int:
    """(a,b)_v in {+1,-1}: +1 iff -a x^2 - b y^2 + a b z^2 = 0 has a point
    over the completion at v, equivalently iff (a,b/F) splits."""
    a, b = Fraction(a), Fraction(b)
    _check_nonzero(a, b)
    if not place.is_finite:
        return -1 if (a < 0 and b < 0) else 1
    p = place.p
    alpha, u = padic_valuation(a, p)
    beta, v = padic_valuation(b, p)
    if p == 2:
        ur = unit_residue(u, 2, 8)
        vr = unit_residue(v, 2, 8)
        eps_u, eps_v = (ur - 1) // 2 % 2, (vr - 1) // 2 % 2
        om_u, om_v = (ur * ur - 1) // 8 % 2, (vr * vr - 1) // 8 % 2
        e = eps_u * eps_v + alpha * om_v + beta * om_u
        return -1 if e % 2 else 1
    lu = legendre_symbol(unit_residue(u, p, p), p)
    lv = legendre_symbol(unit_residue(v, p, p), p)
    sign = -1 if (alpha * beta * ((p - 1) // 2)) % 2 else 1
    return sign * lu**beta * lv**alpha


# ---------------------------------------------------------------------------
# Brute-force oracle
# ---------------------------------------------------------------------------


def _squarefree_int(x: Fraction) -> int:
    """An integer in the square class of x."""
    sf = squarefree_part(x)
    assert sf.denominator == 1
    return sf.numerator


def _strip_even_powers(c: int, p: int) -> int:
    while c % (p * p) == 0:
        c //= p * p
    return c


def _int_val(n: int, p: int) -> int:
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def _brute_pairs_mod_p(coeffs, p) -> bool:
    """Whether sum(c_i x_i^2) = 0 mod p has a solution with (x_i) != 0 mod p."""
    n = len(coeffs)
    for xs in product(range(p), repeat=n):
        if all(x == 0 for x in xs):
            continue
        if sum(c * x * x for c, x in zip(coeffs, xs)) % p == 0:
            return True
    return False


def isotropic_oracle_odd(coeffs: list[int], p: int) -> bool:
    """Diagonal form sum(c_i x_i^2) isotropic over Q_p, odd p, by brute force.

    Per-variable square scaling reduces every v_p(c_i) to {0,1}; primitive
    solutions are then detected mod p at two descent levels.  Found solutions
    are nonsingular mod p and lift by Hensel; the two-level descent exhausts
    all primitivity patterns (further substitution reproduces level 0).
    """
    if p == 2:
        raise DomainError("odd-p oracle called at p = 2")
    cs = [_strip_even_powers(c, p) for c in coeffs]
    if all(c % p == 0 for c in cs):
        cs = [c // p for c in cs]
    units = [c for c in cs if c % p != 0]
    nonunits = [c // p for c in cs if c % p == 0]
    if units and _brute_pairs_mod_p(units, p):
        return True
    if nonunits and _brute_pairs_mod_p(nonunits, p):
        return True
    return False


def isotropic_oracle_two(coeffs: list[int], k: int = 6) -> bool:
    """Diagonal form isotropic over Q_2: search primitive triples mod 2^k.

    After per-variable reduction the gradient valuation at any primitive
    point is <= 2, so a zero mod 2^6 certifies a liftable solution and a
    genuine 2-adic zero reduces to one.  The last variable is solved through
    a precomputed square table rather than enumerated.
    """
    cs = [_strip_even_powers(c, 2) for c in coeffs]
    if all(c % 2 == 0 for c in cs):
        cs = [c // 2 for c in cs]
    mod = 1 << k
    last = cs[-1]
    table: dict[int, list[int]] = {}
    for z in range(mod):
        table.setdefault(last * z * z % mod, []).append(z)
    head = cs[:-1]
    for xs in product(range(mod), repeat=len(head)):
        r = -sum(c * x * x for c, x in zip(head, xs)) % mod
        for z in table.get(r, ()):
            if any(x % 2 for x in xs) or z % 2:
                return True
    return False


@lru_cache(maxsize=None)
def _oracle_cached(a_sf: int, b_sf: int, p: int) -> int:
    coeffs = [-a_sf, -b_sf, a_sf * b_sf]
    if p == 2:
        found = isotropic_oracle_two(coeffs)
    else:
        found = isotropic_oracle_odd(coeffs, p)
    return 1 if found else -1


def hilbert_symbol_oracle(a, b, p: int) -> int:
    """Independent brute-force value of (a,b)_p via conic solvability."""
    a, b = Fraction(a), Fraction(b)
    _check_nonzero(a, b)
    return _oracle_cached(_squarefree_int(a), _squarefree_int(b), p)


# ---------------------------------------------------------------------------
# Classification, Brauer classes, reciprocity
# ---------------------------------------------------------------------------


def classify_quaternion(a, b, place: Place) -> str:
    return SPLIT if hilbert_symbol(a, b, place) == 1 else DIVISION


def relevant_places(a, b) -> list[Place]:
    """Infinity, 2, and the primes dividing numerator*denominator of a or b."""
    primes = {2}
    for x in (Fraction(a), Fraction(b)):
        for n in (x.numerator, x.denominator):
            primes.update(p for p, _ in factorint(n))
    return [Place.infinite()] + [Place.finite(p) for p in sorted(primes)]


@dataclass(frozen=True)
class BrauerClass2:
    """A 2-torsion Brauer class as its finite set of ramified places."""

    ramified: frozenset[Place]

    def __mul__(self, other: "BrauerClass2") -> "BrauerClass2":
        return BrauerClass2(self.ramified ^ other.ramified)

    def is_trivial(self) -> bool:
        return not self.ramified


def brauer_class(a, b) -> BrauerClass2:
    a, b = Fraction(a), Fraction(b)
    _check_nonzero(a, b)
    ram = frozenset(
        v for v in relevant_places(a, b) if hilbert_symbol(a, b, v) == -1
    )
    return BrauerClass2(ram)


def brauer_mul(c1: BrauerClass2, c2: BrauerClass2) -> BrauerClass2:
    return c1 * c2


def hilbert_reciprocity(a, b) -> tuple[dict[Place, int], int]:
    """Local symbols at every relevant place and their product (always +1)."""
    a, b = Fraction(a), Fraction(b)
    _check_nonzero(a, b)
    symbols = {v: hilbert_symbol(a, b, v) for v in relevant_places(a, b)}
    prod = 1
    for s in symbols.values():
        prod *= s
    return symbols, prod


@dataclass(frozen=True)
class ReciprocityRecord:
    p: int
    q: int
    legendre_product: int  # legendre(p,q) * legendre(q,p)
    sign_formula: int  # (-1)^((p-1)(q-1)/4)
    from_hilbert: int  # product of (p,q)_v over v != p, q
    holds: bool


def quadratic_reciprocity(p: int, q: int) -> ReciprocityRecord:
    """Gauss reciprocity evaluated three ways: Euler criteria, the sign
    formula, and re-derived from the Hilbert product formula."""
    if p == q or p == 2 or q == 2:
        raise DomainError("need distinct odd primes")
    lhs = legendre_symbol(p, q) * legendre_symbol(q, p)
    rhs = -1 if ((p - 1) * (q - 1) // 4) % 2 else 1
    symbols, prod = hilbert_reciprocity(Fraction(p), Fraction(q))
    if prod != 1:
        raise DomainError("Hilbert product formula violated (internal error)")
    # product over all places = 1 forces legendre(q,p)*legendre(p,q) to equal
    # the product of the remaining symbols
    other = 1
    for v, s in symbols.items():
        if v.is_finite and v.p in (p, q):
            continue
        other *= s
    return ReciprocityRecord(p, q, lhs, rhs, other, lhs == rhs == other)


# ---------------------------------------------------------------------------
# Conic points
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ConicPoint:
    """A projective solution of -a x^2 - b y^2 + a b z^2 = 0."""

    a: Fraction
    b: Fraction
    place: Place
    coords: tuple  # rationals, QuadSurd, PAdic, or QuadExt entries
    extension: Fraction | None = None  # discriminant d when over F(sqrt(d))

    def conic_value(self):
        x, y, z = self.coords
        a, b = self.a, self.b
        return -a * (x * x) - b * (y * y) + (a * b) * (z * z)


def _conic_residual_ok(pt: ConicPoint, min_valuation: int) -> bool:
    val = pt.conic_value()
    if isinstance(val, (int, Fraction)):
        return val == 0
    if isinstance(val, QuadSurd):
        return val == QuadSurd(0, 0, val.d)
    if isinstance(val, QuadExt):
        return val.is_zero_at_precision()
    if isinstance(val, PAdic):
        return val.is_zero_at_precision()
    raise DomainError(f"unexpected coordinate type {type(val)}")


def _conic_coeffs_integer(a: Fraction, b: Fraction) -> tuple[int, int, int]:
    """Integer coefficients (A,B,C) of a rescaled model A x^2+B y^2+C z^2."""
    A, B, C = -a, -b, a * b
    lcm = 1
    for f in (A, B, C):
        lcm = lcm * f.denominator // gcd(lcm, f.denominator)
    A, B, C = A * lcm, B * lcm, C * lcm
    return int(A), int(B), int(C)


def _conic_point_padic(a: Fraction, b: Fraction, p: int, prec: int):
    """Explicit Q_p point when the symbol is +1: fix two small coordinates,
    solve the third by p-adic square root."""
    A, B, C = _conic_coeffs_integer(a, b)
    coeffs = (A, B, C)
    for width in (p, p * p, p**3):
        for sigma in range(3):  # coordinate solved by square root
            others = [i for i in range(3) if i != sigma]
            c1, c2, cs = coeffs[others[0]], coeffs[others[1]], coeffs[sigma]
            for s, t in product(range(width), repeat=2):
                if s == 0 and t == 0:
                    continue
                rem = Fraction(-(c1 * s * s + c2 * t * t), cs)
                coords = [None, None, None]
                coords[others[0]] = PAdic.from_rational(s, p, prec + 2)
                coords[others[1]] = PAdic.from_rational(t, p, prec + 2)
                if rem == 0:
                    coords[sigma] = PAdic.zero(p)
                elif is_square(rem, Place.finite(p)):
                    coords[sigma] = padic_sqrt(rem, p, prec + 2)
                else:
                    continue
                pt = ConicPoint(a, b, Place.finite(p), tuple(coords))
                if _conic_residual_ok(pt, prec):
                    return pt
    raise ResourceError("no liftable conic point found (should not happen at +1)")


def _line_discriminants(a: Fraction, b: Fraction, seed: int = 0):
    """Yield (P0, Q, quadratic coefficients) for small rational lines.

    Restricting the conic to the line P0 + s Q gives
    F(P0) + 2 s f(P0,Q) + s^2 F(Q) = 0 with f the polar form.
    """
    A, B, C = -a, -b, a * b

    def F(v):
        return A * v[0] ** 2 + B * v[1] ** 2 + C * v[2] ** 2

    def polar(u, v):
        return A * u[0] * v[0] + B * u[1] * v[1] + C * u[2] * v[2]

    for h in count(1):
        rng = [Fraction(n) for n in range(-h, h + 1)]
        for p0 in product(rng, repeat=3):
            if all(c == 0 for c in p0) or max(abs(c) for c in p0) != h:
                continue
            for q in product(rng, repeat=3):
                if all(c == 0 for c in q):
                    continue
                # independent directions only
                if any(p0[i] * q[j] - p0[j] * q[i] != 0 for i in range(3) for j in range(3)):
                    yield p0, q, F(p0), polar(p0, q), F(q)
        if h > 4:
            raise ResourceError("line search bound exceeded")


def _conic_point_extension_padic(
    a: Fraction, b: Fraction, p: int, d: Fraction, prec: int
):
    """Point over Q_p(sqrt(d)): intersect with rational lines; the two
    intersection points live in the quadratic extension cut out by the
    discriminant of the restricted binary quadratic."""
    place = Place.finite(p)
    if is_square(d, place):
        raise DomainError(f"{d} is a square at {p}; not an extension")
    for p0, q, f0, fpq, fq in _line_discriminants(a, b):
        if fq == 0 or f0 == 0:
            # a rational point on the conic; embed it into the extension
            pt0 = q if fq == 0 else p0
            coords = tuple(
                QuadExt.from_rationals(p, d, c, 0, prec + 2) for c in pt0
            )
            return ConicPoint(a, b, place, coords, extension=Fraction(d))
        disc = fpq * fpq - f0 * fq
        if disc == 0:
            continue
        ratio = disc / d
        if not is_square(ratio, place):
            continue
        w = padic_sqrt(ratio, p, prec + 4)
        # s = (-fpq + w*sqrt(d)) / fq
        inv_fq = Fraction(1, 1) / fq
        s = QuadExt(
            p,
            Fraction(d),
            PAdic.from_rational(-fpq * inv_fq, p, prec + 4),
            w * inv_fq,
        )
        coords = tuple(
            QuadExt.from_rationals(p, d, c0, 0, prec + 4) + s * Fraction(c1)
            for c0, c1 in zip(p0, q)
        )
        pt = ConicPoint(a, b, place, coords, extension=Fraction(d))
        if _conic_residual_ok(pt, prec):
            return pt
    raise ResourceError("no extension point found")


def _conic_point_real(a: Fraction, b: Fraction, ext: Fraction | None, bound: int = 6):
    """Exact point over R (or over C via a negative extension discriminant).

    Rational points are preferred; otherwise the line construction yields
    coordinates in a real quadratic field, represented exactly as surds.
    """
    place = Place.infinite()
    if ext is None and a < 0 and b < 0:
        return None
    if ext is not None and ext >= 0:
        raise DomainError("extension of R must have negative discriminant")
    # small rational search first
    rng = range(-bound, bound + 1)
    for x, y, z in product(rng, repeat=3):
        if (x, y, z) == (0, 0, 0):
            continue
        if -a * x * x - b * y * y + a * b * z * z == 0:
            coords = (Fraction(x), Fraction(y), Fraction(z))
            if ext is not None:
                coords = tuple(QuadSurd(c, 0, ext) for c in coords)
            return ConicPoint(a, b, place, coords, extension=ext)
    target_d = ext if ext is not None else None
    for p0, q, f0, fpq, fq in _line_discriminants(a, b):
        if fq == 0:
            continue
        disc = fpq * fpq - f0 * fq
        if disc == 0:
            continue
        if target_d is None:
            if disc < 0:
                continue
            dd = squarefree_part(disc)
        else:
            ratio = disc / target_d
            if ratio < 0:
                continue
            root2 = _rational_sqrt(ratio)
            if root2 is None:
                continue
            dd = target_d
        if target_d is None:
            s_u = -fpq / fq
            s_v = Fraction(1) / fq  # times sqrt(disc) = sqrt(dd)*sqrt(square part)
            sq = _rational_sqrt(disc / dd)
            assert sq is not None
            s = QuadSurd(s_u, s_v * sq, dd)
        else:
            s = QuadSurd(-fpq / fq, root2 / fq, dd)
        coords = tuple(QuadSurd(c0, 0, dd) + s * c1 for c0, c1 in zip(p0, q))
        pt = ConicPoint(a, b, place, coords, extension=target_d)
        if _conic_residual_ok(pt, 0):
            return pt
    raise ResourceError("no real point found")


def _rational_sqrt(x: Fraction) -> Fraction | None:
    if x < 0:
        return None
    from math import isqrt

    n, d = x.numerator, x.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def conic_point(
    a,
    b,
    place: Place,
    extension=None,
    prec: int = DEFAULT_PRECISION,
):
    """An explicit point of -a x^2 - b y^2 + a b z^2 = 0 over the completion,
    or over its quadratic extension of discriminant ``extension``.

    Returns None when the symbol is -1 and no extension is given.
    """
    a, b = Fraction(a), Fraction(b)
    _check_nonzero(a, b)
    ext = None if extension is None else Fraction(extension)
    if not place.is_finite:
        return _conic_point_real(a, b, ext)
    p = place.p
    if ext is not None:
        return _conic_point_extension_padic(a, b, p, ext, prec)
    if hilbert_symbol(a, b, place) == -1:
        return None
    return _conic_point_padic(a, b, p, prec)


def galois_conjugate(pt: ConicPoint) -> ConicPoint:
    """Coordinate-wise conjugation x + y sqrt(d) -> x - y sqrt(d)."""
    if pt.extension is None:
        raise DomainError("point is not over a quadratic extension")
    return ConicPoint(
        pt.a,
        pt.b,
        pt.place,
        tuple(c.conjugate() for c in pt.coords),
        pt.extension,
    )


def _minor_nonzero(ci, cj, di, dj) -> bool:
    m = ci * dj - cj * di
    if isinstance(m, QuadExt):
        return not m.is_zero_at_precision()
    if isinstance(m, PAdic):
        return not m.is_zero_at_precision()
    return bool(m)


def is_fixed(pt: ConicPoint) -> bool:
    """Whether the Galois conjugate equals the point projectively (all 2x2
    minors of the coordinate pair vanish at the carried precision)."""
    other = galois_conjugate(pt)
    c, d = pt.coords, other.coords
    for i in range(3):
        for j in range(i + 1, 3):
            if _minor_nonzero(c[i], c[j], d[i], d[j]):
                return False
    return True


def find_zero_divisor(alg: QuaternionAlgebra, search_bound: int = 12):
    """A nonzero element of norm zero, or None.

    Over Q: primitive-tuple enumeration up to the bound.  Over Q_p and R:
    built from an explicit conic point (norm of the pure quaternion
    x i + y j + z k is exactly the conic form).
    """
    from .quaternion import find_zero_divisor_rational

    if alg.field == "Q":
        return find_zero_divisor_rational(alg, search_bound)
    if alg.field == "R":
        pt = _conic_point_real(alg.a, alg.b, None)
        if pt is None:
            return None
        x, y, z = pt.coords
        zero = x - x if not isinstance(x, Fraction) else Fraction(0)
        return alg.element(zero, x, y, z)
    if alg.field.startswith("Qp:"):
        p = int(alg.field.split(":")[1])
        pt = conic_point(alg.a, alg.b, Place.finite(p))
        if pt is None:
            return None
        x, y, z = pt.coords
        return alg.element(PAdic.zero(p), x, y, z)
    raise DomainError(f"unsupported field tag {alg.field}")
