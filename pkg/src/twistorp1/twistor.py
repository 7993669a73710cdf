"""The fibration CP^3 -> HP^1 and the geometry around it.

Conventions (fixed once, hashed into the CLI version string):

* H carries the complex structure of LEFT multiplication by C, so
  q = z1 + z2 j identifies C^2 with H; scalars act on the left.
* HP^1 is the LEFT quotient: [q1, q2] ~ [lam q1, lam q2]; the affine chart
  at q2 invertible is w = q2^(-1) q1, which is left-scaling invariant.
* GL(2, H) acts on the RIGHT on row vectors (q1, q2); this commutes with
  the left scalars, hence descends to both CP^3 and HP^1.
* The real structure rho_tw is left multiplication by j:
  (z1, z2, z3, z4) -> (-conj z2, conj z1, -conj z4, conj z3).

Exact coordinates are Gaussian rationals; the clutching-degree computation
is the one numerical routine (winding of the transition function).
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .errors import DomainError, PrecisionError
from .gaussian import GaussianRational
from .linalg import row_space_equal

_ZERO = GaussianRational(0, 0)


def _g(x) -> GaussianRational:
    if isinstance(x, GaussianRational):
        return x
    return GaussianRational(Fraction(x))


# ---------------------------------------------------------------------------
# Quaternions as pairs (z1, z2) = z1 + z2 j over the Gaussian rationals
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class HQuat:
    """z1 + z2 j with Gaussian-rational parts; left C-structure."""

    z1: GaussianRational
    z2: GaussianRational

    @classmethod
    def from_parts(cls, z1, z2=0) -> "HQuat":
        return cls(_g(z1), _g(z2))

    @classmethod
    def from_reals(cls, t, x, y, z) -> "HQuat":
        """t + x i + y j + z k  (k = i j)."""
        return cls(GaussianRational(Fraction(t), Fraction(x)),
                   GaussianRational(Fraction(y), Fraction(z)))

    def __add__(self, other: "HQuat") -> "HQuat":
        return HQuat(self.z1 + other.z1, self.z2 + other.z2)

    def __neg__(self) -> "HQuat":
        return HQuat(-self.z1, -self.z2)

    def __sub__(self, other: "HQuat") -> "HQuat":
        return self + (-other)

    def __mul__(self, other: "HQuat") -> "HQuat":
        # (z1 + z2 j)(w1 + w2 j) = (z1 w1 - z2 conj(w2)) + (z1 w2 + z2 conj(w1)) j
        w1, w2 = other.z1, other.z2
        return HQuat(
            self.z1 * w1 - self.z2 * w2.conjugate(),
            self.z1 * w2 + self.z2 * w1.conjugate(),
        )

    def conj(self) -> "HQuat":
        return HQuat(self.z1.conjugate(), -self.z2)

    def norm(self) -> Fraction:
        return self.z1.norm() + self.z2.norm()

    def inverse(self) -> "HQuat":
        n = self.norm()
        if n == 0:
            raise DomainError("division by zero quaternion")
        c = self.conj()
        inv = Fraction(1) / n
        return HQuat(c.z1 * inv, c.z2 * inv)

    def __bool__(self) -> bool:
        return bool(self.z1) or bool(self.z2)

    @property
    def real_parts(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        return (self.z1.re, self.z1.im, self.z2.re, self.z2.im)


H_ONE = HQuat.from_parts(1)
H_I = HQuat.from_parts(GaussianRational(0, 1))
H_J = HQuat.from_parts(0, 1)
H_K = H_I * H_J


# ---------------------------------------------------------------------------
# Projective points and lines
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ProjPoint:
    """A point of CP^(n-1), n = len(coords), with exact coordinates."""

    coords: tuple[GaussianRational, ...]

    @classmethod
    def make(cls, *coords) -> "ProjPoint":
        c = tuple(_g(x) for x in coords)
        if not any(c):
            raise DomainError("projective point needs a nonzero coordinate")
        return cls(c)

    def same(self, other: "ProjPoint") -> bool:
        """Projective equality: all 2x2 minors of the coordinate pair vanish."""
        a, b = self.coords, other.coords
        if len(a) != len(b):
            return False
        return all(
            a[i] * b[j] - a[j] * b[i] == _ZERO
            for i, j in combinations(range(len(a)), 2)
        )

    def scale(self, c) -> "ProjPoint":
        c = _g(c)
        if not c:
            raise DomainError("scaling by zero")
        return ProjPoint(tuple(c * x for x in self.coords))


def rho(pt: ProjPoint) -> ProjPoint:
    """The antipodal (fixed-point-free) real structure on CP^1:
    (z1, z2) -> (-conj z2, conj z1)."""
    if len(pt.coords) != 2:
        raise DomainError("rho acts on CP^1")
    z1, z2 = pt.coords
    return ProjPoint((-z2.conjugate(), z1.conjugate()))


def rho_tw(pt: ProjPoint) -> ProjPoint:
    """Left multiplication by j on H^2, in complex coordinates on CP^3."""
    if len(pt.coords) != 4:
        raise DomainError("rho_tw acts on CP^3")
    z1, z2, z3, z4 = pt.coords
    return ProjPoint(
        (-z2.conjugate(), z1.conjugate(), -z4.conjugate(), z3.conjugate())
    )


def fixed_point_check(pt: ProjPoint) -> bool:
    """Whether the point is fixed by the relevant real structure (never, for
    rho on CP^1 and rho_tw on CP^3: both square to -1 on coordinates)."""
    img = rho(pt) if len(pt.coords) == 2 else rho_tw(pt)
    return img.same(pt)


def jmul(z1: GaussianRational, z2: GaussianRational) -> tuple:
    """Left multiplication by j on C^2 = H: j(z1 + z2 j)."""
    prod = H_J * HQuat(_g(z1), _g(z2))
    return (prod.z1, prod.z2)


@dataclass(frozen=True)
class QuatProjPoint:
    """A point [q1 : q2] of HP^1 under LEFT scalar equivalence."""

    q1: HQuat
    q2: HQuat

    def __post_init__(self):
        if not (self.q1 or self.q2):
            raise DomainError("quaternionic projective point needs a nonzero entry")

    def same(self, other: "QuatProjPoint") -> bool:
        # [p1, p2] ~ [q1, q2]  iff  p = lam q for some lam != 0
        if self.q1:
            if not other.q1:
                return False
            lam = self.q1 * other.q1.inverse()
            return self.q2 == lam * other.q2
        if other.q1:
            return False
        return True  # both [0, q2] with q2 != 0

    def chart(self) -> HQuat:
        """The affine coordinate q2^(-1) q1 (left-scaling invariant)."""
        if not self.q2:
            raise DomainError("point at infinity has no affine chart value")
        return self.q2.inverse() * self.q1


def pi(pt: ProjPoint) -> QuatProjPoint:
    """The fibration CP^3 -> HP^1: (z1, z2, z3, z4) -> [z1 + z2 j : z3 + z4 j]."""
    if len(pt.coords) != 4:
        raise DomainError("pi is defined on CP^3")
    z1, z2, z3, z4 = pt.coords
    return QuatProjPoint(HQuat(z1, z2), HQuat(z3, z4))


@dataclass(frozen=True)
class ProjLine:
    """A projective line in CP^3: the span of two independent C^4 vectors."""

    v1: tuple[GaussianRational, ...]
    v2: tuple[GaussianRational, ...]

    def __post_init__(self):
        from .linalg import rank

        if rank([list(self.v1), list(self.v2)]) != 2:
            raise DomainError("line needs two independent vectors")

    def contains(self, pt: ProjPoint) -> bool:
        from .linalg import rank

        return rank([list(self.v1), list(self.v2), list(pt.coords)]) == 2

    def is_real_line(self) -> bool:
        """Closed under rho_tw; exactly the fibers of pi."""
        imgs = [
            list(rho_tw(ProjPoint(v)).coords) for v in (self.v1, self.v2)
        ]
        return row_space_equal([list(self.v1), list(self.v2)], imgs)


def fiber(qpt: QuatProjPoint) -> ProjLine:
    """The fiber of pi over a quaternionic point, as a projective line.

    The fiber over [w : 1] is spanned by lam = 1 and lam = j in
    lam (w, 1); over [q1 : 0] it is the z3 = z4 = 0 plane's line.
    """
    one, zero = _g(1), _g(0)
    if qpt.q2:
        w = qpt.chart()
        alpha, beta = w.z1, w.z2
        v1 = (alpha, beta, one, zero)
        v2 = (-beta.conjugate(), alpha.conjugate(), zero, one)
        return ProjLine(v1, v2)
    return ProjLine((one, zero, zero, zero), (zero, one, zero, zero))


# ---------------------------------------------------------------------------
# GL(2, H) action
# ---------------------------------------------------------------------------


def gl2h_act(m: tuple[tuple[HQuat, HQuat], tuple[HQuat, HQuat]], pt):
    """Right action of a 2x2 quaternion matrix on a row vector (q1, q2).

    Accepts a :class:`QuatProjPoint` or a :class:`ProjPoint` of CP^3 (acting
    through the identification C^4 = H^2, with which it commutes).
    """
    (m11, m12), (m21, m22) = m
    if isinstance(pt, QuatProjPoint):
        q1, q2 = pt.q1, pt.q2
        r1 = q1 * m11 + q2 * m21
        r2 = q1 * m12 + q2 * m22
        return QuatProjPoint(r1, r2)
    if isinstance(pt, ProjPoint) and len(pt.coords) == 4:
        q = pi(pt)
        r1 = q.q1 * m11 + q.q2 * m21
        r2 = q.q1 * m12 + q.q2 * m22
        return ProjPoint.make(r1.z1, r1.z2, r2.z1, r2.z2)
    raise DomainError("gl2h_act needs an HP^1 point or a CP^3 point")


def gl2h_invertible(m) -> bool:
    """Invertibility via the Study determinant (norm of the Dieudonne det)."""
    (m11, m12), (m21, m22) = m
    # reduce to triangular form over H
    if m11:
        s = m22 - m21 * m11.inverse() * m12
        return bool(s)
    if m21:
        s = m12 - m11 * m21.inverse() * m22
        return bool(s)
    return False


def induced_complex_matrix(m) -> list[list[GaussianRational]]:
    """The 4x4 complex matrix of the right action on row vectors of C^4."""
    basis = [
        ProjPoint.make(1, 0, 0, 0),
        ProjPoint.make(0, 1, 0, 0),
        ProjPoint.make(0, 0, 1, 0),
        ProjPoint.make(0, 0, 0, 1),
    ]
    rows = []
    for b in basis:
        q = pi(b)
        (m11, m12), (m21, m22) = m
        r1 = q.q1 * m11 + q.q2 * m21
        r2 = q.q1 * m12 + q.q2 * m22
        rows.append([r1.z1, r1.z2, r2.z1, r2.z2])
    return rows


# ---------------------------------------------------------------------------
# Complex structures on H and the Pauli eigenline families on S^2
# ---------------------------------------------------------------------------


def rational_sphere_point(t, u) -> tuple[Fraction, Fraction, Fraction]:
    """A rational point of S^2 from the stereographic parametrization."""
    t, u = Fraction(t), Fraction(u)
    den = 1 + t * t + u * u
    return (2 * t / den, 2 * u / den, (1 - t * t - u * u) / den)


def complex_structure(x1, x2, x3) -> list[list[Fraction]]:
    """Left multiplication by u = x1 i + x2 j + x3 k on the basis (1, i, j, k).

    Requires x1^2 + x2^2 + x3^2 = 1; the returned 4x4 rational matrix J
    satisfies J^2 = -Id.
    """
    x1, x2, x3 = Fraction(x1), Fraction(x2), Fraction(x3)
    if x1 * x1 + x2 * x2 + x3 * x3 != 1:
        raise DomainError("complex structure needs a unit imaginary direction")
    u = HQuat.from_reals(0, x1, x2, x3)
    cols = []
    for b in (H_ONE, H_I, H_J, H_K):
        cols.append((u * b).real_parts)
    # column k of J is u * basis_k in coordinates (1, i, j, k)
    return [[cols[k][r] for k in range(4)] for r in range(4)]


def pauli_eigenline(x1, x2, x3, sign: int = 1) -> ProjPoint:
    """The +-1 eigenline of x . sigma (the 2x2 traceless Hermitian matrix
    [[x3, x1 - i x2], [x1 + i x2], [-x3]]) as a point of CP^1."""
    x1, x2, x3 = Fraction(x1), Fraction(x2), Fraction(x3)
    if x1 * x1 + x2 * x2 + x3 * x3 != 1:
        raise DomainError("eigenline needs a unit vector")
    if sign not in (1, -1):
        raise DomainError("sign must be +-1")
    if sign == -1:
        x1, x2, x3 = -x1, -x2, -x3
    if x3 != -1:
        return ProjPoint.make(GaussianRational(1 + x3), GaussianRational(x1, x2))
    return ProjPoint.make(GaussianRational(x1, -x2), GaussianRational(1 - x3))


# -- numeric clutching ------------------------------------------------------


def _pauli_eigvec_numeric(x1: float, x2: float, x3: float, sign: int):
    if sign == -1:
        x1, x2, x3 = -x1, -x2, -x3
    if x3 > -0.5:
        v = (1 + x3, complex(x1, x2))
    else:
        v = (complex(x1, -x2), 1 - x3)
    n = (abs(v[0]) ** 2 + abs(v[1]) ** 2) ** 0.5
    return (v[0] / n, v[1] / n)


def pauli_plus_family(x):
    return _pauli_eigvec_numeric(*x, 1)


def pauli_minus_family(x):
    return _pauli_eigvec_numeric(*x, -1)


def constant_family(x):
    return (1.0, 0.0)


def clutching_degree(family, samples: int = 256, tol: float = 1e-6) -> int:
    """Degree of the line bundle on S^2 defined by ``family``.

    ``family(x)`` returns a spanning vector of a line in C^2 for each point
    x of S^2.  Sections built by projecting fixed reference vectors from the
    two poles are compared along the equator; the winding number of the
    transition function is the degree.  Raises :class:`PrecisionError` when
    an increment reaches pi/2 or a section degenerates below ``tol``.
    """
    import math

    def proj(v, e):
        # orthogonal projection of e onto span(v)
        ip = v[0].conjugate() * e[0] + v[1].conjugate() * e[1]
        n2 = abs(v[0]) ** 2 + abs(v[1]) ** 2
        return (v[0] * ip / n2, v[1] * ip / n2)

    e_n = family((0.0, 0.0, 1.0))
    e_s = family((0.0, 0.0, -1.0))
    total = 0.0
    prev = None
    first = None
    for k in range(samples + 1):
        th = 2 * math.pi * k / samples
        x = (math.cos(th), math.sin(th), 0.0)
        v = [complex(c) for c in family(x)]
        s_n = proj(v, [complex(c) for c in e_n])
        s_s = proj(v, [complex(c) for c in e_s])
        nn = (abs(s_n[0]) ** 2 + abs(s_n[1]) ** 2) ** 0.5
        ns = (abs(s_s[0]) ** 2 + abs(s_s[1]) ** 2) ** 0.5
        if nn < tol or ns < tol:
            raise PrecisionError("section degenerates on the equator")
        g = (s_s[0].conjugate() * s_n[0] + s_s[1].conjugate() * s_n[1])
        ph = cmath.phase(g)
        if prev is not None:
            d = ph - prev
            while d > math.pi:
                d -= 2 * math.pi
            while d < -math.pi:
                d += 2 * math.pi
            if abs(d) >= math.pi / 2:
                raise PrecisionError("phase increment too large; refine sampling")
            total += d
        else:
            first = ph
        prev = ph
    winding = total / (2 * math.pi)
    deg = round(winding)
    if abs(winding - deg) > tol:
        raise PrecisionError(f"non-integral winding {winding}")
    return deg
