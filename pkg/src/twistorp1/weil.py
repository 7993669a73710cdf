"""Finite-model canonical quantization.

Heisenberg groups over Z/N, the Schrodinger representation on functions on
Z/N (float matrices, with an exact group-ring oracle for small N), a
brute-force Stone-von-Neumann check, SL(2, Z/N) intertwiners with their
metaplectic cocycle, Gauss sums, and the Maslov index of Lagrangian line
triples valued in Witt invariants of an explicit ternary form.

Conventions (frozen):
* group law (a,b,c)(a',b',c') = (a+a', b+b', c+c'+a*b'), center acts by
  exp(2*pi*i*c/N);
* SL(2) acts on the vector part by the ROW action (a,b) -> (a,b)g, with the
  central correction derived at runtime from the automorphism condition;
* the intertwiner U_g is normalized by U_g pi(alpha_g(x)) U_g^{-1} = pi(x)
  (so U for the rotation by 90 degrees is the finite Fourier transform) and
  by making the first nonzero entry of its first column positive real; with
  this orientation U_g U_h = c(g, h) U_{gh} with |c| = 1.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

import numpy as np

from .errors import DomainError, PrecisionError
from .quadforms import (
    QuadraticForm,
    hasse_invariant,
    signature,
    witt_decompose,
    witt_invariants,
    WittInvariants,
)
from .rationals import Place, is_prime, legendre_symbol

TOL = 1e-9


# ---------------------------------------------------------------------------
# Heisenberg group over Z/N
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class HeisenbergElement:
    a: int
    b: int
    c: int
    modulus: int

    def __post_init__(self):
        if self.modulus < 2:
            raise DomainError("modulus must be >= 2")
        object.__setattr__(self, "a", self.a % self.modulus)
        object.__setattr__(self, "b", self.b % self.modulus)
        object.__setattr__(self, "c", self.c % self.modulus)


def _check_mod(g: HeisenbergElement, h: HeisenbergElement):
    if g.modulus != h.modulus:
        raise DomainError("modulus mismatch")


def heis_mul(g: HeisenbergElement, h: HeisenbergElement) -> HeisenbergElement:
    _check_mod(g, h)
    n = g.modulus
    return HeisenbergElement(g.a + h.a, g.b + h.b, g.c + h.c + g.a * h.b, n)


def heis_inv(g: HeisenbergElement) -> HeisenbergElement:
    return HeisenbergElement(-g.a, -g.b, -g.c + g.a * g.b, g.modulus)


def heis_commutator(g: HeisenbergElement, h: HeisenbergElement) -> HeisenbergElement:
    return heis_mul(heis_mul(g, h), heis_mul(heis_inv(g), heis_inv(h)))


def heis_identity(n: int) -> HeisenbergElement:
    return HeisenbergElement(0, 0, 0, n)


# ---------------------------------------------------------------------------
# Schrodinger representation
# ---------------------------------------------------------------------------


def schrodinger(g: HeisenbergElement) -> np.ndarray:
    """(pi(a,b,c) f)(x) = psi(c + b x) f(x + a), psi(t) = exp(2 pi i t / N)."""
    n = g.modulus
    m = np.zeros((n, n), dtype=complex)
    for x in range(n):
        m[x, (x + g.a) % n] = cmath.exp(2j * cmath.pi * ((g.c + g.b * x) % n) / n)
    return m


def schrodinger_exact(g: HeisenbergElement):
    """Exact mode: entries live in Z[zeta_N] = Z[t]/(t^N - 1), each entry a
    length-N integer coefficient tuple."""
    n = g.modulus
    zero = (0,) * n
    m = [[zero for _ in range(n)] for _ in range(n)]
    for x in range(n):
        e = [0] * n
        e[(g.c + g.b * x) % n] = 1
        m[x][(x + g.a) % n] = tuple(e)
    return m


def cyc_matmul(a, b, n: int):
    """Multiply matrices with entries in Z[t]/(t^N - 1)."""
    size = len(a)
    zero = (0,) * n

    def emul(u, v):
        out = [0] * n
        for i, ci in enumerate(u):
            if ci:
                for j, cj in enumerate(v):
                    if cj:
                        out[(i + j) % n] += ci * cj
        return tuple(out)

    def eadd(u, v):
        return tuple(x + y for x, y in zip(u, v))

    out = [[zero for _ in range(size)] for _ in range(size)]
    for i in range(size):
        for k in range(size):
            if a[i][k] == zero:
                continue
            for j in range(size):
                if b[k][j] == zero:
                    continue
                out[i][j] = eadd(out[i][j], emul(a[i][k], b[k][j]))
    return out


def cyc_reduce(m, n: int):
    """Canonical form modulo the relation 1 + t + ... + t^(N-1) = 0 when N is
    prime: subtract the last coefficient from all (minimal-polynomial
    reduction), so equality of matrices can be tested entrywise."""
    def red(e):
        last = e[-1]
        return tuple(c - last for c in e)[: n - 1] if is_prime(n) else e

    return [[red(e) for e in row] for row in m]


def is_unitary(m: np.ndarray, tol: float = TOL) -> bool:
    n = m.shape[0]
    return bool(np.allclose(m @ m.conj().T, np.eye(n), atol=max(tol, 1e-12)))


# ---------------------------------------------------------------------------
# Stone-von-Neumann brute force
# ---------------------------------------------------------------------------


def _intertwiner_space(rep_a, rep_b, n: int) -> np.ndarray:
    """Basis (rows) of {U : U A_i = B_i U} via an SVD nullspace."""
    blocks = []
    eye = np.eye(n)
    for a, b in zip(rep_a, rep_b):
        # vec(U A - B U) = (A^T (x) I - I (x) B) vec(U)
        blocks.append(np.kron(a.T, eye) - np.kron(eye, b))
    m = np.vstack(blocks)
    _, s, vh = np.linalg.svd(m)
    # rows of vh are conjugate-transposed right singular vectors
    return vh[np.sum(s > 1e-8) :].conj()


def _generators(n: int) -> list[HeisenbergElement]:
    return [HeisenbergElement(1, 0, 0, n), HeisenbergElement(0, 1, 0, n)]


def svn_check(n: int, seed: int = 0) -> bool:
    """Uniqueness of the representation with this central character, at model
    scale: a unitarily conjugated copy admits an intertwiner space of exact
    dimension 1, and the self-intertwiner space is also 1 (irreducibility)."""
    if not is_prime(n) or n == 2:
        raise DomainError("model scale requires an odd prime")
    gens = _generators(n)
    rep = [schrodinger(g) for g in gens]
    # Schur: self-intertwiners are scalars
    if _intertwiner_space(rep, rep, n).shape[0] != 1:
        return False
    rng = np.random.default_rng(seed)
    # a random unitary conjugate has the same central character
    x = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    q, _ = np.linalg.qr(x)
    other = [q @ m @ q.conj().T for m in rep]
    if _intertwiner_space(rep, other, n).shape[0] != 1:
        return False
    # the Fourier-conjugated copy as a structured second witness
    f = np.array(
        [[cmath.exp(2j * cmath.pi * x * y / n) / math.sqrt(n) for y in range(n)] for x in range(n)]
    )
    fourier = [f @ m @ f.conj().T for m in rep]
    return _intertwiner_space(rep, fourier, n).shape[0] == 1


# ---------------------------------------------------------------------------
# SL(2, Z/N) action and the metaplectic cocycle
# ---------------------------------------------------------------------------


def _check_sl2(g, n: int):
    (al, be), (ga, de) = g
    if (al * de - be * ga) % n != 1:
        raise DomainError("matrix must have determinant 1 mod N")


def _central_correction(g, n: int) -> tuple[int, int, int]:
    """Coefficients (r, s, t) of the quadratic correction delta(a, b) =
    r a^2 + s a b + t b^2 making the row action an automorphism; derived by
    solving the automorphism condition on probe pairs (2 must be invertible).
    """
    (al, be), (ga, de) = g
    inv2 = pow(2, -1, n)
    # probe (1,0),(1,0): 2r = (al)(be); (0,1),(0,1): 2t = (ga)(de);
    # probe (1,0),(0,1): s = al*de - 1
    r = al * be * inv2 % n
    t = ga * de * inv2 % n
    s = (al * de - 1) % n
    return r, s, t


def sl2_act(g, h: HeisenbergElement) -> HeisenbergElement:
    """The automorphism (a, b, c) -> ((a, b) g, c + delta(a, b))."""
    n = h.modulus
    if n % 2 == 0:
        raise DomainError("SL(2) action needs odd modulus")
    _check_sl2(g, n)
    (al, be), (ga, de) = g
    a2 = (h.a * al + h.b * ga) % n
    b2 = (h.a * be + h.b * de) % n
    r, s, t = _central_correction(g, n)
    c2 = (h.c + r * h.a * h.a + s * h.a * h.b + t * h.b * h.b) % n
    return HeisenbergElement(a2, b2, c2, n)


def sl2_mul(g, h, n: int):
    (a, b), (c, d) = g
    (e, f), (i, j) = h
    return ((a * e + b * i) % n, (a * f + b * j) % n), (
        (c * e + d * i) % n,
        (c * f + d * j) % n,
    )


def sl2_inv(g, n: int):
    (a, b), (c, d) = g
    _check_sl2(g, n)
    return (d % n, -b % n), (-c % n, a % n)


def intertwiner(g, n: int) -> np.ndarray:
    """The unitary U_g with U_g pi(sl2_act(g, x)) U_g^{-1} = pi(x), phase-fixed
    so the first nonzero entry of the first column is positive real."""
    if not is_prime(n) or n == 2:
        raise DomainError("intertwiners at model scale need an odd prime")
    _check_sl2(g, n)
    gens = _generators(n)
    rep_src = [schrodinger(sl2_act(g, x)) for x in gens]
    rep_dst = [schrodinger(x) for x in gens]
    null = _intertwiner_space(rep_src, rep_dst, n)
    if null.shape[0] != 1:
        raise DomainError("intertwiner space is not one-dimensional")
    # the nullspace vector is the column-stacked vec(U); undo it
    u = null[0].reshape(n, n).T
    # unitary up to scale (both reps are unitary irreducible); rescale
    scale = np.sqrt(np.trace(u @ u.conj().T).real / n)
    u = u / scale
    col = u[:, 0]
    pivot = next(v for v in col if abs(v) > 1e-8)
    u = u * (abs(pivot) / pivot)
    if not is_unitary(u, 1e-7):
        raise PrecisionError("intertwiner failed the unitarity check")
    return u


def cocycle(g, h, n: int) -> complex:
    """c(g, h) with U_g U_h = c(g, h) U_{gh}; unimodular scalar."""
    ug, uh = intertwiner(g, n), intertwiner(h, n)
    ugh = intertwiner(sl2_mul(g, h, n), n)
    m = ug @ uh @ ugh.conj().T
    c = np.trace(m) / n
    if np.linalg.norm(m - c * np.eye(n)) > 1e-8:
        raise PrecisionError("product is not a scalar multiple of U_(gh)")
    return complex(c)


# ---------------------------------------------------------------------------
# Gauss sums
# ---------------------------------------------------------------------------


def gauss_sum(p: int, a: int = 1) -> complex:
    if not is_prime(p) or p == 2:
        raise DomainError("gauss_sum needs an odd prime")
    if a % p == 0:
        raise DomainError("twist must be a nonzero residue")
    return sum(cmath.exp(2j * cmath.pi * (a * x * x % p) / p) for x in range(p))


def gauss_sum_twist_law(p: int, a: int) -> bool:
    return abs(gauss_sum(p, a) - legendre_symbol(a, p) * gauss_sum(p, 1)) < TOL


# ---------------------------------------------------------------------------
# Maslov index
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LagrangianLine:
    """A line in the symplectic plane, spanned by (x, y) != 0."""

    x: Fraction
    y: Fraction

    @classmethod
    def make(cls, x, y) -> "LagrangianLine":
        x, y = Fraction(x), Fraction(y)
        if x == 0 and y == 0:
            raise DomainError("line needs a nonzero spanning vector")
        return cls(x, y)

    def same(self, other: "LagrangianLine") -> bool:
        return self.x * other.y - self.y * other.x == 0


def omega(v: LagrangianLine, w: LagrangianLine) -> Fraction:
    return v.x * w.y - v.y * w.x


def maslov_form(
    l1: LagrangianLine, l2: LagrangianLine, l3: LagrangianLine
) -> QuadraticForm:
    """Q(t1, t2, t3) = w(v1,v2) t1 t2 + w(v2,v3) t2 t3 + w(v3,v1) t3 t1 on
    l1 + l2 + l3 (x_i = t_i v_i)."""
    for u, v in ((l1, l2), (l2, l3), (l1, l3)):
        if u.same(v):
            raise DomainError("lines must be pairwise distinct")
    a, b, c = omega(l1, l2), omega(l2, l3), omega(l3, l1)
    half = Fraction(1, 2)
    return QuadraticForm.from_matrix(
        [
            [Fraction(0), half * a, half * c],
            [half * a, Fraction(0), half * b],
            [half * c, half * b, Fraction(0)],
        ]
    )


def maslov_index(
    l1: LagrangianLine, l2: LagrangianLine, l3: LagrangianLine, place: Place
) -> WittInvariants:
    """Witt invariants of the Maslov ternary form at the given place."""
    return witt_invariants(maslov_form(l1, l2, l3), place)


def maslov_signature(
    l1: LagrangianLine, l2: LagrangianLine, l3: LagrangianLine
) -> int:
    """The real invariant: signature (positives minus negatives)."""
    pos, neg = signature(maslov_form(l1, l2, l3))
    return pos - neg


def witt_class_trivial(form: QuadraticForm, place: Place) -> bool:
    """Whether the form is hyperbolic (trivial in the Witt group) locally."""
    _, kernel = witt_decompose(form, place)
    return not kernel


def maslov_chain_holds(
    lines: tuple[LagrangianLine, LagrangianLine, LagrangianLine, LagrangianLine],
    place: Place,
) -> bool:
    """tau(1,2,3) - tau(1,2,4) + tau(1,3,4) - tau(2,3,4) = 0 in the Witt
    group: the alternating orthogonal sum (negation = scaling by -1) is
    hyperbolic."""
    l1, l2, l3, l4 = lines
    total = (
        maslov_form(l1, l2, l3)
        .orthogonal_sum(maslov_form(l1, l2, l4).scale(-1))
        .orthogonal_sum(maslov_form(l1, l3, l4))
        .orthogonal_sum(maslov_form(l2, l3, l4).scale(-1))
    )
    return witt_class_trivial(total, place)
