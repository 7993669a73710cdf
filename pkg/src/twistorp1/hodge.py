"""Pure Hodge structures and their twistor / equivariant classification data.

A pure structure of weight w on C^n is a descending filtration F^p by exact
Gaussian-rational subspaces with F^p (+) conj(F^(w+1-p)) = V.  Its image on
the twistor side is a sum of slope-w/2 bundles (rank 1 for even w, rank 2
for odd w); the U(1)-equivariant refinement remembers the graded dimensions
of the filtration, from which the Hodge numbers are recovered exactly.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import DomainError
from .gaussian import GaussianRational
from .linalg import intersection_dim, rank, rref


def _gvec(vec) -> tuple[GaussianRational, ...]:
    out = []
    for x in vec:
        if isinstance(x, GaussianRational):
            out.append(x)
        else:
            out.append(GaussianRational(Fraction(x)))
    return tuple(out)


def conj_vector(vec) -> tuple[GaussianRational, ...]:
    return tuple(x.conjugate() for x in vec)


@dataclass(frozen=True)
class PureHodgeStructure:
    """(C^n, weight w, descending filtration F^p given by exact bases).

    ``filtration`` maps p to a basis of F^p; indices below the smallest key
    give all of V, above the largest give 0.  The real structure is the
    standard coordinatewise conjugation.
    """

    n: int
    w: int
    filtration: tuple[tuple[int, tuple[tuple[GaussianRational, ...], ...]], ...]

    @classmethod
    def make(cls, n: int, w: int, filtration: dict) -> "PureHodgeStructure":
        if n < 1:
            raise DomainError("dimension must be positive")
        fil = []
        for p in sorted(filtration, reverse=True):
            basis = tuple(_gvec(v) for v in filtration[p])
            if any(len(v) != n for v in basis):
                raise DomainError("basis vector of wrong length")
            fil.append((p, basis))
        h = cls(n, w, tuple(fil))
        h._check_nested()
        return h

    def basis_of(self, p: int):
        """A basis of F^p: V below every listed index, 0 above, and the
        subspace at the smallest listed index >= p in between."""
        if not self.filtration:
            return self._full_basis() if p <= 0 else []
        keys = [q for q, _ in self.filtration]
        if p < min(keys):
            return self._full_basis()
        if p > max(keys):
            return []
        for q, basis in reversed(self.filtration):  # ascending in p
            if q >= p:
                return [list(v) for v in basis]
        raise AssertionError("unreachable")

    def _full_basis(self):
        one, zero = GaussianRational(1), GaussianRational(0)
        return [
            [one if i == j else zero for j in range(self.n)] for i in range(self.n)
        ]

    def dim_f(self, p: int) -> int:
        return rank(self.basis_of(p))

    def _check_nested(self):
        prev = None
        for p, basis in self.filtration:
            b = [list(v) for v in basis]
            if len(b) != rank(b):
                raise DomainError(f"basis of F^{p} is not independent")
            if prev is not None:
                # prev has larger p: F^prev_p must sit inside F^p
                if rank(prev + b) != rank(b):
                    raise DomainError("filtration is not nested")
            prev = b

    @property
    def index_range(self) -> tuple[int, int]:
        """(p_min, p_max) outside of which F is V resp. 0."""
        ps = [p for p, _ in self.filtration]
        lo = min(ps) if ps else 0
        hi = max(ps) if ps else 0
        while self.dim_f(lo) < self.n:
            lo -= 1
        while self.dim_f(hi) > 0:
            hi += 1
        return lo, hi


def validate_pure(h: PureHodgeStructure) -> tuple[bool, int | None]:
    """Exact purity test F^p (+) conj(F^(w+1-p)) = V for every p.

    Returns (True, None) or (False, first failing p).
    """
    lo, hi = h.index_range
    for p in range(lo, hi + 1):
        a = h.basis_of(p)
        b = [list(conj_vector(v)) for v in h.basis_of(h.w + 1 - p)]
        if rank(a) + rank(b) != h.n or rank(a + b) != h.n:
            return False, p
    return True, None


def hodge_numbers(h: PureHodgeStructure) -> dict[tuple[int, int], int]:
    """h^(p,q) = dim(F^p ∩ conj(F^q)) over p + q = w; symmetric, sums to n."""
    ok, bad = validate_pure(h)
    if not ok:
        raise DomainError(f"structure is not pure (fails at p={bad})")
    lo, hi = h.index_range
    out: dict[tuple[int, int], int] = {}
    lo, hi = min(lo, h.w - hi + 1), max(hi, h.w - lo + 1)
    for p in range(lo, hi):
        q = h.w - p
        a = h.basis_of(p)
        b = [list(conj_vector(v)) for v in h.basis_of(q)]
        d = intersection_dim(a, b) if a and b else 0
        if d:
            out[(p, q)] = d
    total = sum(out.values())
    if total != h.n:
        raise DomainError("Hodge numbers do not sum to the dimension")
    return out


@dataclass(frozen=True)
class TwistorBundleType:
    """A multiset of (slope, multiplicity); rank 1 summands at integer slope,
    rank 2 at strictly half-integer slope."""

    summands: tuple[tuple[Fraction, int], ...]

    @classmethod
    def make(cls, pairs) -> "TwistorBundleType":
        agg: dict[Fraction, int] = {}
        for slope, mult in pairs:
            slope = Fraction(slope)
            if mult < 1:
                raise DomainError("multiplicity must be >= 1")
            if slope.denominator not in (1, 2):
                raise DomainError("slope must be a half-integer")
            agg[slope] = agg.get(slope, 0) + mult
        return cls(tuple(sorted(agg.items())))

    @staticmethod
    def summand_rank(slope: Fraction) -> int:
        return 1 if slope.denominator == 1 else 2

    @property
    def rank(self) -> int:
        return sum(self.summand_rank(s) * m for s, m in self.summands)

    @property
    def degree(self) -> int:
        d = sum(s * self.summand_rank(s) * m for s, m in self.summands)
        assert d.denominator == 1
        return int(d)

    @property
    def slope_total(self) -> Fraction:
        if not self.summands:
            raise DomainError("empty bundle has no slope")
        return Fraction(self.degree, self.rank)

    def dual(self) -> "TwistorBundleType":
        return TwistorBundleType.make([(-s, m) for s, m in self.summands])

    def __add__(self, other: "TwistorBundleType") -> "TwistorBundleType":
        return TwistorBundleType.make(list(self.summands) + list(other.summands))


def to_twistor(h: PureHodgeStructure) -> TwistorBundleType:
    """n slope-w/2 rank-1 summands for even w; n/2 rank-2 for odd w."""
    ok, bad = validate_pure(h)
    if not ok:
        raise DomainError(f"structure is not pure (fails at p={bad})")
    if h.w % 2 == 0:
        return TwistorBundleType.make([(Fraction(h.w, 2), h.n)])
    if h.n % 2:
        raise DomainError("odd weight forces even dimension")
    return TwistorBundleType.make([(Fraction(h.w, 2), h.n // 2)])


@dataclass(frozen=True)
class EquivariantTwistorStructure:
    bundle: TwistorBundleType
    weight: int
    weights: tuple[tuple[int, int], ...]  # (U(1)-weight p, dimension)

    @classmethod
    def make(cls, bundle, weight, weights) -> "EquivariantTwistorStructure":
        ws = tuple(sorted((int(p), int(d)) for p, d in weights if d))
        if any(d < 1 for _, d in ws):
            raise DomainError("weight-space dimensions must be positive")
        total = sum(d for _, d in ws)
        fiber_dim = sum(
            TwistorBundleType.summand_rank(s) * m for s, m in bundle.summands
        )
        # the distinguished fiber of the underlying C^n is n-dimensional:
        n = sum(
            (2 if s.denominator == 2 else 1) * m for s, m in bundle.summands
        )
        if total != n:
            raise DomainError("weight dimensions do not sum to the fiber dimension")
        return cls(bundle, weight, ws)


def to_equivariant(h: PureHodgeStructure) -> EquivariantTwistorStructure:
    """Attach the graded dimensions (p, dim F^p - dim F^(p+1)) to the type."""
    bundle = to_twistor(h)
    lo, hi = h.index_range
    weights = []
    for p in range(lo, hi):
        d = h.dim_f(p) - h.dim_f(p + 1)
        if d:
            weights.append((p, d))
    return EquivariantTwistorStructure.make(bundle, h.w, weights)


def from_equivariant(t: EquivariantTwistorStructure) -> dict[tuple[int, int], int]:
    """Recover the Hodge numbers: h^(p, w-p) = dim of the weight-p space."""
    w = t.weight
    out = {(p, w - p): d for p, d in t.weights}
    # pairing consistency h^(p, w-p) = h^(w-p, p)
    for (p, q), d in out.items():
        if out.get((q, p)) != d:
            raise DomainError("weight data violates Hodge symmetry")
    return out


def descent_obstruction(d: int) -> int:
    """The sign acquired by the antiholomorphic lift squared on the d-th
    tensor power of the tautological bundle: computed by applying the
    coordinate lift (z1, z2) -> (-conj z2, conj z1) twice and propagating
    the resulting scalar through the tensor power."""
    samples = [
        (GaussianRational(1), GaussianRational(0)),
        (GaussianRational(2, 3), GaussianRational(1, 5)),
        (GaussianRational(0), GaussianRational(1)),
    ]

    def lift(v):
        return (-v[1].conjugate(), v[0].conjugate())

    scalar = None
    for v in samples:
        img = lift(lift(v))
        # img = scalar * v componentwise
        for a, b in zip(img, v):
            if b:
                s = a / b
                if scalar is None:
                    scalar = s
                elif scalar != s:
                    raise DomainError("lift squared is not scalar")
    assert scalar is not None
    # scalar on the |d|-th tensor power: the factor acts on each slot
    result = GaussianRational(1)
    for _ in range(abs(d)):
        result = result * scalar
    if result == GaussianRational(1):
        return 1
    if result == GaussianRational(-1):
        return -1
    raise DomainError("unexpected obstruction scalar")


# ---------------------------------------------------------------------------
# Random generation for property runs
# ---------------------------------------------------------------------------


def random_pure_structure(
    n: int, w: int, rng: random.Random, max_tries: int = 400
) -> PureHodgeStructure:
    """A random valid structure: graded dimensions first, then generic flags,
    rejection-sampled on the exact purity test."""
    if n < 1:
        raise DomainError("dimension must be positive")
    if w % 2 and n % 2:
        raise DomainError("odd weight needs even dimension")
    for _ in range(max_tries):
        # symmetric graded dimensions h^(p, w-p) = h^(w-p, p) summing to n
        hs = _random_symmetric_dims(n, w, rng)
        vecs = _random_flag(hs, n, w, rng)
        try:
            h = PureHodgeStructure.make(n, w, vecs)
        except DomainError:
            continue
        ok, _ = validate_pure(h)
        if ok:
            return h
    raise DomainError("could not generate a pure structure (try other n, w)")


def _random_symmetric_dims(n, w, rng):
    spread = rng.randint(0, 2)
    p0, q0 = w // 2, w - w // 2
    ps = list(range(min(p0, q0) - spread, max(p0, q0) + spread + 1))
    while True:
        dims = {p: 0 for p in ps}
        remaining = n
        # fill symmetrically
        pairs = []
        seen = set()
        for p in ps:
            q = w - p
            key = (min(p, q), max(p, q))
            if key not in seen:
                seen.add(key)
                pairs.append(key)
        for p, q in pairs:
            if remaining <= 0:
                break
            if p == q:
                d = rng.randint(0, remaining)
                dims[p] += d
                remaining -= d
            else:
                d = rng.randint(0, remaining // 2)
                dims[p] += d
                dims[q] = dims.get(q, 0) + d
                remaining -= 2 * d
        if remaining == 0:
            return {p: d for p, d in dims.items() if d}


def _random_flag(hs, n, w, rng):
    """Generic flag with prescribed graded dimensions.

    The filtration basis at level p consists of the first sum_{p' >= p} h^(p')
    vectors of a random basis; genericity makes purity hold with high
    probability (verified by the caller).
    """

    def rnum():
        return GaussianRational(
            Fraction(rng.randint(-4, 4)), Fraction(rng.randint(-4, 4))
        )

    vectors = []
    while rank([list(v) for v in vectors]) < n:
        vectors = [tuple(rnum() for _ in range(n)) for _ in range(n)]
    fil = {}
    ordered = sorted(hs, reverse=True)
    acc = []
    for p in ordered:
        acc = acc + vectors[len(acc) : len(acc) + hs[p]]
        fil[p] = list(acc)
    return fil
