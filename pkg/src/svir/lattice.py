"""Rank-n index lattice, its half-integer coset, cones and unimodular bases.

Even indices are integer vectors; odd indices live on the coset sigma + Z^n
where 2*sigma is integral.  Index vectors embed into the scalar field as
linear combinations of the d-indeterminates, so all identity checking stays
exact and symbolic.

Everything here is immutable and pure.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import ceil, floor

from .scalar import ScalarContext, ScalarExpr, as_fraction


class LatticeError(Exception):
    pass


class ParityError(LatticeError):
    """Coordinates do not match the declared parity class."""


class NonUnimodularError(LatticeError):
    """A matrix used as a lattice basis must have determinant +-1."""


class Parity(Enum):
    EVEN = "even"
    ODD = "odd"

    def __add__(self, other):
        return Parity.EVEN if self is other else Parity.ODD


@dataclass(frozen=True)
class IndexVector:
    """Half-integer coordinate vector tagged with its parity class."""

    coords: tuple
    parity: Parity

    def __add__(self, other):
        return IndexVector(tuple(a + b for a, b in zip(self.coords, other.coords)),
                           self.parity + other.parity)

    def __neg__(self):
        return IndexVector(tuple(-a for a in self.coords), self.parity)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, m: int):
        if self.parity is not Parity.EVEN:
            raise ParityError("only even index vectors support integer scaling")
        return IndexVector(tuple(a * m for a in self.coords), Parity.EVEN)

    def is_zero(self):
        return all(a == 0 for a in self.coords)

    def __str__(self):
        return "[" + ",".join(str(c) for c in self.coords) + "]"


class AlgebraConfig:
    """Session configuration: rank, d-indeterminates, coset offset sigma.

    The scalar context is derived from the d-names plus any extra parameter
    names; it is fixed for the lifetime of the config.
    """

    def __init__(self, n, d_names, sigma, extra_names=()):
        if n < 1:
            raise ValueError("rank must be positive")
        d_names = tuple(d_names)
        if len(d_names) != n:
            raise ValueError("need exactly one d-name per rank")
        sigma = tuple(as_fraction(s) for s in sigma)
        if len(sigma) != n:
            raise ValueError("sigma must have one entry per rank")
        for s in sigma:
            if (2 * s).denominator != 1:
                raise ValueError("2*sigma must be integral")
        self.n = n
        self.d_names = d_names
        self.sigma = sigma
        self.ctx = ScalarContext(d_names + tuple(extra_names))
        self._embed_cache = {}

    # -- index construction -------------------------------------------------

    def index(self, coords, parity) -> IndexVector:
        coords = tuple(as_fraction(c) for c in coords)
        if len(coords) != self.n:
            raise ValueError(f"expected {self.n} coordinates, got {len(coords)}")
        offset = self.sigma if parity is Parity.ODD else (Fraction(0),) * self.n
        for c, s in zip(coords, offset):
            if (c - s).denominator != 1:
                raise ParityError(
                    f"coordinates {coords} are not in the {parity.value} class")
        return IndexVector(coords, parity)

    def even(self, coords) -> IndexVector:
        return self.index(coords, Parity.EVEN)

    def odd(self, coords) -> IndexVector:
        return self.index(coords, Parity.ODD)

    @property
    def zero_index(self) -> IndexVector:
        return IndexVector((Fraction(0),) * self.n, Parity.EVEN)

    @property
    def sigma_index(self) -> IndexVector:
        return IndexVector(self.sigma, Parity.ODD)

    def unit(self, i) -> IndexVector:
        return IndexVector(tuple(Fraction(1 if j == i else 0) for j in range(self.n)),
                           Parity.EVEN)

    # -- scalars -------------------------------------------------------------

    def var(self, name) -> ScalarExpr:
        return self.ctx.var(name)

    def scalar(self, value) -> ScalarExpr:
        return self.ctx.scalar(value)

    def embed(self, v: IndexVector) -> ScalarExpr:
        """Linear embedding sum(c_i * d_i); injective on the half-integer lattice."""
        cached = self._embed_cache.get(v.coords)
        if cached is None:
            cached = self.ctx.zero
            for c, name in zip(v.coords, self.d_names):
                if c:
                    cached = cached + self.ctx.var(name) * c
            self._embed_cache[v.coords] = cached
        return cached

    # -- finite boxes ----------------------------------------------------------

    def even_box(self, radius):
        """All even vectors with every |coordinate| <= radius, in lex order."""
        radius = as_fraction(radius)
        top = floor(radius)
        ranges = [range(-top, top + 1)] * self.n
        return tuple(self.even(c) for c in itertools.product(*ranges))

    def odd_box(self, radius):
        """All odd vectors with every |coordinate| <= radius, in lex order."""
        radius = as_fraction(radius)
        ranges = []
        for s in self.sigma:
            lo = ceil(-radius - s)
            hi = floor(radius - s)
            ranges.append([s + k for k in range(lo, hi + 1)])
        return tuple(IndexVector(c, Parity.ODD) for c in itertools.product(*ranges))

    def in_box(self, v: IndexVector, radius) -> bool:
        radius = as_fraction(radius)
        return all(abs(c) <= radius for c in v.coords)


# ---------------------------------------------------------------------------
# Integer bases
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LatticeBasis:
    """n x n integer matrix; row i holds the coordinates of the i-th basis
    vector relative to the reference basis."""

    rows: tuple

    def __post_init__(self):
        n = len(self.rows)
        rows = tuple(tuple(int(x) for x in row) for row in self.rows)
        if any(len(row) != n for row in rows):
            raise ValueError("basis matrix must be square")
        object.__setattr__(self, "rows", rows)

    @property
    def n(self):
        return len(self.rows)

    @classmethod
    def identity(cls, n):
        return cls(tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)))

    def row_vector(self, i) -> IndexVector:
        return IndexVector(tuple(Fraction(x) for x in self.rows[i]), Parity.EVEN)

    def __str__(self):
        return "[" + ",".join("[" + ",".join(str(x) for x in r) + "]" for r in self.rows) + "]"


@dataclass(frozen=True)
class ConeSpec:
    """All vectors whose coordinates in `basis` are >= k (even: integers,
    odd: half-integers)."""

    basis: LatticeBasis
    k: int
    parity: Parity

    def __post_init__(self):
        if self.k < 0:
            raise ValueError("cone level k must be nonnegative")


def unimodular_det(basis: LatticeBasis) -> int:
    """Exact integer determinant (fraction-free Bareiss elimination)."""
    n = basis.n
    a = [list(row) for row in basis.rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


# -- exact rational linear algebra helpers -----------------------------------

def _solve_combination(rows, target):
    """Solve sum x_i * rows[i] = target over Q.

    Returns the coefficient list, or None when target is outside the row
    span.  Raises ValueError if the rows are linearly dependent.
    """
    k = len(rows)
    m = len(target)
    # columns of the transposed system, augmented with the target
    aug = [[Fraction(rows[i][j]) for i in range(k)] + [Fraction(target[j])]
           for j in range(m)]
    pivot_rows = []
    r = 0
    for col in range(k):
        pivot = next((i for i in range(r, m) if aug[i][col] != 0), None)
        if pivot is None:
            raise ValueError("basis rows must be linearly independent")
        aug[r], aug[pivot] = aug[pivot], aug[r]
        pv = aug[r][col]
        aug[r] = [x / pv for x in aug[r]]
        for i in range(m):
            if i != r and aug[i][col] != 0:
                f = aug[i][col]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        pivot_rows.append(r)
        r += 1
    for i in range(r, m):
        if aug[i][k] != 0:
            return None
    return [aug[i][k] for i in range(k)]


def change_of_coords(v: IndexVector, bprime: LatticeBasis):
    """Exact coordinates of v in the basis bprime; round-trips with embed."""
    if abs(unimodular_det(bprime)) != 1:
        raise NonUnimodularError("change of coordinates needs a unimodular basis")
    coords = _solve_combination(bprime.rows, v.coords)
    return tuple(coords)


def cone_member(v: IndexVector, cone: ConeSpec) -> bool:
    """Membership in the level-k cone of the cone's basis."""
    if v.parity is not cone.parity:
        raise ParityError("vector parity does not match the cone parity")
    coords = change_of_coords(v, cone.basis)
    for c in coords:
        if (2 * c).denominator != 1:
            raise LatticeError("cone coordinates must be half-integral")
    return all(c >= cone.k for c in coords)


# ---------------------------------------------------------------------------
# Constructive bases
# ---------------------------------------------------------------------------

def nested_cone_basis(n, k) -> LatticeBasis:
    """Basis whose nonnegative cone sits inside the level-k cone of the
    reference basis.

    Row i (1-based) is sum_{j<=i} (k+i-j+1) d_j + k * sum_{j>i} d_j.  The
    determinant is exactly +1 for every rank n >= 2 and k >= 0 (at rank 1
    it would be k+1, so rank 1 is rejected).
    """
    if k < 0:
        raise ValueError("k must be nonnegative")
    if n < 2:
        raise ValueError("rank must be at least 2")
    rows = []
    for i in range(1, n + 1):
        row = [(k + i - j + 1) if j <= i else k for j in range(1, n + 1)]
        rows.append(tuple(row))
    return LatticeBasis(tuple(rows))


@dataclass(frozen=True)
class ConeInclusionReport:
    k: int
    bound: int
    checked: int
    violations: tuple
    ok: bool

    def to_dict(self):
        return {
            "k": self.k,
            "bound": self.bound,
            "checked": self.checked,
            "violations": [{"m_prime": list(m), "coords": [str(c) for c in coords]}
                           for m, coords in self.violations],
            "ok": self.ok,
        }


def cone_inclusion_check(k, bprime: LatticeBasis, bound) -> ConeInclusionReport:
    """Check that every nonzero nonnegative combination of the rows of
    bprime, with coefficient sum <= bound, has all reference coordinates
    >= k.  Violations are collected exhaustively (none are expected)."""
    n = bprime.n
    checked = 0
    violations = []
    for m_prime in itertools.product(range(bound + 1), repeat=n):
        if sum(m_prime) == 0 or sum(m_prime) > bound:
            continue
        coords = [0] * n
        for mi, row in zip(m_prime, bprime.rows):
            if mi:
                for j in range(n):
                    coords[j] += mi * row[j]
        checked += 1
        if any(c < k for c in coords):
            violations.append((m_prime, tuple(Fraction(c) for c in coords)))
    return ConeInclusionReport(k, bound, checked, tuple(violations),
                               ok=not violations)


@dataclass(frozen=True)
class AdaptedBasis:
    """Unimodular basis assembled from integer multiples of a vector mu plus
    unit steps, together with the normalization bookkeeping."""

    basis: LatticeBasis
    case: str                 # "two_nonzero" or "some_zero"
    sign_flips: tuple         # +1/-1 per coordinate making mu nonnegative
    permutation: tuple        # slot i was filled from original coordinate permutation[i]

    def to_dict(self):
        return {
            "basis": [list(r) for r in self.basis.rows],
            "case": self.case,
            "sign_flips": list(self.sign_flips),
            "permutation": list(self.permutation),
            "det": unimodular_det(self.basis),
        }


def adapted_cone_basis(mu: IndexVector) -> AdaptedBasis:
    """Build a unimodular basis from mu and unit vectors.

    With nonnegative coordinates m_i (sign flips recorded), the rows are
    m2*mu + d1, m1*mu - d2 and (row1 + d_i) when m1 and m2 are both nonzero;
    otherwise a zero coordinate is permuted to the front and the rows are
    mu + d1 and (row1 + d_i).  |det| = 1 in both cases; mu = 0 falls into
    the second case.
    """
    if mu.parity is not Parity.EVEN:
        raise ParityError("the adapted basis is built from an even vector")
    n = len(mu.coords)
    if n < 2:
        raise ValueError("rank must be at least 2")
    m = [int(c) for c in mu.coords]
    flips = tuple(-1 if mi < 0 else 1 for mi in m)
    mt = [abs(mi) for mi in m]

    def unit(i, s):
        return tuple(s if j == i else 0 for j in range(n))

    def vadd(*vecs):
        return tuple(sum(parts) for parts in zip(*vecs))

    def vscale(vec, c):
        return tuple(c * x for x in vec)

    mu_row = tuple(m)
    if mt[0] != 0 and mt[1] != 0:
        case = "two_nonzero"
        perm = tuple(range(n))
        row1 = vadd(vscale(mu_row, mt[1]), unit(0, flips[0]))
        row2 = vadd(vscale(mu_row, mt[0]), unit(1, -flips[1]))
        rows = [row1, row2]
        for i in range(2, n):
            rows.append(vadd(row1, unit(i, flips[i])))
    else:
        case = "some_zero"
        z = mt.index(0)
        perm = (z,) + tuple(i for i in range(n) if i != z)
        row1 = vadd(mu_row, unit(z, flips[z]))
        rows = [row1]
        for i in perm[1:]:
            rows.append(vadd(row1, unit(i, flips[i])))
    return AdaptedBasis(LatticeBasis(tuple(rows)), case, flips, perm)


# ---------------------------------------------------------------------------
# Isomorphism criterion
# ---------------------------------------------------------------------------

def iso_check(m_basis, s, mprime_basis, sprime, alpha) -> bool:
    """Decide whether alpha carries (M, s) onto (M', s').

    The lattices are given by rational coordinate matrices over a shared
    ambient space (rows are basis vectors).  Returns True exactly when
    alpha*M = M' as lattices and s' - alpha*s lies in M'.
    """
    alpha = as_fraction(alpha)
    if alpha == 0:
        raise ValueError("alpha must be nonzero")
    a_rows = [tuple(as_fraction(x) for x in row) for row in m_basis]
    ap_rows = [tuple(as_fraction(x) for x in row) for row in mprime_basis]
    s = tuple(as_fraction(x) for x in s)
    sp = tuple(as_fraction(x) for x in sprime)
    if len(a_rows) != len(ap_rows):
        raise ValueError("lattices must have the same rank")
    ambient = len(a_rows[0])
    if any(len(r) != ambient for r in a_rows + ap_rows) or len(s) != ambient or len(sp) != ambient:
        raise ValueError("all vectors must share one ambient dimension")

    scaled = [tuple(alpha * x for x in row) for row in a_rows]
    transition = []
    for row in ap_rows:
        coeffs = _solve_combination(scaled, row)
        if coeffs is None or any(c.denominator != 1 for c in coeffs):
            return False
        transition.append(tuple(int(c) for c in coeffs))
    if abs(unimodular_det(LatticeBasis(tuple(transition)))) != 1:
        return False

    shift = tuple(x - alpha * y for x, y in zip(sp, s))
    coeffs = _solve_combination(ap_rows, shift)
    if coeffs is None or any(c.denominator != 1 for c in coeffs):
        return False
    return True
