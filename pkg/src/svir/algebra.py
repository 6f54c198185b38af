"""The rank-n super-Virasoro algebra: graded bracket and identity checks.

The even part is spanned by L_mu (mu in the integer lattice) and a central
element c; the odd part by G_eta (eta on the half-integer coset).  The
defining bracket is

    [L_mu, L_nu]   = (nu - mu) L_{mu+nu} - delta_{mu+nu,0} (1/12)(mu^3 - mu) c
    [L_mu, G_eta]  = (eta - mu/2) G_{mu+eta}
    [G_eta, G_lam] = 2 L_{eta+lam} - delta_{eta+lam,0} (1/3)(eta^2 - 1/4) c
    [x, c]         = 0

where an index in a scalar position means its embedding into the scalar
field and the Kronecker delta is decided exactly on coordinate vectors.
The [G, L] bracket follows from graded antisymmetry, and the graded Jacobi
identity is checked in Leibniz form.  If a bracket table is inconsistent,
the residual is reported verbatim; signs are never adjusted silently.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .formal import FormalSum
from .lattice import (AlgebraConfig, IndexVector, Parity, ParityError,
                      adapted_cone_basis)
from .scalar import ScalarExpr


class AlgebraError(Exception):
    pass


class HomogeneityError(AlgebraError):
    """An operation requires parity-homogeneous arguments."""


class DegenerateFactorError(AlgebraError):
    """A ladder or witness scalar factor vanished (degenerate specialization)."""


class Kind(Enum):
    L = "L"
    G = "G"
    C = "c"


_KIND_RANK = {Kind.L: 0, Kind.G: 1, Kind.C: 2}


@dataclass(frozen=True)
class BasisElt:
    """L_mu, G_eta or the central element c."""

    kind: Kind
    index: IndexVector | None

    def __post_init__(self):
        if self.kind is Kind.C:
            if self.index is not None:
                raise ValueError("the central element carries no index")
        elif self.kind is Kind.L:
            if self.index is None or self.index.parity is not Parity.EVEN:
                raise ParityError("L requires an even index")
        else:
            if self.index is None or self.index.parity is not Parity.ODD:
                raise ParityError("G requires an odd index")

    @property
    def parity(self) -> int:
        return 1 if self.kind is Kind.G else 0

    def sort_key(self):
        return (_KIND_RANK[self.kind],
                self.index.coords if self.index is not None else ())

    def __str__(self):
        if self.kind is Kind.C:
            return "c"
        return f"{self.kind.value}{self.index}"


CENTRAL = BasisElt(Kind.C, None)


class AlgebraElement(FormalSum):
    """Finite formal sum of basis elements with scalar coefficients."""

    def parity(self):
        """0 or 1 for homogeneous elements (zero counts as even), else None."""
        parities = {sym.parity for sym in self.terms}
        if not parities:
            return 0
        if len(parities) > 1:
            return None
        return parities.pop()


class SuperVirasoro:
    """Bracket machinery bound to one algebra configuration.

    Basis brackets are cached; all operations are pure.
    """

    def __init__(self, config: AlgebraConfig):
        self.config = config
        self._pair_cache = {}

    # -- element builders ------------------------------------------------------

    def L(self, coords) -> BasisElt:
        return BasisElt(Kind.L, self.config.even(coords))

    def G(self, coords) -> BasisElt:
        return BasisElt(Kind.G, self.config.odd(coords))

    def c(self) -> BasisElt:
        return CENTRAL

    def element(self, x) -> AlgebraElement:
        if isinstance(x, AlgebraElement):
            return x
        if isinstance(x, BasisElt):
            return AlgebraElement({x: self.config.ctx.one})
        raise TypeError(f"cannot coerce {x!r} to an algebra element")

    # -- the bracket -----------------------------------------------------------

    def bracket_basis(self, x: BasisElt, y: BasisElt) -> AlgebraElement:
        """Bracket of two basis elements, straight from the defining table."""
        key = (x, y)
        cached = self._pair_cache.get(key)
        if cached is None:
            cached = self._bracket_basis(x, y)
            self._pair_cache[key] = cached
        return cached

    def _bracket_basis(self, x, y):
        cfg = self.config
        if x.kind is Kind.C or y.kind is Kind.C:
            return AlgebraElement({})
        embed = cfg.embed
        terms = {}
        if x.kind is Kind.L and y.kind is Kind.L:
            mu, nu = x.index, y.index
            coeff = embed(nu) - embed(mu)
            total = mu + nu
            if not coeff.is_zero():
                terms[BasisElt(Kind.L, total)] = coeff
            if total.is_zero():
                e = embed(mu)
                central = -(e ** 3 - e) * Fraction(1, 12)
                if not central.is_zero():
                    terms[CENTRAL] = central
        elif x.kind is Kind.L and y.kind is Kind.G:
            mu, eta = x.index, y.index
            coeff = embed(eta) - embed(mu) * Fraction(1, 2)
            if not coeff.is_zero():
                terms[BasisElt(Kind.G, mu + eta)] = coeff
        elif x.kind is Kind.G and y.kind is Kind.L:
            eta, mu = x.index, y.index
            coeff = embed(mu) * Fraction(1, 2) - embed(eta)
            if not coeff.is_zero():
                terms[BasisElt(Kind.G, mu + eta)] = coeff
        else:
            eta, lam = x.index, y.index
            total = eta + lam
            terms[BasisElt(Kind.L, total)] = cfg.scalar(2)
            if total.is_zero():
                e = embed(eta)
                central = -(e ** 2 - Fraction(1, 4)) * Fraction(1, 3)
                if not central.is_zero():
                    terms[CENTRAL] = central
        return AlgebraElement(terms)

    def bracket(self, x, y) -> AlgebraElement:
        """Bilinear extension of the basis bracket."""
        x = self.element(x)
        y = self.element(y)
        out = AlgebraElement({})
        for bx, cx in x.items():
            for by, cy in y.items():
                out = out + self.bracket_basis(bx, by).scale(cx * cy)
        return out

    # -- identity checks ---------------------------------------------------------

    def super_jacobi_residual(self, x, y, z) -> AlgebraElement:
        """Residual of the graded Leibniz identity on a homogeneous triple.

        Returns [x,[y,z]] - [[x,y],z] - (-1)^{|x||y|} [y,[x,z]]; zero
        certifies the identity on that triple.
        """
        x, y, z = self.element(x), self.element(y), self.element(z)
        px, py, pz = x.parity(), y.parity(), z.parity()
        if px is None or py is None or pz is None:
            raise HomogeneityError("the Jacobi residual needs homogeneous inputs")
        out = self.bracket(x, self.bracket(y, z)) - self.bracket(self.bracket(x, y), z)
        inner = self.bracket(y, self.bracket(x, z))
        if px and py:
            return out + inner
        return out - inner

    def ad_power(self, x, m: int, y) -> AlgebraElement:
        """m-fold left bracket with x; m = 0 returns y unchanged."""
        if m < 0:
            raise ValueError("ad power needs a nonnegative exponent")
        out = self.element(y)
        for _ in range(m):
            out = self.bracket(x, out)
        return out

    def ladder_identity_check(self, d: IndexVector, mu: IndexVector, m: int) -> bool:
        """Check the ad-ladder identities reaching L_{mu+m*d} and G_{sigma+mu+m*d}.

        Iterating ad L_d from L_mu multiplies by (mu + i*d) for
        i = -1..m-2; from G_{sigma+mu} it multiplies by
        (sigma + mu + (i + 1/2)*d) over the same range.  True exactly when
        both recovered generators match after dividing out the products.
        """
        if m < 1:
            raise ValueError("m must be positive")
        if d.parity is not Parity.EVEN:
            raise ParityError("the ladder steps by an even index")
        if mu.parity is not Parity.EVEN:
            raise ParityError("mu must be an even index")
        cfg = self.config
        e_d = cfg.embed(d)
        e_mu = cfg.embed(mu)

        factors_l = [e_mu + e_d * i for i in range(-1, m - 1)]
        eta0 = cfg.sigma_index + mu
        e_eta0 = cfg.embed(eta0)
        factors_g = [e_eta0 + e_d * Fraction(2 * i + 1, 2) for i in range(-1, m - 1)]
        for f in factors_l + factors_g:
            if f.is_zero():
                raise DegenerateFactorError(
                    "a ladder factor vanishes for this specialization")

        l_d = self.L(d.coords)
        prod_l = cfg.ctx.one
        for f in factors_l:
            prod_l = prod_l * f
        lhs_l = self.element(BasisElt(Kind.L, mu + d.scale(m))).scale(prod_l)
        ok_l = self.ad_power(l_d, m, BasisElt(Kind.L, mu)) == lhs_l

        prod_g = cfg.ctx.one
        for f in factors_g:
            prod_g = prod_g * f
        lhs_g = self.element(BasisElt(Kind.G, eta0 + d.scale(m))).scale(prod_g)
        ok_g = self.ad_power(l_d, m, BasisElt(Kind.G, eta0)) == lhs_g
        return ok_l and ok_g

    # -- adapted-basis bracket witnesses ---------------------------------------

    def bracket_generation_witness(self, mu: IndexVector) -> "WitnessReport":
        """Certify that every adapted-basis generator is bracket-reachable.

        For the basis returned by adapted_cone_basis(mu), each row d'_i is
        produced from a generator whose index differs from mu by a vector
        with coordinates in {-1, 0, 1}, by applying ad L_mu a recorded
        number of times; the resulting scalar is compared exactly with the
        product of the step factors (the empty product is 1).
        """
        cfg = self.config
        adapted = adapted_cone_basis(mu)
        n = cfg.n
        flips = adapted.sign_flips
        d_t = [cfg.unit(i).scale(flips[i]) for i in range(n)]
        mt = [abs(int(c)) for c in mu.coords]
        e_mu = cfg.embed(mu)

        chains = []
        if adapted.case == "two_nonzero":
            chains.append((0, mu + d_t[0], mt[1] - 1, cfg.embed(d_t[0])))
            chains.append((1, mu - d_t[1], mt[0] - 1, -cfg.embed(d_t[1])))
            for i in range(2, n):
                chains.append((i, mu + d_t[0] + d_t[i], mt[1] - 1,
                               cfg.embed(d_t[0]) + cfg.embed(d_t[i])))
        else:
            for i in range(n):
                chains.append((i, adapted.basis.row_vector(i), 0, cfg.ctx.zero))

        entries = []
        for row, start, copies, offset in chains:
            product = cfg.ctx.one
            for t in range(copies):
                factor = e_mu * t + offset
                if factor.is_zero():
                    raise DegenerateFactorError("a witness product factor vanished")
                product = product * factor
            target = adapted.basis.row_vector(row)
            got = self.ad_power(BasisElt(Kind.L, mu), copies, BasisElt(Kind.L, start))
            expected = self.element(BasisElt(Kind.L, target)).scale(product)
            step = start - mu
            in_a = all(c in (-1, 0, 1) for c in step.coords)
            entries.append(WitnessEntry(row, start, copies, product,
                                        step, in_a, got == expected))
        ok = all(e.step_in_neighborhood and e.bracket_ok for e in entries)
        return WitnessReport(adapted, tuple(entries), ok)

    # -- structural helpers ------------------------------------------------------

    def parity_weight(self, x) -> tuple:
        """Parity label and the shared ad-L_0 weight of an element.

        The weight of L_mu and G_eta is the embedding of the index; c has
        weight 0.  When the terms do not share one index the weight is None
        and the parity may be "mixed".
        """
        x = self.element(x)
        cfg = self.config
        parities = {sym.parity for sym in x.terms}
        if not parities:
            return ("even", cfg.ctx.zero)
        parity = "mixed" if len(parities) > 1 else ("odd" if parities.pop() else "even")
        indexes = {sym.index if sym.index is not None else cfg.zero_index
                   for sym in x.terms}
        if len(indexes) == 1:
            return (parity, cfg.embed(indexes.pop()))
        return (parity, None)


@dataclass(frozen=True)
class WitnessEntry:
    row: int
    start: IndexVector
    copies: int
    product: ScalarExpr
    step: IndexVector
    step_in_neighborhood: bool
    bracket_ok: bool

    def to_dict(self):
        return {
            "row": self.row,
            "start": str(self.start),
            "copies": self.copies,
            "product": str(self.product),
            "step": str(self.step),
            "step_in_neighborhood": self.step_in_neighborhood,
            "bracket_ok": self.bracket_ok,
        }


@dataclass(frozen=True)
class WitnessReport:
    adapted: object
    entries: tuple
    ok: bool

    def to_dict(self):
        return {
            "adapted_basis": self.adapted.to_dict(),
            "entries": [e.to_dict() for e in self.entries],
            "ok": self.ok,
        }
