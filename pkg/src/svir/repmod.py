"""The three intermediate-series module families and desk-scale probes.

Families SA_{a,b}, SA_{a'} and SB_{a'} all have one-dimensional weight
spaces.  SA and SA' carry x over the integer lattice and y over the
half-integer coset; SB' swaps the two.  The central element acts as zero
everywhere.  The action tables, including every special case at index 0,
-mu and -lambda, are:

    SA_{a,b}:  L_mu x_nu  = (a + nu + mu*b) x_{mu+nu}
               L_mu y_eta = (a + eta + mu*(b - 1/2)) y_{mu+eta}
               G_lam x_nu  = y_{lam+nu}
               G_lam y_eta = (a + eta + 2*lam*(b - 1/2)) x_{lam+eta}

    SA_{a'}:   L_mu x_nu = (nu + mu) x_{mu+nu}       (nu != 0)
               L_mu x_0  = mu*(mu + a') x_mu
               L_mu y_eta = (eta + mu/2) y_{mu+eta}
               G_lam x_nu = y_{lam+nu}               (nu != 0)
               G_lam x_0  = (2*lam + a') y_lam
               G_lam y_eta = (eta + lam) x_{lam+eta}

    SB_{a'}:   L_mu x_eta = (eta + mu/2) x_{mu+eta}
               L_mu y_nu  = nu y_{mu+nu}             (nu != -mu)
               L_mu y_{-mu} = -mu*(mu + a') y_0
               G_lam x_eta = y_{lam+eta}             (eta != -lam)
               G_lam x_{-lam} = (2*lam + a') y_0
               G_lam y_nu = nu x_{lam+nu}

Closure, simplicity and highest-weight probes work inside a truncation box
and are reported as box-level evidence only, never as proofs.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .algebra import BasisElt, Kind, SuperVirasoro
from .formal import FormalSum
from .lattice import (AlgebraConfig, IndexVector, LatticeBasis, Parity,
                      ParityError, change_of_coords, unimodular_det)
from .scalar import ScalarExpr, as_fraction


class ModuleError(Exception):
    pass


class InvariantError(ModuleError):
    """A subset claimed to be closure-invariant is not."""


class Family(Enum):
    SA = "SA"
    SAPRIME = "SAprime"
    SBPRIME = "SBprime"


@dataclass(frozen=True)
class ModuleSpec:
    """Family tag plus its parameters as exact scalars."""

    family: Family
    a: ScalarExpr | None = None
    b: ScalarExpr | None = None
    aprime: ScalarExpr | None = None

    def __post_init__(self):
        if self.family is Family.SA:
            if self.a is None or self.b is None or self.aprime is not None:
                raise ValueError("SA takes parameters a and b")
        else:
            if self.aprime is None or self.a is not None or self.b is not None:
                raise ValueError(f"{self.family.value} takes the single parameter a'")

    @classmethod
    def sa(cls, a, b):
        return cls(Family.SA, a=a, b=b)

    @classmethod
    def sa_prime(cls, aprime):
        return cls(Family.SAPRIME, aprime=aprime)

    @classmethod
    def sb_prime(cls, aprime):
        return cls(Family.SBPRIME, aprime=aprime)

    @property
    def x_parity(self) -> Parity:
        return Parity.ODD if self.family is Family.SBPRIME else Parity.EVEN

    @property
    def y_parity(self) -> Parity:
        return Parity.EVEN if self.family is Family.SBPRIME else Parity.ODD

    def params(self):
        if self.family is Family.SA:
            return {"a": self.a, "b": self.b}
        return {"a'": self.aprime}


@dataclass(frozen=True)
class ModuleBasisVector:
    """x or y basis symbol with its index."""

    kind: str
    index: IndexVector

    def __post_init__(self):
        if self.kind not in ("x", "y"):
            raise ValueError("module basis symbols are x and y")

    def sort_key(self):
        return (self.kind, self.index.coords)

    def __str__(self):
        return f"{self.kind}{self.index}"


class ModuleVector(FormalSum):
    """Finite formal sum of module basis vectors."""


@dataclass(frozen=True)
class BoxSpec:
    """Truncation box: all indices with every |coordinate| <= radius."""

    radius: Fraction

    def __post_init__(self):
        radius = as_fraction(self.radius)
        if radius < 1:
            raise ValueError("the box radius must be at least 1")
        if (2 * radius).denominator != 1:
            raise ValueError("the box radius must be a half-integer")
        object.__setattr__(self, "radius", radius)

    def contains(self, v: IndexVector) -> bool:
        return all(abs(c) <= self.radius for c in v.coords)


class SeriesModule:
    """One intermediate-series module bound to a configuration."""

    def __init__(self, config: AlgebraConfig, spec: ModuleSpec):
        self.config = config
        self.spec = spec
        self.algebra = SuperVirasoro(config)
        self._act_cache = {}

    # -- basis vectors ---------------------------------------------------------

    def x(self, coords) -> ModuleBasisVector:
        return ModuleBasisVector("x", self.config.index(coords, self.spec.x_parity))

    def y(self, coords) -> ModuleBasisVector:
        return ModuleBasisVector("y", self.config.index(coords, self.spec.y_parity))

    def _check_vector(self, v: ModuleBasisVector):
        want = self.spec.x_parity if v.kind == "x" else self.spec.y_parity
        if v.index.parity is not want:
            raise ParityError(
                f"{v.kind} carries {want.value} indices in {self.spec.family.value}")

    def vector(self, v) -> ModuleVector:
        if isinstance(v, ModuleVector):
            return v
        if isinstance(v, ModuleBasisVector):
            self._check_vector(v)
            return ModuleVector({v: self.config.ctx.one})
        raise TypeError(f"cannot coerce {v!r} to a module vector")

    def basis_in_box(self, box: BoxSpec):
        """All basis vectors with index inside the box, x's first, lex order."""
        xs = (self.config.even_box(box.radius) if self.spec.x_parity is Parity.EVEN
              else self.config.odd_box(box.radius))
        ys = (self.config.even_box(box.radius) if self.spec.y_parity is Parity.EVEN
              else self.config.odd_box(box.radius))
        return tuple(ModuleBasisVector("x", i) for i in xs) + \
            tuple(ModuleBasisVector("y", i) for i in ys)

    # -- the action -------------------------------------------------------------

    def act_basis(self, g: BasisElt, v: ModuleBasisVector) -> ModuleVector:
        """Action of one generator on one basis vector, per the family table."""
        key = (g, v)
        cached = self._act_cache.get(key)
        if cached is None:
            cached = self._act_basis(g, v)
            self._act_cache[key] = cached
        return cached

    def _act_basis(self, g, v):
        self._check_vector(v)
        cfg = self.config
        if g.kind is Kind.C:
            return ModuleVector({})
        embed = cfg.embed
        gi = g.index
        vi = v.index
        target = gi + vi
        fam = self.spec.family
        if fam is Family.SA:
            a, b = self.spec.a, self.spec.b
            if g.kind is Kind.L:
                if v.kind == "x":
                    coeff = a + embed(vi) + embed(gi) * b
                else:
                    coeff = a + embed(vi) + embed(gi) * (b - Fraction(1, 2))
                out_kind = v.kind
            else:
                if v.kind == "x":
                    coeff = cfg.ctx.one
                    out_kind = "y"
                else:
                    coeff = a + embed(vi) + embed(gi) * (b - Fraction(1, 2)) * 2
                    out_kind = "x"
        elif fam is Family.SAPRIME:
            ap = self.spec.aprime
            if g.kind is Kind.L:
                if v.kind == "x":
                    if vi.is_zero():
                        coeff = embed(gi) * (embed(gi) + ap)
                    else:
                        coeff = embed(vi) + embed(gi)
                    out_kind = "x"
                else:
                    coeff = embed(vi) + embed(gi) * Fraction(1, 2)
                    out_kind = "y"
            else:
                if v.kind == "x":
                    if vi.is_zero():
                        coeff = embed(gi) * 2 + ap
                    else:
                        coeff = cfg.ctx.one
                    out_kind = "y"
                else:
                    coeff = embed(vi) + embed(gi)
                    out_kind = "x"
        else:
            ap = self.spec.aprime
            if g.kind is Kind.L:
                if v.kind == "x":
                    coeff = embed(vi) + embed(gi) * Fraction(1, 2)
                    out_kind = "x"
                else:
                    if target.is_zero():
                        coeff = -(embed(gi) * (embed(gi) + ap))
                    else:
                        coeff = embed(vi)
                    out_kind = "y"
            else:
                if v.kind == "x":
                    if target.is_zero():
                        coeff = embed(gi) * 2 + ap
                    else:
                        coeff = cfg.ctx.one
                    out_kind = "y"
                else:
                    coeff = embed(vi)
                    out_kind = "x"
        if coeff.is_zero():
            return ModuleVector({})
        return ModuleVector({ModuleBasisVector(out_kind, target): coeff})

    def act(self, g, v) -> ModuleVector:
        """Bilinear extension of the basis action."""
        g = self.algebra.element(g)
        v = self.vector(v)
        out = ModuleVector({})
        for ge, gc in g.items():
            for vb, vc in v.items():
                out = out + self.act_basis(ge, vb).scale(gc * vc)
        return out

    def rep_residual(self, u, w, v) -> ModuleVector:
        """Module-axiom residual on a homogeneous generator pair.

        Returns act([u,w], v) - act(u, act(w, v))
        + (-1)^{|u||w|} act(w, act(u, v)); zero certifies the axiom.
        """
        u = self.algebra.element(u)
        w = self.algebra.element(w)
        v = self.vector(v)
        pu, pw = u.parity(), w.parity()
        if pu is None or pw is None:
            raise ValueError("the module axiom check needs homogeneous generators")
        out = self.act(self.algebra.bracket(u, w), v) - self.act(u, self.act(w, v))
        cross = self.act(w, self.act(u, v))
        if pu and pw:
            return out - cross
        return out + cross

    def weight_of(self, v: ModuleBasisVector) -> ScalarExpr:
        """Eigenvalue of L_0 on v."""
        self._check_vector(v)
        base = self.config.embed(v.index)
        if self.spec.family is Family.SA:
            return self.spec.a + base
        return base

    # -- box probes ----------------------------------------------------------------

    def closure(self, seeds, box: BoxSpec) -> frozenset:
        """Least seed-containing set closed under every generator whose
        source and target indices both stay inside the box.

        A box-truncated under-approximation of the generated submodule;
        because all weight spaces are lines, the closure is a set of basis
        vectors.
        """
        seeds = list(seeds)
        for s in seeds:
            self._check_vector(s)
            if not box.contains(s.index):
                raise ValueError(f"seed {s} lies outside the box")
        targets = self.basis_in_box(box)
        current = set(seeds)
        frontier = list(seeds)
        while frontier:
            src = frontier.pop()
            for tgt in targets:
                if tgt in current:
                    continue
                kind = Kind.L if tgt.kind == src.kind else Kind.G
                op = BasisElt(kind, tgt.index - src.index)
                image = self.act_basis(op, src)
                if image.coefficient(tgt) is not None:
                    current.add(tgt)
                    frontier.append(tgt)
        return frozenset(current)

    def simplicity_probe(self, box: BoxSpec) -> "SimplicityReport":
        """Closure of every in-box basis vector; proper closures are listed
        as candidate submodules.  Box-level evidence, not a proof."""
        basis = self.basis_in_box(box)
        full = set(basis)
        closures = []
        candidates = []
        seen = set()
        for v in basis:
            cl = self.closure([v], box)
            closures.append((v, len(cl)))
            if set(cl) != full and cl not in seen:
                seen.add(cl)
                candidates.append(tuple(sorted(cl, key=lambda b: b.sort_key())))
        candidates.sort(key=lambda c: (len(c), [b.sort_key() for b in c]))
        return SimplicityReport(tuple(closures), tuple(candidates), len(basis))

    def ghw_probe(self, v, bprime: LatticeBasis, k: int, box: BoxSpec):
        """Probe the generalized-highest-weight condition inside the box.

        True when every L and G generator with nonzero index in the level-k
        cone of bprime, mapping v to targets inside the box, annihilates v.
        On failure the first violating generator (in a fixed enumeration
        order) is returned as the counterexample.
        """
        if k < 0:
            raise ValueError("k must be nonnegative")
        v = self.vector(v)
        if v.is_zero():
            raise ValueError("the probe needs a nonzero vector")
        for term in v.terms:
            if not box.contains(term.index):
                raise ValueError("the vector must lie inside the box")
        if abs(unimodular_det(bprime)) != 1:
            raise ValueError("the cone basis must be unimodular")
        cfg = self.config
        reach = 2 * box.radius
        indices = [t.index for t in v.terms]

        def candidates(vectors):
            for op_index in vectors:
                if op_index.is_zero():
                    continue
                coords = change_of_coords(op_index, bprime)
                if any(c < k for c in coords):
                    continue
                if any(not box.contains(op_index + i) for i in indices):
                    continue
                yield op_index

        for mu in candidates(cfg.even_box(reach)):
            op = BasisElt(Kind.L, mu)
            if not self.act(op, v).is_zero():
                return (False, op)
        for lam in candidates(cfg.odd_box(reach)):
            op = BasisElt(Kind.G, lam)
            if not self.act(op, v).is_zero():
                return (False, op)
        return (True, None)

    def quotient_dims(self, sub, box: BoxSpec):
        """Weight-dimension table of the box quotient by a closure-invariant
        set of basis vectors (quotienting deletes lines)."""
        basis = self.basis_in_box(box)
        full = set(basis)
        sub = set(sub)
        for s in sub:
            self._check_vector(s)
            if s not in full:
                raise ValueError(f"{s} is not an in-box basis vector")
        if self.closure(sub, box) != frozenset(sub):
            raise InvariantError("the subset is not closure-invariant in the box")
        rows = []
        for v in sorted(basis, key=lambda b: b.sort_key()):
            rows.append(WeightDim(weight=self.weight_of(v),
                                  parity=v.index.parity,
                                  vector=v,
                                  in_submodule=v in sub,
                                  dim=0 if v in sub else 1))
        return rows


@dataclass(frozen=True)
class WeightDim:
    weight: ScalarExpr
    parity: Parity
    vector: ModuleBasisVector
    in_submodule: bool
    dim: int

    def to_dict(self):
        return {
            "weight": str(self.weight),
            "parity": self.parity.value,
            "vector": str(self.vector),
            "in_submodule": self.in_submodule,
            "dim": self.dim,
        }


@dataclass(frozen=True)
class SimplicityReport:
    closures: tuple
    candidates: tuple
    box_size: int

    note = ("box-level evidence only: operators leaving the box are not "
            "applied, so candidates are not proofs of submodules")

    def to_dict(self):
        return {
            "box_size": self.box_size,
            "closures": [{"seed": str(v), "closure_size": size}
                         for v, size in self.closures],
            "candidates": [[str(b) for b in cand] for cand in self.candidates],
            "note": self.note,
        }
