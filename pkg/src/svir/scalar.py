"""Exact arithmetic in a field of multivariate rational functions.

Every coefficient in the engine lives in Q(t1,...,tm) for a fixed, ordered
set of indeterminates declared once per session.  Values are quotients of
sparse polynomials with Fraction coefficients kept in a canonical form
(numerator and denominator coprime, denominator monic in the fixed monomial
order), so structural equality decides mathematical equality and ``is_zero``
is an exact test.

All values are immutable and all operations are pure; instances can be
shared freely between threads.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

_ZERO = Fraction(0)
_ONE = Fraction(1)

_NAME_RE = re.compile(r"[A-Za-z][A-Za-z0-9_']*\Z")


class ScalarError(Exception):
    pass


class ScalarDivisionError(ScalarError, ZeroDivisionError):
    """Division by the zero rational function."""


class EvaluationError(ScalarError):
    """Evaluation failed: unassigned indeterminate or vanishing denominator."""


def as_fraction(value) -> Fraction:
    """Coerce to an exact rational; floats are rejected by design."""
    if isinstance(value, float):
        raise TypeError("floating point is not allowed in exact scalars")
    return Fraction(value)


@dataclass(frozen=True)
class Indeterminate:
    name: str
    index: int


# ---------------------------------------------------------------------------
# Sparse polynomials
# ---------------------------------------------------------------------------

class PolyExact:
    """Sparse multivariate polynomial: exponent tuple -> nonzero Fraction.

    The canonical monomial order is lexicographic on exponent tuples with
    the first indeterminate most significant; the leading term of a nonzero
    polynomial is the lex-largest exponent tuple.
    """

    __slots__ = ("terms",)

    def __init__(self, terms):
        # terms is trusted to carry no zero coefficients
        self.terms = terms

    @classmethod
    def from_terms(cls, items):
        terms = {}
        for exps, coeff in items:
            acc = terms.get(exps, _ZERO) + coeff
            if acc:
                terms[exps] = acc
            else:
                terms.pop(exps, None)
        return cls(terms)

    @classmethod
    def constant(cls, value, nvars):
        value = as_fraction(value)
        if not value:
            return cls({})
        return cls({(0,) * nvars: value})

    @classmethod
    def variable(cls, index, nvars):
        exps = tuple(1 if i == index else 0 for i in range(nvars))
        return cls({exps: _ONE})

    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return all(not any(e) for e in self.terms)

    def constant_value(self):
        if self.is_zero():
            return _ZERO
        ((exps, coeff),) = self.terms.items()
        if any(exps):
            raise ValueError("not a constant polynomial")
        return coeff

    def leading_exponent(self):
        return max(self.terms)

    def leading_coeff(self):
        return self.terms[max(self.terms)]

    def add(self, other):
        if not self.terms:
            return other
        if not other.terms:
            return self
        terms = dict(self.terms)
        for exps, coeff in other.terms.items():
            acc = terms.get(exps, _ZERO) + coeff
            if acc:
                terms[exps] = acc
            else:
                del terms[exps]
        return PolyExact(terms)

    def neg(self):
        return PolyExact({e: -c for e, c in self.terms.items()})

    def sub(self, other):
        return self.add(other.neg())

    def mul(self, other):
        if not self.terms or not other.terms:
            return PolyExact({})
        terms = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                acc = terms.get(e, _ZERO) + c1 * c2
                if acc:
                    terms[e] = acc
                else:
                    del terms[e]
        return PolyExact(terms)

    def scale(self, coeff):
        if not coeff:
            return PolyExact({})
        return PolyExact({e: c * coeff for e, c in self.terms.items()})

    def monic(self):
        """Scale so the lex-leading coefficient is 1 (zero stays zero)."""
        if not self.terms:
            return self
        lc = self.leading_coeff()
        if lc == 1:
            return self
        return self.scale(1 / lc)

    def evaluate(self, values):
        """Evaluate at a value tuple; entries may be None when unused."""
        total = _ZERO
        for exps, coeff in self.terms.items():
            term = coeff
            for e, v in zip(exps, values):
                if e:
                    if v is None:
                        raise EvaluationError("indeterminate left unassigned")
                    term *= v ** e
            total += term
        return total

    def variables(self):
        used = set()
        for exps in self.terms:
            for i, e in enumerate(exps):
                if e:
                    used.add(i)
        return used

    def __eq__(self, other):
        return isinstance(other, PolyExact) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        return f"PolyExact({self.terms!r})"


def _deg_in(p, v):
    return max((e[v] for e in p.terms), default=0)


def _coeff_in(p, v, d):
    """Coefficient of var(v)^d, as a polynomial with the v-exponent cleared."""
    terms = {}
    for exps, coeff in p.terms.items():
        if exps[v] == d:
            cleared = exps[:v] + (0,) + exps[v + 1:]
            terms[cleared] = coeff
    return PolyExact(terms)


def _shift(p, v, d):
    """Multiply by var(v)^d."""
    if d == 0 or not p.terms:
        return p
    return PolyExact({e[:v] + (e[v] + d,) + e[v + 1:]: c for e, c in p.terms.items()})


def divexact(f, g):
    """Exact multivariate division; raises ValueError if g does not divide f."""
    if g.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    if f.is_zero():
        return f
    glead = max(g.terms)
    gcoef = g.terms[glead]
    rem = dict(f.terms)
    quot = {}
    while rem:
        rlead = max(rem)
        qexp = tuple(a - b for a, b in zip(rlead, glead))
        if any(e < 0 for e in qexp):
            raise ValueError("inexact polynomial division")
        qc = rem[rlead] / gcoef
        quot[qexp] = quot.get(qexp, _ZERO) + qc
        for ge, gc in g.terms.items():
            e = tuple(a + b for a, b in zip(qexp, ge))
            acc = rem.get(e, _ZERO) - qc * gc
            if acc:
                rem[e] = acc
            else:
                rem.pop(e, None)
    return PolyExact({e: c for e, c in quot.items() if c})


def _prem(f, g, v):
    """Full pseudo-remainder: lc(g)^(deg f - deg g + 1) * f modulo g, in var v."""
    dg = _deg_in(g, v)
    lcg = _coeff_in(g, v, dg)
    r = f
    steps = _deg_in(f, v) - dg + 1
    while not r.is_zero():
        dr = _deg_in(r, v)
        if dr < dg:
            break
        lcr = _coeff_in(r, v, dr)
        r = lcg.mul(r).sub(_shift(lcr, v, dr - dg).mul(g))
        steps -= 1
    for _ in range(steps):
        r = lcg.mul(r)
    return r


def _poly_pow(p, k):
    out = p
    for _ in range(k - 1):
        out = out.mul(p)
    return out


def _subresultant_prs_last(r0, r1, v):
    """Last nonzero member of the subresultant pseudo-remainder sequence.

    The beta/psi bookkeeping keeps every division exact and the coefficient
    growth polynomial, so no per-step content extraction is needed.
    """
    nvars = len(next(iter(r0.terms)))
    d = _deg_in(r0, v) - _deg_in(r1, v)
    beta = PolyExact.constant(Fraction(-1) ** (d + 1), nvars)
    psi = PolyExact.constant(-1, nvars)
    prev, cur = r0, r1
    while True:
        rem = _prem(prev, cur, v)
        if rem.is_zero():
            return cur
        nxt = divexact(rem, beta)
        if _deg_in(nxt, v) == 0:
            return nxt
        neg_lc = _coeff_in(cur, v, _deg_in(cur, v)).neg()
        if d == 1:
            psi = neg_lc
        elif d > 1:
            psi = divexact(_poly_pow(neg_lc, d), _poly_pow(psi, d - 1))
        d = _deg_in(cur, v) - _deg_in(nxt, v)
        beta = neg_lc.mul(_poly_pow(psi, d)) if d else neg_lc
        prev, cur = cur, nxt


def _content_in(p, v):
    cont = PolyExact({})
    for d in range(_deg_in(p, v) + 1):
        c = _coeff_in(p, v, d)
        if not c.is_zero():
            cont = poly_gcd(cont, c)
            if cont.is_constant():
                break
    return cont


def poly_gcd(f, g):
    """Monic gcd in Q[t1,...,tm] via a subresultant pseudo-remainder sequence
    on the primitive parts in the highest active variable."""
    if f.is_zero():
        return g.monic()
    if g.is_zero():
        return f.monic()
    fvars = f.variables()
    gvars = g.variables()
    if not fvars or not gvars:
        nvars = len(next(iter(f.terms)))
        return PolyExact.constant(1, nvars)
    v = max(fvars | gvars)
    if v not in fvars:
        return poly_gcd(f, _content_in(g, v))
    if v not in gvars:
        return poly_gcd(g, _content_in(f, v))
    cf = _content_in(f, v)
    cg = _content_in(g, v)
    c = poly_gcd(cf, cg)
    big = f if cf.is_constant() else divexact(f, cf)
    small = g if cg.is_constant() else divexact(g, cg)
    if _deg_in(big, v) < _deg_in(small, v):
        big, small = small, big
    last = _subresultant_prs_last(big, small, v)
    if _deg_in(last, v) == 0:
        return c.monic()
    return c.mul(divexact(last, _content_in(last, v))).monic()


# ---------------------------------------------------------------------------
# Rational functions
# ---------------------------------------------------------------------------

class ScalarContext:
    """Fixed ordered set of indeterminates shared by a whole session.

    New symbols cannot be introduced after construction, which keeps the
    monomial order stable and canonical forms comparable.
    """

    def __init__(self, names):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError("indeterminate names must be unique")
        for name in names:
            if not _NAME_RE.match(name):
                raise ValueError(f"invalid indeterminate name {name!r}")
        self.indeterminates = tuple(Indeterminate(n, i) for i, n in enumerate(names))
        self.names = names
        self._by_name = {n: i for i, n in enumerate(names)}
        self._poly_zero = PolyExact({})
        self._poly_one = PolyExact.constant(1, len(names))
        self.zero = ScalarExpr(self, self._poly_zero, self._poly_one)
        self.one = ScalarExpr(self, self._poly_one, self._poly_one)

    @property
    def nvars(self):
        return len(self.names)

    def var(self, name) -> "ScalarExpr":
        if name not in self._by_name:
            raise KeyError(f"unknown indeterminate {name!r}; the session declares {self.names}")
        poly = PolyExact.variable(self._by_name[name], self.nvars)
        return ScalarExpr(self, poly, self._poly_one)

    def scalar(self, value) -> "ScalarExpr":
        value = as_fraction(value)
        if not value:
            return self.zero
        return ScalarExpr(self, PolyExact.constant(value, self.nvars), self._poly_one)

    def __eq__(self, other):
        return isinstance(other, ScalarContext) and self.names == other.names

    def __hash__(self):
        return hash(self.names)

    def __repr__(self):
        return f"ScalarContext({', '.join(self.names)})"


class ScalarExpr:
    """Element of the rational-function field, always in canonical form.

    Canonical form: gcd(num, den) = 1, den monic in the lex order, and zero
    is 0/1.  Equal functions therefore compare structurally equal.
    """

    __slots__ = ("ctx", "num", "den", "_hash")

    def __init__(self, ctx, num, den):
        # trusted constructor; use make() to normalize
        self.ctx = ctx
        self.num = num
        self.den = den
        self._hash = None

    @staticmethod
    def make(ctx, num, den):
        if den.is_zero():
            raise ScalarDivisionError("zero denominator")
        if num.is_zero():
            return ctx.zero
        if den.is_constant():
            c = den.constant_value()
            if c == 1:
                return ScalarExpr(ctx, num, ctx._poly_one)
            return ScalarExpr(ctx, num.scale(1 / c), ctx._poly_one)
        g = poly_gcd(num, den)
        if not (g.is_constant() and g.constant_value() == 1):
            num = divexact(num, g)
            den = divexact(den, g)
        lc = den.leading_coeff()
        if lc != 1:
            num = num.scale(1 / lc)
            den = den.scale(1 / lc)
        return ScalarExpr(ctx, num, den)

    # -- predicates ---------------------------------------------------------

    def is_zero(self):
        return not self.num.terms

    def is_one(self):
        return self.num == self.ctx._poly_one and self.den == self.ctx._poly_one

    def is_constant(self):
        return self.num.is_constant() and self.den.is_constant()

    def __bool__(self):
        return bool(self.num.terms)

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, ScalarExpr):
            if other.ctx != self.ctx:
                raise ValueError("mixed scalar contexts")
            return other
        return self.ctx.scalar(other)

    def __add__(self, other):
        other = self._coerce(other)
        if self.den is other.den or self.den == other.den:
            return ScalarExpr.make(self.ctx, self.num.add(other.num), self.den)
        num = self.num.mul(other.den).add(other.num.mul(self.den))
        return ScalarExpr.make(self.ctx, num, self.den.mul(other.den))

    def __radd__(self, other):
        return self.__add__(other)

    def __neg__(self):
        return ScalarExpr(self.ctx, self.num.neg(), self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        return self.__add__(other.__neg__())

    def __rsub__(self, other):
        return self._coerce(other).__sub__(self)

    def __mul__(self, other):
        other = self._coerce(other)
        return ScalarExpr.make(self.ctx, self.num.mul(other.num), self.den.mul(other.den))

    def __rmul__(self, other):
        return self.__mul__(other)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other.is_zero():
            raise ScalarDivisionError("division by zero scalar")
        return ScalarExpr.make(self.ctx, self.num.mul(other.den), self.den.mul(other.num))

    def __rtruediv__(self, other):
        return self._coerce(other).__truediv__(self)

    def __pow__(self, exponent):
        if not isinstance(exponent, int):
            raise TypeError("exponents must be integers")
        if exponent == 0:
            return self.ctx.one
        if exponent < 0:
            return self.ctx.one.__truediv__(self).__pow__(-exponent)
        result = self
        for _ in range(exponent - 1):
            result = result * self
        return result

    # -- evaluation ---------------------------------------------------------

    def evaluate(self, assignment):
        """Exact value at a rational point; every used indeterminate must be set."""
        values = []
        for ind in self.ctx.indeterminates:
            if ind.name in assignment:
                values.append(as_fraction(assignment[ind.name]))
            elif ind in assignment:
                values.append(as_fraction(assignment[ind]))
            else:
                values.append(None)
        num = self.num.evaluate(values)
        den = self.den.evaluate(values)
        if den == 0:
            raise EvaluationError("denominator vanishes under the assignment")
        return num / den

    # -- equality and display -------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, ScalarExpr):
            if isinstance(other, (int, Fraction)):
                other = self.ctx.scalar(other)
            else:
                return NotImplemented
        return (self.ctx == other.ctx
                and self.num.terms == other.num.terms
                and self.den.terms == other.den.terms)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((frozenset(self.num.terms.items()),
                               frozenset(self.den.terms.items())))
        return self._hash

    def __str__(self):
        num = poly_str(self.num, self.ctx.names)
        if self.den == self.ctx._poly_one:
            return num
        return f"({num})/({poly_str(self.den, self.ctx.names)})"

    def __repr__(self):
        return f"<ScalarExpr {self}>"


def poly_str(poly, names):
    """Render in the canonical order; output reparses to the same value."""
    if poly.is_zero():
        return "0"
    pieces = []
    for exps in sorted(poly.terms, reverse=True):
        coeff = poly.terms[exps]
        factors = []
        for name, e in zip(names, exps):
            if e == 1:
                factors.append(name)
            elif e > 1:
                factors.append(f"{name}^{e}")
        mag = abs(coeff)
        if not factors:
            body = str(mag)
        elif mag == 1:
            body = "*".join(factors)
        else:
            body = "*".join([str(mag)] + factors)
        pieces.append(("-" if coeff < 0 else "+", body))
    sign, body = pieces[0]
    out = ("-" + body) if sign == "-" else body
    for sign, body in pieces[1:]:
        out += f" {sign} {body}"
    return out
