"""Finite formal sums of basis symbols with scalar coefficients."""

from __future__ import annotations

from .scalar import ScalarExpr


class FormalSum:
    """Immutable linear combination: basis symbol -> nonzero ScalarExpr.

    Subclasses fix the symbol type and printing; the arithmetic is shared.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {} if terms is None else terms

    @classmethod
    def from_terms(cls, items):
        terms = {}
        for sym, coeff in items:
            if sym in terms:
                coeff = terms[sym] + coeff
            if coeff.is_zero():
                terms.pop(sym, None)
            else:
                terms[sym] = coeff
        return cls(terms)

    @classmethod
    def single(cls, sym, coeff):
        if coeff.is_zero():
            return cls({})
        return cls({sym: coeff})

    def is_zero(self):
        return not self.terms

    def items(self):
        return self.terms.items()

    def coefficient(self, sym, default=None):
        return self.terms.get(sym, default)

    def __add__(self, other):
        if not self.terms:
            return other
        if not other.terms:
            return self
        terms = dict(self.terms)
        for sym, coeff in other.terms.items():
            if sym in terms:
                acc = terms[sym] + coeff
                if acc.is_zero():
                    del terms[sym]
                else:
                    terms[sym] = acc
            else:
                terms[sym] = coeff
        return type(self)(terms)

    def __neg__(self):
        return type(self)({sym: -coeff for sym, coeff in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, coeff: ScalarExpr):
        if coeff.is_zero():
            return type(self)({})
        if coeff.is_one():
            return self
        return type(self)({sym: c * coeff for sym, c in self.terms.items()})

    def __eq__(self, other):
        return type(self) is type(other) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def _sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: kv[0].sort_key())

    def __str__(self):
        if not self.terms:
            return "0"
        rendered = []
        for sym, coeff in self._sorted_terms():
            num = coeff.num
            plain = coeff.den == coeff.ctx._poly_one and len(num.terms) == 1
            if coeff.is_one():
                rendered.append(("+", str(sym)))
            elif plain:
                mag = type(coeff)(coeff.ctx, num if num.leading_coeff() > 0 else num.neg(),
                                  coeff.den)
                sign = "-" if num.leading_coeff() < 0 else "+"
                if mag.is_one():
                    rendered.append((sign, str(sym)))
                else:
                    rendered.append((sign, f"{mag}*{sym}"))
            else:
                rendered.append(("+", f"({coeff})*{sym}"))
        sign, body = rendered[0]
        out = ("-" + body) if sign == "-" else body
        for sign, body in rendered[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self):
        return f"<{type(self).__name__} {self}>"
