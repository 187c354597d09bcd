"""Rational functions kept as a product of polynomial factors.

A value is ``coeff * x^mono * prod(P ** e)`` where each factor ``P`` is a
normalized Laurent polynomial (no monomial content, content 1, positive
leading coefficient) and ``e`` is a nonzero integer.  Products, quotients and
powers only touch exponents; sums clear the common denominator, then try to
divide the new numerator by the denominator factors.  The representation is
not canonical, so equality is decided by cross-multiplication.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from . import variables as V
from .laurent import LaurentPoly, divides


def normalize_poly(p: LaurentPoly):
    """Split p into (int coefficient, packed monomial, normalized factor or None)."""
    if p.is_zero():
        raise ValueError("cannot normalize the zero polynomial")
    if p.is_monomial():
        (m, c), = p.items()
        return c, m, None
    mono = p.min_monomial()
    q = p.scale_monomial(-mono) if mono else p
    g = q.content()
    _, lead = q.leading()
    if lead < 0:
        g = -g
    if g != 1:
        q = LaurentPoly({m: c // g for m, c in q.items()})
    return g, mono, q


@lru_cache(maxsize=4096)
def _factor_power(p: LaurentPoly, e: int) -> LaurentPoly:
    if e == 1:
        return p
    if e % 2 == 0:
        h = _factor_power(p, e // 2)
        return h * h
    return _factor_power(p, e - 1) * p


def expand_factors(factors: dict) -> LaurentPoly:
    """Multiply out prod(P ** e) for a dict of positive exponents."""
    parts = [_factor_power(p, e) for p, e in factors.items() if e]
    parts.sort(key=len)
    out = LaurentPoly.const(1)
    for part in parts:
        out = out * part
    return out


class RationalFunction:
    __slots__ = ("coeff", "mono", "factors")

    def __init__(self, coeff=1, mono: int = 0, factors=None):
        self.coeff = Fraction(coeff)
        self.mono = mono if self.coeff else 0
        self.factors = {p: e for p, e in (factors or {}).items() if e} if self.coeff else {}

    # construction -----------------------------------------------------------
    @classmethod
    def zero(cls):
        return cls(0)

    @classmethod
    def one(cls):
        return cls(1)

    @classmethod
    def from_poly(cls, p: LaurentPoly) -> "RationalFunction":
        if isinstance(p, int):
            return cls(p)
        if p.is_zero():
            return cls(0)
        c, m, q = normalize_poly(p)
        return cls(c, m, {q: 1} if q is not None else None)

    @classmethod
    def var(cls, v, e: int = 1) -> "RationalFunction":
        return cls(1, V.pack({v: e}))

    @classmethod
    def monomial(cls, exps, c=1) -> "RationalFunction":
        return cls(c, V.pack(exps))

    @classmethod
    def fraction(cls, num: LaurentPoly, den: LaurentPoly) -> "RationalFunction":
        return cls.from_poly(num) / cls.from_poly(den)

    # queries ----------------------------------------------------------------
    def is_zero(self):
        return self.coeff == 0

    def is_monomial(self):
        return not self.factors

    def is_laurent(self):
        return all(e > 0 for e in self.factors.values()) and self.coeff.denominator == 1

    @property
    def num(self) -> LaurentPoly:
        if not self.coeff:
            return LaurentPoly()
        pos = {p: e for p, e in self.factors.items() if e > 0}
        return expand_factors(pos).scale_monomial(self.mono, self.coeff.numerator)

    @property
    def den(self) -> LaurentPoly:
        neg = {p: -e for p, e in self.factors.items() if e < 0}
        return expand_factors(neg) * self.coeff.denominator

    def as_poly(self) -> LaurentPoly:
        """The value as a Laurent polynomial (trial-cancelling if needed)."""
        r = self.cancel()
        if not r.is_laurent():
            raise ValueError("rational function is not a Laurent polynomial")
        return r.num

    def variables(self) -> set:
        out = set(V.unpack(self.mono))
        for p in self.factors:
            out |= p.variables()
        return out

    def size(self) -> int:
        return sum(len(p) for p in self.factors)

    # arithmetic -------------------------------------------------------------
    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return RationalFunction(self.coeff * other, self.mono, self.factors)
        if isinstance(other, LaurentPoly):
            other = RationalFunction.from_poly(other)
        if not isinstance(other, RationalFunction):
            return NotImplemented
        if not self.coeff or not other.coeff:
            return RationalFunction(0)
        f = dict(self.factors)
        for p, e in other.factors.items():
            f[p] = f.get(p, 0) + e
        return RationalFunction(self.coeff * other.coeff, self.mono + other.mono, f)

    __rmul__ = __mul__

    def inverse(self):
        if not self.coeff:
            raise ZeroDivisionError("inverse of zero rational function")
        return RationalFunction(1 / self.coeff, -self.mono, {p: -e for p, e in self.factors.items()})

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return RationalFunction(self.coeff / other, self.mono, self.factors)
        if isinstance(other, LaurentPoly):
            other = RationalFunction.from_poly(other)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, e: int):
        if e == 0:
            return RationalFunction(1)
        if e < 0:
            return self.inverse() ** (-e)
        return RationalFunction(self.coeff ** e, self.mono * e, {p: k * e for p, k in self.factors.items()})

    def __neg__(self):
        return RationalFunction(-self.coeff, self.mono, self.factors)

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = RationalFunction(other)
        elif isinstance(other, LaurentPoly):
            other = RationalFunction.from_poly(other)
        if not isinstance(other, RationalFunction):
            return NotImplemented
        if not self.coeff:
            return other
        if not other.coeff:
            return self
        keys = set(self.factors) | set(other.factors)
        common = {}
        for p in keys:
            c = min(self.factors.get(p, 0), other.factors.get(p, 0))
            if c:
                common[p] = c
        lo = _mono_min(self.mono, other.mono)
        scale = Fraction(1, _lcm(self.coeff.denominator, other.coeff.denominator))
        s = _numerator(self, common, lo, scale) + _numerator(other, common, lo, scale)
        return _assemble(s, scale, lo, common)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = RationalFunction(other)
        elif isinstance(other, LaurentPoly):
            other = RationalFunction.from_poly(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = RationalFunction(other)
        elif isinstance(other, LaurentPoly):
            other = RationalFunction.from_poly(other)
        if not isinstance(other, RationalFunction):
            return NotImplemented
        if not self.coeff or not other.coeff:
            return self.coeff == other.coeff
        r = self / other
        if not r.factors:
            return r.coeff == 1 and r.mono == 0
        # cross-multiplied comparison of the remaining factors
        return r.num == r.den

    __hash__ = None

    def cancel(self) -> "RationalFunction":
        """Divide numerator factors by denominator factors where exact."""
        pos = [p for p, e in self.factors.items() if e > 0]
        neg = {p: -e for p, e in self.factors.items() if e < 0}
        if not pos or not neg:
            return self
        out = RationalFunction(self.coeff, self.mono, {p: e for p, e in self.factors.items() if e < 0})
        for p in pos:
            e = self.factors[p]
            for _ in range(e):
                out = out * _cancel_poly(p, neg)
        return out

    # substitution / evaluation ----------------------------------------------
    def substitute(self, mapping: dict) -> "RationalFunction":
        """Replace variables by rational functions."""
        mapping = {v: _as_rf(r) for v, r in mapping.items()}
        out = RationalFunction(self.coeff)
        for v, e in V.unpack(self.mono).items():
            r = mapping.get(v)
            out = out * (r ** e if r is not None else RationalFunction.var(v, e))
        for p, e in self.factors.items():
            out = out * (substitute_poly(p, mapping) ** e)
        return out

    def evaluate_ones(self, vars_to_one) -> "RationalFunction":
        ones = set(vars_to_one)
        out = RationalFunction(self.coeff)
        mono = {v: e for v, e in V.unpack(self.mono).items() if v not in ones}
        out = out * RationalFunction(1, V.pack(mono))
        for p, e in self.factors.items():
            q = p.evaluate_ones(ones)
            if q.is_zero():
                if e < 0:
                    raise ZeroDivisionError("evaluation makes a denominator vanish")
                return RationalFunction(0)
            out = out * (RationalFunction.from_poly(q) ** e)
        return out

    def __str__(self):
        if not self.coeff:
            return "0"
        d = self.den
        if d == LaurentPoly.const(1):
            return str(self.num)
        return f"({self.num}) / ({d})"

    def __repr__(self):
        return f"RationalFunction({self})"


def _as_rf(r):
    if isinstance(r, RationalFunction):
        return r
    if isinstance(r, LaurentPoly):
        return RationalFunction.from_poly(r)
    return RationalFunction(r)


def _lcm(a: int, b: int) -> int:
    from math import gcd
    return a // gcd(a, b) * b


def _mono_min(a: int, b: int) -> int:
    ea, eb = V.unpack(a), V.unpack(b)
    out = {}
    for v in set(ea) | set(eb):
        m = min(ea.get(v, 0), eb.get(v, 0))
        if m:
            out[v] = m
    return V.pack(out)


def _numerator(rf, common, lo, scale):
    rest = {}
    for p, e in rf.factors.items():
        k = e - common.get(p, 0)
        if k:
            rest[p] = k
    for p, c in common.items():
        if p not in rf.factors:
            rest[p] = -c
    c = rf.coeff / scale
    assert c.denominator == 1
    return expand_factors(rest).scale_monomial(rf.mono - lo, c.numerator)


def _assemble(s: LaurentPoly, scale, lo, common):
    """Build scale * x^lo * s * prod(common), cancelling s against denominators."""
    if s.is_zero():
        return RationalFunction(0)
    neg = {p: -e for p, e in common.items() if e < 0}
    out = RationalFunction(scale, lo, common)
    return out * _cancel_poly(s, neg)


def _cancel_poly(s: LaurentPoly, neg: dict) -> RationalFunction:
    """Factor s as a rational function, splitting off factors of ``neg`` that
    divide it exactly.  ``neg`` (factor -> available multiplicity) is
    decremented in place for every factor split off.
    """
    c, m, q = normalize_poly(s)
    if q is None:
        return RationalFunction(c, m)
    consumed = {}
    for p in sorted(neg, key=len):
        if neg[p] <= 0:
            continue
        if p == q:
            consumed[p] = consumed.get(p, 0) + 1
            neg[p] -= 1
            q = None
            break
        if len(p) > len(q):
            continue
        while neg[p] > 0:
            d = divides(p, q)
            if d is None:
                break
            consumed[p] = consumed.get(p, 0) + 1
            neg[p] -= 1
            c2, m2, q2 = normalize_poly(d)
            c *= c2
            m += m2
            q = q2
            if q is None:
                break
        if q is None:
            break
    f = dict(consumed)
    if q is not None:
        f[q] = f.get(q, 0) + 1
    return RationalFunction(c, m, f)


def substitute_poly(p: LaurentPoly, mapping: dict) -> RationalFunction:
    """p with variables replaced by rational functions (mapping values are RFs)."""
    pv = p.variables()
    mono_map = {}
    rat = []
    for v in pv:
        r = mapping.get(v)
        if r is None:
            continue
        if r.is_monomial() and r.coeff in (1, -1):
            mono_map[v] = LaurentPoly({r.mono: int(r.coeff)})
        else:
            rat.append(v)
    if not rat:
        q = p.substitute_monomials(mono_map) if mono_map else p
        return RationalFunction.from_poly(q)
    rat.sort(key=lambda v: v.sort_key())
    groups = p.split_by(rat)
    lo = [min(0, min(k[i] for k in groups)) for i in range(len(rat))]
    hi = [max(0, max(k[i] for k in groups)) for i in range(len(rat))]
    nums, dens, num_rf, den_rf = [], [], [], []
    for v in rat:
        r = mapping[v]
        pos = {q: e for q, e in r.factors.items() if e > 0}
        neg = {q: -e for q, e in r.factors.items() if e < 0}
        nums.append(expand_factors(pos).scale_monomial(r.mono, r.coeff.numerator))
        dens.append(expand_factors(neg) * r.coeff.denominator)
        num_rf.append(RationalFunction(r.coeff.numerator, r.mono, pos))
        den_rf.append(RationalFunction(r.coeff.denominator, 0, neg))
    npow = [_PowerCache(x) for x in nums]
    dpow = [_PowerCache(x) for x in dens]
    acc = {}
    for key, c in groups.items():
        if mono_map:
            c = c.substitute_monomials(mono_map)
        term = c
        for i, e in enumerate(key):
            a, b = e - lo[i], hi[i] - e
            if a:
                term = term * npow[i].get(a)
            if b:
                term = term * dpow[i].get(b)
        for m, cc in term.items():
            s = acc.get(m, 0) + cc
            if s:
                acc[m] = s
            else:
                del acc[m]
    total = LaurentPoly(acc)
    if total.is_zero():
        return RationalFunction(0)
    scale = RationalFunction(1)
    for i in range(len(rat)):
        scale = scale * num_rf[i] ** lo[i] * den_rf[i] ** (-hi[i])
    neg = {q: -e for q, e in scale.factors.items() if e < 0}
    return scale * _cancel_poly(total, neg)


class _PowerCache:
    def __init__(self, base: LaurentPoly):
        self.pows = {0: LaurentPoly.const(1), 1: base}

    def get(self, e: int) -> LaurentPoly:
        p = self.pows.get(e)
        if p is None:
            p = self.get(e - 1) * self.pows[1]
            self.pows[e] = p
        return p
