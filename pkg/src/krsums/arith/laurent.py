"""Sparse multivariate Laurent polynomials over the integers."""
from __future__ import annotations

import heapq
from math import gcd

from . import variables as V
from .variables import VariableId


class NotDivisible(Exception):
    """Raised by exact division when the quotient is not a Laurent polynomial."""


def _render_int(c):
    return str(c)


class LaurentPoly:
    """Finite map monomial -> nonzero int.  Immutable by convention."""

    __slots__ = ("_t", "_hash")

    def __init__(self, terms=None):
        # terms: dict packed-monomial -> int, assumed free of zeros
        self._t = terms if terms is not None else {}
        self._hash = None

    # construction ---------------------------------------------------------
    @classmethod
    def const(cls, c: int) -> "LaurentPoly":
        return cls({0: c} if c else {})

    @classmethod
    def var(cls, v: VariableId, e: int = 1) -> "LaurentPoly":
        return cls({V.pack({v: e}): 1})

    @classmethod
    def monomial(cls, exps, c: int = 1) -> "LaurentPoly":
        return cls({V.pack(exps): c} if c else {})

    @classmethod
    def from_terms(cls, pairs) -> "LaurentPoly":
        """Build from an iterable of ({VariableId: exp}, coeff)."""
        t = {}
        for exps, c in pairs:
            m = V.pack(exps)
            t[m] = t.get(m, 0) + c
        return cls({m: c for m, c in t.items() if c})

    # basic queries --------------------------------------------------------
    def __len__(self):
        return len(self._t)

    def __bool__(self):
        return bool(self._t)

    def is_zero(self):
        return not self._t

    def is_monomial(self):
        return len(self._t) == 1

    def is_const(self):
        return not self._t or (len(self._t) == 1 and 0 in self._t)

    def const_value(self) -> int:
        if not self.is_const():
            raise ValueError("not a constant")
        return self._t.get(0, 0)

    def items(self):
        return self._t.items()

    def terms(self):
        """Yield ({VariableId: exp}, coeff) pairs in canonical order."""
        rows = [(V.unpack(m), c) for m, c in self._t.items()]
        rows.sort(key=lambda r: _render_key(r[0]))
        return rows

    def variables(self) -> set:
        out = set()
        for m in self._t:
            out.update(V.unpack(m))
        return out

    def degree_range(self, v: VariableId):
        """(min, max) exponent of v over all terms; (0, 0) for the zero poly."""
        if not self._t:
            return (0, 0)
        idx = V.var_index(v)
        es = [V.exponent_of(m, idx) for m in self._t]
        return min(es), max(es)

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._t == other._t

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._t.items()))
        return self._hash

    # arithmetic -----------------------------------------------------------
    def __neg__(self):
        return LaurentPoly({m: -c for m, c in self._t.items()})

    def __add__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        a, b = self._t, other._t
        if len(a) < len(b):
            a, b = b, a
        r = dict(a)
        for m, c in b.items():
            s = r.get(m, 0) + c
            if s:
                r[m] = s
            else:
                r.pop(m, None)
        return LaurentPoly(r)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        r = dict(self._t)
        for m, c in other._t.items():
            s = r.get(m, 0) - c
            if s:
                r[m] = s
            else:
                r.pop(m, None)
        return LaurentPoly(r)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            if not other:
                return LaurentPoly()
            return LaurentPoly({m: c * other for m, c in self._t.items()})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        a, b = self._t, other._t
        if not a or not b:
            return LaurentPoly()
        if len(a) < len(b):
            a, b = b, a
        if len(b) == 1:
            (mb, cb), = b.items()
            return LaurentPoly({m + mb: c * cb for m, c in a.items()})
        r = {}
        get = r.get
        bl = list(b.items())
        for ma, ca in a.items():
            for mb, cb in bl:
                k = ma + mb
                r[k] = get(k, 0) + ca * cb
        return LaurentPoly({m: c for m, c in r.items() if c})

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            if len(self._t) != 1:
                raise ValueError("negative power of a non-monomial")
            (m, c), = self._t.items()
            if c not in (1, -1):
                raise ValueError("negative power of a monomial with non-unit coefficient")
            return LaurentPoly({-m * (-e): c ** (-e)})
        result = LaurentPoly.const(1)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def scale_monomial(self, m: int, c: int = 1) -> "LaurentPoly":
        return LaurentPoly({k + m: v * c for k, v in self._t.items()})

    # structure --------------------------------------------------------------
    def content(self) -> int:
        g = 0
        for c in self._t.values():
            g = gcd(g, c)
        return g

    def min_monomial(self) -> int:
        """Componentwise minimum exponent vector over all terms, packed."""
        out = {}
        for v in self.variables():
            idx = V.var_index(v)
            lo = min(V.exponent_of(m, idx) for m in self._t)
            if lo:
                out[v] = lo
        return V.pack(out)

    def leading(self):
        m = max(self._t)
        return m, self._t[m]

    def trailing(self):
        m = min(self._t)
        return m, self._t[m]

    # evaluation / substitution ---------------------------------------------
    def evaluate_ones(self, vars_to_one) -> "LaurentPoly":
        """Set every variable in ``vars_to_one`` to 1."""
        idxs = [V.var_index(v) for v in vars_to_one]
        if not idxs:
            return self
        r = {}
        for m, c in self._t.items():
            k = m
            for i in idxs:
                e = V.exponent_of(m, i)
                if e:
                    k -= V.unit(i, e)
            r[k] = r.get(k, 0) + c
        return LaurentPoly({m: c for m, c in r.items() if c})

    def rename(self, mapping: dict) -> "LaurentPoly":
        """Apply a variable -> variable renaming."""
        pairs = [(V.var_index(a), V.var_index(b)) for a, b in mapping.items() if a != b]
        if not pairs:
            return self
        r = {}
        for m, c in self._t.items():
            k = m
            for ia, ib in pairs:
                e = V.exponent_of(m, ia)
                if e:
                    k += V.unit(ib, e) - V.unit(ia, e)
            r[k] = r.get(k, 0) + c
        return LaurentPoly({m: c for m, c in r.items() if c})

    def substitute_monomials(self, mapping: dict) -> "LaurentPoly":
        """Substitute variables by monomials (LaurentPoly with one unit term)."""
        subs = []
        for v, p in mapping.items():
            if not isinstance(p, LaurentPoly):
                p = LaurentPoly.const(p)
            if len(p._t) != 1:
                raise ValueError(f"substitution for {v} is not a monomial")
            (pm, pc), = p._t.items()
            subs.append((V.var_index(v), pm, pc))
        r = {}
        for m, c in self._t.items():
            k = m
            for i, pm, pc in subs:
                e = V.exponent_of(m, i)
                if e:
                    k += e * pm - V.unit(i, e)
                    if pc != 1:
                        if e < 0 and pc not in (1, -1):
                            raise ValueError("negative power of a non-unit constant")
                        c = c * pc ** abs(e)
            r[k] = r.get(k, 0) + c
        return LaurentPoly({m: c for m, c in r.items() if c})

    def eval_int(self, values: dict) -> int:
        """Evaluate completely at integer values (negative exponents need +-1)."""
        from fractions import Fraction
        total = Fraction(0)
        for exps, c in self.terms():
            t = Fraction(c)
            for v, e in exps.items():
                t *= Fraction(values[v]) ** e
            total += t
        return total

    def split_by(self, grading_vars):
        """Group terms by the exponents of ``grading_vars``.

        Returns {exponent tuple: LaurentPoly in the remaining variables}.
        """
        idxs = [V.var_index(v) for v in grading_vars]
        out = {}
        for m, c in self._t.items():
            key = tuple(V.exponent_of(m, i) for i in idxs)
            rest = m
            for i, e in zip(idxs, key):
                if e:
                    rest -= V.unit(i, e)
            d = out.setdefault(key, {})
            d[rest] = d.get(rest, 0) + c
        return {k: LaurentPoly(d) for k, d in out.items()}

    # rendering --------------------------------------------------------------
    def __str__(self):
        return render(self)

    def __repr__(self):
        return f"LaurentPoly({render(self)!r})"


def render(p: LaurentPoly, names: dict | None = None) -> str:
    """Canonical text: terms by descending total degree, explicit exponents."""
    if not p._t:
        return "0"
    rows = [(V.unpack(m), c) for m, c in p._t.items()]
    rows.sort(key=lambda r: _render_key(r[0]))
    out = []
    for i, (exps, c) in enumerate(rows):
        factors = []
        for v in sorted(exps, key=lambda v: v.sort_key()):
            e = exps[v]
            nm = names.get(v, v.name) if names else v.name
            factors.append(nm if e == 1 else f"{nm}^{e}" if e > 0 else f"{nm}^({e})")
        mag = abs(c)
        if factors:
            body = "*".join(factors) if mag == 1 else f"{mag}*" + "*".join(factors)
        else:
            body = str(mag)
        if i == 0:
            out.append(body if c > 0 else f"-{body}")
        else:
            out.append(f" + {body}" if c > 0 else f" - {body}")
    return "".join(out)


def _render_key(exps: dict):
    items = sorted(exps.items(), key=lambda kv: kv[0].sort_key())
    return (-sum(exps.values()), [(v.sort_key(), -e) for v, e in items])


def exact_divide(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """Return q with a == b*q, or raise NotDivisible."""
    if b.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if a.is_zero():
        return LaurentPoly()
    bt = b._t
    if len(bt) == 1:
        (mb, cb), = bt.items()
        r = {}
        for m, c in a._t.items():
            q, rem = divmod(c, cb)
            if rem:
                raise NotDivisible("coefficient not divisible")
            r[m - mb] = q
        return LaurentPoly(r)
    mb_lead = max(bt)
    cb_lead = bt[mb_lead]
    mb_trail = min(bt)
    lower = min(a._t) - mb_trail
    # per-variable exponent bounds on the quotient give a finite search box
    bounds = _quotient_box(a, b)
    rem = dict(a._t)
    heap = [-m for m in rem]
    heapq.heapify(heap)
    quot = {}
    blist = list(bt.items())
    while rem:
        m = -heapq.heappop(heap)
        c = rem.get(m)
        if c is None:
            continue
        qc, r = divmod(c, cb_lead)
        if r:
            raise NotDivisible("leading coefficient not divisible")
        qm = m - mb_lead
        if qm < lower or not _in_box(qm, bounds):
            raise NotDivisible("quotient leaves its degree box")
        quot[qm] = qc
        for mbi, cbi in blist:
            k = qm + mbi
            old = rem.get(k)
            if old is None:
                rem[k] = -qc * cbi
                heapq.heappush(heap, -k)
            else:
                s = old - qc * cbi
                if s:
                    rem[k] = s
                else:
                    del rem[k]
    return LaurentPoly(quot)


def _quotient_box(a: LaurentPoly, b: LaurentPoly):
    vs = a.variables() | b.variables()
    box = []
    for v in vs:
        alo, ahi = a.degree_range(v)
        blo, bhi = b.degree_range(v)
        box.append((V.var_index(v), alo - blo, ahi - bhi))
    return box


def _in_box(m: int, box) -> bool:
    for idx, lo, hi in box:
        e = V.exponent_of(m, idx)
        if e < lo or e > hi:
            return False
    # variables outside the box must have exponent 0; a stray one means failure
    return True


def divides(b: LaurentPoly, a: LaurentPoly):
    """Return a/b if exact, else None."""
    try:
        return exact_divide(a, b)
    except NotDivisible:
        return None
