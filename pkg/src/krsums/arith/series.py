"""Truncated multivariate series graded by the u_alpha exponents."""
from __future__ import annotations

from fractions import Fraction
from itertools import product

from .laurent import LaurentPoly


class TruncatedSeries:
    """Coefficients of a series on a box window of u-exponent vectors.

    ``gvars`` are the grading variables (normally U(1)..U(r)); coefficients
    are Laurent polynomials in every other variable.
    """

    def __init__(self, gvars, window, terms=None):
        self.gvars = tuple(gvars)
        self.window = tuple(tuple(w) for w in window)
        self.terms = {}
        for q, c in (terms or {}).items():
            if c and self.in_window(q):
                self.terms[tuple(q)] = c

    def in_window(self, q) -> bool:
        return all(lo <= x <= hi for x, (lo, hi) in zip(q, self.window))

    @classmethod
    def from_poly(cls, p: LaurentPoly, gvars, window):
        return cls(gvars, window, p.split_by(gvars))

    def coefficient(self, q) -> LaurentPoly:
        q = tuple(q)
        if not self.in_window(q):
            raise ValueError(f"{q} outside window {self.window}")
        return self.terms.get(q, LaurentPoly())

    def mul(self, other: "TruncatedSeries", window) -> "TruncatedSeries":
        """Product restricted to ``window``.

        Only meaningful when both factors are known on every exponent that
        can contribute to the window; the caller is responsible for that.
        """
        out = {}
        bounds = [tuple(w) for w in window]
        for qa, ca in self.terms.items():
            for qb, cb in other.terms.items():
                q = tuple(x + y for x, y in zip(qa, qb))
                if all(lo <= x <= hi for x, (lo, hi) in zip(q, bounds)):
                    prev = out.get(q)
                    out[q] = ca * cb if prev is None else prev + ca * cb
        return TruncatedSeries(self.gvars, window, out)

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.gvars == other.gvars and self.window == other.window and self.terms == other.terms

    def nonzero_count(self) -> int:
        return sum(len(c) for c in self.terms.values())


def series_invert(f: LaurentPoly, pivot, window) -> TruncatedSeries:
    """Invert f as a series in the pivot variable on the window [lo, hi].

    The slice of f of minimal pivot degree must be a single monomial with
    coefficient +-1; coefficients of the result are Laurent polynomials in
    all remaining variables.
    """
    lo, hi = window
    slices = {k[0]: c for k, c in f.split_by([pivot]).items()}
    if not slices:
        raise ZeroDivisionError("cannot invert the zero series")
    d0 = min(slices)
    f0 = slices[d0]
    if not f0.is_monomial() or abs(next(iter(f0.items()))[1]) != 1:
        raise ValueError(f"leading slice {f0} (pivot degree {d0}) is not a unit monomial")
    f0inv = f0 ** -1
    g = {}
    start = -d0
    for k in range(0, hi - start + 1):
        if k == 0:
            g[start] = f0inv
            continue
        acc = LaurentPoly()
        for i in range(1, k + 1):
            fi = slices.get(d0 + i)
            if fi is not None:
                acc = acc + fi * g[start + k - i]
        g[start + k] = -(acc * f0inv)
    terms = {(d,): c for d, c in g.items() if lo <= d <= hi}
    return TruncatedSeries([pivot], [window], terms)


class ConeSeries:
    """Series supported on a translate of the cone C * Z_{>=0}^r.

    A term with cone coordinate s (nonnegative ints) has u-exponent vector
    C * (base + s).  Because C^{-1} has positive entries every generating
    function in the library lives in such a cone, which makes products and
    inverses well defined with a componentwise bound on s.
    """

    def __init__(self, cartan, gvars, base, bound, terms=None):
        self.cartan = cartan
        self.gvars = tuple(gvars)
        self.base = tuple(Fraction(b) for b in base)
        self.bound = tuple(bound)
        self.terms = {}
        for s, c in (terms or {}).items():
            if c and all(0 <= x <= b for x, b in zip(s, self.bound)):
                self.terms[tuple(s)] = c

    # construction ----------------------------------------------------------
    @classmethod
    def from_poly(cls, p: LaurentPoly, cartan, gvars, bound, base=None):
        split = p.split_by(gvars)
        coords = {q: _solve(cartan, q) for q in split}
        if base is None:
            r = len(gvars)
            base = tuple(min(x[i] for x in coords.values()) for i in range(r)) if coords else (0,) * len(gvars)
        terms = {}
        for q, c in split.items():
            s = [x - b for x, b in zip(coords[q], base)]
            if any(v.denominator != 1 or v < 0 for v in s):
                raise ValueError(f"exponent {q} is not in the cone above base {base}")
            s = tuple(int(v) for v in s)
            if all(x <= b for x, b in zip(s, bound)):
                terms[s] = c
        return cls(cartan, gvars, base, bound, terms)

    @classmethod
    def one(cls, cartan, gvars, bound):
        return cls(cartan, gvars, (0,) * len(gvars), bound, {(0,) * len(gvars): LaurentPoly.const(1)})

    # arithmetic --------------------------------------------------------------
    def __mul__(self, other: "ConeSeries") -> "ConeSeries":
        bound = tuple(min(a, b) for a, b in zip(self.bound, other.bound))
        base = tuple(a + b for a, b in zip(self.base, other.base))
        out = {}
        b_items = list(other.terms.items())
        for sa, ca in self.terms.items():
            room = tuple(b - x for b, x in zip(bound, sa))
            if min(room) < 0:
                continue
            for sb, cb in b_items:
                if all(x <= y for x, y in zip(sb, room)):
                    s = tuple(x + y for x, y in zip(sa, sb))
                    prev = out.get(s)
                    out[s] = ca * cb if prev is None else prev + ca * cb
        return ConeSeries(self.cartan, self.gvars, base, bound, out)

    def scale(self, c: LaurentPoly) -> "ConeSeries":
        return ConeSeries(self.cartan, self.gvars, self.base, self.bound,
                          {s: v * c for s, v in self.terms.items()})

    def __add__(self, other: "ConeSeries") -> "ConeSeries":
        if other.base != self.base:
            other = other.rebase(self.base)
        bound = tuple(min(a, b) for a, b in zip(self.bound, other.bound))
        out = dict(self.terms)
        for s, c in other.terms.items():
            out[s] = out[s] + c if s in out else c
        return ConeSeries(self.cartan, self.gvars, self.base, bound, out)

    def rebase(self, base) -> "ConeSeries":
        """Express the same series relative to a lower base point."""
        shift = [Fraction(a) - Fraction(b) for a, b in zip(self.base, base)]
        if any(x.denominator != 1 or x < 0 for x in shift):
            raise ValueError(f"cannot rebase {self.base} to {tuple(base)}")
        shift = [int(x) for x in shift]
        bound = tuple(b + x for b, x in zip(self.bound, shift))
        terms = {tuple(a + x for a, x in zip(s, shift)): c for s, c in self.terms.items()}
        return ConeSeries(self.cartan, self.gvars, base, bound, terms)

    def with_bound(self, bound) -> "ConeSeries":
        if any(b > a for a, b in zip(self.bound, bound)):
            raise ValueError("cannot raise the truncation bound")
        return ConeSeries(self.cartan, self.gvars, self.base, bound, self.terms)

    def inverse(self) -> "ConeSeries":
        r = len(self.gvars)
        zero = (0,) * r
        f0 = self.terms.get(zero)
        if f0 is None or not f0.is_monomial() or abs(next(iter(f0.items()))[1]) != 1:
            raise ValueError(f"leading coefficient {f0} is not a unit monomial")
        f0inv = f0 ** -1
        others = [(s, c) for s, c in self.terms.items() if s != zero]
        g = {}
        for s in _box_order(self.bound):
            if s == zero:
                g[s] = f0inv
                continue
            acc = LaurentPoly()
            for t, c in others:
                if all(a <= b for a, b in zip(t, s)):
                    rest = tuple(b - a for a, b in zip(t, s))
                    gv = g.get(rest)
                    if gv:
                        acc = acc + c * gv
            if acc:
                g[s] = -(acc * f0inv)
        return ConeSeries(self.cartan, self.gvars, tuple(-b for b in self.base), self.bound, g)

    def __pow__(self, e: int) -> "ConeSeries":
        if e < 0:
            return self.inverse() ** (-e)
        out = ConeSeries.one(self.cartan, self.gvars, self.bound)
        base = self
        while e:
            if e & 1:
                out = out * base
            e >>= 1
            if e:
                base = base * base
        return out

    # extraction --------------------------------------------------------------
    def u_exponent(self, s) -> tuple:
        x = [b + v for b, v in zip(self.base, s)]
        q = [sum(self.cartan[a][b] * x[b] for b in range(len(x))) for a in range(len(x))]
        return tuple(int(v) for v in q)

    def coefficient(self, q) -> LaurentPoly:
        x = _solve(self.cartan, q)
        s = [a - b for a, b in zip(x, self.base)]
        if any(v.denominator != 1 or v < 0 for v in s):
            return LaurentPoly()
        s = tuple(int(v) for v in s)
        if any(a > b for a, b in zip(s, self.bound)):
            raise ValueError(f"u-exponent {tuple(q)} beyond the truncation bound")
        return self.terms.get(s, LaurentPoly())

    def needed_bound(self, targets) -> tuple:
        """Smallest bound covering every target u-exponent vector."""
        r = len(self.gvars)
        best = [0] * r
        for q in targets:
            x = _solve(self.cartan, q)
            for i in range(r):
                v = x[i] - self.base[i]
                if v > best[i]:
                    best[i] = int(v)
        return tuple(best)


def cone_bound(cartan, base, targets) -> tuple:
    """Componentwise max of C^{-1} q - base over the targets (floored at 0)."""
    r = len(cartan)
    best = [0] * r
    for q in targets:
        x = _solve(cartan, q)
        for i in range(r):
            v = x[i] - Fraction(base[i])
            if v > best[i]:
                best[i] = int(v)  # floor for positive values
    return tuple(best)


def _box_order(bound):
    """All s with 0 <= s <= bound, ordered by total degree."""
    pts = list(product(*[range(b + 1) for b in bound]))
    pts.sort(key=sum)
    return pts


_inverse_cache: dict = {}


def _solve(cartan, q):
    key = tuple(tuple(row) for row in cartan)
    inv = _inverse_cache.get(key)
    if inv is None:
        inv = _rational_inverse(cartan)
        _inverse_cache[key] = inv
    r = len(q)
    return tuple(sum(inv[a][b] * q[b] for b in range(r)) for a in range(r))


def _rational_inverse(m):
    n = len(m)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    for col in range(n):
        piv = next(r for r in range(col, n) if a[r][col] != 0)
        a[col], a[piv] = a[piv], a[col]
        pv = a[col][col]
        a[col] = [x / pv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [row[n:] for row in a]
