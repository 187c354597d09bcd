"""The classical Q-system, solved exactly as polynomials in T(1..r)."""
from __future__ import annotations

from .algebra import AlgebraSpec, build_algebra
from .arith.laurent import LaurentPoly, NotDivisible, exact_divide
from .arith.variables import T


class MissingLevel(LookupError):
    def __init__(self, node, level):
        super().__init__(f"Q[{node},{level}] has not been computed")
        self.node, self.level = node, level


class PolynomialityFailure(ArithmeticError):
    pass


class QSystemTable:
    def __init__(self, spec: AlgebraSpec):
        self.spec = spec
        self.entries = {}
        self.order = []  # (alpha, j) in the order they were solved
        for a in spec.nodes:
            self.entries[(a, 0)] = LaurentPoly.const(1)
            self.entries[(a, 1)] = LaurentPoly.var(T(a))

    def get(self, a: int, j: int) -> LaurentPoly:
        try:
            return self.entries[(a, j)]
        except KeyError:
            raise MissingLevel(a, j) from None

    def levels(self) -> dict:
        out = {}
        for (a, j) in self.entries:
            out[a] = max(out.get(a, 0), j)
        return out


def t_term_indices(spec: AlgebraSpec, a: int, j: int):
    """[(beta, level), ...] appearing in the product term of Q[a, j+1]."""
    out = []
    for b in spec.neighbors(a):
        cab, cba = abs(spec.C(a, b)), abs(spec.C(b, a))
        for k in range(cab):
            out.append((b, (cba * j + k) // cab))
    return out


def t_term(table: QSystemTable, a: int, j: int) -> LaurentPoly:
    out = LaurentPoly.const(1)
    for b, lvl in t_term_indices(table.spec, a, j):
        out = out * table.get(b, lvl)
    return out


def explicit_t_term(table: QSystemTable, a: int, b: int, j: int) -> LaurentPoly:
    """T_j^{(a,b)} from the per-family exception lists (b adjacent to a)."""
    spec = table.spec
    Q = table.get
    r = spec.rank
    if spec.t_of(a) == spec.t_of(b):
        return Q(b, j)
    fam = spec.family
    if fam == "B":
        if (a, b) == (r - 1, r):
            return Q(r, 2 * j)
        if (a, b) == (r, r - 1):
            return Q(r - 1, j // 2) * Q(r - 1, (j + 1) // 2)
    if fam == "C":
        if (a, b) == (r - 1, r):
            return Q(r, j // 2) * Q(r, (j + 1) // 2)
        if (a, b) == (r, r - 1):
            return Q(r - 1, 2 * j)
    if fam == "F":
        if (a, b) == (3, 2):
            return Q(2, j // 2) * Q(2, (j + 1) // 2)
        if (a, b) == (2, 3):
            return Q(3, 2 * j)
    if fam == "G":
        if (a, b) == (2, 1):
            return Q(1, j // 3) * Q(1, (j + 1) // 3) * Q(1, (j + 2) // 3)
        if (a, b) == (1, 2):
            return Q(2, 3 * j)
    raise ValueError(f"no listed T-term for pair ({a},{b}) of {spec.name}")


def solve_q_system(spec: AlgebraSpec, max_scaled_level: int) -> QSystemTable:
    """Compute Q[a, j] for j <= t_a * max_scaled_level.

    Entries are produced on demand in dependency order (each exactly once);
    see ``table.order`` for the order actually used.
    """
    if max_scaled_level < 1:
        raise ValueError("max_scaled_level must be >= 1")
    table = QSystemTable(spec)

    def ensure(a, j):
        if (a, j) in table.entries:
            return
        ensure(a, j - 1)
        ensure(a, j - 2)
        for b, lvl in t_term_indices(spec, a, j - 1):
            ensure(b, lvl)
        prev, prev2 = table.entries[(a, j - 1)], table.entries[(a, j - 2)]
        numer = prev * prev - t_term(table, a, j - 1)
        try:
            table.entries[(a, j)] = exact_divide(numer, prev2)
        except NotDivisible:
            raise PolynomialityFailure(
                f"{spec.name}: Q[{a},{j}] = ({numer}) / ({prev2}) is not a polynomial") from None
        table.order.append((a, j))

    for a in spec.nodes:
        for j in range(2, spec.t_of(a) * max_scaled_level + 1):
            ensure(a, j)
    for key, poly in table.entries.items():
        for v in poly.variables():
            if poly.degree_range(v)[0] < 0:
                raise PolynomialityFailure(f"{spec.name}: Q{key} has a negative exponent")
    return table


def chebyshev(jmax: int) -> list:
    """U_0..U_jmax in t via U_{k+1} = t U_k - U_{k-1}."""
    t = LaurentPoly.var(T(1))
    us = [LaurentPoly.const(1), t]
    while len(us) <= jmax:
        us.append(t * us[-1] - us[-2])
    return us[: jmax + 1]


def chebyshev_check(jmax: int) -> bool:
    us = chebyshev(jmax + 1)
    t = us[1]
    for k in range(1, jmax + 1):
        if t * us[k] != us[k - 1] + us[k + 1]:
            return False
    table = solve_q_system(build_algebra("A", 1), max(jmax, 1))
    return all(table.get(1, j) == us[j] for j in range(jmax + 1))


def specialize_to_ones(poly: LaurentPoly) -> int:
    return poly.evaluate_ones(poly.variables()).const_value() if poly else 0
