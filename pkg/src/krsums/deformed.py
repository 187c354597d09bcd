"""The deformed Q-system over the formal variables u_a, u_{a,i}, a_i.

Entries are exact rational functions.  Two independent constructions are
provided (the quadratic relation and the substitution recursion), together
with the shift maps u -> u^(j) and u -> u^(j,p), the evaluation maps phi_{j,p}
and checks of the structural statements relating them.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .algebra import AlgebraSpec
from .arith.laurent import LaurentPoly
from .arith.rational import RationalFunction as RF
from .arith.variables import A, T, U, Ui
from .qsystem import MissingLevel, solve_q_system


class InsufficientDepth(MissingLevel):
    pass


class DeformedQTable:
    def __init__(self, spec: AlgebraSpec):
        self.spec = spec
        self.entries = {}
        for a in spec.nodes:
            self.entries[(a, 0)] = RF(1)
            self.entries[(a, 1)] = RF.var(U(a), -1)
        self._shift_cache = {}

    def get(self, a: int, i: int) -> RF:
        try:
            return self.entries[(a, i)]
        except KeyError:
            raise InsufficientDepth(a, i) from None

    def levels(self) -> dict:
        out = {}
        for (a, i) in self.entries:
            out[a] = max(out.get(a, 0), i)
        return out

    def variables(self) -> set:
        out = set()
        for v in self.entries.values():
            out |= v.variables()
        return out


def a_exponent(spec: AlgebraSpec, a: int, b: int, i: int) -> int:
    """Exponent of a_i in T_i^{(a,b)}; only a short a next to a long b gets one."""
    ta = spec.t_of(a)
    if ta > spec.t_of(b):
        return (-i) % ta
    return 0


def deformed_t_indices(spec: AlgebraSpec, a: int, i: int):
    """[(b, level), ...] of the Q-factors in prod_b T_i^{(a,b)}."""
    out = []
    for b in spec.neighbors(a):
        cab, ta, tb = abs(spec.C(a, b)), spec.t_of(a), spec.t_of(b)
        for k in range(cab):
            out.append((b, (tb * i + k) // ta))
    return out


def deformed_t_term(table: DeformedQTable, a: int, b: int, i: int) -> RF:
    """T_i^{(a,b)} from the general floor formula."""
    spec = table.spec
    cab, ta, tb = abs(spec.C(a, b)), spec.t_of(a), spec.t_of(b)
    out = RF.var(A(i), a_exponent(spec, a, b, i)) if a_exponent(spec, a, b, i) else RF(1)
    for k in range(cab):
        out = out * table.get(b, (tb * i + k) // ta)
    return out


def explicit_deformed_t_term(table: DeformedQTable, a: int, b: int, i: int) -> RF:
    """T_i^{(a,b)} from the per-family lists, used as an independent oracle."""
    spec = table.spec
    Q = table.get
    r = spec.rank
    if spec.t_of(a) == spec.t_of(b):
        return Q(b, i)
    ai = RF.var(A(i))
    fam = spec.family
    long_short = {"B": (r - 1, r), "C": (r, r - 1), "F": (2, 3), "G": (1, 2)}[fam]
    if (a, b) == long_short:
        return Q(b, spec.t_of(b) * i)
    if (b, a) == long_short and fam in "BCF":
        h = (i + 1) // 2
        if i % 2:
            return ai * Q(b, h - 1) * Q(b, h)
        return Q(b, h) ** 2
    if (b, a) == long_short and fam == "G":
        h = (i + 2) // 3
        if i % 3 == 1:
            return ai ** 2 * Q(b, h) * Q(b, h - 1) ** 2
        if i % 3 == 2:
            return ai * Q(b, h) ** 2 * Q(b, h - 1)
        return Q(b, h) ** 3
    raise ValueError(f"no listed T-term for pair ({a},{b}) of {spec.name}")


def _quadratic_step(table: DeformedQTable, a: int, i: int) -> RF:
    """Q[a, i+1] from the quadratic relation."""
    prod = RF(1)
    for b in table.spec.neighbors(a):
        prod = prod * deformed_t_term(table, a, b, i)
    numer = table.get(a, i) ** 2 - prod
    denom = RF.var(Ui(a, i)) * table.get(a, i - 1)
    if denom.is_zero():
        raise ZeroDivisionError(f"zero denominator at Q[{a},{i + 1}]")
    return (numer / denom).cancel()


def _top_levels(spec: AlgebraSpec, max_scaled_level: int) -> dict:
    return {a: spec.t_of(a) * max_scaled_level + 1 for a in spec.nodes}


def build_deformed_table(spec: AlgebraSpec, max_scaled_level: int) -> DeformedQTable:
    """Solve the quadratic relation for Q[a, i], i <= t_a * L + 1.

    The extra level is what the shift u^(L) needs.
    """
    if max_scaled_level < 1:
        raise ValueError("max_scaled_level must be >= 1")
    table = DeformedQTable(spec)
    _fill_quadratic(table, _top_levels(spec, max_scaled_level))
    return table


def _fill_quadratic(table: DeformedQTable, top: dict):
    spec = table.spec

    def ensure(a, i):
        if (a, i) in table.entries:
            return
        ensure(a, i - 1)
        ensure(a, i - 2)
        for b, lvl in deformed_t_indices(spec, a, i - 1):
            ensure(b, lvl)
        table.entries[(a, i)] = _quadratic_step(table, a, i - 1)

    for a in spec.nodes:
        for i in range(2, top[a] + 1):
            ensure(a, i)


def build_deformed_table_by_recursion(spec: AlgebraSpec, max_scaled_level: int) -> DeformedQTable:
    """Same table, built from Q[a, i + t_a](u) = Q[a, i](u').

    Only Q[a, i] with i <= t_a + 1 come from the quadratic relation (they
    define u'); everything above is a substitution into a lower entry.
    """
    if max_scaled_level < 1:
        raise ValueError("max_scaled_level must be >= 1")
    table = DeformedQTable(spec)
    _fill_quadratic(table, {a: spec.t_of(a) + 1 for a in spec.nodes})
    top = _top_levels(spec, max_scaled_level)
    base = {k: v for k, v in table.entries.items()}
    base_table = DeformedQTable(spec)
    base_table.entries = base
    for i in range(2, max(top.values()) + 1):
        for a in spec.nodes:
            ta = spec.t_of(a)
            if i <= ta + 1 or i > top[a]:
                continue
            low = table.get(a, i - ta)
            mapping = shift_substitution(base_table, ShiftSpec.make(spec, 1), low.variables())
            table.entries[(a, i)] = low.substitute(mapping).cancel()
    return table


@dataclass(frozen=True)
class ShiftSpec:
    j: int
    p: int = 0
    tau: dict = field(default_factory=dict, compare=False, hash=False)

    @classmethod
    def make(cls, spec: AlgebraSpec, j: int, p: int = 0) -> "ShiftSpec":
        if j < 0:
            raise ValueError("shift j must be >= 0")
        if not 0 <= p < spec.t_max:
            raise ValueError(f"shift p must satisfy 0 <= p < {spec.t_max}")
        return cls(j, p, shift_tau(spec, j, p))


def shift_tau(spec: AlgebraSpec, j: int, p: int) -> dict:
    return {a: spec.t_of(a) * j + p if spec.is_short(a) else j for a in spec.nodes}


def shift_substitution(table: DeformedQTable, shift, variables=None) -> dict:
    """The map u -> u^(j,p) restricted to ``variables`` (default: all in the table).

    Variables not moved by the shift are left out of the map.
    """
    spec = table.spec
    if isinstance(shift, int):
        shift = ShiftSpec.make(spec, shift)
    j, p = shift.j, shift.p
    if variables is None:
        variables = table.variables()
    cache = table._shift_cache.setdefault((j, p), {})
    out = {}
    for v in variables:
        if v not in cache:
            cache[v] = _shift_image(table, v, j, p)
        if cache[v] is not None:
            out[v] = cache[v]
    return out


def _shift_image(table: DeformedQTable, v, j: int, p: int):
    spec = table.spec
    if j == 0 and p == 0:
        return None
    if v.kind == "A":
        (i,) = v.index
        if spec.gamma_prime is None:
            return None
        tgp = spec.t_of(spec.gamma_prime)
        img = RF.var(A(i + j * tgp))
        if i < tgp and j:
            img = table.get(spec.gamma, j) * img
        return img
    if v.kind == "U":
        (a,) = v.index
        return table.get(a, spec.t_of(a) * j + 1).inverse()
    if v.kind == "Ui":
        a, i = v.index
        ta = spec.t_of(a)
        if p and spec.is_short(a):
            if i == p:
                return table.get(a, ta * j + p + 1).inverse()
            if i == p + 1:
                return table.get(a, ta * j + p) * RF.var(Ui(a, ta * j + p + 1))
        if i == 1:
            return table.get(a, ta * j) * RF.var(Ui(a, ta * j + 1))
        return RF.var(Ui(a, i + ta * j))
    return None


def shifted_entry(table: DeformedQTable, a: int, k: int, shift) -> RF:
    """Q[a, k] evaluated at u^(j,p), cached per shift."""
    key = ("entry", a, k, shift if isinstance(shift, int) else (shift.j, shift.p))
    cache = table._shift_cache
    if key not in cache:
        q = table.get(a, k)
        cache[key] = q.substitute(shift_substitution(table, shift, q.variables()))
    return cache[key]


def shift_recursion_failures(table: DeformedQTable, k: int, j: int) -> list:
    """[(a, k, j)] where Q[a, k + t_a j](u) != Q[a, k](u^(j))."""
    bad = []
    for a in table.spec.nodes:
        lhs = table.get(a, k + table.spec.t_of(a) * j)
        if lhs != shifted_entry(table, a, k, j):
            bad.append((a, k, j))
    return bad


def verify_shift_recursion(table: DeformedQTable, k: int, j: int) -> bool:
    return not shift_recursion_failures(table, k, j)


def all_shift_recursion_failures(table: DeformedQTable) -> list:
    """Check the shift recursion for every (a, k, j) the table can support."""
    spec = table.spec
    lv = table.levels()
    bad = []
    jmax = min((lv[a] - 1) // spec.t_of(a) for a in spec.nodes)
    for j in range(1, jmax + 1):
        kmax = min(lv[a] - spec.t_of(a) * j for a in spec.nodes)
        for k in range(1, kmax + 1):
            bad.extend(shift_recursion_failures(table, k, j))
    return bad


def composition_failures(table: DeformedQTable, j1: int, j2: int) -> list:
    """Variables v where u^(j1) evaluated at u^(j2) differs from u^(j1+j2)."""
    vars_ = table.variables()
    m1 = shift_substitution(table, j1, vars_)
    total = shift_substitution(table, j1 + j2, vars_)
    bad = []
    for v in sorted(vars_):
        img = m1.get(v, RF.var(v))
        lhs = img.substitute(shift_substitution(table, j2, img.variables()))
        if lhs != total.get(v, RF.var(v)):
            bad.append(v)
    return bad


def table_mismatches(t1: DeformedQTable, t2: DeformedQTable) -> list:
    keys = sorted(set(t1.entries) | set(t2.entries))
    return [k for k in keys if k not in t1.entries or k not in t2.entries
            or t1.entries[k] != t2.entries[k]]


def quadratic_failures(table: DeformedQTable) -> list:
    """Entries violating the cross-multiplied quadratic relation."""
    spec = table.spec
    bad = []
    for (a, i1) in sorted(table.entries):
        i = i1 - 1
        if i < 1:
            continue
        try:
            prod = RF(1)
            for b in spec.neighbors(a):
                prod = prod * deformed_t_term(table, a, b, i)
        except InsufficientDepth:
            continue
        lhs = table.get(a, i1) * RF.var(Ui(a, i)) * table.get(a, i - 1)
        if lhs != table.get(a, i) ** 2 - prod:
            bad.append((a, i1))
    return bad


def t_term_list_mismatches(table: DeformedQTable) -> list:
    spec = table.spec
    lv = table.levels()
    bad = []
    for a in spec.nodes:
        for b in spec.neighbors(a):
            for i in range(1, lv[a]):
                try:
                    gen = deformed_t_term(table, a, b, i)
                    lst = explicit_deformed_t_term(table, a, b, i)
                except InsufficientDepth:
                    continue
                if gen != lst:
                    bad.append((a, b, i))
    return bad


# -- evaluation maps ----------------------------------------------------------

def phi_ones(spec: AlgebraSpec, j: int, p: int, variables) -> set:
    """The variables that phi_{j,p} sets to 1."""
    _check_phi_range(spec, j, p)
    tau = shift_tau(spec, j, p)
    out = set()
    for v in variables:
        if v.kind == "A":
            if spec.gamma_prime is not None and v.index[0] <= tau[spec.gamma_prime]:
                out.add(v)
        elif v.kind == "Ui":
            a, i = v.index
            if p == 0 or spec.is_short(a):
                if i < tau[a]:
                    out.add(v)
            elif i <= j:
                out.add(v)
    return out


def _check_phi_range(spec: AlgebraSpec, j: int, p: int):
    if j < 0 or not 0 <= p < spec.t_max:
        raise ValueError(f"evaluation map ({j},{p}) out of range for {spec.name}")


def evaluate_phi(table: DeformedQTable, j: int, p: int = 0) -> dict:
    """phi_{j,p} applied to every stored entry."""
    spec = table.spec
    _check_phi_range(spec, j, p)
    out = {}
    for key, q in table.entries.items():
        out[key] = q.evaluate_ones(phi_ones(spec, j, p, q.variables()))
    return out


def classical_in_u(spec: AlgebraSpec, max_scaled_level: int) -> dict:
    """Classical Q[a, i] with T(a) -> 1/u_a, as rational functions."""
    qt = solve_q_system(spec, max_scaled_level + 1)
    sub = {T(a): LaurentPoly.var(U(a), -1) for a in spec.nodes}
    return {k: RF.from_poly(v.substitute_monomials(sub)) for k, v in qt.entries.items()}


def phi_expectations(spec: AlgebraSpec, j: int, p: int, levels: dict) -> dict:
    """{(a, i): (classical index, divide-by u_{a,i'} or None)} predicted by phi_{j,p}."""
    tau = shift_tau(spec, j, p)
    out = {}
    for a in spec.nodes:
        ta = spec.t_of(a)
        if p == 0:
            for i in range(0, min(ta * j, levels[a]) + 1):
                out[(a, i)] = None
            if ta * j + 1 <= levels[a] and j >= 1:
                out[(a, ta * j + 1)] = ta * j
        else:
            top = tau[a] + (1 if ta == 1 else 0)
            for i in range(0, min(top, levels[a]) + 1):
                out[(a, i)] = None
            if spec.is_short(a) and tau[a] + 1 <= levels[a]:
                out[(a, tau[a] + 1)] = tau[a]
    return out


def phi_failures(table: DeformedQTable, j: int, p: int = 0) -> list:
    spec = table.spec
    lv = table.levels()
    scaled = max((lv[a] + spec.t_of(a) - 1) // spec.t_of(a) for a in spec.nodes)
    classical = classical_in_u(spec, scaled)
    images = evaluate_phi(table, j, p)
    bad = []
    for (a, i), div in phi_expectations(spec, j, p, lv).items():
        want = classical[(a, i)]
        if div is not None:
            want = want / RF.var(Ui(a, div))
        if images[(a, i)] != want:
            bad.append((a, i, j, p))
    return bad


def full_specialization_failures(table: DeformedQTable) -> list:
    """All u_{a,i}, a_i -> 1 must give the classical entry with T(a) = 1/u_a."""
    spec = table.spec
    lv = table.levels()
    scaled = max((lv[a] + spec.t_of(a) - 1) // spec.t_of(a) for a in spec.nodes)
    classical = classical_in_u(spec, scaled)
    bad = []
    for key, q in table.entries.items():
        ones = {v for v in q.variables() if v.kind in ("Ui", "A")}
        if q.evaluate_ones(ones) != classical[key]:
            bad.append(key)
    return bad


# -- independence statements --------------------------------------------------

def independence_failures(table: DeformedQTable) -> list:
    """Scan entries for variables they are claimed not to depend on."""
    spec = table.spec
    bad = []
    tgp = spec.t_of(spec.gamma_prime) if spec.gamma_prime is not None else None
    for (a, i), q in table.entries.items():
        for v in q.variables():
            if v.kind == "Ui":
                b, l = v.index
                if b == a and l >= i:
                    bad.append(((a, i), v))
                elif b != a and i >= 1 and not _allowed_cross(spec, a, i, b, l):
                    bad.append(((a, i), v))
            elif v.kind == "A" and tgp is not None:
                if v.index[0] * spec.t_of(a) >= tgp * i:
                    bad.append(((a, i), v))
    return bad


def _allowed_cross(spec, a, i, b, l) -> bool:
    # Q[a, t_a j + 1 + p] must not involve u_{b,l} with l >= t_b j + [p > 0]
    jj, pp = divmod(i - 1, spec.t_of(a))
    return l < spec.t_of(b) * jj + (1 if pp > 0 else 0)
