"""Generating functions Z and machine checks of their factorizations.

Coefficients of prod_a u_a^{q_a} in Z are finite sums over configurations
(the u_a exponent fixes sum_j j m_{b,j} through C^{-1}), so everything here
is exact.  Closed-form factorizations are checked by cross-multiplying the
direct series with the cleared denominator of the closed form; statements
about partial sums are checked against series expansions along the cone
C * Z_{>=0}^r.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product

from .algebra import AlgebraSpec, cartan_inverse_times
from .arith import variables as V
from .arith.binomial import extended_binomial
from .arith.laurent import LaurentPoly
from .arith.rational import RationalFunction as RF
from .arith.series import ConeSeries, cone_bound, _solve
from .arith.variables import A, U, Ui
from .deformed import (DeformedQTable, build_deformed_table, phi_ones,
                       shift_substitution, ShiftSpec, shift_tau)
from .fermionic import SumInstance, m_sum, make_instance, n_sum, partitions_with_max_part


class InconsistencyError(AssertionError):
    pass


class StatementNotApplicable(ValueError):
    pass


# -- restriction and windows -----------------------------------------------------

@dataclass(frozen=True)
class RestrictionK:
    """Keep only m with q_{a,j} >= 0 for k_a <= j < t_a k (half-open)."""
    K: tuple

    @classmethod
    def ones(cls, spec: AlgebraSpec) -> "RestrictionK":
        return cls(tuple(1 for _ in spec.nodes))

    def allows(self, inst: SumInstance, q) -> bool:
        for a in inst.spec.nodes:
            row = q[a - 1]
            for i in range(max(self.K[a - 1], 1), inst.row_length(a)):
                if row[i] < 0:
                    return False
        return True

    def minus(self, a: int) -> "RestrictionK":
        k = list(self.K)
        k[a - 1] -= 1
        return RestrictionK(tuple(k))


@dataclass(frozen=True)
class CoefficientWindow:
    bounds: tuple  # ((lo, hi), ...) per node

    @classmethod
    def box(cls, rank: int, lo: int, hi: int) -> "CoefficientWindow":
        return cls(tuple((lo, hi) for _ in range(rank)))

    @classmethod
    def default(cls, rank: int) -> "CoefficientWindow":
        w = {1: 8, 2: 4, 3: 3}.get(rank, 2)
        return cls.box(rank, -w, w)

    @classmethod
    def power_series(cls, rank: int, bound, ps_nodes=None) -> "CoefficientWindow":
        """[0, bound] on ps_nodes (default all), [-bound, bound] elsewhere."""
        if isinstance(bound, int):
            bound = [bound] * rank
        ps = set(ps_nodes) if ps_nodes is not None else set(range(1, rank + 1))
        return cls(tuple((0 if a in ps else -bound[a - 1], bound[a - 1]) for a in range(1, rank + 1)))

    def targets(self):
        return list(product(*[range(lo, hi + 1) for lo, hi in self.bounds]))


# -- the configuration engine ----------------------------------------------------

class _Fibers:
    """Enumerates m with fixed row sums s_b = sum_j j m_{b,j}, with all q_{a,i}.

    Each row choice contributes additively to every q_{a,i}, so those
    contributions are precomputed once per (row, choice).
    """

    def __init__(self, inst: SumInstance, excluded=None):
        self.inst = inst
        spec = inst.spec
        self.lengths = [inst.row_length(a) for a in spec.nodes]
        self.cells = [(a, i) for a in spec.nodes for i in range(0, inst.row_length(a) + 1)]
        self.offsets = {}
        pos = 0
        for a in spec.nodes:
            self.offsets[a] = pos
            pos += inst.row_length(a) + 1
        self.base = []
        for a, i in self.cells:
            v = inst.lam[a - 1]
            v -= sum((j - i) * x for j, x in enumerate(inst.n[a - 1], 1) if j > i)
            self.base.append(v)
        # excluded[a] = set of i with m_{a,i} forced to 0
        self.excluded = excluded or {}
        self._rows = {}

    def _choices(self, b: int, s_b: int):
        key = (b, s_b)
        if key not in self._rows:
            spec = self.inst.spec
            ex = self.excluded.get(b, ())
            out = []
            for row in partitions_with_max_part(s_b, self.lengths[b - 1]):
                if any(row[i - 1] for i in ex):
                    continue
                contrib = []
                for a, i in self.cells:
                    c = spec.C(a, b)
                    if not c:
                        contrib.append(0)
                        continue
                    sgn = 1 if c > 0 else -1
                    cab, cba = abs(c), abs(spec.C(b, a))
                    contrib.append(sgn * sum(max(0, cab * j - cba * i) * x
                                             for j, x in enumerate(row, 1) if x))
                out.append((row, contrib))
            self._rows[key] = out
        return self._rows[key]

    def configs(self, s):
        """Yield (m rows, q rows) where q row a holds q_{a,0..L_a}."""
        spec = self.inst.spec
        choices = [self._choices(b, s[b - 1]) for b in spec.nodes]
        ncell = len(self.cells)

        def rec(idx, q, picked):
            if idx == spec.rank:
                rows = []
                for a in spec.nodes:
                    off = self.offsets[a]
                    rows.append(q[off:off + self.lengths[a - 1] + 1])
                yield tuple(picked), rows
                return
            for row, contrib in choices[idx]:
                picked.append(row)
                yield from rec(idx + 1, [q[c] + contrib[c] for c in range(ncell)], picked)
                picked.pop()

        yield from rec(0, list(self.base), [])


def target_to_s(inst: SumInstance, target):
    nu = inst.nu()
    v = [target[a] - inst.lam[a] + nu[a] for a in range(inst.spec.rank)]
    s = cartan_inverse_times(inst.spec, v)
    if any(x.denominator != 1 or x < 0 for x in s):
        return None
    return [int(x) for x in s]


def _weight(inst: SumInstance, m, q, first: int = 1) -> int:
    w = 1
    for a in inst.spec.nodes:
        row, qr = m[a - 1], q[a - 1]
        for i in range(first, len(row) + 1):
            x = row[i - 1]
            if x:
                w *= extended_binomial(x, qr[i])
                if not w:
                    return 0
    return w


def _delta(spec: AlgebraSpec, a: int, i: int, x: int) -> int:
    if spec.gamma_prime is None or a != spec.gamma_prime:
        return 0
    return ((-i) % spec.t_of(a)) * x


def _phi_vars(spec: AlgebraSpec, phi, k: int):
    """Variables set to one by the evaluation ``phi`` (None, 'all' or (j, p))."""
    if phi is None:
        return set()
    if phi == "all":
        j, p = k + 1, 0
    else:
        j, p = phi
    cand = set()
    for a in spec.nodes:
        for i in range(1, spec.t_of(a) * k + 1):
            cand.add(Ui(a, i))
    if spec.gamma_prime is not None:
        for i in range(1, spec.t_of(spec.gamma_prime) * k + 1):
            cand.add(A(i))
    return phi_ones(spec, j, p, cand)


def z_coefficient(inst: SumInstance, target, restriction: RestrictionK | None = None,
                  phi=None) -> LaurentPoly:
    """Coefficient of prod u_a^{target_a} in Z, a Laurent polynomial in u_{a,i}, a_i.

    The restriction is applied to the summation first, then the evaluation
    ``phi`` ('all', or (j, p) for phi_{j,p}).
    """
    s = target_to_s(inst, target)
    if s is None:
        return LaurentPoly()
    spec = inst.spec
    ones = {V.var_index(v) for v in _phi_vars(spec, phi, inst.k)}
    cols = []
    for a in spec.nodes:
        for i in range(1, inst.row_length(a) + 1):
            idx = V.var_index(Ui(a, i))
            cols.append((a, i, None if idx in ones else V.unit(idx, 1)))
    a_units = {}
    if spec.gamma_prime is not None:
        for i in range(1, inst.row_length(spec.gamma_prime) + 1):
            idx = V.var_index(A(i))
            a_units[i] = None if idx in ones else V.unit(idx, 1)
    acc = {}
    for m, q in _Fibers(inst).configs(s):
        if restriction is not None and not restriction.allows(inst, q):
            continue
        w = _weight(inst, m, q)
        if not w:
            continue
        mono = 0
        for a, i, unit in cols:
            if unit is not None and q[a - 1][i]:
                mono += q[a - 1][i] * unit
        gp = spec.gamma_prime
        if gp is not None:
            for i, x in enumerate(m[gp - 1], 1):
                if x and a_units[i] is not None:
                    d = _delta(spec, gp, i, x)
                    if d:
                        mono += d * a_units[i]
        acc[mono] = acc.get(mono, 0) + w
    return LaurentPoly({mm: c for mm, c in acc.items() if c})


def z_constant_term(inst: SumInstance, restriction: RestrictionK | None = None) -> int:
    """Constant term in the u_a with every u_{a,i} and a_i set to 1."""
    s = target_to_s(inst, [0] * inst.spec.rank)
    if s is None:
        return 0
    total = 0
    for m, q in _Fibers(inst).configs(s):
        if restriction is not None and not restriction.allows(inst, q):
            continue
        total += _weight(inst, m, q)
    return total


def constant_term_cross_check(inst: SumInstance) -> tuple:
    """(N, M) from the generating function; raises if module fermionic disagrees."""
    N = z_constant_term(inst)
    M = z_constant_term(inst, RestrictionK.ones(inst.spec))
    n_ref, m_ref = n_sum(inst), m_sum(inst)
    if (N, M) != (n_ref, m_ref):
        raise InconsistencyError(
            f"constant terms (N={N}, M={M}) differ from sums (N={n_ref}, M={m_ref}) for {inst}")
    return N, M


# -- closed forms ----------------------------------------------------------------

@lru_cache(maxsize=None)
def deformed_table(spec: AlgebraSpec, level: int) -> DeformedQTable:
    return build_deformed_table(spec, max(level, 1))


def factorized_form(table: DeformedQTable, inst: SumInstance) -> RF:
    """prod_a Q_{a,1} (Q_{a,t_a k} / Q_{a,t_a k + 1})^{l_a + 1} prod_i Q_{a,i}^{n_{a,i}} / u_{a,i}."""
    spec = inst.spec
    Q = table.get
    out = RF(1)
    for a in spec.nodes:
        top = inst.row_length(a)
        la = inst.lam[a - 1]
        out = out * Q(a, 1) * (Q(a, top) / Q(a, top + 1)) ** (la + 1)
        for i in range(1, top + 1):
            out = out * Q(a, i) ** inst.n_at(a, i) / RF.var(Ui(a, i))
    return out


def level_one_explicit_form(inst: SumInstance) -> RF:
    """Simply-laced level-one closed form written directly in the u variables."""
    spec = inst.spec
    out = RF(1)
    for a in spec.nodes:
        la, na = inst.lam[a - 1], inst.n_at(a, 1)
        y = LaurentPoly.monomial({U(b): spec.C(a, b) for b in spec.nodes if spec.C(a, b)})
        out = out * RF.monomial({Ui(a, 1): la, U(a): la - na})
        out = out / RF.from_poly(LaurentPoly.const(1) - y) ** (la + 1)
    return out


def truncated(inst: SumInstance, level: int, lam=None) -> SumInstance:
    """Same n restricted to i <= t_a * level, at the given level (lambda default 0)."""
    spec = inst.spec
    rows = {a: list(inst.n[a - 1][:spec.t_of(a) * level]) for a in spec.nodes}
    return make_instance(spec, lam if lam is not None else [0] * spec.rank, rows, level)


def shifted(inst: SumInstance, j: int) -> SumInstance:
    """The instance with n_{a,i} -> n_{a,i + t_a j} at level k - j."""
    spec = inst.spec
    rows = {a: list(inst.n[a - 1][spec.t_of(a) * j:]) for a in spec.nodes}
    return make_instance(spec, inst.lam, rows, inst.k - j)


def substituted_form(table: DeformedQTable, inst: SumInstance, j: int) -> RF:
    """Closed form of the level-(k-j) factor evaluated at u^(j)."""
    tail = factorized_form(table, shifted(inst, j))
    return tail.substitute(shift_substitution(table, j, tail.variables())).cancel()


# -- series arithmetic helpers -----------------------------------------------------

def _split_u(poly: LaurentPoly, spec: AlgebraSpec) -> dict:
    return poly.split_by([U(a) for a in spec.nodes])


class _ZCache:
    def __init__(self, inst: SumInstance):
        self.inst = inst
        self.memo = {}

    def __call__(self, q) -> LaurentPoly:
        q = tuple(q)
        if q not in self.memo:
            self.memo[q] = z_coefficient(self.inst, q)
        return self.memo[q]


def _cone_lead(spec: AlgebraSpec, split: dict) -> tuple:
    """The u-exponent of ``split`` that is lowest in the cone order."""
    cartan = [list(r) for r in spec.cartan]
    coords = {d: _solve(cartan, d) for d in split}
    lead = min(coords, key=lambda d: sum(coords[d]))
    if any(any(x < y for x, y in zip(coords[d], coords[lead])) for d in coords):
        raise InconsistencyError("denominator has no cone-leading term")
    return lead


def _times_poly(z: _ZCache, poly_split: dict, target) -> LaurentPoly:
    """Coefficient of u^target in Z * poly (poly split by its u-exponents)."""
    acc = LaurentPoly()
    for d, c in poly_split.items():
        zt = z(tuple(t - x for t, x in zip(target, d)))
        if zt:
            acc = acc + zt * c
    return acc


# -- the factorization statements -------------------------------------------------

class Statement(str, enum.Enum):
    """Factorization statements that can be machine-checked.

    Values are the short identifiers accepted on the command line.
    """
    SL2_LEVEL_ONE = "Zkone"
    SL2_FACTORIZATION = "sltwoZfactorization"
    SL2_SPLIT = "pfactorization"
    LEVEL_ONE = "initialZ"
    SIMPLY_LACED_FACTORIZATION = "gfactorization"
    SIMPLY_LACED_SPLIT = "gfact"
    GENERAL_LEVEL_ONE = "lemmageninit"
    GENERAL_RECURSION = "recuZ"
    GENERAL_FACTORIZATION = "Zfactorized"
    GENERAL_SPLIT = "factojgen"
    PARTIAL_SUM = "partialfactorization"
    SHIFTED_PARTIAL_SUM = "lastZfactor"


STATEMENT_ALIASES = {"Zgone": Statement.LEVEL_ONE}


def parse_statement(name) -> Statement:
    if isinstance(name, Statement):
        return name
    if name in STATEMENT_ALIASES:
        return STATEMENT_ALIASES[name]
    try:
        return Statement(name)
    except ValueError:
        try:
            return Statement[name.upper().replace("-", "_")]
        except KeyError:
            raise ValueError(f"unknown statement {name!r}; expected one of "
                             f"{[s.value for s in Statement]}") from None


def statement_applies(statement: Statement, spec: AlgebraSpec, k: int) -> bool:
    sl2 = spec.family == "A" and spec.rank == 1
    if statement in (Statement.SL2_LEVEL_ONE,):
        return sl2 and k == 1
    if statement == Statement.SL2_FACTORIZATION:
        return sl2
    if statement == Statement.SL2_SPLIT:
        return sl2 and k >= 2
    if statement == Statement.LEVEL_ONE:
        return spec.simply_laced and k == 1
    if statement == Statement.SIMPLY_LACED_FACTORIZATION:
        return spec.simply_laced
    if statement == Statement.SIMPLY_LACED_SPLIT:
        return spec.simply_laced and k >= 2
    if statement == Statement.GENERAL_LEVEL_ONE:
        return k == 1
    if statement == Statement.GENERAL_FACTORIZATION:
        return True
    if statement in (Statement.GENERAL_RECURSION, Statement.GENERAL_SPLIT):
        return k >= 2
    if statement == Statement.PARTIAL_SUM:
        return not spec.simply_laced
    if statement == Statement.SHIFTED_PARTIAL_SUM:
        return True
    return False


@dataclass
class FactorizationReport:
    statement: str
    algebra: str
    ok: bool
    checked_coefficients: int
    nonzero_coefficients: int
    params: dict = field(default_factory=dict)
    first_failure: dict | None = None
    notes: list = field(default_factory=list)

    def as_dict(self) -> dict:
        d = {"statement": self.statement, "algebra": self.algebra, "ok": self.ok,
             "checked_coefficients": self.checked_coefficients,
             "nonzero_coefficients": self.nonzero_coefficients, "params": self.params}
        if self.first_failure is not None:
            d["first_failure"] = self.first_failure
        if self.notes:
            d["notes"] = list(self.notes)
        return d


def verify_factorization(inst: SumInstance, statement, window: CoefficientWindow | None = None,
                         j: int | None = None, p: int | None = None) -> FactorizationReport:
    """Check one factorization statement coefficient by coefficient on ``window``.

    ``j`` is the split level for the split statements and ``p`` the partial
    depth for the partial-sum statements (defaults: j = 1, p = 1 or 0).
    """
    statement = parse_statement(statement)
    spec = inst.spec
    k = inst.k
    if not statement_applies(statement, spec, k):
        raise StatementNotApplicable(f"{statement.value} does not apply to {spec.name} at level {k}")
    window = window or CoefficientWindow.default(spec.rank)
    table = deformed_table(spec, k)
    if statement in (Statement.PARTIAL_SUM, Statement.SHIFTED_PARTIAL_SUM):
        if statement == Statement.PARTIAL_SUM:
            j = 0
            p = 1 if p is None else p
        else:
            j = 0 if j is None else j
            p = 0 if p is None else p
        return _verify_partial(inst, table, window, statement, j, p)

    if statement in (Statement.SL2_SPLIT, Statement.SIMPLY_LACED_SPLIT,
                     Statement.GENERAL_SPLIT, Statement.GENERAL_RECURSION):
        if statement == Statement.GENERAL_RECURSION:
            j = 1
        j = 1 if j is None else j
        if not 1 <= j <= k - 1:
            raise ValueError(f"split level j={j} must satisfy 1 <= j <= k-1")
        head = truncated(inst, j)
        rhs = substituted_form(table, inst, j)
        lhs_z, rhs_z = _ZCache(inst), _ZCache(head)
        lhs_mult, rhs_mult = _split_u(rhs.den, spec), _split_u(rhs.num, spec)
        params = {"k": k, "j": j}
    else:
        forms = [factorized_form(table, inst)]
        if statement == Statement.LEVEL_ONE:
            forms.append(level_one_explicit_form(inst))
        params = {"k": k}
        reports = []
        for form in forms:
            rep = _cross_check(inst, window, _ZCache(inst), _split_u(form.den, spec),
                               None, _split_u(form.num, spec), statement, params)
            reports.append(rep)
        out = reports[0]
        for extra in reports[1:]:
            out.ok = out.ok and extra.ok
            out.checked_coefficients += extra.checked_coefficients
            out.first_failure = out.first_failure or extra.first_failure
        return out
    return _cross_check(inst, window, lhs_z, lhs_mult, rhs_z, rhs_mult, statement, params)


def _cross_check(inst, window, lhs_z, lhs_mult, rhs_z, rhs_mult, statement, params):
    """Compare Z_lhs * lhs_mult with Z_rhs * rhs_mult (or rhs_mult alone) on the window."""
    spec = inst.spec
    checked = nonzero = 0
    failure = None
    # Z * D at u^(t + lead) starts with lead(D) * Z_t, so shifting by the
    # leading exponent of D makes the window refer to coefficients of Z.
    lead = _cone_lead(spec, lhs_mult)
    for target in window.targets():
        shifted_t = tuple(t + d for t, d in zip(target, lead))
        lhs = _times_poly(lhs_z, lhs_mult, shifted_t)
        if rhs_z is None:
            rhs = rhs_mult.get(shifted_t, LaurentPoly())
        else:
            rhs = _times_poly(rhs_z, rhs_mult, shifted_t)
        checked += 1
        nonzero += len(lhs_z(target))
        if lhs != rhs and failure is None:
            failure = {"target": list(target), "lhs": str(lhs), "rhs": str(rhs)}
    return FactorizationReport(statement.value, spec.name, failure is None, checked, nonzero,
                               params, failure)


# -- partial sums ------------------------------------------------------------------

def partial_excluded(spec: AlgebraSpec, p: int) -> dict:
    """Cells (a, i) summed out of Z^{(k,p)}: short a with i <= p."""
    return {a: tuple(range(1, p + 1)) for a in spec.short_nodes()} if p else {}


def partial_terms(inst: SumInstance, p: int, s):
    """Terms of Z^{(k,p)} with row sums s, as (coefficient, exponent dict)."""
    spec = inst.spec
    fib = _Fibers(inst, partial_excluded(spec, p))
    for m, q in fib.configs(s):
        w = _weight(inst, m, q)
        if not w:
            continue
        exps = {}
        for a in spec.nodes:
            qa = q[a - 1]
            start = p if (p and spec.is_short(a)) else 0
            head = U(a) if start == 0 else Ui(a, start)
            if qa[start]:
                exps[head] = qa[start]
            for i in range(max(start, 0) + 1, inst.row_length(a) + 1):
                if qa[i]:
                    exps[Ui(a, i)] = qa[i]
            if a == spec.gamma_prime:
                for i, x in enumerate(m[a - 1], 1):
                    d = _delta(spec, a, i, x)
                    if d:
                        exps[A(i)] = exps.get(A(i), 0) + d
        yield m, q, w, exps


class _SeriesFactory:
    """ConeSeries for the images of variables under a shift, with power caching."""

    def __init__(self, spec: AlgebraSpec, table: DeformedQTable, shift: ShiftSpec, bound):
        self.spec = spec
        self.table = table
        self.shift = shift
        self.bound = tuple(bound)
        self.cartan = [list(r) for r in spec.cartan]
        self.gvars = [U(a) for a in spec.nodes]
        self._rf = {}
        self._pow = {}

    def of_rf(self, r: RF) -> ConeSeries:
        """Expand factor by factor, so each inverse is of a single polynomial."""
        if r.coeff.denominator != 1:
            raise ValueError("cone expansion needs an integral constant factor")
        out = ConeSeries.from_poly(LaurentPoly({r.mono: r.coeff.numerator}), self.cartan,
                                   self.gvars, self.bound)
        for f, e in r.factors.items():
            out = out * ConeSeries.from_poly(f, self.cartan, self.gvars, self.bound) ** e
        return out

    def image_power(self, v, e: int) -> ConeSeries:
        key = (v, e)
        if key not in self._pow:
            if v not in self._rf:
                img = shift_substitution(self.table, self.shift, [v]).get(v, RF.var(v))
                self._rf[v] = self.of_rf(img)
            self._pow[key] = self._rf[v] ** e
        return self._pow[key]


def _term_series(fac: _SeriesFactory, coeff: int, exps: dict) -> ConeSeries:
    out = ConeSeries.one(fac.cartan, fac.gvars, fac.bound).scale(LaurentPoly.const(coeff))
    for v, e in sorted(exps.items()):
        if e:
            out = out * fac.image_power(v, e)
    return out


def shifted_partial_prefactor(table: DeformedQTable, inst: SumInstance, j: int, p: int) -> RF:
    """prod_a Q_{a,1} Q_{a,tau} / Q_{a,tau+1} prod_{i <= tau} Q_{a,i}^{n_{a,i}} / u_{a,i}."""
    spec = inst.spec
    tau = shift_tau(spec, j, p)
    Q = table.get
    out = RF(1)
    for a in spec.nodes:
        ta = tau[a]
        out = out * Q(a, 1) * Q(a, ta) / Q(a, ta + 1)
        for i in range(1, ta + 1):
            out = out * Q(a, i) ** inst.n_at(a, i) / RF.var(Ui(a, i))
    return out


def _verify_partial(inst, table, window, statement, j, p):
    spec = inst.spec
    k = inst.k
    if not 0 <= j <= k - 1:
        raise ValueError(f"shift j={j} must satisfy 0 <= j <= k-1")
    if not 0 <= p < spec.t_max:
        raise ValueError(f"partial depth p={p} must satisfy 0 <= p < {spec.t_max}")
    if p and not spec.short_nodes():
        raise StatementNotApplicable("partial sums with p > 0 need a short root")
    shift = ShiftSpec.make(spec, j, p)
    tail = shifted(inst, j)
    cartan = [list(r) for r in spec.cartan]
    gvars = [U(a) for a in spec.nodes]
    targets = window.targets()
    pre = shifted_partial_prefactor(table, inst, j, p)

    # first pass with a provisional bound fixes the bases
    probe = _SeriesFactory(spec, table, shift, (0,) * spec.rank)
    pre_base = probe.of_rf(pre).base
    zero = (0,) * spec.rank
    c = None
    for m, q, w, exps in partial_terms(tail, p, zero):
        c = _term_series(probe, w, exps).base
    if c is None:
        raise InconsistencyError("the empty configuration must contribute")
    lead = tuple(a + b for a, b in zip(pre_base, c))
    bound = cone_bound(cartan, lead, targets)
    fac = _SeriesFactory(spec, table, shift, bound)
    acc = {}
    grade_ok = True
    for s in product(*[range(b + 1) for b in bound]):
        for m, q, w, exps in partial_terms(tail, p, s):
            ser = _term_series(fac, w, exps)
            offset = [x - y for x, y in zip(ser.base, c)]
            if not ser.terms:
                continue
            # truncating at ``bound`` is only sound if terms start at or
            # above the cone grade of their row sums
            if any(o.denominator != 1 or o < x for o, x in zip(offset, s)):
                grade_ok = False
                continue
            delta = [int(o) for o in offset]
            for t, v in ser.terms.items():
                key = tuple(a + b for a, b in zip(t, delta))
                prev = acc.get(key)
                acc[key] = v if prev is None else prev + v
    total = ConeSeries(cartan, gvars, c, bound, acc)
    rhs = fac.of_rf(pre) * total
    zc = _ZCache(inst)
    checked = nonzero = 0
    failure = None
    for target in targets:
        lhs = zc(target)
        got = rhs.coefficient(target)
        checked += 1
        nonzero += len(lhs)
        if lhs != got and failure is None:
            failure = {"target": list(target), "lhs": str(lhs), "rhs": str(got)}
    rep = FactorizationReport(statement.value, spec.name, failure is None and grade_ok, checked,
                              nonzero, {"k": k, "j": j, "p": p}, failure)
    if not grade_ok:
        rep.notes.append("a term's leading cone grade is below its row sums")
    return rep


def shifted_term_failures(table: DeformedQTable, inst: SumInstance, j: int, p: int, smax: int = 2):
    """Each term of the shifted partial sum equals its explicit form (finite RF identity).

    The explicit form is
        prod_a Q_{a,tau+1}^{-q_{a,tau}} Q_{a,tau}^{q_{a,tau+1}} * Q_{gamma,j}^mu * F_{j,p}
    with q taken from the level-k instance on the configuration padded by
    zeros at i <= tau_a.
    """
    spec = inst.spec
    tau = shift_tau(spec, j, p)
    tail = shifted(inst, j)
    shift = ShiftSpec.make(spec, j, p)
    Q = table.get
    bad = []
    full = _Fibers(inst)
    for s in product(range(smax + 1), repeat=spec.rank):
        for m, q, w, exps in partial_terms(tail, p, s):
            mono = RF.monomial(exps, w)
            lhs = mono.substitute(shift_substitution(table, shift, mono.variables()))
            # pad the configuration back to level k
            mfull = []
            for a in spec.nodes:
                off = spec.t_of(a) * j
                mfull.append(tuple([0] * off) + tuple(m[a - 1]))
            qfull = _q_of(full, mfull)
            rhs = RF(_weight(inst, mfull, qfull))
            for a in spec.nodes:
                ta = tau[a]
                rhs = rhs * Q(a, ta + 1) ** (-qfull[a - 1][ta]) * Q(a, ta) ** qfull[a - 1][ta + 1]
                for i in range(ta + 1, inst.row_length(a) + 1):
                    rhs = rhs * RF.var(Ui(a, i), qfull[a - 1][i])
                    d = _delta(spec, a, i, mfull[a - 1][i - 1])
                    if d:
                        rhs = rhs * RF.var(A(i), d)
            gp = spec.gamma_prime
            if gp is not None and j >= 1:
                mu = sum(_delta(spec, gp, tau[gp] + l, mfull[gp - 1][tau[gp] + l - 1])
                         for l in range(1, spec.t_of(gp) - p)
                         if tau[gp] + l <= inst.row_length(gp))
                rhs = rhs * Q(spec.gamma, j) ** mu
            if lhs != rhs:
                bad.append((tuple(map(tuple, m)), str(lhs), str(rhs)))
    return bad


def _q_of(fib: _Fibers, m):
    """q rows (i = 0..L) for an explicit configuration."""
    inst = fib.inst
    spec = inst.spec
    out = []
    for a in spec.nodes:
        row = []
        for i in range(0, inst.row_length(a) + 1):
            v = inst.lam[a - 1] - sum((jj - i) * x for jj, x in enumerate(inst.n[a - 1], 1) if jj > i)
            for b in spec.nodes:
                c = spec.C(a, b)
                if not c:
                    continue
                sgn = 1 if c > 0 else -1
                cab, cba = abs(c), abs(spec.C(b, a))
                v += sgn * sum(max(0, cab * jj - cba * i) * x for jj, x in enumerate(m[b - 1], 1) if x)
            row.append(v)
        out.append(row)
    return out


# -- power-series identities -------------------------------------------------------

@dataclass
class PSReport:
    ok: bool
    checked_coefficients: int
    nonzero_coefficients: int
    params: dict = field(default_factory=dict)
    first_failure: dict | None = None

    def as_dict(self) -> dict:
        d = {"ok": self.ok, "checked_coefficients": self.checked_coefficients,
             "nonzero_coefficients": self.nonzero_coefficients, "params": self.params}
        if self.first_failure is not None:
            d["first_failure"] = self.first_failure
        return d


def verify_ps_identity(inst: SumInstance, K: RestrictionK | None, K_prime: RestrictionK | None,
                       phi, degree_bound, ps_nodes=None) -> PSReport:
    """Compare phi(Z^[K]) and phi(Z^[K']) on the power-series window.

    ``ps_nodes`` (default: all) are the u_a whose power-series part is taken;
    the other u_a range over [-bound, bound].  ``None`` as a restriction means
    the unrestricted sum.
    """
    window = CoefficientWindow.power_series(inst.spec.rank, degree_bound, ps_nodes)
    return compare_on_window(inst, K, K_prime, phi, window)


def compare_on_window(inst, K, K_prime, phi, window: CoefficientWindow) -> PSReport:
    checked = nonzero = 0
    failure = None
    for target in window.targets():
        a = z_coefficient(inst, target, K, phi)
        b = z_coefficient(inst, target, K_prime, phi)
        checked += 1
        nonzero += len(a)
        if a != b and failure is None:
            failure = {"target": list(target), "lhs": str(a), "rhs": str(b)}
    params = {"K": list(K.K) if K else None, "K_prime": list(K_prime.K) if K_prime else None,
              "phi": phi if phi in (None, "all") else list(phi), "window": [list(b) for b in window.bounds]}
    return PSReport(failure is None, checked, nonzero, params, failure)


def no_restriction(spec: AlgebraSpec, k: int) -> RestrictionK:
    """The trivial restriction K_a = t_a k (nothing is constrained)."""
    return RestrictionK(tuple(spec.t_of(a) * k for a in spec.nodes))


def ps_steps(spec: AlgebraSpec, k: int):
    """The single-step PS identities as (name, K, K', phi, ps_nodes).

    sl2: restriction [j] against [j+1] at phi_j.  Simply-laced: K with
    k_a = j+1 against K - e_a at phi_j.  Otherwise: the long/short steps at
    phi_{j,0} (k_a = t_a j + 1) and phi_{j,p} (short a, k_a = tau_a + 1),
    with the remaining nodes at their lowest allowed thresholds.

    ``ps_nodes`` names the node a the step is stated for.  Taking the
    power-series part in u_a alone is too strong in general (a G2 step fails
    once u_b exponents go negative); callers check on the all-node window by default.
    """
    out = []
    if spec.family == "A" and spec.rank == 1:
        for j in range(1, k):
            out.append(("sl2-step", RestrictionK((j,)), RestrictionK((j + 1,)), (j, 0), None))
        return out
    if spec.simply_laced:
        for j in range(1, k):
            for a in spec.nodes:
                K = tuple(j + 1 if b == a else j for b in spec.nodes)
                out.append(("simply-laced-step", RestrictionK(K), RestrictionK(K).minus(a), (j, 0), [a]))
        return out
    for j in range(1, k):
        for a in spec.nodes:
            K = tuple(spec.t_of(b) * j + 1 if b == a else spec.t_of(b) * j for b in spec.nodes)
            out.append(("long-short-step", RestrictionK(K), RestrictionK(K).minus(a), (j, 0), [a]))
    for j in range(0, k):
        for p in range(1, spec.t_max):
            tau = shift_tau(spec, j, p)
            for a in spec.short_nodes():
                if tau[a] + 1 > spec.t_of(a) * k:
                    continue
                K = tuple(max(tau[b], 1) + (1 if b == a else 0) for b in spec.nodes)
                if K[a - 1] - 1 < 1:
                    continue
                out.append(("short-step", RestrictionK(K), RestrictionK(K).minus(a), (j, p), [a]))
    return out


def end_to_end_ps(inst: SumInstance, degree_bound) -> PSReport:
    """Full evaluation, K = (1..1) against no restriction, PS in every u_a."""
    spec = inst.spec
    return verify_ps_identity(inst, RestrictionK.ones(spec), None, "all", degree_bound)


def nonzero_in_window(inst: SumInstance, window: CoefficientWindow) -> int:
    """Number of nonzero monomial terms of Z over the window targets."""
    return sum(len(z_coefficient(inst, t)) for t in window.targets())


def widened_window(inst: SumInstance, min_nonzero: int = 20, window: CoefficientWindow | None = None,
                   step: int = 2, max_steps: int = 20) -> CoefficientWindow:
    """Raise the upper bounds of ``window`` until Z has ``min_nonzero`` terms in it."""
    window = window or CoefficientWindow.default(inst.spec.rank)
    for _ in range(max_steps):
        if nonzero_in_window(inst, window) >= min_nonzero:
            return window
        window = CoefficientWindow(tuple((lo, hi + step) for lo, hi in window.bounds))
    raise ValueError(f"could not reach {min_nonzero} nonzero coefficients for {inst}")
