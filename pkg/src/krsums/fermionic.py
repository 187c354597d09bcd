"""Vacancy numbers, total spin, configuration enumeration and the M/N sums."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .algebra import AlgebraSpec, cartan_inverse_times
from .arith.binomial import extended_binomial


class ShapeError(ValueError):
    pass


@dataclass(frozen=True)
class SumInstance:
    spec: AlgebraSpec
    lam: tuple
    n: tuple  # row alpha-1 holds n_{alpha,1..t_alpha*k}
    k: int

    def __post_init__(self):
        spec = self.spec
        if self.k < 1:
            raise ShapeError("level k must be >= 1")
        if len(self.lam) != spec.rank:
            raise ShapeError(f"lambda needs {spec.rank} entries, got {len(self.lam)}")
        if any(x < 0 for x in self.lam):
            raise ShapeError("lambda entries must be nonnegative")
        if len(self.n) != spec.rank:
            raise ShapeError(f"n needs {spec.rank} rows, got {len(self.n)}")
        for a in spec.nodes:
            row = self.n[a - 1]
            if len(row) != self.row_length(a):
                raise ShapeError(f"row {a} of n needs {self.row_length(a)} entries, got {len(row)}")
            if any(x < 0 for x in row):
                raise ShapeError(f"row {a} of n has a negative entry")

    def row_length(self, a: int) -> int:
        return self.spec.t_of(a) * self.k

    def n_at(self, a: int, i: int) -> int:
        row = self.n[a - 1]
        return row[i - 1] if 1 <= i <= len(row) else 0

    def nu(self) -> list:
        """nu_alpha = sum_j j n_{alpha,j}."""
        return [sum(j * x for j, x in enumerate(row, 1)) for row in self.n]


def make_instance(spec: AlgebraSpec, lam, n, k: int) -> SumInstance:
    """Build an instance; ``n`` is a dict node -> row (padded with zeros) or full rows."""
    if isinstance(n, dict):
        rows = []
        for a in spec.nodes:
            row = list(n.get(a, []))
            length = spec.t_of(a) * k
            if len(row) > length:
                if any(row[length:]):
                    raise ShapeError(f"row {a} has nonzero entries beyond level {length}")
                row = row[:length]
            rows.append(tuple(row + [0] * (length - len(row))))
        n = rows
    return SumInstance(spec, tuple(lam), tuple(tuple(r) for r in n), k)


@dataclass(frozen=True)
class VacancyData:
    q_alpha: tuple
    p: tuple
    q: tuple
    delta: tuple


def _check_shape(inst: SumInstance, m):
    if len(m) != inst.spec.rank:
        raise ShapeError("m has the wrong number of rows")
    for a in inst.spec.nodes:
        if len(m[a - 1]) != inst.row_length(a):
            raise ShapeError(f"row {a} of m has the wrong length")
        if any(x < 0 for x in m[a - 1]):
            raise ShapeError(f"row {a} of m has a negative entry")


def total_spin(inst: SumInstance, m) -> list:
    spec = inst.spec
    out = []
    for a in spec.nodes:
        v = inst.lam[a - 1]
        for b in spec.nodes:
            c = spec.C(a, b)
            if c:
                v += c * sum(j * x for j, x in enumerate(m[b - 1], 1))
        v -= sum(j * x for j, x in enumerate(inst.n[a - 1], 1))
        out.append(v)
    return out


def vacancy(inst: SumInstance, m, a: int, i: int) -> int:
    """p_{a,i} with the min(|C_ab| j, |C_ba| i) coupling."""
    spec = inst.spec
    v = sum(min(i, j) * x for j, x in enumerate(inst.n[a - 1], 1))
    for b in spec.nodes:
        c = spec.C(a, b)
        if not c:
            continue
        sgn = 1 if c > 0 else -1
        cab, cba = abs(c), abs(spec.C(b, a))
        v -= sgn * sum(min(cab * j, cba * i) * x for j, x in enumerate(m[b - 1], 1) if x)
    return v


def modified_vacancy(inst: SumInstance, m, a: int, i: int) -> int:
    """q_{a,i} from the threshold form; valid for every i >= 0 (q_{a,0} = q_a)."""
    spec = inst.spec
    v = inst.lam[a - 1]
    for b in spec.nodes:
        c = spec.C(a, b)
        if not c:
            continue
        sgn = 1 if c > 0 else -1
        cab, cba = abs(c), abs(spec.C(b, a))
        for j, x in enumerate(m[b - 1], 1):
            d = cab * j - cba * i
            if x and d > 0:
                v += sgn * d * x
    v -= sum((j - i) * x for j, x in enumerate(inst.n[a - 1], 1) if j > i)
    return v


def delta_exponent(spec: AlgebraSpec, a: int, i: int, m_ai: int) -> int:
    """Delta_{a,i} = (-i mod t_gamma') * [a == gamma'] * m_{a,i}."""
    if spec.gamma_prime is None or a != spec.gamma_prime:
        return 0
    return ((-i) % spec.t_of(spec.gamma_prime)) * m_ai


def compute_vacancy_data(inst: SumInstance, m) -> VacancyData:
    _check_shape(inst, m)
    spec = inst.spec
    qa = total_spin(inst, m)
    p, q, d = [], [], []
    for a in spec.nodes:
        L = inst.row_length(a)
        p.append(tuple(vacancy(inst, m, a, i) for i in range(1, L + 1)))
        q.append(tuple(modified_vacancy(inst, m, a, i) for i in range(1, L + 1)))
        d.append(tuple(delta_exponent(spec, a, i, m[a - 1][i - 1]) for i in range(1, L + 1)))
    return VacancyData(tuple(qa), tuple(p), tuple(q), tuple(d))


# enumeration -----------------------------------------------------------------

def partitions_with_max_part(s: int, maxpart: int):
    """Multiplicity vectors (m_1..m_maxpart) with sum j*m_j = s, colex order."""
    if s < 0:
        return
    mult = [0] * maxpart

    def rec(rest, part):
        if part == 0:
            if rest == 0:
                yield tuple(mult)
            return
        top = rest // part
        for c in range(top, -1, -1):
            mult[part - 1] = c
            yield from rec(rest - c * part, part - 1)
        mult[part - 1] = 0

    if maxpart == 0:
        if s == 0:
            yield ()
        return
    yield from rec(s, maxpart)


def spin_to_s(inst: SumInstance, target) -> list | None:
    """s = C^{-1}(target - lambda + nu) if it is a nonnegative integer vector."""
    nu = inst.nu()
    v = [target[a] - inst.lam[a] + nu[a] for a in range(inst.spec.rank)]
    s = cartan_inverse_times(inst.spec, v)
    if any(x.denominator != 1 or x < 0 for x in s):
        return None
    return [int(x) for x in s]


def configs_with_s(inst: SumInstance, s, row_lengths=None):
    """All m whose row b satisfies sum_j j m_{b,j} = s_b."""
    spec = inst.spec
    lengths = row_lengths or [inst.row_length(a) for a in spec.nodes]
    rows = [list(partitions_with_max_part(s[a], lengths[a])) for a in range(spec.rank)]

    def rec(a, acc):
        if a == spec.rank:
            yield tuple(acc)
            return
        for r in rows[a]:
            acc.append(r)
            yield from rec(a + 1, acc)
            acc.pop()

    yield from rec(0, [])


def enumerate_zero_spin_configs(inst: SumInstance, restricted: bool):
    s = spin_to_s(inst, [0] * inst.spec.rank)
    if s is None:
        return
    for m in configs_with_s(inst, s):
        if restricted:
            if all(vacancy(inst, m, a, i) >= 0
                   for a in inst.spec.nodes for i in range(1, inst.row_length(a) + 1)):
                yield m
        else:
            yield m


def config_weight(inst: SumInstance, m) -> int:
    w = 1
    for a in inst.spec.nodes:
        for i, x in enumerate(m[a - 1], 1):
            if x:
                w *= extended_binomial(x, vacancy(inst, m, a, i))
                if not w:
                    return 0
    return w


def _row_contribution(inst: SumInstance, b: int, row, cells) -> list:
    """Contribution of row b of m to every vacancy number p_{a,i} (cells order)."""
    spec = inst.spec
    out = []
    for a, i in cells:
        c = spec.C(a, b)
        if not c:
            out.append(0)
            continue
        sgn = 1 if c > 0 else -1
        cab, cba = abs(c), abs(spec.C(b, a))
        out.append(-sgn * sum(min(cab * j, cba * i) * x for j, x in enumerate(row, 1) if x))
    return out


def _fermionic_sum(inst: SumInstance, restricted: bool) -> int:
    """Sum of binomial weights over zero-spin configs.

    Same quantity as summing ``config_weight`` over
    ``enumerate_zero_spin_configs``, organised so each row's share of the
    vacancy numbers is computed once.
    """
    s = spin_to_s(inst, [0] * inst.spec.rank)
    if s is None:
        return 0
    spec = inst.spec
    cells = [(a, i) for a in spec.nodes for i in range(1, inst.row_length(a) + 1)]
    base = [sum(min(i, j) * x for j, x in enumerate(inst.n[a - 1], 1)) for a, i in cells]
    offsets = {}
    pos = 0
    for a in spec.nodes:
        offsets[a] = pos
        pos += inst.row_length(a)
    choices = []
    for b in spec.nodes:
        rows = list(partitions_with_max_part(s[b - 1], inst.row_length(b)))
        choices.append([(row, _row_contribution(inst, b, row, cells)) for row in rows])
    total = 0
    ncells = len(cells)

    def rec(idx, p, picked):
        nonlocal total
        if idx == spec.rank:
            w = 1
            for b, row in enumerate(picked, 1):
                off = offsets[b]
                for i, x in enumerate(row):
                    if x:
                        pv = p[off + i]
                        if restricted and pv < 0:
                            return
                        w *= extended_binomial(x, pv)
                        if not w:
                            return
            if restricted:
                for pv in p:
                    if pv < 0:
                        return
            total += w
            return
        for row, contrib in choices[idx]:
            picked.append(row)
            rec(idx + 1, [p[c] + contrib[c] for c in range(ncells)], picked)
            picked.pop()

    rec(0, base, [])
    return total


def m_sum(inst: SumInstance) -> int:
    return _fermionic_sum(inst, True)


def n_sum(inst: SumInstance) -> int:
    return _fermionic_sum(inst, False)


def m_sum_reference(inst: SumInstance) -> int:
    return sum(config_weight(inst, m) for m in enumerate_zero_spin_configs(inst, True))


def n_sum_reference(inst: SumInstance) -> int:
    return sum(config_weight(inst, m) for m in enumerate_zero_spin_configs(inst, False))


# recurrences -------------------------------------------------------------------

def verify_q_recurrences(inst: SumInstance, m) -> dict:
    """Check the second-difference relations of the q's and, for non-simply-laced
    algebras, the explicit per-family q formulas.  Returns a report dict."""
    from . import explicit

    failures = []
    spec = inst.spec

    def q(a, i):
        return modified_vacancy(inst, m, a, i)

    def mm(a, i):
        row = m[a - 1]
        return row[i - 1] if 1 <= i <= len(row) else 0

    def n(a, i):
        return inst.n_at(a, i)

    short = spec.short_nodes()
    long_ = spec.long_nodes()
    g, gp = spec.gamma, spec.gamma_prime
    if gp is not None:
        tgp = spec.t_of(gp)
        for j in range(1, tgp + 1):
            rhs = (-n(gp, j) + sum(spec.C(gp, b) * mm(b, j) for b in short)
                   + 2 * q(gp, j) - q(gp, j + 1) - (mm(g, 1) if j == tgp else 0))
            if q(gp, j - 1) != rhs:
                failures.append(("short-gamma-prime", gp, j))
        for b in short:
            if b == gp:
                continue
            for j in range(1, spec.t_of(b) + 1):
                rhs = (-n(b, j) + sum(spec.C(b, c) * mm(c, j) for c in short)
                       + 2 * q(b, j) - q(b, j + 1))
                if q(b, j - 1) != rhs:
                    failures.append(("short-other", b, j))
        rhs = (-n(g, 1) + sum(spec.C(g, b) * mm(b, 1) for b in long_) + 2 * q(g, 1) - q(g, 2)
               - sum(j * mm(gp, j) + delta_exponent(spec, gp, tgp + j, mm(gp, tgp + j))
                     for j in range(1, tgp + 1)))
        if q(g, 0) != rhs:
            failures.append(("long-gamma", g, 1))
    for a in long_:
        if a == g:
            continue
        rhs = -n(a, 1) + sum(spec.C(a, b) * mm(b, 1) for b in long_) + 2 * q(a, 1) - q(a, 2)
        if q(a, 0) != rhs:
            failures.append(("long-other", a, 1))
    if not spec.simply_laced:
        for a in spec.nodes:
            for i in range(1, inst.row_length(a) + 1):
                if explicit.explicit_q(inst, m, a, i) != q(a, i):
                    failures.append(("explicit", a, i))
    return {"ok": not failures, "failures": failures}
