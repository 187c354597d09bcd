"""Root data for the simple Lie algebras in the Cartan convention
C[a][b] = 2(alpha_a, alpha_b)/(alpha_a, alpha_a)."""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

FAMILIES = "ABCDEFG"
MAX_RANK = 8


class InvalidAlgebra(ValueError):
    pass


@dataclass(frozen=True)
class AlgebraSpec:
    family: str
    rank: int
    cartan: tuple  # tuple of row tuples, nodes 1..r stored at indices 0..r-1
    t: tuple
    gamma: int | None = None
    gamma_prime: int | None = None

    @property
    def name(self) -> str:
        return f"{self.family}{self.rank}"

    @property
    def nodes(self):
        return range(1, self.rank + 1)

    def C(self, a: int, b: int) -> int:
        """Cartan entry for 1-based nodes."""
        return self.cartan[a - 1][b - 1]

    def t_of(self, a: int) -> int:
        return self.t[a - 1]

    def neighbors(self, a: int) -> list:
        return [b for b in self.nodes if b != a and self.C(a, b) != 0]

    @property
    def simply_laced(self) -> bool:
        return all(x == 1 for x in self.t)

    @property
    def t_max(self) -> int:
        return max(self.t)

    def is_short(self, a: int) -> bool:
        return self.t_of(a) > 1

    def short_nodes(self):
        return [a for a in self.nodes if self.is_short(a)]

    def long_nodes(self):
        return [a for a in self.nodes if not self.is_short(a)]

    def __str__(self):
        return self.name


def _chain(r: int):
    c = [[0] * r for _ in range(r)]
    for i in range(r):
        c[i][i] = 2
        if i + 1 < r:
            c[i][i + 1] = c[i + 1][i] = -1
    return c


def _cartan(family: str, r: int):
    if family == "A":
        return _chain(r), [1] * r, None, None
    if family == "B":
        c = _chain(r)
        c[r - 1][r - 2] = -2  # node r short
        return c, [1] * (r - 1) + [2], r - 1, r
    if family == "C":
        c = _chain(r)
        c[r - 2][r - 1] = -2  # nodes 1..r-1 short, node r long
        return c, [2] * (r - 1) + [1], r, r - 1
    if family == "D":
        c = _chain(r)
        # nodes r-1 and r both attach to r-2
        c[r - 2][r - 1] = c[r - 1][r - 2] = 0
        c[r - 3][r - 1] = c[r - 1][r - 3] = -1
        return c, [1] * r, None, None
    if family == "E":
        # Bourbaki: chain 1-3-4-5-6(-7-8), node 2 attached to 4
        c = [[0] * r for _ in range(r)]
        edges = [(1, 3), (3, 4), (4, 5), (5, 6), (2, 4), (6, 7), (7, 8)]
        for i in range(r):
            c[i][i] = 2
        for a, b in edges:
            if a <= r and b <= r:
                c[a - 1][b - 1] = c[b - 1][a - 1] = -1
        return c, [1] * r, None, None
    if family == "F":
        c = [[2, -1, 0, 0], [-1, 2, -1, 0], [0, -2, 2, -1], [0, 0, -1, 2]]
        return c, [1, 1, 2, 2], 2, 3
    if family == "G":
        return [[2, -1], [-3, 2]], [1, 3], 1, 2
    raise InvalidAlgebra(f"unknown family {family!r}")


def _check_rank(family: str, r: int, max_rank: int):
    if r < 1:
        raise InvalidAlgebra("rank must be a positive integer")
    if r > max_rank:
        raise InvalidAlgebra(f"rank {r} exceeds the supported maximum {max_rank}")
    need = {
        "B": (r >= 2, "B_r needs r >= 2"),
        "C": (r >= 2, "C_r needs r >= 2"),
        "D": (r >= 3, "D_r needs r >= 3"),
        "E": (6 <= r <= 8, "E_r needs 6 <= r <= 8"),
        "F": (r == 4, "F has rank 4 only"),
        "G": (r == 2, "G has rank 2 only"),
    }
    ok, msg = need.get(family, (True, ""))
    if not ok:
        raise InvalidAlgebra(msg)


def build_algebra(family: str, rank: int, max_rank: int = MAX_RANK) -> AlgebraSpec:
    family = family.upper()
    if family not in FAMILIES or len(family) != 1:
        raise InvalidAlgebra(f"unknown family {family!r}; expected one of {FAMILIES}")
    _check_rank(family, rank, max_rank)
    c, t, g, gp = _cartan(family, rank)
    spec = AlgebraSpec(family, rank, tuple(tuple(row) for row in c), tuple(t), g, gp)
    check_invariants(spec)
    return spec


def parse_algebra(name: str, max_rank: int = MAX_RANK) -> AlgebraSpec:
    m = re.fullmatch(r"\s*([A-Ga-g])\s*(\d+)\s*", name or "")
    if not m:
        raise InvalidAlgebra(f"cannot parse algebra name {name!r}; expected e.g. 'B3'")
    return build_algebra(m.group(1), int(m.group(2)), max_rank)


def check_invariants(spec: AlgebraSpec):
    r = spec.rank
    for a in spec.nodes:
        if spec.C(a, a) != 2:
            raise AssertionError(f"{spec.name}: diagonal entry at {a}")
        for b in spec.nodes:
            if a == b:
                continue
            x, y = spec.C(a, b), spec.C(b, a)
            if x not in (0, -1, -2, -3) or (x == 0) != (y == 0):
                raise AssertionError(f"{spec.name}: bad off-diagonal pair at ({a},{b})")
            if Fraction(x, spec.t_of(a)) != Fraction(y, spec.t_of(b)):
                raise AssertionError(f"{spec.name}: not symmetrizable at ({a},{b})")
    inv = cartan_inverse(spec)
    if any(v <= 0 for row in inv for v in row):
        raise AssertionError(f"{spec.name}: inverse Cartan matrix not positive")
    if spec.gamma is not None:
        if spec.C(spec.gamma, spec.gamma_prime) != -1:
            raise AssertionError(f"{spec.name}: C[gamma, gamma'] must be -1")
        if spec.t_of(spec.gamma) != 1 or spec.t_of(spec.gamma_prime) == 1:
            raise AssertionError(f"{spec.name}: gamma must be long and gamma' short")
    assert len(spec.t) == r


_INV: dict = {}


def cartan_inverse(spec: AlgebraSpec):
    inv = _INV.get(spec.cartan)
    if inv is None:
        n = spec.rank
        a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
             for i, row in enumerate(spec.cartan)]
        for col in range(n):
            piv = next(r for r in range(col, n) if a[r][col] != 0)
            a[col], a[piv] = a[piv], a[col]
            pv = a[col][col]
            a[col] = [x / pv for x in a[col]]
            for r in range(n):
                if r != col and a[r][col] != 0:
                    f = a[r][col]
                    a[r] = [x - f * y for x, y in zip(a[r], a[col])]
        inv = tuple(tuple(row[n:]) for row in a)
        _INV[spec.cartan] = inv
    return inv


def cartan_inverse_times(spec: AlgebraSpec, v) -> list:
    inv = cartan_inverse(spec)
    return [sum(inv[a][b] * v[b] for b in range(spec.rank)) for a in range(spec.rank)]


def all_supported(max_rank: int = 4):
    """Every (family, rank) pair up to max_rank, as specs."""
    out = []
    for fam in FAMILIES:
        for r in range(1, max_rank + 1):
            try:
                out.append(build_algebra(fam, r))
            except InvalidAlgebra:
                pass
    return out
