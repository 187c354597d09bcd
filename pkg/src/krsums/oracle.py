"""Brute-force multiplicity oracles, independent of the fermionic sums.

sl2 tensor products by the Clebsch-Gordan rule and by a Catalan residue
formula, and for small type A the character ring: Freudenthal's formula for
irreducible characters and greedy decomposition of products.
"""
from __future__ import annotations

from collections import Counter
from fractions import Fraction
from itertools import product
from math import comb, prod

from .algebra import AlgebraSpec, cartan_inverse, cartan_inverse_times
from .fermionic import make_instance, n_sum


class OracleError(ValueError):
    pass


# -- sl2 -------------------------------------------------------------------------

def clebsch_gordan_multiplicity(l: int, n: dict) -> int:
    """Multiplicity of V(l) in the tensor product of V(i)^{n_i}, tensoring one factor at a time."""
    if l < 0:
        return 0
    decomposition = Counter({0: 1})
    for i in sorted(n):
        for _ in range(n[i]):
            nxt = Counter()
            for a, mult in decomposition.items():
                for c in range(abs(a - i), a + i + 1, 2):
                    nxt[c] += mult
            decomposition = nxt
    return decomposition.get(l, 0)


def catalan(m: int) -> int:
    return comb(2 * m, m) // (m + 1)


def _poly_mul(a: list, b: list) -> list:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _chebyshev_u(i: int) -> list:
    """U_i(x) as a coefficient list in x."""
    prev, cur = [1], [0, 1]
    if i == 0:
        return prev
    for _ in range(i - 1):
        nxt = [0] + cur
        for d, c in enumerate(prev):
            nxt[d] -= c
        prev, cur = cur, nxt
    return cur


def catalan_required_order(l: int, n: dict) -> int:
    top = sum(i * x for i, x in n.items()) + 1
    return max(0, (top - l - 1) // 2)


def catalan_residue_multiplicity(l: int, n: dict, order: int | None = None) -> int:
    """Constant term of prod_i U_i(1/u)^{n_i} U_1(1/u) z(u)^{l+1} with z = u C(u^2).

    C is the Catalan series truncated after c_order; the default order is the
    smallest one that resolves the constant term.
    """
    need = catalan_required_order(l, n)
    if order is None:
        order = need
    if order < need:
        raise OracleError(f"Catalan order {order} too small; need at least {need}")
    # polynomial in x = 1/u
    p = _chebyshev_u(1)
    for i, x in n.items():
        for _ in range(x):
            p = _poly_mul(p, _chebyshev_u(i))
    # z(u)^{l+1} as a series in u; only degrees <= deg p matter
    cat = [0] * (2 * order + 1)
    for m in range(order + 1):
        cat[2 * m] = catalan(m)
    zpow = [1]
    for _ in range(l + 1):
        zpow = _poly_mul(zpow, [0] + cat)[: len(p)]
    return sum(p[d] * zpow[d] for d in range(min(len(p), len(zpow))))


# -- type A characters -------------------------------------------------------------

class CharacterElement:
    """Finite map weight (omega coordinates) -> nonzero integer."""

    def __init__(self, terms=None):
        self.terms = {tuple(w): c for w, c in (terms or {}).items() if c}

    def __mul__(self, other: "CharacterElement") -> "CharacterElement":
        out = Counter()
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                out[tuple(a + b for a, b in zip(w1, w2))] += c1 * c2
        return CharacterElement(out)

    def __add__(self, other: "CharacterElement") -> "CharacterElement":
        out = Counter(self.terms)
        for w, c in other.terms.items():
            out[w] += c
        return CharacterElement(out)

    def scale(self, c: int) -> "CharacterElement":
        return CharacterElement({w: c * v for w, v in self.terms.items()})

    def __eq__(self, other):
        return isinstance(other, CharacterElement) and self.terms == other.terms

    def dimension(self) -> int:
        return sum(self.terms.values())

    def is_weyl_symmetric(self, spec: AlgebraSpec) -> bool:
        return all(self.terms.get(_reflect(spec, w, i)) == c
                   for w, c in self.terms.items() for i in spec.nodes)

    def __repr__(self):
        return f"CharacterElement({dict(sorted(self.terms.items()))})"


def _require_type_a(spec: AlgebraSpec):
    if spec.family != "A" or spec.rank > 3:
        raise OracleError("character oracle supports type A of rank <= 3")


def _simple_root(spec: AlgebraSpec, i: int) -> tuple:
    return tuple(spec.C(i, j) for j in spec.nodes)


def _reflect(spec: AlgebraSpec, w, i: int) -> tuple:
    a = _simple_root(spec, i)
    return tuple(x - w[i - 1] * y for x, y in zip(w, a))


def _dominant_conjugate(spec: AlgebraSpec, w) -> tuple:
    w = tuple(w)
    while True:
        neg = next((i for i in spec.nodes if w[i - 1] < 0), None)
        if neg is None:
            return w
        w = _reflect(spec, w, neg)


def _orbit(spec: AlgebraSpec, w) -> set:
    seen = {tuple(w)}
    todo = [tuple(w)]
    while todo:
        x = todo.pop()
        for i in spec.nodes:
            y = _reflect(spec, x, i)
            if y not in seen:
                seen.add(y)
                todo.append(y)
    return seen


def _form(spec: AlgebraSpec, x, y) -> Fraction:
    """(x, y) for weights in omega coordinates; (omega_i, omega_j) = (C^{-1})_{ij} here."""
    inv = cartan_inverse(spec)
    return sum(x[i] * inv[i][j] * y[j] for i in range(spec.rank) for j in range(spec.rank))


def positive_roots(spec: AlgebraSpec) -> list:
    """Positive roots in omega coordinates: alpha_i + ... + alpha_j for type A."""
    out = []
    for i in spec.nodes:
        for j in range(i, spec.rank + 1):
            out.append(tuple(sum(spec.C(a, b) for a in range(i, j + 1)) for b in spec.nodes))
    return out


def _root_coords(spec: AlgebraSpec, w) -> list:
    """Coordinates of w in the simple-root basis."""
    inv = cartan_inverse(spec)
    return [sum(w[j] * inv[j][i] for j in range(spec.rank)) for i in range(spec.rank)]


def height(spec: AlgebraSpec, w) -> Fraction:
    return sum(_root_coords(spec, w))


def dominant_weights_below(spec: AlgebraSpec, lam) -> list:
    """Dominant mu with lam - mu a nonnegative integer combination of simple roots."""
    out = []
    bound = sum(lam) + 1
    for mu in product(range(bound + 1), repeat=spec.rank):
        c = _root_coords(spec, [a - b for a, b in zip(lam, mu)])
        if all(x >= 0 and x.denominator == 1 for x in c):
            out.append(mu)
    return out


def weyl_dimension(spec: AlgebraSpec, lam) -> int:
    rho = (1,) * spec.rank
    lr = tuple(a + 1 for a in lam)
    num = prod(_form(spec, lr, a) for a in positive_roots(spec))
    den = prod(_form(spec, rho, a) for a in positive_roots(spec))
    v = num / den
    assert v.denominator == 1
    return int(v)


def weyl_character(spec: AlgebraSpec, lam) -> CharacterElement:
    """Character of V(lam) by Freudenthal's recursion over dominant weights."""
    _require_type_a(spec)
    lam = tuple(lam)
    if len(lam) != spec.rank or any(x < 0 for x in lam):
        raise OracleError(f"{lam} is not a dominant weight of {spec.name}")
    roots = positive_roots(spec)
    rho = (1,) * spec.rank
    lr = tuple(a + b for a, b in zip(lam, rho))
    norm_lr = _form(spec, lr, lr)
    doms = sorted(dominant_weights_below(spec, lam), key=lambda m: -height(spec, m))
    mult = {lam: 1}

    def m_of(w):
        return mult.get(_dominant_conjugate(spec, w), 0)

    for mu in doms:
        if mu == lam:
            continue
        mr = tuple(a + b for a, b in zip(mu, rho))
        acc = Fraction(0)
        for alpha in roots:
            k = 1
            while True:
                w = tuple(a + k * b for a, b in zip(mu, alpha))
                c = _dominant_conjugate(spec, w)
                if c not in mult and not _is_below(spec, lam, c):
                    break
                acc += m_of(w) * _form(spec, w, alpha)
                k += 1
        val = 2 * acc / (norm_lr - _form(spec, mr, mr))
        if val.denominator != 1:
            raise OracleError(f"non-integral multiplicity at {mu}")
        mult[mu] = int(val)
    terms = {}
    for mu, c in mult.items():
        if c:
            for w in _orbit(spec, mu):
                terms[w] = c
    ch = CharacterElement(terms)
    if ch.dimension() != weyl_dimension(spec, lam):
        raise OracleError(f"dimension mismatch for V{lam}: {ch.dimension()} != {weyl_dimension(spec, lam)}")
    return ch


def _is_below(spec: AlgebraSpec, lam, mu) -> bool:
    c = _root_coords(spec, [a - b for a, b in zip(lam, mu)])
    return all(x >= 0 and x.denominator == 1 for x in c)


def decompose(spec: AlgebraSpec, ch: CharacterElement) -> dict:
    """Multiplicities of irreducibles, peeling off the highest dominant weight each time."""
    rest = CharacterElement(ch.terms)
    out = {}
    while rest.terms:
        doms = [w for w in rest.terms if all(x >= 0 for x in w)]
        if not doms:
            raise OracleError("remainder has no dominant weight; not a character")
        top = max(doms, key=lambda w: (height(spec, w), w))
        c = rest.terms[top]
        out[top] = out.get(top, 0) + c
        rest = rest + weyl_character(spec, top).scale(-c)
    return out


def tensor_character(spec: AlgebraSpec, factors) -> CharacterElement:
    ch = CharacterElement({(0,) * spec.rank: 1})
    for lam in factors:
        ch = ch * weyl_character(spec, lam)
    return ch


def tensor_multiplicity(spec: AlgebraSpec, factors, target) -> int:
    """Multiplicity of V(target) in the tensor product of V(lam) over ``factors``."""
    _require_type_a(spec)
    target = tuple(target)
    if any(x < 0 for x in target):
        raise OracleError(f"{target} is not dominant")
    return decompose(spec, tensor_character(spec, factors)).get(target, 0)


def kr_factors(spec: AlgebraSpec, n: dict) -> list:
    """The list of highest weights i*omega_a, n_{a,i} times each."""
    out = []
    for a, row in sorted(n.items()):
        for i, x in enumerate(row, 1):
            w = tuple(i if b == a else 0 for b in spec.nodes)
            out.extend([w] * x)
    return out


def stable_level(spec: AlgebraSpec, lam, n: dict) -> int:
    """Smallest level k at which no string length is cut off.

    At zero spin s = C^{-1}(nu - lam) and every part j of row b obeys
    j <= s_b, so once t_b k >= s_b the fermionic sums stop depending on k
    and agree with tensor product multiplicities.
    """
    nu = [sum(i * x for i, x in enumerate(n.get(a, []), 1)) for a in spec.nodes]
    s = cartan_inverse_times(spec, [x - l for x, l in zip(nu, lam)])
    k = 1
    for a in spec.nodes:
        k = max(k, -(-len(n.get(a, [])) // spec.t_of(a)))
        if s[a - 1] > 0:
            k = max(k, -(-int(s[a - 1] // 1) // spec.t_of(a)))
    return k


def verify_hkoty_character_identity(spec: AlgebraSpec, n: dict, levels: int | None = None) -> bool:
    """prod ch V(i omega_a)^{n_{a,i}} == sum_lam N(lam; n) ch V(lam), with N from the fermionic sum."""
    _require_type_a(spec)
    k = levels or stable_level(spec, (0,) * spec.rank, n)
    factors = kr_factors(spec, n)
    lhs = tensor_character(spec, factors)
    top = tuple(sum(col) for col in zip(*factors)) if factors else (0,) * spec.rank
    rhs = CharacterElement()
    for lam in dominant_weights_below(spec, top):
        N = n_sum(make_instance(spec, lam, n, k))
        if N:
            rhs = rhs + weyl_character(spec, lam).scale(N)
    return lhs == rhs
