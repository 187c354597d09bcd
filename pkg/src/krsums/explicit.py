"""Per-family closed forms of the modified vacancy numbers q_{a,i} for the
non-simply-laced algebras, written out family by family.  They are kept apart
from the general threshold formula in ``fermionic`` so the two can be checked
against each other."""
from __future__ import annotations


def explicit_q(inst, m, a: int, i: int) -> int:
    spec = inst.spec
    r, k = spec.rank, inst.k
    lam = inst.lam

    def M(b, j):
        if b < 1 or b > r:
            return 0
        row = m[b - 1]
        return row[j - 1] if 1 <= j <= len(row) else 0

    def N(b, j):
        return inst.n_at(b, j)

    def lin(b, hi, extra=()):
        # sum_{j=i+1}^{hi} (j-i)(2 m_{b,j} - n_{b,j} - sum_{c in extra} m_{c,j})
        return sum((j - i) * (2 * M(b, j) - N(b, j) - sum(M(c, j) for c in extra))
                   for j in range(i + 1, hi + 1))

    fam = spec.family
    if fam == "B":
        if a < r - 1:
            return lam[a - 1] + lin(a, k, (a - 1, a + 1))
        if a == r - 1:
            return (lam[a - 1] + lin(a, k, (r - 2,))
                    - sum((j - 2 * i) * M(r, j) for j in range(2 * i + 1, 2 * k + 1)))
        return (lam[r - 1] + lin(r, 2 * k)
                - sum((2 * j - i) * M(r - 1, j) for j in range(1, k + 1) if i < 2 * j))
    if fam == "C":
        if a < r - 1:
            return lam[a - 1] + lin(a, 2 * k, (a - 1, a + 1))
        if a == r - 1:
            return (lam[a - 1] + lin(a, 2 * k)
                    - sum((j - i) * M(r - 2, j) for j in range(i + 1, 2 * k + 1))
                    - sum((2 * j - i) * M(r, j) for j in range(1, k + 1) if i < 2 * j))
        return (lam[r - 1] + lin(r, k)
                - sum((j - 2 * i) * M(r - 1, j) for j in range(2 * i + 1, 2 * k + 1)))
    if fam == "F":
        if a == 1:
            return lam[0] + lin(1, k, (2,))
        if a == 2:
            return (lam[1] + lin(2, k, (1,))
                    - sum((j - 2 * i) * M(3, j) for j in range(2 * i + 1, 2 * k + 1)))
        if a == 3:
            return (lam[2] + lin(3, 2 * k, (4,))
                    - sum((2 * j - i) * M(2, j) for j in range(1, k + 1) if i < 2 * j))
        return lam[3] + lin(4, 2 * k, (3,))
    if fam == "G":
        if a == 1:
            return (lam[0] + lin(1, k)
                    - sum((j - 3 * i) * M(2, j) for j in range(3 * i + 1, 3 * k + 1)))
        return (lam[1] + lin(2, 3 * k)
                - sum((3 * j - i) * M(1, j) for j in range(1, k + 1) if 3 * j > i))
    raise ValueError(f"no explicit formulas for family {fam}")
