"""Restricted and unrestricted fermionic sums agree.

The M-sum keeps only configurations with nonnegative vacancy numbers, the
N-sum keeps all of them with extended binomials.  For tensor powers of the
sl2 spin-1/2 module both count the invariants.
"""
from krsums.algebra import parse_algebra
from krsums.fermionic import compute_vacancy_data, enumerate_zero_spin_configs, make_instance, m_sum, n_sum

a1 = parse_algebra("A1")
inst = make_instance(a1, [0], {1: [4, 0]}, 2)
print("zero-spin configurations of V(w)^4 at level 2:")
for m in enumerate_zero_spin_configs(inst, restricted=False):
    v = compute_vacancy_data(inst, m)
    print("  m =", m, " p =", v.p)
print("M =", m_sum(inst), " N =", n_sum(inst))

# a non-simply-laced example: G2 with a few KR modules of the short node
g2 = parse_algebra("G2")
for lam in ([0, 0], [1, 0], [0, 1], [0, 2]):
    inst = make_instance(g2, lam, {2: [2, 1, 0, 0, 0, 0]}, 2)
    print(f"G2 lambda={lam}: M={m_sum(inst)} N={n_sum(inst)}")
