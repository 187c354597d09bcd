"""Coefficients of the generating function Z.

Each coefficient is a finite sum over configurations.  At u_{a,i} = a_i = 1
the constant term is the N-sum, and with the restriction K = (1, ..., 1) it
is the M-sum.
"""
from krsums.algebra import parse_algebra
from krsums.fermionic import make_instance
from krsums.genfun import RestrictionK, constant_term_cross_check, z_coefficient

a1 = parse_algebra("A1")
inst = make_instance(a1, [1], {1: [1, 1]}, 2)
for q in range(-3, 5):
    print(f"[u^{q}] Z =", z_coefficient(inst, (q,)))
print("restricted, fully evaluated:",
      [str(z_coefficient(inst, (q,), RestrictionK((1,)), "all")) for q in range(0, 5)])

for name, lam, n, k in [("B2", [0, 1], {2: [1, 1, 0, 0]}, 2), ("G2", [1, 0], {1: [1]}, 1)]:
    inst = make_instance(parse_algebra(name), lam, n, k)
    N, M = constant_term_cross_check(inst)
    print(f"{name}: constant terms N={N} M={M}")
