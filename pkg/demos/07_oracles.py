"""Independent multiplicity oracles.

Clebsch-Gordan iteration and a Catalan-number residue formula for sl2, and
Weyl characters (Freudenthal) for type A, all compared with the N-sum.
"""
from krsums.algebra import parse_algebra
from krsums.fermionic import make_instance, n_sum
from krsums.oracle import (
    catalan_residue_multiplicity, clebsch_gordan_multiplicity, stable_level, tensor_multiplicity,
    verify_hkoty_character_identity, weyl_character,
)

a1 = parse_algebra("A1")
for l, n in [(0, {1: 4}), (1, {1: 3}), (2, {1: 2, 2: 1}), (0, {3: 2})]:
    row = [n.get(i, 0) for i in range(1, max(n) + 1)]
    inst = make_instance(a1, [l], {1: row}, stable_level(a1, [l], {1: row}))
    print(f"l={l} n={n}: CG={clebsch_gordan_multiplicity(l, n)} "
          f"Catalan={catalan_residue_multiplicity(l, n)} N={n_sum(inst)}")

a2 = parse_algebra("A2")
print("A2 V(w1) weights:", sorted(weyl_character(a2, (1, 0)).terms))
print("mult of V(w2) in V(w1)^2:", tensor_multiplicity(a2, [(1, 0), (1, 0)], (0, 1)))
for n in ({1: [2]}, {1: [1], 2: [1]}, {1: [0, 1], 2: [1]}):
    print(f"A2 character identity for n={n}:", verify_hkoty_character_identity(a2, n))
