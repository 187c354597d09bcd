"""The deformed Q-system and its shift recursion.

Entries are rational functions of u_a, u_{a,i} and a_i.  Building the table
from the quadratic relation or from the substitution recursion gives the
same result, and Q_{a,k+t_a j}(u) = Q_{a,k}(u^(j)).
"""
from krsums.algebra import parse_algebra
from krsums.deformed import (
    all_shift_recursion_failures, build_deformed_table, build_deformed_table_by_recursion,
    evaluate_phi, phi_failures, shift_substitution, table_mismatches,
)
from krsums.arith import U

a1 = parse_algebra("A1")
t = build_deformed_table(a1, 3)
for i in range(4):
    print(f"Q_{i} =", t.get(1, i))
print("u' =", shift_substitution(t, 1)[U(1)])
print("phi_2 images:", {k: str(v) for k, v in sorted(evaluate_phi(t, 2).items())})

for name, depth in [("A2", 3), ("G2", 2), ("C3", 2)]:
    spec = parse_algebra(name)
    quad = build_deformed_table(spec, depth)
    rec = build_deformed_table_by_recursion(spec, depth)
    print(f"{name}: table mismatches {len(table_mismatches(quad, rec))}, "
          f"shift failures {len(all_shift_recursion_failures(quad))}, "
          f"phi_(1,0) failures {len(phi_failures(quad, 1, 0))}")
