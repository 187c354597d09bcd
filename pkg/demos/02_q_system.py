"""Solving the classical Q-system exactly.

Every Q_{a,j} comes out of an exact polynomial division.  For sl2 the
entries are Chebyshev polynomials of the second kind; in type A they push
forward to characters of the modules V(j w_a).
"""
from krsums.algebra import parse_algebra
from krsums.arith import T, render
from krsums.qsystem import chebyshev_check, explicit_t_term, solve_q_system, t_term

a1 = solve_q_system(parse_algebra("A1"), 5)
for j in range(6):
    print(f"Q_{j} =", render(a1.get(1, j), {T(1): "t"}))
print("Chebyshev check up to 6:", chebyshev_check(6))

b2 = parse_algebra("B2")
table = solve_q_system(b2, 2)
print("B2 solve order:", table.order)
for key in [(2, 2), (1, 2), (2, 3)]:
    print(f"B2 Q{key} =", render(table.get(*key)))
print("T-term of the long node at j=1 equals Q_{2,2}:",
      t_term(table, 1, 1) == explicit_t_term(table, 1, 2, 1) == table.get(2, 2))
