"""Checking the factorization statements coefficient by coefficient.

Each statement is a rational identity between Z and products of deformed
Q's.  The check multiplies Z by the cleared denominator and compares with
the numerator on a window of u-exponents; a deliberately broken closed form
is caught.
"""
from krsums import genfun
from krsums.algebra import parse_algebra
from krsums.arith import RationalFunction as RF, Ui
from krsums.fermionic import make_instance
from krsums.genfun import Statement, statement_applies, verify_factorization, widened_window

cases = [("A1", [1], {1: [1, 0, 1]}, 3), ("A2", [1, 0], {1: [1, 0], 2: [0, 1]}, 2),
         ("B2", [0, 1], {1: [1, 0], 2: [0, 1, 0, 0]}, 2), ("G2", [1, 0], {2: [1, 0, 0]}, 1)]
for name, lam, n, k in cases:
    spec = parse_algebra(name)
    inst = make_instance(spec, lam, n, k)
    for statement in Statement:
        if statement_applies(statement, spec, k):
            rep = verify_factorization(inst, statement, widened_window(inst))
            print(f"{name} k={k} {statement.value:22s} ok={rep.ok} "
                  f"checked={rep.checked_coefficients} nonzero={rep.nonzero_coefficients}")

inst = make_instance(parse_algebra("A2"), [1, 0], {1: [1], 2: [1]}, 1)
orig = genfun.factorized_form
genfun.factorized_form = lambda table, i: orig(table, i) * (RF.one() + RF.var(Ui(1, 1)))
print("mutated closed form detected:", not verify_factorization(inst, "Zfactorized").ok)
genfun.factorized_form = orig
