"""Power-series identities behind M = N.

Each inductive step trades one restriction threshold for another without
changing the power-series part of the evaluated generating function; the
end-to-end statement removes the restriction altogether.  Outside the
power-series window the two sides differ.
"""
from krsums.algebra import parse_algebra
from krsums.fermionic import make_instance
from krsums.genfun import CoefficientWindow, RestrictionK, compare_on_window, end_to_end_ps, ps_steps, verify_ps_identity

for name, lam, n, k, bound in [("A2", [1, 0], {1: [1, 1]}, 2, 4), ("B2", [0, 1], {2: [1, 0, 0, 1]}, 2, 4),
                               ("G2", [0, 1], {1: [1], 2: [1, 1, 0]}, 1, 4)]:
    spec = parse_algebra(name)
    inst = make_instance(spec, lam, n, k)
    for step, K, K2, phi, _ in ps_steps(spec, k):
        rep = verify_ps_identity(inst, K, K2, phi, bound)
        print(f"{name} {step:18s} K={K.K} K'={K2.K} phi={phi} ok={rep.ok} nonzero={rep.nonzero_coefficients}")
    print(f"{name} end-to-end ok={end_to_end_ps(inst, bound).ok}")

inst = make_instance(parse_algebra("A1"), [0], {1: [1, 1]}, 2)
rep = compare_on_window(inst, RestrictionK((1,)), None, "all", CoefficientWindow(((-6, 6),)))
print("sl2 with negative exponents included: ok =", rep.ok, "first difference", rep.first_failure)
