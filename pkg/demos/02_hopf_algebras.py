# Enveloping algebras in PBW normal form and their Hopf structure.
#
# Elements of U(g) are sorted monomials; products re-normalize through the
# rewrite e_j e_i -> e_i e_j + [e_j, e_i].  The coproduct, counit and
# antipode are computed structurally and the Hopf axioms are verified as
# zero residuals.  Run with:  python demos/02_hopf_algebras.py

from twistcalc import Context
from twistcalc.lie import so21
from twistcalc.finite_hopf import sweedler_h4, group_algebra_z
from twistcalc.hopf_checks import hopf_axiom_report

ctx = Context(order=4)
g = so21(ctx)   # basis H, E, E' with [H,E]=2E, [H,E']=-2E', [E',E]=H

H, E, Ep = g.generator("H"), g.generator("E"), g.generator("Ep")

print("E*H          =", E * H, "   (normal ordering at work)")
print("[H,E]        =", H * E - E * H)
print("[Ep,E]       =", Ep * E - E * Ep)

print("\nDelta(H)     =", H.coproduct())
print("Delta(H*E)   =", (H * E).coproduct())
print("S(H*E)       =", (H * E).antipode())
print("eps(H), eps(1) =", H.counit(), ",", g.unit().counit())

# the involution turns U(g) into a *-algebra: H* = -H and so on
print("(H*E)^*      =", (H * E).star())

# every axiom as an exact residual, on all monomials up to degree 3
print("\n--- U(so(2,1)) axiom report ---")
print(hopf_axiom_report(g, degree_bound=3).format_text())

# finite-dimensional table-driven examples work the same way
print("\n--- Sweedler's four-dimensional Hopf algebra ---")
print(hopf_axiom_report(sweedler_h4(ctx)).format_text())

print("\n--- group algebra of Z_2 ---")
print(hopf_axiom_report(group_algebra_z(ctx, 2)).format_text())
