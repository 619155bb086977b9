# Drinfel'd twists: construction, verification and derived structures.
#
# A twist is a normalized 2-cocycle F in U(g) ox U(g); it deforms the
# coproduct, the antipode and induces a triangular R-matrix F_21 F^{-1}
# whose first order is a classical r-matrix.
# Run with:  python demos/03_drinfeld_twists.py

from twistcalc import Context
from twistcalc.lie import so21, abelian
from twistcalc.twists import (jordanian_twist, abelian_twist, verify_twist,
                              verify_rmatrix, check_unitary, twisted_coproduct,
                              twisted_antipode, classical_r,
                              cybe_check, schouten_square, symplectic_leaf)

ctx = Context(order=4)
g = so21(ctx)

# the unitary Jordanian twist exp(H/2 ox log(1 + i*hbar*E))
F = jordanian_twist(g, "H", "E", scale=ctx.i)
print("axioms:")
print(verify_twist(F).format_text())

E, H = g.generator("E"), g.generator("H")
print("\nDelta_F(E) =", twisted_coproduct(F, E))
print("S_F(H)     =", twisted_antipode(F, H))
print("S_F(E)     =", twisted_antipode(F, E))

# the induced R-matrix is triangular and satisfies QYBE and the hexagons
print("\nR-matrix checks:")
print(verify_rmatrix(F).format_text())

# with all generators anti-Hermitian the twist is unitary
print("\nunitarity:")
print(check_unitary(F).format_text())

# first order of the twist: a classical r-matrix with vanishing CYB image
r = classical_r(F)
print("\nclassical r =", r.to_text())
print("CYB(r) == 0:", cybe_check(r).is_zero)
print("[[r,r]] == 0:", schouten_square(r).is_zero)

# the right legs span a bracket-closed subalgebra (the symplectic leaf)
leaf = symplectic_leaf(r)
print("symplectic leaf basis:", [el.to_text() for el in leaf])

# an abelian example on commuting anti-Hermitian generators
ab = abelian(ctx, ("X", "Y"), anti_hermitian=True)
Fab = abelian_twist(ab, [("X", "Y")], scale=ctx.i)
print("\nabelian exp(i*hbar*X ox Y): axioms pass =",
      verify_twist(Fab).passed,
      ", unitary =", check_unitary(Fab).passed)
