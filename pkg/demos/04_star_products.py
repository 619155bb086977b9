# Twist star products, the Moyal-Weyl product and the Gutt product.
#
# f star g = mu(F^{-1} |> (f ox g)) through a realization of the symmetry by
# polynomial vector fields; the result is associative, unital, braided
# commutative and reduces to the pointwise product at hbar = 0.
# Run with:  python demos/04_star_products.py

from fractions import Fraction

from twistcalc import Context
from twistcalc.geometry import CoordSystem
from twistcalc.hyperboloid import HyperboloidModel
from twistcalc.starcalc import (ConstantPoisson, TwistedCalculus, moyal_star,
                                moyal_setup, gutt_chart, gutt_star,
                                poisson_from_r, hbar_coefficient)
from twistcalc.twists import classical_r

# the hyperboloid model bundles coordinates, symmetry, twist and quadric
model = HyperboloidModel(order=4)
calc = model.calc
x1, x2, x3 = model.x

print("star products of coordinates (light-like quadric coordinates):")
for f, name_f in ((x1, "x1"), (x2, "x2"), (x3, "x3")):
    for gfn, name_g in ((x1, "x1"), (x2, "x2"), (x3, "x3")):
        print("  %s * %s = %s" % (name_f, name_g, calc.star(f, gfn)))

print("\ntwisted involution: (x3)^*F =", calc.involution(x3))

# first order of the star commutator is the Poisson bracket of classical_r
r = classical_r(model.twist)
comm = calc.star(x1, x2) - calc.star(x2, x1)
print("\n[x1,x2]_star / hbar  =", hbar_coefficient(comm, 1))
print("{x1,x2} from r       =", poisson_from_r(model.real, r, x1, x2))

# Moyal-Weyl on R^2: the abelian twist with the matching sign reproduces the
# exponential bidifferential formula exactly
ctx2 = Context(order=4)
plane = CoordSystem(ctx2, 2, names=("x", "y"))
pi = ConstantPoisson(plane, {(0, 1): Fraction(1, 2), (1, 0): Fraction(-1, 2)})
x, y = plane.coordinate(0), plane.coordinate(1)
print("\nMoyal with pi^{xy} = 1/2:")
print("  x * y =", moyal_star(pi, x, y))
print("  y * x =", moyal_star(pi, y, x))
real2, twist2 = moyal_setup(pi)
calc2 = TwistedCalculus(real2, twist2)
print("  twist-induced star agrees:",
      calc2.star(x * x, y) == moyal_star(pi, x * x, y))

# the Gutt product on polynomials over the dual of so(2,1)
gd = gutt_chart(model.alg)
Hd, Ed = gd.coordinate(0), gd.coordinate(1)
print("\nGutt product on the dual:")
print("  H * E =", gutt_star(model.alg, Hd, Ed))
print("  H * E - E * H =", gutt_star(model.alg, Hd, Ed)
      - gutt_star(model.alg, Ed, Hd))
