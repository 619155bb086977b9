# Exact coefficient arithmetic and truncated series in hbar.
#
# Everything the engine computes is exact: coefficients live in the field
# generated over the rationals by i, declared parameters and declared square
# roots.  Run with:  python demos/01_scalars_and_series.py

from twistcalc import Context

# a context fixes the parameters, the radicals and the truncation order
ctx = Context(params=("a", "c"), radicals={"sqrt(a)": "a"}, order=4)

a, c = ctx.param("a"), ctx.param("c")
s = ctx.radical("sqrt(a)")
i = ctx.i

print("i^2                =", i * i)
print("sqrt(a)^2          =", s * s)
print("1/sqrt(a)          =", ctx.one / s, "   (radical-free denominator)")
print("(a^2-c^2)/(a-c)    =", (a * a - c * c) / (a - c))

# truncated power series in hbar: arithmetic discards orders > 4
one = ctx.series_one()
h = ctx.hbar()

print("\n(1+h)*(1-h)        =", (one + h) * (one - h))
print("h * h^4            =", h * h ** 4, "  (truncation at order 4)")

# units invert exactly; the inverse is the geometric series
u = one + h * i
print("\n1/(1+i*h)          =", u.inverse())
print("check u * u^-1     =", u * u.inverse())

# exp and log1p are finite sums on series without constant term
v = h * i
print("\nlog(1+i*h)         =", v.log1p())
print("exp(log(1+i*h))    =", v.log1p().exp(), "  (equals 1 + i*h)")
