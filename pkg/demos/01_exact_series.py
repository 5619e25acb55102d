"""Demo 1: the exact arithmetic kernel.

Everything in the package is computed over the Gaussian rationals Q(i):
series coefficients never touch floating point, so equality of series is
decidable and every reported invariant is exact.
"""

from segrechains import GaussianRational, Series, format_series, parse_series
from segrechains.manifold import ambient_space

space = ambient_space(1, 1)  # variables w1, z1, zeta1, xi1 with sigma-pairing

print("== Parsing and canonical printing ==")
s = parse_series("(w1 + zeta1)^2 - 2*w1*zeta1 + 1/3*i*z1", space)
print("series:", format_series(s))

print()
print("== Exact arithmetic ==")
a = parse_series("1/2 + i", space)
b = parse_series("3/4 - 2*i", space)
print("(1/2 + i) * (3/4 - 2*i) =", format_series(a * b))

print()
print("== Differentiation and evaluation ==")
f = parse_series("w1^2*zeta1^2", space)
print("d/dw1 of w1^2*zeta1^2 :", format_series(f.diff("w1")))
point = [GaussianRational(1), GaussianRational(0), GaussianRational(2), GaussianRational(0)]
print("value at (w,z,zeta,xi) = (1,0,2,0):", f.evaluate(point))

print()
print("== Composition (substitution of series for variables) ==")
sub = {n: Series.variable(space, n) for n in space.names}
sub["z1"] = parse_series("xi1 + i*w1*zeta1", space)
g = parse_series("z1^2", space)
print("z1^2 with z1 -> xi1 + i*w1*zeta1 :", format_series(g.compose(sub)))

print()
print("== The conjugation involution ==")
h = parse_series("i*w1^2*zeta1 + z1", space)
print("series        :", format_series(h))
print("sigma image   :", format_series(h.sigma_conjugate()))
print("applied twice :", format_series(h.sigma_conjugate().sigma_conjugate()))
