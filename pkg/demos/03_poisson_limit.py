"""The semiclassical limit: commutators against the Poisson bracket of phi = X^n + XY^2 + Z^2."""

from kleinian_d import bracket_phi, hamiltonian_iterate, kleinian_phi, make_spec, semiclassical_check
from kleinian_d.checks import Sampler
from kleinian_d.poisson import X, Y, Z, principal_symbol

phi = kleinian_phi(3)
print("{X,Y} =", bracket_phi(X, Y, phi))
print("{X,Z} =", bracket_phi(X, Z, phi))
print("{Y,Z} =", bracket_phi(Y, Z, phi))
print("{phi, X^2 Y} =", bracket_phi(phi, X * X * Y, phi))

print()
print("limit quotient, {Z,.}^M(Y):")
for M in range(5):
    print(" ", M, hamiltonian_iterate(Z, Y, M))

print()
r = Sampler("demo")
for kind, spec in [("D", make_spec("D", r.monic(3), r.scalar())), ("H", make_spec("H", r.h_poly(4), r.scalar()))]:
    x, y = r.element(spec, 16), r.element(spec, 16)
    print(kind, "symbol of x:", principal_symbol(x))
    print(kind, "symbol of y:", principal_symbol(y))
    print(kind, "gr[x,y] = {gr x, gr y}:", semiclassical_check(spec, x, y))
