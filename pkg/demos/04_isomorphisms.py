"""Isomorphisms between the D(Q, gamma): Theta, Psi, orbits, automorphisms and moduli."""

from kleinian_d import (DParams, Poly, as_scalar, automorphism_group, is_isomorphic_D, is_isomorphic_H,
                        moduli_invariants, normalize_monic, orbit, psi)

p = DParams.cubic(0, 0, 0, 0)
q, w = psi(p)
print("Psi:", p, "->", q)
for name, img in zip("uvw", w.images):
    print(f"  {name} -> {img.to_text()}")

print()
print("orbit of", p)
for target, witness in orbit(p):
    print(f"  {witness.name:6s} {target}")
print("Aut:", automorphism_group(p).label, "| moduli:", [str(x) for x in moduli_invariants(p).values])

print()
for args in [(0, -4, 0, 0), (0, "-4+i", 0, 1), (1, 2, 3, "1/2")]:
    pp = DParams.cubic(*[as_scalar(a) for a in args])
    print(f"{str(args):22s} Aut = {automorphism_group(pp).label:10s} orbit size = {len(orbit(pp))}")

print()
a, xi = normalize_monic(Poly.parse("4*t^4+4*t"), 2)
print("rescaled:", a, "xi =", xi)
print("D(t^4, 1) ~ D(t^4, -1):", is_isomorphic_D(DParams(Poly.parse("t^4"), 1), DParams(Poly.parse("t^4"), -1)).name)

print()
P = Poly.parse("3*t^2+10*t+2")
for gamma2 in ["-1", "1+i"]:
    print(f"H({P}, 1) vs H({P}, {gamma2}):", is_isomorphic_H(P, 1, P, gamma2))
