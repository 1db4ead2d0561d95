"""Normal forms in D(Q, gamma) and H(P, gamma).

Every element is stored in the basis u^i v^j w^k (k <= 1 in D).  Words in
the generators are pushed into that order by four rewriting rules, and the
overlap check confirms the rules are consistent.
"""

from kleinian_d import Poly, alpha_beta, check_diamond, make_spec

# D(t^3, 1/2): the partner polynomial P is solved automatically
D = make_spec("D", Poly.parse("t^3"), "1/2")
print("P for Q = t^3:", D.P)

u, v, w = D.gens()
print("v*u      =", v * u)
print("w*u      =", w * u)
print("w*v      =", w * v)
print("w*w      =", w * w)

# v u^2 agrees with [u^2, v] = alpha(t^2)(u)[u,v] + beta(t^2)(u)[u,w]
a, b = alpha_beta(Poly.parse("t^2"))
print("alpha, beta of t^2:", a, ",", b)
print("v*u^2    =", v * u ** 2)

# text input goes through the same parser
print("parsed   =", D.reduce("w*v*u^2 + (1/2+i)*v"))

# the defining relation of D holds identically
print("relation =", D.poly_u(D.Q) + u * v * v + w * w - 2 * (w * v) - D.gamma * v)

print()
for rep in check_diamond(D):
    print(f"overlap {rep.overlap}: {'resolves' if rep.resolved else 'FAILS'}")

H = make_spec("H", Poly.parse("4*t^3+t"), 2)
print("H overlaps resolve:", all(r.resolved for r in check_diamond(H)))
