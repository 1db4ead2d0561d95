"""The central element of H(P, gamma), the two filtrations, and the F-operators."""

from kleinian_d import (Poly, apply_op_poly, center_element, degree_limit, degree_standard,
                        f_product, is_central, leading_term, make_spec, solve_q_from_p)

P = Poly.parse("3*t^2+8*t+8")
H = make_spec("H", P, 1)
Q = solve_q_from_p(P)
omega = center_element(H, Q)
print("Q     =", Q)
print("Omega =", omega)
print("central:", is_central(omega), "| U central:", is_central(H.u))

D = make_spec("D", Poly.parse("t^4-t"), "i")
u, v, w = D.gens()
x = u ** 3 * v ** 2 * w + v * u
print()
print("x =", x)
print("standard degree:", degree_standard(x))
print("limit degree:   ", degree_limit(x))
mono, coeff = leading_term(x)
print("leading term:   ", D.monomial(*mono, c=coeff))

# F_0 ... F_m evaluated at (ad u, left mult by u) kills everything with at most m v/w letters
print()
for m in range(4):
    op = f_product(m)
    killed = all(apply_op_poly(op, u, D.monomial(1, j, e)).is_zero()
                 for j in range(m + 1) for e in (0, 1) if j + e <= m)
    print(f"m={m}: {op.to_text():50s} annihilates: {killed}")
