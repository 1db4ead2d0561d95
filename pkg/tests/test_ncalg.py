import random

import pytest
from hypothesis import given, settings, strategies as st

from kleinian_d import (AlgebraSpec, LimitDegree, Poly, Scalar, SpecMismatchError, ZeroElementError,
                        alpha_beta, apply_op_poly, center_element, check_diamond, degree_limit,
                        degree_standard, f_poly, f_product, is_central, leading_term, make_spec,
                        rewrite_words)
from kleinian_d.checks import Sampler

from conftest import F, polys, scalars

D3 = make_spec("D", Poly.parse("t^3"), 0)


def gamma_spec(g):
    return make_spec("D", Poly.parse("t^3"), g)


def test_make_spec():
    assert D3.P == Poly.parse("3*t^2+8*t+8")
    make_spec("H", Poly.parse("3*t^2+8*t+8"), 1)
    with pytest.raises(ValueError):
        make_spec("D", Poly.parse("2*t^3"), 0)
    with pytest.raises(ValueError):
        make_spec("H", Poly.parse("2*t^2"), 0)
    with pytest.raises(ValueError):
        make_spec("D", Poly.parse("t^2"), 0)


def test_rewrite_rules_examples():
    assert D3.reduce("v*u").to_text() == "u*v-2*w"
    assert D3.reduce("w*w") == D3.reduce("-u^3-u*v^2+2*v*w-2*v^2-2*(3*u^2+8*u+8)")
    g = Scalar(F(1, 2), 3)
    A = gamma_spec(g)
    assert A.reduce("w*u") == A.reduce("u*w+2*u*v-2*w") - g
    assert A.reduce("w*v") == A.reduce("v*w-v^2-3*u^2-8*u-8")


def test_w_squared_from_defining_relation():
    # Q(u) + u v^2 + w^2 - 2 w v - gamma v = 0
    g = Scalar(2, -1)
    Q = Poly.parse("t^3+(1+i)*t^2-t+5")
    A = make_spec("D", Q, g)
    u, v, w = A.gens()
    assert (A.poly_u(Q) + u * v * v + w * w - 2 * (w * v) - g * v).is_zero()


def test_v_times_u_squared():
    g = Scalar(0, 3)
    A = gamma_spec(g)
    u, v, w = A.gens()
    expected = u * u * v - 4 * (u * w) - 4 * (u * v) + 4 * w + 2 * g
    assert v * (u * u) == expected
    # [u^2, v] = alpha(t^2)(u)[u,v] + beta(t^2)(u)[u,w] with (2t, -2)
    a, b = alpha_beta(Poly.parse("t^2"))
    assert v * (u * u) == u * u * v - (A.poly_u(a) * (2 * w) + A.poly_u(b) * A.commutator(u, w))


def test_commutator_examples():
    A = gamma_spec(1)
    u, v, w = A.gens()
    assert A.commutator(u, v) == 2 * w
    assert A.commutator(u, u ** 3).is_zero()
    assert A.commutator(v, w) == v * v + A.poly_u(A.P)
    assert A.one() * v == v


def test_h_ordered_word_unchanged():
    H = make_spec("H", Poly.parse("3*t^2+8*t+8"), 1)
    U, V, W = H.gens()
    assert (U * V) * W == H.monomial(1, 1, 1)


def test_spec_mismatch():
    other = gamma_spec(1)
    with pytest.raises(SpecMismatchError):
        D3.u * other.v


def random_specs(rng):
    r = Sampler(rng.random())
    n = rng.randint(3, 5)
    return [make_spec("D", r.monic(n), r.scalar()), make_spec("H", r.h_poly(n), r.scalar())], r


@pytest.mark.parametrize("seed", range(6))
def test_associativity_and_jacobi(seed):
    specs, r = random_specs(random.Random(seed))
    for A in specs:
        # limit degree at most (4, 8) keeps this quick
        x, y, z = (r.element(A, 4 * A.n, terms=2) for _ in range(3))
        assert (x * y) * z == x * (y * z)
        c = A.commutator
        assert c(x, y) == -c(y, x)
        assert (c(x, c(y, z)) + c(y, c(z, x)) + c(z, c(x, y))).is_zero()


@pytest.mark.parametrize("seed", range(4))
def test_reduce_idempotent_and_strategy_free(seed):
    specs, r = random_specs(random.Random(100 + seed))
    for A in specs:
        word = "".join(random.Random(seed).choice("uvw") for _ in range(6))
        x = A.reduce("*".join(A.names["uvw".index(ch)] for ch in word))
        assert A.reduce(x) == x
        left = rewrite_words({word: 1}, A, strategy="leftmost")
        right = rewrite_words({word: 1}, A, strategy="rightmost")
        assert left == right == x


@settings(max_examples=20, deadline=None)
@given(polys(max_degree=8), st.sampled_from(["D", "H"]))
def test_ucomms(f, kind):
    A = make_spec("D", Poly.parse("t^4+2*t"), Scalar(1, 1)) if kind == "D" else \
        make_spec("H", Poly.parse("3*t^2-t+i"), Scalar(F(1, 2)))
    u, v, w = A.gens()
    a, b = alpha_beta(f)
    fu = A.poly_u(f)
    uv, uw = A.commutator(u, v), A.commutator(u, w)
    assert A.commutator(fu, v) == A.poly_u(a) * uv + A.poly_u(b) * uw
    assert A.commutator(fu, w) == -(u * A.poly_u(b)) * uv + A.poly_u(a + b) * uw


def test_apply_op_poly_examples():
    g = Scalar(3, -2)
    A = gamma_spec(g)
    u, v, _ = A.gens()
    assert apply_op_poly(f_poly(1), u, v) == A.scalar(2 * g)
    assert apply_op_poly(f_poly(0), u, u ** 5).is_zero()
    assert apply_op_poly(f_product(1), u, v).is_zero()


@pytest.mark.parametrize("n", [3, 4, 5])
def test_fprod_annihilates(n):
    r = Sampler(n)
    A = make_spec("D", r.monic(n), r.scalar())
    for m in range(4):
        op = f_product(m)
        for j in range(m + 1):
            for eps in (0, 1):
                if j + eps <= m:
                    assert apply_op_poly(op, A.u, A.monomial(2, j, eps)).is_zero()
    # one step short is not enough
    assert not apply_op_poly(f_product(1), A.u, A.monomial(0, 2, 0)).is_zero()


def test_degrees():
    assert degree_standard(D3.u) == 4
    assert degree_standard(D3.v * D3.w) == 10
    D4 = make_spec("D", Poly.parse("t^4"), 0)
    assert degree_standard(D4.monomial(2, 1)) == 14
    assert degree_limit(D3.u) == LimitDegree(0, 2)
    assert degree_limit(D3.w) == LimitDegree(1, 1)
    assert degree_limit(D3.monomial(3, 2, 1)) == LimitDegree(3, 7)
    with pytest.raises(ZeroElementError):
        degree_standard(D3.zero())
    with pytest.raises(ZeroElementError):
        degree_limit(D3.zero())


@pytest.mark.parametrize("seed", range(5))
def test_filtrations(seed):
    r = Sampler(seed)
    A = make_spec("D", r.monic(3 + seed % 2), r.scalar())
    x, y = r.element(A, 16), r.element(A, 16)
    assert degree_standard(x * y) <= degree_standard(x) + degree_standard(y)
    dx, dy, dxy = degree_limit(x), degree_limit(y), degree_limit(x * y)
    assert dxy <= LimitDegree(dx.a + dy.a, dx.b + dy.b)
    c = A.commutator(x, y)
    if not c.is_zero():
        assert degree_standard(c) <= degree_standard(x) + degree_standard(y) - 2
    (mono, coef) = leading_term(x)
    assert coef == x.coefficient(*mono)


def test_diamonds_and_negative_control():
    H = make_spec("H", Poly.parse("3*t^2+8*t+8"), 2)
    assert [r.overlap for r in check_diamond(H)] == ["wvu"]
    assert all(r.resolved for r in check_diamond(H))
    assert all(r.resolved for r in check_diamond(D3))
    bad = AlgebraSpec("D", D3.P + 1, D3.Q, D3.gamma)
    failed = {r.overlap for r in check_diamond(bad) if not r.resolved}
    assert "wwv" in failed


def test_center_element():
    H0 = make_spec("H", Poly.parse("3*t^2+8*t+8"), 0)
    U, V, W = H0.gens()
    om = center_element(H0, Poly.parse("t^3"))
    assert om == U ** 3 + U * V * V + W * W - 2 * (W * V)
    assert is_central(om)
    H1 = make_spec("H", Poly.parse("3*t^2+8*t+8"), 1)
    om1 = center_element(H1, Poly.parse("t^3"))
    assert om1 == H1.reduce(om.to_text()) - H1.v
    assert center_element(H1, Poly.parse("t^3+5")) == om1 + 5
    with pytest.raises(ValueError):
        center_element(H1, Poly.parse("t^3+t"))


def test_is_central_examples():
    H = make_spec("H", Poly.parse("3*t^2+8*t+8"), 1)
    assert not is_central(H.u)
    assert not is_central(D3.u)
    assert is_central(D3.scalar(Scalar(7, 3)))


@pytest.mark.parametrize("seed", range(4))
def test_centralizer_of_u(seed):
    r = Sampler(seed)
    A = make_spec("D", r.monic(3), r.scalar())
    f = A.poly_u(Poly([r.scalar() for _ in range(4)]))
    assert A.commutator(f, A.u).is_zero()
    bumped = f + A.monomial(r.rng.randint(0, 2), r.rng.randint(1, 2), r.rng.randint(0, 1), r.nonzero_scalar())
    assert not A.commutator(bumped, A.u).is_zero()


def test_text_round_trip():
    r = Sampler(9)
    for A in (make_spec("D", r.monic(3), r.scalar()), make_spec("H", r.h_poly(4), r.scalar())):
        x = r.element(A, 20, terms=5)
        assert A.reduce(x.to_text()) == x
