import pytest
import sympy as sp
from hypothesis import given, settings

from kleinian_d import (DParams, InvariantViolation, IsoWitness, NotASquareError, Poly, Scalar, I,
                        automorphism_group, is_isomorphic_D, is_isomorphic_H, is_isomorphic_H_via_D,
                        moduli_invariants, normalize_monic, orbit, psi, psi_inv, theta,
                        verify_homomorphism)
from kleinian_d.checks import Sampler
from kleinian_d import solve_p_from_q
from kleinian_d.iso import h_to_d, orbit_members, relation_defects, stabilizer

from conftest import F, scalars


def cubic(A, B, C, g):
    return DParams.cubic(A, B, C, g)


def test_dparams_validation():
    with pytest.raises(ValueError):
        DParams(Poly.parse("2*t^3"), 0)
    with pytest.raises(ValueError):
        DParams(Poly.parse("t^2"), 0)
    p = cubic(1, 2, 3, 4)
    assert (p.A, p.B, p.C, p.gamma) == (1, 2, 3, 4)
    assert p.X == 2 * 1 + 8 and p.Y == 2 * 1 + 2 + 8


def test_normalize_monic():
    p, xi = normalize_monic(Poly.parse("4*t^3"), 2)
    assert xi == F(1, 2) and p == DParams(Poly.parse("t^3"), 1)
    g = Scalar(3, 1)
    p, xi = normalize_monic(Poly.parse("-t^3"), g)
    assert xi == I and p == DParams(Poly.parse("t^3"), I * g)
    p, xi = normalize_monic(Poly.parse("t^3+t"), 0)
    assert xi == 1 and p.Q == Poly.parse("t^3+t")
    with pytest.raises(NotASquareError):
        normalize_monic(Poly.parse("2*t^3"), 0)


def test_theta():
    p = DParams(Poly.parse("t^3+t"), 2)
    q, w = theta(p)
    assert q == DParams(Poly.parse("t^3+t"), -2)
    assert theta(q)[0] == p
    assert [x.to_text() for x in w.images] == ["u", "-v", "-w"]
    assert is_isomorphic_D(DParams(Poly.parse("t^5"), 0), DParams(Poly.parse("t^5"), 0)).name == "Id"


def test_psi_examples():
    q, w = psi(cubic(0, 0, 0, 0))
    assert q == cubic(0, -6, 0, 2 * I)
    assert verify_homomorphism(w)
    g = Scalar(F(3, 2), -1)
    assert psi(cubic(0, 0, 0, g))[0].gamma == 2 * I - g / 2
    assert psi(cubic(0, -4, 0, 0))[0] == cubic(0, -4, 0, 0)
    assert psi_inv(cubic(0, 0, 0, 0))[0] == cubic(0, -6, 0, -2 * I)
    with pytest.raises(ValueError):
        psi(DParams(Poly.parse("t^4"), 0))


def test_psi_bracket_relation_in_witness():
    p = cubic(0, 0, 0, 0)
    q, w = psi(p)
    defects = relation_defects(p, q, w.images)
    assert all(d.is_zero() for d in defects.values())
    f, g, h = w.images
    T = q.spec
    # [g, h] = g^2 + 3 f^2 + 8 f + (B + 8) with A = 0, B = 0
    assert T.commutator(g, h) == g * g + 3 * (f * f) + 8 * f + 8


def test_corrupted_witness_rejected():
    p = cubic(1, 2, 0, 1)
    q, w = psi(p)
    f, g, h = w.images
    assert not verify_homomorphism(IsoWitness.unchecked("bad", p, q, (f, -g, h)))
    with pytest.raises(InvariantViolation):
        IsoWitness("bad", p, q, (f, -g, h))


def test_printed_image_signs_need_the_other_parameter_map():
    # the image triple with +i belongs with the parameters of psi_inv
    p = cubic(0, 0, 0, 0)
    for target, ok in ((psi(p)[0], False), (psi_inv(p)[0], True)):
        u, v, w = target.spec.gens()
        images = (I * v / 2 - u / 2 - 1, -v / 2 + 3 * I * u / 2 + I, w)
        assert verify_homomorphism(IsoWitness.unchecked("x", p, target, images)) is ok


@settings(max_examples=30, deadline=None)
@given(scalars(), scalars(), scalars(), scalars())
def test_group_relations(A, B, C, g):
    p = cubic(A, B, C, g)
    p1, w1 = psi(p)
    p2, w2 = psi(p1)
    p3, w3 = psi(p2)
    assert p3 == p and p2 == psi_inv(p)[0]
    assert w1.then(w2).images == psi_inv(p)[1].images
    assert w1.then(w2).then(w3).images == p.spec.gens()
    assert theta(psi(theta(p)[0])[0])[0] == psi_inv(p)[0]
    assert theta(theta(p)[0])[0] == p


def test_witness_apply_is_a_homomorphism():
    r = Sampler(5)
    p = r.cubic()
    q, w = psi(p)
    x, y = r.element(p.spec, 12), r.element(p.spec, 12)
    assert w.apply(x * y) == w.apply(x) * w.apply(y)


def test_orbit_examples():
    p5 = DParams(Poly.parse("t^5"), 3)
    assert [q for q, _ in orbit(p5)] == [p5, DParams(Poly.parse("t^5"), -3)]
    assert len(orbit(cubic(0, -4, 0, 0))) == 1
    got = {q for q, _ in orbit(cubic(0, 0, 0, 0))}
    assert got == {cubic(0, 0, 0, 0), cubic(0, -6, 0, 2 * I), cubic(0, -6, 0, -2 * I)}


def test_is_isomorphic_D_examples():
    t4 = Poly.parse("t^4")
    assert is_isomorphic_D(DParams(t4, 1), DParams(t4, -1)).name == "Θ"
    assert is_isomorphic_D(DParams(Poly.parse("t^4+t"), 1), DParams(t4, 1)) is None
    assert is_isomorphic_D(cubic(0, 0, 0, 0), cubic(0, -6, 0, 2 * I)).name == "Ψ"
    assert is_isomorphic_D(cubic(0, 0, 0, 0), DParams(t4, 0)) is None


def test_automorphism_examples():
    assert automorphism_group(cubic(0, -4, 0, 0)).label == "S3"
    assert automorphism_group(cubic(0, 0, 0, 0)).label == "Z2(Θ)"
    p = cubic(0, Scalar(-4, 1), 0, 1)
    assert automorphism_group(p).label == "Z2(Θ∘Ψ)"
    assert stabilizer(p) == ["Id", "Θ∘Ψ"]
    assert automorphism_group(cubic(0, Scalar(-4, -1), 0, 1)).label == "Z2(Θ∘Ψ²)"
    assert automorphism_group(cubic(0, 1, 0, 1)).label == "trivial"
    assert automorphism_group(DParams(Poly.parse("t^5"), 0)).label == "Z2(Θ)"
    assert automorphism_group(DParams(Poly.parse("t^5"), 2)).label == "trivial"


@settings(max_examples=30, deadline=None)
@given(scalars(), scalars(), scalars(), scalars())
def test_orbit_stabilizer(A, B, C, g):
    p = cubic(A, B, C, g)
    assert automorphism_group(p).order * len(orbit(p)) == 6


def test_moduli_examples():
    a = moduli_invariants(DParams(Poly.parse("t^5+t"), 3))
    assert a == moduli_invariants(DParams(Poly.parse("t^5+t"), -3))
    assert a.values == (Poly.parse("t^5+t"), Scalar(9))
    assert moduli_invariants(cubic(0, 0, 0, 0)).values == (64, 16, 0, 0)


@settings(max_examples=25, deadline=None)
@given(scalars(), scalars(), scalars(), scalars())
def test_moduli_constant_on_orbits(A, B, C, g):
    p = cubic(A, B, C, g)
    m = moduli_invariants(p)
    for _, q, _w in orbit_members(p):
        assert moduli_invariants(q) == m
        assert (q.A, 6 * q.C - q.A * q.B) == (p.A, 6 * p.C - p.A * p.B)


def test_moduli_separate():
    r = Sampler(11)
    for _ in range(40):
        p, q = r.cubic(), r.cubic()
        same = moduli_invariants(p) == moduli_invariants(q)
        assert same == (is_isomorphic_D(p, q) is not None)


def test_eigenvalue_of_invariant_coordinate():
    # x1 = k - sqrt(3) gamma transforms under psi by exp(-2 pi i / 3)
    k, g = sp.symbols("k g")
    kt = -k / 2 + 3 * sp.I * g / 2
    gt = sp.I * k / 2 - g / 2
    x1, x1t = k - sp.sqrt(3) * g, kt - sp.sqrt(3) * gt
    down = sp.Rational(-1, 2) - sp.sqrt(3) * sp.I / 2   # exp(-2 pi i / 3)
    up = sp.Rational(-1, 2) + sp.sqrt(3) * sp.I / 2     # exp(+2 pi i / 3)
    assert sp.expand(x1t - down * x1) == 0
    assert sp.expand(x1t - up * x1) != 0
    assert sp.expand(down - sp.exp(-2 * sp.pi * sp.I / 3).rewrite(sp.cos)) == 0
    # and the parameter map used for k, gamma is the implemented one
    p = cubic(2, Scalar(1, 3), 0, Scalar(F(1, 2), 1))
    q = psi(p)[0]
    k0 = p.B - 4 * (p.A * p.A / 16 - 1)
    k1 = q.B - 4 * (q.A * q.A / 16 - 1)
    assert k1 == -k0 / 2 + 3 * I * p.gamma / 2 and q.gamma == I * k0 / 2 - p.gamma / 2


def test_h_examples():
    P = Poly.parse("3*t^2+8*t+8")
    v = is_isomorphic_H(P, 2, P, -2)
    assert v.isomorphic and v.case == "iii"
    v = is_isomorphic_H(Poly.parse("3*t^2"), 0, Poly.parse("3*t^2"), 0)
    assert v.isomorphic and set(v.cases) == {"i", "ii", "iii"}
    v = is_isomorphic_H(Poly.parse("4*t^3+t"), 1, Poly.parse("4*t^3"), 1)
    assert not v.isomorphic
    v = is_isomorphic_H(Poly.parse("4*t^3+t"), 1, Poly.parse("4*t^3+t"), -1)
    assert v.isomorphic and v.case == "Hn4"
    assert not is_isomorphic_H(P, 0, Poly.parse("4*t^3"), 0).isomorphic
    with pytest.raises(ValueError):
        is_isomorphic_H(Poly.parse("2*t^2"), 0, P, 0)


@pytest.mark.parametrize("seed", range(5))
def test_h_cases_match_d_orbits(seed):
    r = Sampler(seed)
    P1, g1 = r.h_poly(3), r.scalar()
    p = h_to_d(P1, g1)
    expected = {"Id": "iii", "Θ": "iii", "Ψ": "i", "Θ∘Ψ": "i", "Ψ²": "ii", "Θ∘Ψ²": "ii"}
    for name, q, _ in orbit_members(p):
        P2 = solve_p_from_q(q.Q)
        v = is_isomorphic_H(P1, g1, P2, q.gamma)
        assert v.isomorphic and expected[name] in v.cases
        assert is_isomorphic_H_via_D(P1, g1, P2, q.gamma) is not None
    P2 = Poly([P1[0] + 1, P1[1], 3])
    assert is_isomorphic_H(P1, g1, P2, g1).isomorphic == (is_isomorphic_H_via_D(P1, g1, P2, g1) is not None)
