"""The acceptance suite: thirteen exact property checks.

Each check draws its random inputs from its own ``random.Random`` seeded by
``"seed:index"``, so any single check can be rerun in isolation with the
same data.  Checks return ``(passed, detail)``; :func:`run_acceptance`
times them and collects :class:`CheckResult` records.
"""

from __future__ import annotations

import random
import time
from fractions import Fraction
from typing import Callable, NamedTuple

from . import iso
from .iso import DParams, PSI, PSI2, THETA
from .ncalg import AlgebraSpec, apply_op_poly, center_element, check_diamond, make_spec
from .poisson import CPoly, LIMIT_PHI, bracket_phi, kleinian_phi, semiclassical_check
from .poly import (Poly, alpha_beta, f_poly, f_product, pq_polys, solve_p_from_q,
                   solve_q_from_p, subst_neg_s_s1, parity_split)
from .scalar import I, Scalar


class CheckResult(NamedTuple):
    index: int
    name: str
    passed: bool
    detail: str
    seconds: float

    def line(self) -> str:
        tag = "PASS" if self.passed else "FAIL"
        return f"[{tag}] {self.index:2d} {self.name}: {self.detail} ({self.seconds:.2f}s)"


class Sampler:
    """Seeded generator of small Gaussian rationals, polynomials and elements."""

    def __init__(self, seed):
        self.rng = random.Random(seed)

    def rational(self, bound=4, den=3) -> Fraction:
        return Fraction(self.rng.randint(-bound, bound), self.rng.randint(1, den))

    def scalar(self, bound=4, den=3) -> Scalar:
        return Scalar(self.rational(bound, den), self.rational(bound, den))

    def nonzero_scalar(self) -> Scalar:
        while True:
            z = self.scalar()
            if not z.is_zero():
                return z

    def monic(self, n: int) -> Poly:
        return Poly([self.scalar() for _ in range(n)] + [1])

    def cubic(self) -> DParams:
        return DParams.cubic(self.scalar(), self.scalar(), self.scalar(), self.scalar())

    def d_params(self, n: int) -> DParams:
        return DParams(self.monic(n), self.scalar())

    def h_poly(self, n: int) -> Poly:
        return Poly([self.scalar() for _ in range(n - 1)] + [n])

    def element(self, spec: AlgebraSpec, max_degree: int, terms: int = 3):
        """Random nonzero element with monomials of standard degree <= max_degree."""
        n = spec.n
        kmax = 1 if spec.kind == "D" else max_degree // (2 * n)
        monos = [(i, j, k)
                 for k in range(kmax + 1)
                 for j in range(max_degree // (2 * n - 2) + 1)
                 for i in range(max_degree // 4 + 1)
                 if 4 * i + (2 * n - 2) * j + 2 * n * k <= max_degree]
        while True:
            picks = self.rng.sample(monos, min(terms, len(monos)))
            x = spec.element({m: self.scalar() for m in picks})
            if not x.is_zero():
                return x

    def cpoly(self, max_total: int = 3, terms: int = 3) -> CPoly:
        out = {}
        for _ in range(terms):
            m = tuple(self.rng.randint(0, max_total) for _ in range(3))
            out[m] = self.scalar()
        return CPoly(out)


# ---------------------------------------------------------------------------
# the checks
# ---------------------------------------------------------------------------

def check_pq_correspondence(r: Sampler, **_):
    for _ in range(200):
        p = r.cubic()
        A, B, C, _g = p.abcg()
        P = solve_p_from_q(p.Q)
        if P != Poly([2 * A + B + 8, 2 * A + 8, 3]):
            return False, f"wrong P for Q={p.Q}: {P}"
        if solve_q_from_p(P) != p.Q - C:
            return False, f"round trip failed for Q={p.Q}"
    for _ in range(50):
        Q = r.monic(r.rng.randint(4, 6))
        P = solve_p_from_q(Q)
        s1 = Poly([1, 1], "s")
        total = subst_neg_s_s1(Q) + s1 * subst_neg_s_s1(P)
        if not parity_split(total)[1].is_zero():
            return False, f"odd part survives for Q={Q}"
    return True, "200 cubics match the closed form and round-trip; 50 higher-degree Q give an even sum"


def check_centrality(r: Sampler, **_):
    for _ in range(50):
        Q = r.monic(r.rng.randint(3, 6))
        H = make_spec("H", solve_p_from_q(Q), r.scalar())
        omega = center_element(H, Q)
        for g in H.gens():
            if not H.commutator(omega, g).is_zero():
                return False, f"Omega fails to commute in {H}"
    return True, "Omega commutes with U, V, W in 50 random H-algebras"


def check_diamonds(r: Sampler, **_):
    for _ in range(50):
        n = r.rng.randint(3, 6)
        specs = [make_spec("D", r.monic(n), r.scalar()), make_spec("H", r.h_poly(n), r.scalar())]
        for spec in specs:
            bad = [rep.overlap for rep in check_diamond(spec) if not rep.resolved]
            if bad:
                return False, f"unresolved overlaps {bad} in {spec}"
    good = make_spec("D", r.monic(3), r.scalar())
    corrupt = AlgebraSpec("D", good.P + 1, good.Q, good.gamma)
    failed = [rep.overlap for rep in check_diamond(corrupt) if not rep.resolved]
    if not failed:
        return False, "corrupted presentation passed every overlap"
    return True, f"all overlaps resolve in 100 specs; corrupted control fails at {failed}"


def check_ucomms(r: Sampler, **_):
    for _ in range(50):
        H = make_spec("H", r.h_poly(r.rng.randint(3, 5)), r.scalar())
        U, V, W = H.gens()
        f = Poly([r.scalar() for _ in range(r.rng.randint(1, 9))])
        a, b = alpha_beta(f)
        fU = H.poly_u(f)
        uv, uw = H.commutator(U, V), H.commutator(U, W)
        lhs_a = H.commutator(fU, V)
        rhs_a = H.poly_u(a) * uv + H.poly_u(b) * uw
        lhs_b = H.commutator(fU, W)
        rhs_b = -(U * H.poly_u(b)) * uv + H.poly_u(a + b) * uw
        if lhs_a != rhs_a or lhs_b != rhs_b:
            return False, f"identity fails for f={f} in {H}"
    return True, "[f(U),V] and [f(U),W] identities hold for 50 random f of degree <= 8"


def check_annihilation(r: Sampler, **_):
    count = 0
    for n in (3, 4, 5):
        p = r.d_params(n)
        spec = p.spec
        u = spec.u
        for m in range(5):
            op = f_product(m)
            for j in range(m + 1):
                for eps in (0, 1):
                    if j + eps > m:
                        continue
                    for i in range(3):
                        x = spec.monomial(i, j, eps)
                        if not apply_op_poly(op, u, x).is_zero():
                            return False, f"F-product {m} leaves u^{i}v^{j}w^{eps} nonzero in {spec}"
                        count += 1
        if apply_op_poly(f_poly(1), u, spec.v) != spec.scalar(2 * p.gamma):
            return False, f"F_1 on v differs from 2*gamma in {spec}"
    return True, f"{count} monomial cases annihilated; F_1(v) = 2*gamma for n = 3, 4, 5"


def check_prodform(r: Sampler, **_):
    for m in range(7):
        P = f_product(m)
        top = 2 * m + 1
        if P.degree_S != top or P.coeff_in_S(top) != Poly([1]):
            return False, f"leading coefficient wrong for m={m}"
        for i in range(1, top + 1):
            if 2 * P.coeff_in_S(top - i).degree > i:
                return False, f"degree bound fails for m={m}, i={i}"
    return True, "leading coefficient 1 and degree bounds hold for m <= 6"


def check_binomials(r: Sampler, **_):
    t = Poly([0, 1])
    half = Scalar(Fraction(1, 2))
    for m in range(2, 33):
        p, q = pq_polys(m)
        if p(-1) != Scalar(Fraction(m, 2 ** (m - 1))) or q(-1) != half ** (m - 1):
            return False, f"values at -1 wrong for m={m}"
        if m >= 3:
            p1, q1 = pq_polys(m - 1)
            if q != p + t * p1 / 2:
                return False, f"q_m = p_m + t p_(m-1)/2 fails for m={m}"
            if m <= 31:
                p2, q2 = pq_polys(m + 1)
                if p2 != p + t * p1 / 4 or q2 != q + t * q1 / 4:
                    return False, f"recurrence fails for m={m}"
    return True, "recurrences, the p/q identity and the values at -1 hold for m <= 32"


def check_test_vectors(r: Sampler, **_):
    for _ in range(20):
        p = DParams.cubic(r.scalar(), r.scalar(), r.scalar(), r.scalar())
        spec = p.spec
        u, v, w = spec.gens()
        X = 2 * p.A + 8
        f = I * v / 2 - u / 2 - X / 8
        g = -v / 2 + 3 * I * u / 2 + I * X / 8
        a = u + X / 4
        b = 3 * u + X / 4
        f2 = -(v * v) / 4 - (a * I * v) / 2 + I * w / 2 + a * a / 4
        g2 = v * v / 4 - (b * I * v) / 2 + 3 * I * w / 2 - b * b / 4
        if f * f != f2 or g * g != g2:
            return False, f"f^2 or g^2 mismatch at {p}"
    return True, "f^2 and g^2 match their closed forms for 20 random (A, gamma)"


def check_psi_machinery(r: Sampler, **_):
    for _ in range(100):
        p = r.cubic()
        q_t, w_t = iso.theta(p)
        q_p, w_p = iso.psi(p)
        q_i, w_i = iso.psi_inv(p)
        for w in (w_t, w_p, w_i):
            if not iso.verify_homomorphism(w):
                return False, f"{w.name} fails at {p}"
        defects = iso.relation_defects(p, q_p, w_p.images)
        if not defects["[g,h]=g^2+P(f)"].is_zero():
            return False, f"[g,h] relation fails at {p}"
        if p.P != Poly([2 * p.A + p.B + 8, 2 * p.A + 8, 3]):
            return False, f"source P has the wrong form at {p}"
        if iso.psi(iso.psi(q_p)[0])[0] != p or iso.theta(q_t)[0] != p:
            return False, f"Psi^3 or Theta^2 is not the identity at {p}"
        if iso.theta(iso.psi(q_t)[0])[0] != q_i:
            return False, f"Theta Psi Theta differs from Psi^2 at {p}"
    p = DParams.cubic(0, 0, 0, 0)
    q, w = iso.psi(p)
    f, g, h = w.images
    broken = iso.IsoWitness.unchecked("corrupt", p, q, (f, -g, h))
    if iso.verify_homomorphism(broken):
        return False, "sign-flipped witness passed verification"
    return True, "Theta, Psi, Psi^2 verified on 100 parameters; group relations hold; corrupted control fails"


def _stratum_params(r: Sampler, stratum: str) -> DParams:
    A, C = r.scalar(), r.scalar()
    base = 4 * (A * A / 16 - 1)
    g = r.nonzero_scalar()
    if stratum == "S3":
        return DParams.cubic(A, base, C, 0)
    if stratum == "Z2(Θ)":
        k = r.nonzero_scalar()
        return DParams.cubic(A, base + k, C, 0)
    if stratum == "Z2(Θ∘Ψ)":
        return DParams.cubic(A, base + I * g, C, g)
    if stratum == "Z2(Θ∘Ψ²)":
        return DParams.cubic(A, base - I * g, C, g)
    while True:
        k = r.scalar()
        if k != I * g and k != -I * g:
            return DParams.cubic(A, base + k, C, g)


def check_classification(r: Sampler, **_):
    strata = ["S3", "Z2(Θ)", "Z2(Θ∘Ψ)", "Z2(Θ∘Ψ²)", "trivial"]
    for idx in range(200):
        want = strata[idx % len(strata)]
        p = _stratum_params(r, want)
        group = iso.automorphism_group(p)
        if group.label != want:
            return False, f"{p} classified as {group.label}, expected {want}"
        if group.order * len(iso.orbit(p)) != 6:
            return False, f"|Aut| x |orbit| != 6 at {p}"
    examples = [((0, -4, 0, 0), "S3"), ((0, 0, 0, 0), "Z2(Θ)"), ((0, Scalar(-4, 1), 0, 1), "Z2(Θ∘Ψ)")]
    for args, want in examples:
        if iso.automorphism_group(DParams.cubic(*args)).label != want:
            return False, f"example {args} not classified as {want}"
    return True, "|Aut| x |orbit| = 6 on 200 parameters across five strata; three named examples match"


def check_moduli(r: Sampler, **_):
    for n in (3, 4, 5):
        for _ in range(200 // 3 + 1):
            p = r.d_params(n)
            members = iso.orbit(p)
            q, _w = members[r.rng.randrange(len(members))]
            if iso.moduli_invariants(p) != iso.moduli_invariants(q):
                return False, f"moduli differ across an orbit at {p}"
            if r.rng.random() < 0.5:
                other = r.d_params(n)
            else:
                # same Q, new gamma: the only way to be close for n >= 4
                other = DParams(p.Q, r.scalar()) if n > 3 else DParams.cubic(p.A, p.B, p.C, r.scalar())
            same = iso.moduli_invariants(p) == iso.moduli_invariants(other)
            if same != (iso.is_isomorphic_D(p, other) is not None):
                return False, f"moduli and orbit test disagree for {p} vs {other}"
    return True, "invariants constant on orbits and separating for n = 3, 4, 5"


_CASE_MAPS = {"i": {PSI, f"{THETA}∘{PSI}"}, "ii": {PSI2, f"{THETA}∘{PSI2}"}, "iii": {"Id", THETA}}


def _h_instance(r: Sampler, case: str):
    if case in ("Hn4", "Hn4-no"):
        n = r.rng.randint(4, 5)
        P1, g1 = r.h_poly(n), r.scalar()
        if case == "Hn4":
            return P1, g1, P1, r.rng.choice([g1, -g1])
        return P1, g1, r.h_poly(n), r.scalar()
    P1, g1 = r.h_poly(3), r.scalar()
    if case == "no":
        return P1, g1, Poly([r.scalar(), P1[1], 3]), r.scalar()
    p = iso.h_to_d(P1, g1)
    name = r.rng.choice(sorted(_CASE_MAPS[case]))
    q = next(q for nm, q, _ in iso.orbit_members(p) if nm == name)
    return P1, g1, solve_p_from_q(q.Q), q.gamma


def check_h_level(r: Sampler, **_):
    for case in ("i", "ii", "iii", "no", "Hn4", "Hn4-no"):
        for _ in range(50):
            P1, g1, P2, g2 = _h_instance(r, case)
            verdict = iso.is_isomorphic_H(P1, g1, P2, g2)
            witness = iso.is_isomorphic_H_via_D(P1, g1, P2, g2)
            if verdict.isomorphic != (witness is not None):
                return False, f"closed form and orbit disagree for {P1},{g1} vs {P2},{g2}"
            if case in _CASE_MAPS:
                if case not in verdict.cases:
                    return False, f"case {case} not reported for {P1},{g1} vs {P2},{g2}"
                target = iso.h_to_d(P2, g2)
                names = {nm for nm, q, _ in iso.orbit_members(iso.h_to_d(P1, g1))
                         if (q.Q - target.Q).degree <= 0 and q.gamma == target.gamma}
                for c in verdict.cases:
                    if c in _CASE_MAPS and not (names & _CASE_MAPS[c]):
                        return False, f"case {c} has no matching D-level map"
    return True, "closed-form verdicts agree with D-level orbits on 50 instances for each of 6 cases"


def check_semiclassical(r: Sampler, max_degree: int = 20, **_):
    for idx in range(100):
        n = 3 + idx % 2
        if idx % 4 < 2:
            spec = make_spec("H", r.h_poly(n), r.scalar())
        else:
            spec = make_spec("D", r.monic(n), r.scalar())
        x = r.element(spec, max_degree)
        y = r.element(spec, max_degree)
        if not semiclassical_check(spec, x, y):
            return False, f"symbol of [x,y] is not the bracket in {spec}: x={x}, y={y}"
    for _ in range(20):
        f, g, h = r.cpoly(), r.cpoly(), r.cpoly()
        for phi in (kleinian_phi(3), kleinian_phi(4), LIMIT_PHI):
            def br(a, b):
                return bracket_phi(a, b, phi)
            jac = br(f, br(g, h)) + br(g, br(h, f)) + br(h, br(f, g))
            if not jac.is_zero() or not br(phi, f).is_zero():
                return False, f"Jacobi or Casimir fails for phi={phi}"
    return True, f"100 commutator symbols match the bracket (degree <= {max_degree}); Jacobi and Casimir hold"


CHECKS: list[tuple[str, Callable]] = [
    ("P/Q correspondence", check_pq_correspondence),
    ("centre element", check_centrality),
    ("overlap resolution", check_diamonds),
    ("commutators with f(U)", check_ucomms),
    ("F-product annihilation", check_annihilation),
    ("F-product shape", check_prodform),
    ("binomial polynomials", check_binomials),
    ("f^2 and g^2 test vectors", check_test_vectors),
    ("Theta and Psi witnesses", check_psi_machinery),
    ("automorphism strata", check_classification),
    ("moduli invariants", check_moduli),
    ("H-level isomorphism", check_h_level),
    ("semiclassical limit", check_semiclassical),
]


def run_check(index: int, seed: int = 0, max_degree: int = 20) -> CheckResult:
    """Run the check numbered ``index`` (1-based)."""
    name, fn = CHECKS[index - 1]
    start = time.perf_counter()
    try:
        passed, detail = fn(Sampler(f"{seed}:{index}"), max_degree=max_degree)
    except Exception as exc:  # a crash is a failure, reported with its type
        passed, detail = False, f"{type(exc).__name__}: {exc}"
    return CheckResult(index, name, passed, detail, time.perf_counter() - start)


def run_acceptance(seed: int = 0, max_degree: int = 20, only=None, echo=None):
    """Run the suite in index order; ``echo`` receives each result as it lands."""
    results = []
    for index in only or range(1, len(CHECKS) + 1):
        res = run_check(index, seed, max_degree)
        if echo is not None:
            echo(res)
        results.append(res)
    return results
