"""Isomorphisms between the algebras D(Q, gamma), and their classification.

For ``deg Q >= 4`` the only non-identity isomorphism is ``Theta`` (flip the
sign of gamma).  For cubic ``Q`` there are six maps generated by ``Theta``
and the order-three map ``Psi``; isomorphism is decided by enumerating that
orbit, and every map is carried by an :class:`IsoWitness` whose generator
images are checked against all four defining relations.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import NamedTuple, Optional

from .ncalg import AlgebraSpec, Element, make_spec
from .poly import InvariantViolation, Poly, solve_p_from_q, solve_q_from_p
from .scalar import I, ONE, Scalar, as_scalar, sqrt

THETA = "Θ"
PSI = "Ψ"
PSI2 = "Ψ²"


@lru_cache(maxsize=4096)
def _d_spec(Q: Poly, gamma: Scalar) -> AlgebraSpec:
    # shared so that repeated orbit walks reuse multiplication caches
    return make_spec("D", Q, gamma)


@dataclass(frozen=True)
class DParams:
    """Parameters ``(Q, gamma)`` of ``D(Q, gamma)`` with ``Q`` monic, ``deg Q >= 3``."""

    Q: Poly
    gamma: Scalar

    def __post_init__(self):
        object.__setattr__(self, "Q", self.Q.with_var("t"))
        object.__setattr__(self, "gamma", as_scalar(self.gamma))
        if self.Q.degree < 3:
            raise ValueError(f"Q must have degree >= 3, got {self.Q.degree}")
        if self.Q.lc() != 1:
            raise ValueError(f"Q must be monic, leading coefficient is {self.Q.lc()}")

    @classmethod
    def cubic(cls, A, B, C, gamma) -> "DParams":
        return cls(Poly([C, B, A, 1]), gamma)

    @property
    def n(self) -> int:
        return self.Q.degree

    @property
    def A(self) -> Scalar:
        return self.Q[self.n - 1]

    @property
    def B(self) -> Scalar:
        return self.Q[self.n - 2]

    @property
    def C(self) -> Scalar:
        return self.Q[self.n - 3]

    def abcg(self):
        self._need_cubic()
        return self.A, self.B, self.C, self.gamma

    @property
    def X(self) -> Scalar:
        """Linear coefficient of the partner P; equals ``2A + 8`` for cubics."""
        return self.P[1]

    @property
    def Y(self) -> Scalar:
        return self.P[0]

    @cached_property
    def P(self) -> Poly:
        return solve_p_from_q(self.Q)

    @property
    def spec(self) -> AlgebraSpec:
        return _d_spec(self.Q, self.gamma)

    def _need_cubic(self):
        if self.n != 3:
            raise ValueError(f"operation needs deg Q = 3, got {self.n}")

    def __str__(self):
        return f"(Q={self.Q}, gamma={self.gamma})"


def _substitute(x: Element, images, target: AlgebraSpec) -> Element:
    """Evaluate ``x`` at ``(u, v, w) -> images`` inside ``target``."""
    f, g, h = images
    out = target.zero()
    powers = {}

    def pw(base, idx, e):
        key = (idx, e)
        if key not in powers:
            powers[key] = base ** e
        return powers[key]

    for (i, j, k), c in x.terms.items():
        out = out + c * (pw(f, 0, i) * pw(g, 1, j) * pw(h, 2, k))
    return out


def relation_defects(source: DParams, target: DParams, images):
    """Residuals of the four defining relations of ``source`` at ``images``."""
    T = target.spec
    f, g, h = (T.reduce(x) for x in images)
    gam = source.gamma
    P = source.P
    Q = source.Q
    return {
        "[f,g]=2h": T.commutator(f, g) - 2 * h,
        "[f,h]=-2fg+2h+gamma": T.commutator(f, h) - (-2 * (f * g) + 2 * h + gam),
        "[g,h]=g^2+P(f)": T.commutator(g, h) - (g * g + T.poly_in(P, f)),
        "Q(f)+fg^2+h^2-2hg-gamma*g=0": T.poly_in(Q, f) + f * g * g + h * h - 2 * (h * g) - gam * g,
    }


@dataclass(frozen=True)
class IsoWitness:
    """A homomorphism ``D(source) -> D(target)`` given by generator images."""

    name: str
    source: DParams
    target: DParams
    images: tuple
    checked: bool = field(default=True, compare=False)

    def __post_init__(self):
        if self.checked and not verify_homomorphism(self):
            raise InvariantViolation(f"{self.name}: images do not satisfy the relations of {self.source}")

    @classmethod
    def unchecked(cls, name, source, target, images) -> "IsoWitness":
        return cls(name, source, target, tuple(images), checked=False)

    def apply(self, x: Element) -> Element:
        """Image of an element of the source algebra."""
        return _substitute(x, self.images, self.target.spec)

    def then(self, other: "IsoWitness") -> "IsoWitness":
        """The composite ``other ∘ self`` (apply ``self`` first)."""
        if other.source != self.target:
            raise ValueError("witnesses do not compose: target/source mismatch")
        images = tuple(_substitute(x, other.images, other.target.spec) for x in self.images)
        return IsoWitness(_compose_name(other.name, self.name), self.source, other.target, images)

    def to_json(self):
        return {
            "name": self.name,
            "source": _params_json(self.source),
            "target": _params_json(self.target),
            "images": [x.to_text() for x in self.images],
        }


def _compose_name(outer, inner):
    if outer == "Id":
        return inner
    if inner == "Id":
        return outer
    return f"{outer}∘{inner}"


def _params_json(p: DParams):
    return {"q": p.Q.to_text(), "gamma": str(p.gamma)}


def verify_homomorphism(w: IsoWitness) -> bool:
    """True iff the images satisfy every defining relation of the source."""
    return all(d.is_zero() for d in relation_defects(w.source, w.target, w.images).values())


# ---------------------------------------------------------------------------
# the explicit maps
# ---------------------------------------------------------------------------

def identity(p: DParams) -> IsoWitness:
    return IsoWitness("Id", p, p, p.spec.gens())


def theta(p: DParams):
    """``D(Q, gamma) -> D(Q, -gamma)``, ``(u, v, w) -> (u, -v, -w)``."""
    q = DParams(p.Q, -p.gamma)
    u, v, w = q.spec.gens()
    return q, IsoWitness(THETA, p, q, (u, -v, -w))


def _psi_params(p: DParams, sign: int) -> DParams:
    A, B, C, g = p.abcg()
    e = A * A / 16 - 1
    Bt = 6 * e + sign * 3 * I * g / 2 - B / 2
    Ct = C - A * (B / 4 - sign * I * g / 4 + 1 - A * A / 16)
    gt = sign * I * (-2 * e + B / 2) - g / 2
    return DParams.cubic(A, Bt, Ct, gt)


def psi(p: DParams):
    """The order-three map on cubic parameters and its generator images.

    ``u -> -i v~/2 - u~/2 - (1 + A/4)``, ``v -> -v~/2 - 3i u~/2 - i(1 + A/4)``,
    ``w -> w~``.
    """
    return _psi_witness(p, +1, PSI)


def _psi_witness(p: DParams, sign: int, name: str):
    q = _psi_params(p, sign)
    u, v, w = q.spec.gens()
    c = 1 + p.A / 4
    j = -sign * I
    images = (j * v / 2 - u / 2 - c, -v / 2 + 3 * j * u / 2 + j * c, w)
    return q, IsoWitness(name, p, q, images)


def psi_inv(p: DParams):
    """Inverse of :func:`psi` (equal to applying it twice).

    Images carry the opposite sign of ``i`` to those of :func:`psi`.
    """
    return _psi_witness(p, -1, PSI2)


def normalize_monic(Qraw: Poly, gamma):
    """Rescale to a monic ``Q`` via ``D(Q, gamma) ~ D(xi^2 Q, xi gamma)``.

    Returns ``(DParams, xi)``.  ``xi`` is the square root of ``1/lc(Q)``
    with positive real part (or positive imaginary part if the real part is
    zero).  Raises :class:`~kleinian_d.scalar.NotASquareError` when the
    leading coefficient is not a square in Q(i).
    """
    if Qraw.degree < 3:
        raise ValueError(f"Q must have degree >= 3, got {Qraw.degree}")
    gamma = as_scalar(gamma)
    xi = sqrt(ONE / Qraw.lc())
    return DParams(Qraw * (xi * xi), xi * gamma), xi


# ---------------------------------------------------------------------------
# orbits and decisions
# ---------------------------------------------------------------------------

def orbit(p: DParams):
    """All ``(target params, witness)`` reachable from ``p``, duplicates merged."""
    found = [(p, identity(p))]
    if p.n == 3:
        p1, w1 = psi(p)
        p2, w2 = psi_inv(p)
        candidates = [(p1, w1), (p2, w2)]
        for q, w in [(p, identity(p)), (p1, w1), (p2, w2)]:
            qt, wt = theta(q)
            candidates.append((qt, w.then(wt)))
    else:
        candidates = [theta(p)]
    for q, w in candidates:
        if all(q != seen for seen, _ in found):
            found.append((q, w))
    return found


def orbit_members(p: DParams):
    """Names of all six maps with their targets (no merging); cubic only."""
    p._need_cubic()
    p1, w1 = psi(p)
    p2, w2 = psi_inv(p)
    out = [("Id", p, identity(p)), (PSI, p1, w1), (PSI2, p2, w2)]
    for name, q, w in list(out):
        qt, wt = theta(q)
        out.append((_compose_name(THETA, name), qt, w.then(wt)))
    return out


def is_isomorphic_D(p1: DParams, p2: DParams) -> Optional[IsoWitness]:
    """A witness ``D(p1) -> D(p2)`` if the algebras are isomorphic, else ``None``."""
    if p1.n != p2.n:
        return None
    if p1.n >= 4:
        if p1.Q != p2.Q:
            return None
        if p2.gamma == p1.gamma:
            return identity(p1)
        if p2.gamma == -p1.gamma:
            return theta(p1)[1]
        return None
    for q, w in orbit(p1):
        if q == p2:
            return w
    return None


class AutomorphismGroup(NamedTuple):
    label: str
    order: int


_GROUPS = {
    "trivial": AutomorphismGroup("trivial", 1),
    "Z2(Θ)": AutomorphismGroup("Z2(Θ)", 2),
    "Z2(Θ∘Ψ)": AutomorphismGroup("Z2(Θ∘Ψ)", 2),
    "Z2(Θ∘Ψ²)": AutomorphismGroup("Z2(Θ∘Ψ²)", 2),
    "S3": AutomorphismGroup("S3", 6),
}


def _cubic_shift(p: DParams) -> Scalar:
    """``B - 4(A^2/16 - 1)``."""
    A, B, _, _ = p.abcg()
    return B - 4 * (A * A / 16 - 1)


def stabilizer(p: DParams):
    """Names of the six maps fixing ``p``; cubic only."""
    return [name for name, q, _ in orbit_members(p) if q == p]


def automorphism_group(p: DParams) -> AutomorphismGroup:
    """Automorphism group of ``D(p)`` from the closed-form conditions.

    For cubic ``Q`` the answer is cross-checked against the stabiliser of
    ``p`` under the six explicit maps.
    """
    g = p.gamma
    if p.n >= 4:
        return _GROUPS["Z2(Θ)" if g.is_zero() else "trivial"]
    k = _cubic_shift(p)
    if g.is_zero():
        label = "S3" if k.is_zero() else "Z2(Θ)"
    elif k == I * g:
        label = "Z2(Θ∘Ψ)"
    elif k == -I * g:
        label = "Z2(Θ∘Ψ²)"
    else:
        label = "trivial"
    group = _GROUPS[label]
    stab = stabilizer(p)
    expected = {"S3": 6, "trivial": 1}.get(label)
    if len(stab) != group.order or (expected is None and label[3:-1] not in stab):
        raise InvariantViolation(f"closed form {label} disagrees with stabiliser {stab} at {p}")
    return group


@dataclass(frozen=True)
class ModuliPoint:
    """Invariants separating isomorphism classes.

    ``values`` is ``(Q, gamma^2)`` for ``n >= 4`` and, for cubics with
    ``k = B - 4(A^2/16 - 1)``, ``(k(k^2 + 9 gamma^2), k^2 - 3 gamma^2, 6C - AB, A)``.
    """

    n: int
    values: tuple

    def scalars(self):
        if self.n == 3:
            return list(self.values)
        Q, g2 = self.values
        return list(Q.coeffs) + [g2]


def moduli_invariants(p: DParams) -> ModuliPoint:
    g = p.gamma
    if p.n >= 4:
        return ModuliPoint(p.n, (p.Q, g * g))
    A, B, C, _ = p.abcg()
    k = _cubic_shift(p)
    return ModuliPoint(3, (k * (k * k + 9 * g * g), k * k - 3 * g * g, 6 * C - A * B, A))


# ---------------------------------------------------------------------------
# H-level decision
# ---------------------------------------------------------------------------

class HVerdict(NamedTuple):
    isomorphic: bool
    case: Optional[str]
    cases: tuple = ()


def _check_h_poly(P: Poly):
    n = P.degree + 1
    if n < 3 or P.lc() != n:
        raise ValueError(f"P must have leading term n*t^(n-1) with n >= 3, got {P}")
    return n


def is_isomorphic_H(P1: Poly, gamma1, P2: Poly, gamma2) -> HVerdict:
    """Decide ``H(P1, gamma1) ~ H(P2, gamma2)``.

    For ``n >= 4`` the algebras are isomorphic iff ``P1 = P2`` and
    ``gamma2 = ±gamma1`` (case label ``"Hn4"``).  For ``P = 3t^2 + Xt + Y``
    the linear coefficients must agree and one of three cases holds:

    * ``"i"``:   ``Y2 = 3X^2/32 + 3i g1/2 - Y1/2`` and ``±g2 = i(Y1/2 - X^2/32) - g1/2``
    * ``"ii"``:  ``Y2 = 3X^2/32 - 3i g1/2 - Y1/2`` and ``±g2 = -i(Y1/2 - X^2/32) - g1/2``
    * ``"iii"``: ``Y2 = Y1`` and ``g2 = ±g1``
    """
    n = _check_h_poly(P1)
    N = _check_h_poly(P2)
    g1, g2 = as_scalar(gamma1), as_scalar(gamma2)
    if n != N:
        return HVerdict(False, None)
    if n >= 4:
        ok = P1 == P2 and (g2 == g1 or g2 == -g1)
        return HVerdict(ok, "Hn4" if ok else None, ("Hn4",) if ok else ())
    X1, Y1 = P1[1], P1[0]
    X2, Y2 = P2[1], P2[0]
    if X1 != X2:
        return HVerdict(False, None)
    X = X1
    base = Y1 / 2 - X * X / 32
    cases = []
    if Y2 == Y1 and (g2 == g1 or g2 == -g1):
        cases.append("iii")
    for label, sign in (("i", 1), ("ii", -1)):
        y_target = 3 * X * X / 32 + sign * 3 * I * g1 / 2 - Y1 / 2
        g_target = sign * I * base - g1 / 2
        if Y2 == y_target and (g2 == g_target or g2 == -g_target):
            cases.append(label)
    if not cases:
        return HVerdict(False, None)
    return HVerdict(True, cases[0], tuple(cases))


def h_to_d(P: Poly, gamma) -> DParams:
    """D-level parameters ``(Q, gamma)`` with ``Q`` monic and constant-free."""
    return DParams(solve_q_from_p(P), gamma)


def is_isomorphic_H_via_D(P1: Poly, gamma1, P2: Poly, gamma2) -> Optional[IsoWitness]:
    """Decide the H-level question through D-level orbits.

    ``H(P, gamma)`` is the algebra ``D(Q + c, gamma)`` for every constant
    ``c``, so a match only needs ``Q`` to agree up to its constant term.
    Returns the D-level witness whose target matches, or ``None``.
    """
    _check_h_poly(P1)
    _check_h_poly(P2)
    p1 = h_to_d(P1, gamma1)
    p2 = h_to_d(P2, gamma2)
    if p1.n != p2.n:
        return None
    for q, w in orbit(p1):
        diff = q.Q - p2.Q
        if diff.degree <= 0 and q.gamma == p2.gamma:
            return w
    return None
