"""Univariate polynomials over Q(i) and the transforms the algebras need.

The key identity is the embedding ``t -> -s(s+1)`` of C[t] into C[s].  It
links a cubic-or-higher ``Q`` to its partner ``P`` (``Q(-s(s+1)) +
(s+1) P(-s(s+1))`` must be even in ``s``) and it linearises the
commutators ``[f(u), v]`` through the maps ``alpha`` and ``beta``.
"""

from __future__ import annotations

from math import comb

from .parsing import ParseError, RingAdapter, format_terms, parse
from .scalar import ONE, ZERO, Scalar, as_scalar


class InvariantViolation(AssertionError):
    """An internal identity that must hold did not; this is a bug."""


class Poly:
    """Dense polynomial; ``coeffs[k]`` is the coefficient of ``var^k``.

    The variable name is cosmetic and ignored by equality.
    """

    __slots__ = ("coeffs", "var")

    def __init__(self, coeffs=(), var: str = "t"):
        cs = [as_scalar(c) for c in coeffs]
        while cs and cs[-1].is_zero():
            cs.pop()
        self.coeffs = tuple(cs)
        self.var = var

    @classmethod
    def monomial(cls, k: int, c=1, var: str = "t") -> "Poly":
        return cls([ZERO] * k + [as_scalar(c)], var)

    @classmethod
    def const(cls, c, var: str = "t") -> "Poly":
        return cls([c], var)

    @classmethod
    def parse(cls, text: str, var: str = "t") -> "Poly":
        return parse(text, _PolyRing(var))

    # -- basic structure -----------------------------------------------------
    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def lc(self) -> Scalar:
        return self.coeffs[-1] if self.coeffs else ZERO

    def __getitem__(self, k: int) -> Scalar:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return ZERO

    def with_var(self, var: str) -> "Poly":
        return Poly(self.coeffs, var)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        try:
            return self.coeffs == Poly.const(other).coeffs
        except TypeError:
            return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    # -- arithmetic ------------------------------------------------------------
    def _lift(self, other):
        if isinstance(other, Poly):
            return other
        return Poly.const(other, self.var)

    def __add__(self, other):
        other = self._lift(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly([self[k] + other[k] for k in range(n)], self.var)

    __radd__ = __add__

    def __neg__(self):
        return Poly([-c for c in self.coeffs], self.var)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            c = as_scalar(other)
            return Poly([c * x for x in self.coeffs], self.var)
        if self.is_zero() or other.is_zero():
            return Poly((), self.var)
        out = [ZERO] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return Poly(out, self.var)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        result = Poly.const(1, self.var)
        for _ in range(k):
            result = result * self
        return result

    def __truediv__(self, c):
        return self * (ONE / as_scalar(c))

    def divmod(self, d: "Poly"):
        """Euclidean division by a nonzero polynomial."""
        if d.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        quo = [ZERO] * max(len(rem) - d.degree, 0)
        inv = ONE / d.lc()
        for k in range(len(rem) - 1, d.degree - 1, -1):
            c = rem[k] * inv
            if c.is_zero():
                continue
            quo[k - d.degree] = c
            for j, dc in enumerate(d.coeffs):
                rem[k - d.degree + j] = rem[k - d.degree + j] - c * dc
        return Poly(quo, self.var), Poly(rem, self.var)

    def exact_div(self, d: "Poly") -> "Poly":
        q, r = self.divmod(d)
        if not r.is_zero():
            raise InvariantViolation(f"{self} is not divisible by {d}")
        return q

    def __call__(self, x):
        """Evaluate by Horner's rule at a scalar or compose with a Poly."""
        if isinstance(x, Poly):
            acc = Poly((), x.var)
        else:
            x = as_scalar(x)
            acc = ZERO
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def eval_in(self, x, one):
        """Evaluate at ``x`` in any ring, given that ring's unit ``one``."""
        acc = one * ZERO
        for c in reversed(self.coeffs):
            acc = acc * x + one * c
        return acc

    def derivative(self) -> "Poly":
        return Poly([k * c for k, c in enumerate(self.coeffs)][1:], self.var)

    # -- text ------------------------------------------------------------------
    def to_text(self) -> str:
        terms = []
        for k in range(self.degree, -1, -1):
            mono = "" if k == 0 else (self.var if k == 1 else f"{self.var}^{k}")
            terms.append((self.coeffs[k], mono))
        return format_terms(terms)

    __str__ = to_text

    def __repr__(self):
        return f"Poly({self.to_text()!r}, var={self.var!r})"


class _PolyRing(RingAdapter):
    def __init__(self, var):
        self.name = var

    def const(self, c):
        return Poly.const(c, self.name)

    def var(self, name):
        if name != self.name:
            raise ParseError(f"unexpected variable {name!r}; expected {self.name!r}")
        return Poly.monomial(1, 1, self.name)

    def scalar_of(self, x):
        return x[0] if x.degree <= 0 else None


def parse_poly(text: str, var: str = "t") -> Poly:
    return Poly.parse(text, var)


# ---------------------------------------------------------------------------
# the embedding t -> -s(s+1) and friends
# ---------------------------------------------------------------------------

_IOTA_T = Poly([0, -1, -1], "s")  # -s^2 - s


def subst_neg_s_s1(f: Poly) -> Poly:
    """Return ``f(-s(s+1))`` as a polynomial in ``s``."""
    return f.with_var("t")(_IOTA_T).with_var("s")


def parity_split(f: Poly):
    """Split ``f`` into its even-exponent and odd-exponent parts."""
    even = [c if k % 2 == 0 else ZERO for k, c in enumerate(f.coeffs)]
    odd = [c if k % 2 == 1 else ZERO for k, c in enumerate(f.coeffs)]
    return Poly(even, f.var), Poly(odd, f.var)


def unsubst_neg_s_s1(g: Poly) -> Poly:
    """Inverse of :func:`subst_neg_s_s1` on its image.

    Raises :class:`InvariantViolation` if ``g`` is not a polynomial in
    ``-s(s+1)``.
    """
    rem = g.with_var("s")
    out = {}
    while not rem.is_zero():
        if rem.degree % 2:
            raise InvariantViolation(f"{g} is not in the image of t -> -s(s+1)")
        d = rem.degree // 2
        c = rem.lc() * (-1) ** d
        out[d] = c
        rem = rem - subst_neg_s_s1(Poly.monomial(d, c))
    if not out:
        return Poly((), "t")
    return Poly([out.get(k, ZERO) for k in range(max(out) + 1)], "t")


def _solve_linear(rows, rhs):
    """Solve an exact linear system; rows may outnumber unknowns.

    Returns the unique solution.  Raises ``ValueError`` if the system is
    inconsistent and :class:`InvariantViolation` if it is underdetermined.
    """
    m = [list(r) + [b] for r, b in zip(rows, rhs)]
    ncols = len(rows[0]) if rows else 0
    pivots = []
    r = 0
    for col in range(ncols):
        piv = next((k for k in range(r, len(m)) if not m[k][col].is_zero()), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = ONE / m[r][col]
        m[r] = [x * inv for x in m[r]]
        for k in range(len(m)):
            if k != r and not m[k][col].is_zero():
                f = m[k][col]
                m[k] = [x - f * y for x, y in zip(m[k], m[r])]
        pivots.append(col)
        r += 1
    for k in range(r, len(m)):
        if not m[k][-1].is_zero():
            raise ValueError("inconsistent linear system")
    if len(pivots) < ncols:
        raise InvariantViolation("underdetermined linear system")
    sol = [ZERO] * ncols
    for k, col in enumerate(pivots):
        sol[col] = m[k][-1]
    return sol


def _odd_coeffs(p: Poly, top: int):
    return [p[2 * k + 1] for k in range(top)]


def _check_monic_q(Q: Poly):
    if Q.degree < 3:
        raise ValueError(f"Q must have degree >= 3, got {Q.degree}")
    if Q.lc() != 1:
        raise ValueError(f"Q must be monic, leading coefficient is {Q.lc()}")


def solve_p_from_q(Q: Poly) -> Poly:
    """The unique ``P`` making ``Q(-s(s+1)) + (s+1) P(-s(s+1))`` even in ``s``.

    ``Q`` must be monic of degree ``n >= 3``; the result has leading term
    ``n t^(n-1)``.
    """
    _check_monic_q(Q)
    n = Q.degree
    s1 = Poly([1, 1], "s")
    cols = [_odd_coeffs(s1 * subst_neg_s_s1(Poly.monomial(j)), n) for j in range(n)]
    rows = [[cols[j][k] for j in range(n)] for k in range(n)]
    rhs = [-c for c in _odd_coeffs(subst_neg_s_s1(Q), n)]
    P = Poly(_solve_linear(rows, rhs), "t")
    if P.degree != n - 1 or P.lc() != n:
        raise InvariantViolation(f"partner of {Q} has unexpected leading term")
    return P


def solve_q_from_p(P: Poly) -> Poly:
    """Monic ``Q`` with zero constant term satisfying the evenness condition.

    ``P`` must have leading term ``n t^(n-1)`` with ``n >= 3``.
    """
    n = P.degree + 1
    if n < 3:
        raise ValueError(f"P must have degree >= 2, got {P.degree}")
    if P.lc() != n:
        raise ValueError(f"P must have leading term {n}*t^{n - 1}, got coefficient {P.lc()}")
    s1 = Poly([1, 1], "s")
    cols = [_odd_coeffs(subst_neg_s_s1(Poly.monomial(j)), n) for j in range(1, n)]
    rows = [[cols[j][k] for j in range(n - 1)] for k in range(n)]
    known = subst_neg_s_s1(Poly.monomial(n)) + s1 * subst_neg_s_s1(P)
    rhs = [-c for c in _odd_coeffs(known, n)]
    try:
        sol = _solve_linear(rows, rhs)
    except ValueError as exc:  # pragma: no cover - excluded by the leading-term check
        raise InvariantViolation(f"no Q matches {P}") from exc
    return Poly([ZERO] + sol + [ONE], "t")


def qp_defect(Q: Poly, P: Poly) -> Poly:
    """Odd part of ``Q(-s(s+1)) + (s+1)P(-s(s+1))``; zero iff Q and P match."""
    e = subst_neg_s_s1(Q) + Poly([1, 1], "s") * subst_neg_s_s1(P)
    return parity_split(e)[1]


def rho_mu(p: Poly):
    """``rho(p) = (p(-s) - p(s)) / 2s`` and ``mu(p) = (p(-(s+1)) - p(s+1)) / 2(s+1)``."""
    p = p.with_var("s")
    s = Poly([0, 1], "s")
    s1 = Poly([1, 1], "s")
    rho = (p(-s) - p).exact_div(2 * s)
    mu = (p(-s1) - p(s1)).exact_div(2 * s1)
    return rho, mu


def alpha_beta(f: Poly):
    """The pair ``(alpha(f), beta(f))`` with ``a(-s(s+1)) - s b(-s(s+1)) = rho(f(-s(s+1)))``.

    These are the coefficients in ``[f(u), v] = alpha(f)(u)[u,v] + beta(f)(u)[u,w]``.
    """
    r, _ = rho_mu(subst_neg_s_s1(f))
    s = Poly([0, 1], "s")
    sigma = Poly([-1, -1], "s")  # s -> -(s+1) fixes -s(s+1)
    ib = (r(sigma) - r).exact_div(Poly([1, 2], "s"))
    ia = r + s * ib
    return unsubst_neg_s_s1(ia), unsubst_neg_s_s1(ib)


# ---------------------------------------------------------------------------
# two-variable operator polynomials
# ---------------------------------------------------------------------------

class OpPoly:
    """Polynomial in commuting ``S`` (the ad slot) and ``T`` (left multiplication).

    Stored sparsely as ``{(power of S, power of T): coefficient}``.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {k: as_scalar(c) for k, c in (terms or {}).items() if not as_scalar(c).is_zero()}

    def __eq__(self, other):
        return isinstance(other, OpPoly) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, ZERO) + c
        return OpPoly(out)

    def __mul__(self, other):
        if not isinstance(other, OpPoly):
            c = as_scalar(other)
            return OpPoly({k: v * c for k, v in self.terms.items()})
        out = {}
        for (a, b), c in self.terms.items():
            for (a2, b2), c2 in other.terms.items():
                key = (a + a2, b + b2)
                out[key] = out.get(key, ZERO) + c * c2
        return OpPoly(out)

    __rmul__ = __mul__

    @property
    def degree_S(self) -> int:
        return max((a for a, _ in self.terms), default=-1)

    def coeff(self, a: int, b: int) -> Scalar:
        return self.terms.get((a, b), ZERO)

    def coeff_in_S(self, a: int) -> Poly:
        """The coefficient of ``S^a`` as a polynomial in ``T``."""
        items = {b: c for (a2, b), c in self.terms.items() if a2 == a}
        if not items:
            return Poly((), "T")
        return Poly([items.get(b, ZERO) for b in range(max(items) + 1)], "T")

    def table(self):
        """Dense coefficient table indexed ``[power of S][power of T]``."""
        if not self.terms:
            return []
        na = max(a for a, _ in self.terms) + 1
        nb = max(b for _, b in self.terms) + 1
        return [[self.coeff(a, b) for b in range(nb)] for a in range(na)]

    def to_text(self) -> str:
        keys = sorted(self.terms, reverse=True)
        terms = []
        for a, b in keys:
            parts = []
            if a:
                parts.append("S" if a == 1 else f"S^{a}")
            if b:
                parts.append("T" if b == 1 else f"T^{b}")
            terms.append((self.terms[(a, b)], "*".join(parts)))
        return format_terms(terms)

    __str__ = to_text

    def __repr__(self):
        return f"OpPoly({self.to_text()!r})"


def f_poly(m: int) -> OpPoly:
    """``F_0 = S`` and ``F_m = S^2 - 2m^2 S + m^2(m^2-1) + 4m^2 T``."""
    if m < 0:
        raise ValueError("m must be non-negative")
    if m == 0:
        return OpPoly({(1, 0): 1})
    m2 = m * m
    return OpPoly({(2, 0): 1, (1, 0): -2 * m2, (0, 0): m2 * (m2 - 1), (0, 1): 4 * m2})


def f_product(m: int) -> OpPoly:
    """Expanded product ``F_0 F_1 ... F_m``."""
    out = OpPoly({(0, 0): 1})
    for k in range(m + 1):
        out = out * f_poly(k)
    return out


# ---------------------------------------------------------------------------
# binomial-sum polynomials
# ---------------------------------------------------------------------------

def _binom(n: int, k: int) -> int:
    if k < 0 or n < 0 or k > n:
        return 0
    return comb(n, k)


def _p_poly(m: int) -> Poly:
    return Poly([Scalar(_binom(m - k - 1, k)) / 4 ** k for k in range((m - 1) // 2 + 1)])


def _q_poly(m: int) -> Poly:
    return Poly([Scalar(_binom(m - k, k) + _binom(m - k - 1, k - 1)) / 4 ** k for k in range(m // 2 + 1)])


def pq_polys(m: int):
    """The pair ``(p_m, q_m)`` of binomial-sum polynomials in ``t``, ``m >= 2``."""
    if m < 2:
        raise ValueError(f"m must be at least 2, got {m}")
    return _p_poly(m), _q_poly(m)
