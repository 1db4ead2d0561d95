"""Commutative Poisson side: C[X, Y, Z] with the bracket of a potential.

For ``phi`` in C[X, Y, Z] the bracket is ``{X,Y} = dphi/dZ``,
``{X,Z} = -dphi/dY``, ``{Y,Z} = dphi/dX``, extended by Leibniz.  The
quotient mode keeps the ``Z``-degree at most one by eliminating ``Z^2``.
"""

from __future__ import annotations

from .ncalg import AlgebraSpec, Element, ZeroElementError, degree_standard, standard_symbol
from .parsing import ParseError, RingAdapter, format_terms, parse
from .scalar import ZERO, as_scalar

_VARS = ("X", "Y", "Z")


class CPoly:
    """Commutative polynomial ``{(a, b, c): coeff}`` for ``X^a Y^b Z^c``."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        out = {}
        for m, c in (terms or {}).items():
            c = as_scalar(c)
            if not c.is_zero():
                out[tuple(m)] = c
        self.terms = out

    @classmethod
    def var(cls, name: str) -> "CPoly":
        idx = _VARS.index(name)
        e = [0, 0, 0]
        e[idx] = 1
        return cls({tuple(e): 1})

    @classmethod
    def const(cls, c) -> "CPoly":
        return cls({(0, 0, 0): c})

    @classmethod
    def parse(cls, text: str) -> "CPoly":
        return parse(text, _CPolyRing())

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if isinstance(other, CPoly):
            return self.terms == other.terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        other = _lift(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, ZERO) + c
        return CPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return CPoly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-_lift(other))

    def __rsub__(self, other):
        return _lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, CPoly):
            c = as_scalar(other)
            return CPoly({m: x * c for m, x in self.terms.items()})
        out = {}
        for (a, b, c), x in self.terms.items():
            for (a2, b2, c2), y in other.terms.items():
                key = (a + a2, b + b2, c + c2)
                out[key] = out.get(key, ZERO) + x * y
        return CPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        result = CPoly.const(1)
        for _ in range(k):
            result = result * self
        return result

    def diff(self, var: str) -> "CPoly":
        idx = _VARS.index(var)
        out = {}
        for m, c in self.terms.items():
            e = m[idx]
            if e:
                m2 = list(m)
                m2[idx] -= 1
                out[tuple(m2)] = c * e
        return CPoly(out)

    def max_z(self) -> int:
        return max((c for _, _, c in self.terms), default=0)

    def to_text(self) -> str:
        terms = []
        for m in sorted(self.terms, reverse=True):
            parts = []
            for name, e in zip(_VARS, m):
                if e == 1:
                    parts.append(name)
                elif e > 1:
                    parts.append(f"{name}^{e}")
            terms.append((self.terms[m], "*".join(parts)))
        return format_terms(terms)

    __str__ = to_text

    def __repr__(self):
        return f"CPoly({self.to_text()!r})"


def _lift(x):
    return x if isinstance(x, CPoly) else CPoly.const(x)


class _CPolyRing(RingAdapter):
    def const(self, c):
        return CPoly.const(c)

    def var(self, name):
        if name not in _VARS:
            raise ParseError(f"unexpected variable {name!r}; expected X, Y or Z")
        return CPoly.var(name)

    def scalar_of(self, x):
        if not x.terms:
            return ZERO
        if set(x.terms) == {(0, 0, 0)}:
            return x.terms[(0, 0, 0)]
        return None


X = CPoly.var("X")
Y = CPoly.var("Y")
Z = CPoly.var("Z")


def kleinian_phi(n: int) -> CPoly:
    """``X^n + X Y^2 + Z^2``."""
    return X ** n + X * Y * Y + Z * Z


LIMIT_PHI = X * Y * Y + Z * Z


def reduce_z2(f: CPoly, z2: CPoly) -> CPoly:
    """Rewrite ``Z^2 -> z2`` until every monomial has Z-degree at most one."""
    if z2.max_z() > 1:
        raise ValueError("replacement for Z^2 must have Z-degree at most one")
    out = {}
    pending = dict(f.terms)
    while pending:
        (a, b, c), x = pending.popitem()
        if c <= 1:
            out[(a, b, c)] = out.get((a, b, c), ZERO) + x
            continue
        for (a2, b2, c2), y in z2.terms.items():
            m = (a + a2, b + b2, c - 2 + c2)
            pending[m] = pending.get(m, ZERO) + x * y
    return CPoly(out)


def bracket_phi(f: CPoly, g: CPoly, phi: CPoly) -> CPoly:
    """Poisson bracket ``{f, g}_phi`` (the Jacobian determinant of f, g, phi)."""
    fx, fy, fz = f.diff("X"), f.diff("Y"), f.diff("Z")
    gx, gy, gz = g.diff("X"), g.diff("Y"), g.diff("Z")
    xy = phi.diff("Z")
    xz = -phi.diff("Y")
    yz = phi.diff("X")
    return (fx * gy - fy * gx) * xy + (fx * gz - fz * gx) * xz + (fy * gz - fz * gy) * yz


def bracket_gr_limit(f: CPoly, g: CPoly) -> CPoly:
    """Bracket on C[X,Y,Z]/(XY^2 + Z^2): ``{X,Y}=2Z, {X,Z}=-2XY, {Y,Z}=Y^2``."""
    z2 = -(X * Y * Y)
    f = reduce_z2(f, z2)
    g = reduce_z2(g, z2)
    return reduce_z2(bracket_phi(f, g, LIMIT_PHI), z2)


def hamiltonian_iterate(x: CPoly, y: CPoly, M: int) -> CPoly:
    """Apply ``{x, .}`` to ``y`` ``M`` times in the limit quotient ring."""
    out = y
    for _ in range(M):
        out = bracket_gr_limit(x, out)
    return out


def symbol_to_cpoly(sym) -> CPoly:
    return CPoly(dict(sym))


def principal_symbol(x: Element) -> CPoly:
    """Top standard-degree part of ``x`` with ``u, v, w -> X, Y, Z``."""
    return symbol_to_cpoly(standard_symbol(x))


def semiclassical_check(spec: AlgebraSpec, x: Element, y: Element) -> bool:
    """Check ``gr [x, y] = {gr x, gr y}`` at degree ``deg x + deg y - 2``.

    For D-algebras the bracket is taken modulo ``X^n + XY^2 + Z^2``.
    """
    if x.is_zero() or y.is_zero():
        raise ZeroElementError("semiclassical_check needs nonzero elements")
    n = spec.n
    d = degree_standard(x) + degree_standard(y) - 2
    phi = kleinian_phi(n)
    br = bracket_phi(principal_symbol(x), principal_symbol(y), phi)
    if spec.kind == "D":
        br = reduce_z2(br, -(X ** n) - X * Y * Y)
    c = spec.commutator(x, y)
    top = {}
    for (i, j, k), coef in c.terms.items():
        wt = 4 * i + (2 * n - 2) * j + 2 * n * k
        if wt > d:
            return False
        if wt == d:
            top[(i, j, k)] = coef
    return CPoly(top) == br

