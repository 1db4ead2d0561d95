"""Normal-form arithmetic in the algebras H(P, gamma) and D(Q, gamma).

Both algebras have generators ``u, v, w`` with

    [u, v] = 2w,   [u, w] = -2uv + 2w + gamma,   [v, w] = v^2 + P(u),

and D additionally imposes ``Q(u) + uv^2 + w^2 - 2wv - gamma v = 0``.
Elements are stored over the ordered basis ``u^i v^j w^k`` (``k <= 1`` in
D).  Products are computed by left multiplication with single generators,
memoised per algebra; :func:`rewrite_words` is a literal string-rewriting
engine for the same relations, used for the critical-pair check and as an
independent reference.
"""

from __future__ import annotations

import re
from typing import NamedTuple

from .parsing import ParseError, RingAdapter, format_terms, parse
from .poly import OpPoly, Poly, qp_defect, solve_p_from_q
from .scalar import ONE, ZERO, Scalar, as_scalar

MAX_TERMS = 10 ** 6


class SpecMismatchError(ValueError):
    """Elements of different algebras were combined."""


class ZeroElementError(ValueError):
    """The zero element has no degree or leading term."""


class TermBlowupError(AssertionError):
    """An intermediate result exceeded :data:`MAX_TERMS` terms."""


class LimitDegree(NamedTuple):
    """Degree in the limit filtration; tuple order is the lex order."""

    a: int
    b: int


class AlgebraSpec:
    """Presentation data for H(P, gamma) or D(Q, gamma).

    Use :func:`make_spec` (or :meth:`H` / :meth:`D`) to build one; the
    constructor itself does not validate.
    """

    def __init__(self, kind: str, P: Poly, Q: Poly | None, gamma: Scalar):
        self.kind = kind
        self.P = P.with_var("t")
        self.Q = Q.with_var("t") if Q is not None else None
        self.gamma = as_scalar(gamma)
        self.n = self.P.degree + 1
        self._key = (kind, self.P.coeffs, None if Q is None else self.Q.coeffs, self.gamma)
        self._lcache = {}
        self._mcache = {}
        self._w2 = None
        if kind == "D":
            # w.w = -Q(u) - u v^2 + 2 v w - 2 v^2 - 2 P(u) + gamma v
            w2 = {}
            for a, c in enumerate(self.Q.coeffs):
                w2[(a, 0, 0)] = w2.get((a, 0, 0), ZERO) - c
            for a, c in enumerate(self.P.coeffs):
                w2[(a, 0, 0)] = w2.get((a, 0, 0), ZERO) - 2 * c
            w2[(1, 2, 0)] = -ONE
            w2[(0, 1, 1)] = Scalar(2)
            w2[(0, 2, 0)] = Scalar(-2)
            w2[(0, 1, 0)] = self.gamma
            self._w2 = _clean(w2)

    @classmethod
    def H(cls, P, gamma=0) -> "AlgebraSpec":
        return make_spec("H", P, gamma)

    @classmethod
    def D(cls, Q, gamma=0) -> "AlgebraSpec":
        return make_spec("D", Q, gamma)

    def __eq__(self, other):
        return isinstance(other, AlgebraSpec) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        if self.kind == "D":
            return f"D(Q={self.Q}, gamma={self.gamma})"
        return f"H(P={self.P}, gamma={self.gamma})"

    @property
    def names(self):
        return ("u", "v", "w") if self.kind == "D" else ("U", "V", "W")

    # -- element construction -----------------------------------------------
    def element(self, terms) -> "Element":
        return Element(self, _clean({tuple(m): as_scalar(c) for m, c in dict(terms).items()}))

    def zero(self) -> "Element":
        return Element(self, {})

    def one(self) -> "Element":
        return self.scalar(1)

    def scalar(self, c) -> "Element":
        return self.element({(0, 0, 0): c})

    def monomial(self, i: int, j: int = 0, k: int = 0, c=1) -> "Element":
        if self.kind == "D" and k > 1:
            raise ValueError("D-algebra basis monomials have w-degree at most 1")
        return self.element({(i, j, k): c})

    @property
    def u(self) -> "Element":
        return self.monomial(1, 0, 0)

    @property
    def v(self) -> "Element":
        return self.monomial(0, 1, 0)

    @property
    def w(self) -> "Element":
        return self.monomial(0, 0, 1)

    def gens(self):
        return self.u, self.v, self.w

    def poly_in(self, p: Poly, x: "Element") -> "Element":
        """Evaluate the polynomial ``p`` at the element ``x``."""
        return p.eval_in(x, self.one())

    def poly_u(self, p: Poly) -> "Element":
        return self.element({(a, 0, 0): c for a, c in enumerate(p.coeffs)})

    # -- core product --------------------------------------------------------
    def _lgen(self, g: str, mono):
        key = (g, mono)
        r = self._lcache.get(key)
        if r is None:
            r = self._lgen_compute(g, mono)
            self._lcache[key] = r
        return r

    def _lgen_dict(self, g: str, d):
        if g == "u":
            return {(i + 1, j, k): c for (i, j, k), c in d.items()}
        acc = {}
        for m, c in d.items():
            _axpy(acc, self._lgen(g, m), c)
        return _clean(acc)

    def _lgen_compute(self, g: str, mono):
        i, j, k = mono
        if g == "u":
            return {(i + 1, j, k): ONE}
        if g == "v":
            if i == 0:
                return {(0, j + 1, k): ONE}
            x = (i - 1, j, k)
            # v u = u v - 2 w
            acc = self._lgen_dict("u", self._lgen("v", x))
            _axpy(acc, self._lgen("w", x), Scalar(-2))
            return _clean(acc)
        # g == "w"
        if i > 0:
            x = (i - 1, j, k)
            # w u = u w + 2 u v - 2 w - gamma
            wx = self._lgen("w", x)
            acc = self._lgen_dict("u", wx)
            _axpy(acc, self._lgen_dict("u", self._lgen("v", x)), Scalar(2))
            _axpy(acc, wx, Scalar(-2))
            _axpy(acc, {x: ONE}, -self.gamma)
            return _clean(acc)
        if j > 0:
            y = (0, j - 1, k)
            # w v = v w - v^2 - P(u)
            acc = self._lgen_dict("v", self._lgen("w", y))
            _axpy(acc, {(0, j + 1, k): ONE}, -ONE)
            _axpy(acc, {(a, j - 1, k): c for a, c in enumerate(self.P.coeffs)}, -ONE)
            return _clean(acc)
        if self.kind == "H" or k == 0:
            return {(0, 0, k + 1): ONE}
        return dict(self._w2)

    def _mul_mono(self, m1, m2):
        a, b, c = m1
        if a:
            return {(i + a, j, k): x for (i, j, k), x in self._mul_mono((0, b, c), m2).items()}
        key = (b, c, m2)
        r = self._mcache.get(key)
        if r is None:
            if b:
                r = self._lgen_dict("v", self._mul_mono((0, b - 1, c), m2))
            elif c:
                r = self._lgen_dict("w", self._mul_mono((0, 0, c - 1), m2))
            else:
                r = {m2: ONE}
            self._mcache[key] = r
        return r

    def mul(self, x: "Element", y: "Element") -> "Element":
        self._check(x)
        self._check(y)
        acc = {}
        for m1, c1 in x.terms.items():
            for m2, c2 in y.terms.items():
                _axpy(acc, self._mul_mono(m1, m2), c1 * c2)
                if len(acc) > MAX_TERMS:
                    raise TermBlowupError("term count exceeded during multiplication")
        return Element(self, _clean(acc))

    def commutator(self, x: "Element", y: "Element") -> "Element":
        return self.mul(x, y) - self.mul(y, x)

    def _check(self, x):
        if not isinstance(x, Element):
            raise TypeError(f"expected an Element, got {type(x).__name__}")
        if x.spec is not self and x.spec != self:
            raise SpecMismatchError(f"element of {x.spec!r} used in {self!r}")

    # -- parsing -------------------------------------------------------------
    def reduce(self, expr) -> "Element":
        """Normal form of a word expression.

        ``expr`` may be text such as ``"w*v*u^2 + (1/2+i)*v"``, an iterable
        of ``(coefficient, word)`` pairs with words like ``"wvu"``, or an
        :class:`Element` (returned unchanged).
        """
        if isinstance(expr, Element):
            self._check(expr)
            return expr
        if isinstance(expr, str):
            return parse(expr, _AlgebraRing(self))
        acc = self.zero()
        for c, word in expr:
            term = self.scalar(c)
            for letter in word:
                term = self.mul(term, self._gen_by_name(letter))
            acc = acc + term
        return acc

    def _gen_by_name(self, name):
        idx = "uvw".find(name.lower()) if len(name) == 1 else -1
        if idx < 0:
            raise ParseError(f"unknown generator {name!r}")
        return self.gens()[idx]


def _axpy(acc, d, c):
    if c.is_zero():
        return
    if c == 1:
        for m, v in d.items():
            prev = acc.get(m)
            acc[m] = v if prev is None else prev + v
    else:
        for m, v in d.items():
            prev = acc.get(m)
            acc[m] = v * c if prev is None else prev + v * c


def _clean(d):
    return {m: c for m, c in d.items() if not c.is_zero()}


class _AlgebraRing(RingAdapter):
    def __init__(self, spec):
        self.spec = spec

    def const(self, c):
        return self.spec.scalar(c)

    def var(self, name):
        return self.spec._gen_by_name(name)

    def mul(self, a, b):
        return self.spec.mul(a, b)

    def scalar_of(self, x):
        if not x.terms:
            return ZERO
        if set(x.terms) == {(0, 0, 0)}:
            return x.terms[(0, 0, 0)]
        return None


class Element:
    """Immutable element in normal form: ``{(i, j, k): coefficient}``."""

    __slots__ = ("spec", "terms", "_hash")

    def __init__(self, spec: AlgebraSpec, terms):
        self.spec = spec
        self.terms = terms
        self._hash = None

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def coefficient(self, i: int, j: int = 0, k: int = 0) -> Scalar:
        return self.terms.get((i, j, k), ZERO)

    def is_scalar(self) -> bool:
        return set(self.terms) <= {(0, 0, 0)}

    def _lift(self, other):
        if isinstance(other, Element):
            self.spec._check(other)
            return other
        return self.spec.scalar(as_scalar(other))

    def __add__(self, other):
        other = self._lift(other)
        acc = dict(self.terms)
        _axpy(acc, other.terms, ONE)
        return Element(self.spec, _clean(acc))

    __radd__ = __add__

    def __neg__(self):
        return Element(self.spec, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if isinstance(other, Element):
            return self.spec.mul(self, other)
        c = as_scalar(other)
        if c.is_zero():
            return self.spec.zero()
        return Element(self.spec, {m: x * c for m, x in self.terms.items()})

    def __rmul__(self, other):
        c = as_scalar(other)
        if c.is_zero():
            return self.spec.zero()
        return Element(self.spec, {m: c * x for m, x in self.terms.items()})

    def __truediv__(self, other):
        return self * (ONE / as_scalar(other))

    def __pow__(self, k: int):
        result = self.spec.one()
        for _ in range(k):
            result = self.spec.mul(result, self)
        return result

    def __eq__(self, other):
        if isinstance(other, Element):
            return self.spec == other.spec and self.terms == other.terms
        try:
            c = as_scalar(other)
        except TypeError:
            return NotImplemented
        return self.terms == ({} if c.is_zero() else {(0, 0, 0): c})

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.spec, frozenset(self.terms.items())))
        return self._hash

    def to_text(self) -> str:
        names = self.spec.names

        def key(m):
            i, j, k = m
            return (j + k, 2 * i + k, i, j, k)

        terms = []
        for m in sorted(self.terms, key=key, reverse=True):
            parts = []
            for name, e in zip(names, m):
                if e == 1:
                    parts.append(name)
                elif e > 1:
                    parts.append(f"{name}^{e}")
            terms.append((self.terms[m], "*".join(parts)))
        return format_terms(terms)

    __str__ = to_text

    def __repr__(self):
        return f"<{self.to_text()} in {self.spec!r}>"


# ---------------------------------------------------------------------------
# public operations
# ---------------------------------------------------------------------------

def make_spec(kind: str, poly, gamma=0) -> AlgebraSpec:
    """Validated presentation of ``H(P, gamma)`` (``kind="H"``) or ``D(Q, gamma)``.

    For D the partner ``P`` is solved from ``Q`` and cached.
    """
    kind = kind.upper()
    if isinstance(poly, str):
        poly = Poly.parse(poly)
    gamma = as_scalar(gamma)
    if kind == "D":
        if poly.degree < 3:
            raise ValueError(f"Q must have degree >= 3, got {poly.degree}")
        if poly.lc() != 1:
            raise ValueError(f"Q must be monic, leading coefficient is {poly.lc()}")
        return AlgebraSpec("D", solve_p_from_q(poly), poly, gamma)
    if kind == "H":
        n = poly.degree + 1
        if n < 3:
            raise ValueError(f"P must have degree >= 2, got {poly.degree}")
        if poly.lc() != n:
            raise ValueError(f"P must have leading term {n}*t^{n - 1}")
        return AlgebraSpec("H", poly, None, gamma)
    raise ValueError(f"unknown algebra kind {kind!r}")


def reduce(expr, spec: AlgebraSpec) -> Element:
    return spec.reduce(expr)


def mul(x: Element, y: Element, spec: AlgebraSpec | None = None) -> Element:
    return (spec or x.spec).mul(x, y)


def commutator(x: Element, y: Element, spec: AlgebraSpec | None = None) -> Element:
    return (spec or x.spec).commutator(x, y)


def apply_op_poly(p: OpPoly, f: Element, x: Element, spec: AlgebraSpec | None = None) -> Element:
    """Evaluate ``p(ad f, l_f)`` on ``x``.

    ``ad f`` and left multiplication by ``f`` commute, so the order in which
    the two slots are applied does not matter.
    """
    spec = spec or f.spec
    spec._check(f)
    spec._check(x)
    top_b = max((b for _, b in p.terms), default=0)
    lpow = [x]
    for _ in range(top_b):
        lpow.append(spec.mul(f, lpow[-1]))
    result = spec.zero()
    for a in range(p.degree_S, -1, -1):
        if not result.is_zero():
            result = spec.commutator(f, result)
        for (a2, b), c in p.terms.items():
            if a2 == a:
                result = result + c * lpow[b]
    return result


def degree_standard(x: Element, spec: AlgebraSpec | None = None) -> int:
    """Weighted degree with ``u, v, w`` of weights ``4, 2n-2, 2n``."""
    spec = spec or x.spec
    if x.is_zero():
        raise ZeroElementError("the zero element has no degree")
    n = spec.n
    return max(4 * i + (2 * n - 2) * j + 2 * n * k for i, j, k in x.terms)


def _limit_key(m):
    i, j, k = m
    return LimitDegree(j + k, 2 * i + k)


def degree_limit(x: Element) -> LimitDegree:
    """Lex-maximal ``(j + k, 2i + k)`` over the monomials of a D-element."""
    if x.spec.kind != "D":
        raise ValueError("the limit filtration is defined on D-algebras")
    if x.is_zero():
        raise ZeroElementError("the zero element has no degree")
    return max(_limit_key(m) for m in x.terms)


def leading_term(x: Element):
    """``(monomial, coefficient)`` attaining :func:`degree_limit`."""
    deg = degree_limit(x)
    hits = [m for m in x.terms if _limit_key(m) == deg]
    assert len(hits) == 1, "limit-graded pieces are one-dimensional"
    return hits[0], x.terms[hits[0]]


def standard_symbol(x: Element):
    """Top standard-degree part of ``x`` as ``{(i, j, k): coefficient}``."""
    d = degree_standard(x)
    n = x.spec.n
    return {m: c for m, c in x.terms.items()
            if 4 * m[0] + (2 * n - 2) * m[1] + 2 * n * m[2] == d}


def center_element(spec: AlgebraSpec, Q: Poly) -> Element:
    """``Omega = Q(U) + U V^2 + W^2 - 2 W V - gamma V`` in ``H(P, gamma)``."""
    if spec.kind != "H":
        raise ValueError("center_element expects an H-algebra")
    if Q.degree != spec.n or Q.lc() != 1 or not qp_defect(Q, spec.P).is_zero():
        raise ValueError(f"Q={Q} does not match P={spec.P}")
    u, v, w = spec.gens()
    return (spec.poly_u(Q) + u * v * v + w * w - 2 * (w * v) - spec.gamma * v)


def is_central(x: Element, spec: AlgebraSpec | None = None) -> bool:
    """True iff ``x`` commutes with ``u`` and ``v`` (hence with ``w = [u,v]/2``)."""
    spec = spec or x.spec
    return spec.commutator(x, spec.u).is_zero() and spec.commutator(x, spec.v).is_zero()


# ---------------------------------------------------------------------------
# literal rewriting and the critical-pair check
# ---------------------------------------------------------------------------

def rewrite_rules(spec: AlgebraSpec):
    """The directed rules as ``{pair: {word: coefficient}}``."""
    p_words = {"u" * a: c for a, c in enumerate(spec.P.coeffs) if not c.is_zero()}
    rules = {
        "vu": {"uv": ONE, "w": Scalar(-2)},
        "wu": {"uw": ONE, "uv": Scalar(2), "w": Scalar(-2), "": -spec.gamma},
        "wv": _merge({"vw": ONE, "vv": -ONE}, p_words, -ONE),
    }
    if spec.kind == "D":
        q_words = {"u" * a: c for a, c in enumerate(spec.Q.coeffs) if not c.is_zero()}
        rhs = _merge({"uvv": -ONE, "vw": Scalar(2), "vv": Scalar(-2), "v": spec.gamma}, q_words, -ONE)
        rules["ww"] = _merge(rhs, p_words, Scalar(-2))
    return {k: _clean(v) for k, v in rules.items()}


def _merge(base, extra, c):
    out = dict(base)
    for w, x in extra.items():
        out[w] = out.get(w, ZERO) + c * x
    return out


def _violations(word, rules):
    return [p for p in range(len(word) - 1) if word[p:p + 2] in rules]


def _apply_at(word, pos, rules):
    rhs = rules[word[pos:pos + 2]]
    return {word[:pos] + w + word[pos + 2:]: c for w, c in rhs.items()}


def rewrite_words(terms, spec: AlgebraSpec, strategy: str = "leftmost", rules=None) -> Element:
    """Reduce ``{word: coefficient}`` to normal form by string rewriting.

    Rules are applied at the leftmost (or rightmost) violating pair until no
    rule applies.  Independent of :meth:`AlgebraSpec.mul`.
    """
    rules = rules if rules is not None else rewrite_rules(spec)
    pending = {w: as_scalar(c) for w, c in dict(terms).items()}
    done = {}
    pattern = re.compile(r"^u*v*w*$")
    while pending:
        word, c = pending.popitem()
        if c.is_zero():
            continue
        viol = _violations(word, rules)
        if not viol:
            if not pattern.match(word):
                raise ValueError(f"word {word!r} contains letters other than u, v, w")
            mono = (word.count("u"), word.count("v"), word.count("w"))
            done[mono] = done.get(mono, ZERO) + c
            continue
        pos = viol[0] if strategy == "leftmost" else viol[-1]
        for w2, c2 in _apply_at(word, pos, rules).items():
            pending[w2] = pending.get(w2, ZERO) + c * c2
        if len(pending) + len(done) > MAX_TERMS:
            raise TermBlowupError("term count exceeded during rewriting")
    return Element(spec, _clean(done))


class DiamondReport(NamedTuple):
    overlap: str
    left: Element
    right: Element

    @property
    def resolved(self) -> bool:
        return self.left == self.right


def check_diamond(spec: AlgebraSpec, rules=None):
    """Resolve every critical overlap both ways.

    Returns one :class:`DiamondReport` per overlap word; a failure is
    reported through ``resolved`` rather than raised.
    """
    rules = rules if rules is not None else rewrite_rules(spec)
    overlaps = ["wvu"]
    if "ww" in rules:
        overlaps += ["wwu", "wwv", "www"]
    reports = []
    for word in overlaps:
        first = _apply_at(word, 0, rules)
        second = _apply_at(word, 1, rules)
        reports.append(DiamondReport(word,
                                     rewrite_words(first, spec, rules=rules),
                                     rewrite_words(second, spec, rules=rules)))
    return reports
