"""Command-line front end.  Every verb prints one JSON object on stdout.

Exit status: 0 on success, 2 on malformed input or a violated
precondition, 1 when ``verify`` finds a failing check.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import iso
from .checks import run_acceptance
from .ncalg import (check_diamond, center_element, degree_limit, degree_standard, is_central,
                    leading_term, make_spec)
from .parsing import ParseError
from .poisson import bracket_phi, kleinian_phi, principal_symbol, semiclassical_check
from .poly import Poly, solve_p_from_q, solve_q_from_p
from .scalar import NotASquareError, parse_scalar


class UsageError(ValueError):
    """A required flag is missing."""


def _need(args, name):
    value = getattr(args, name)
    if value is None:
        raise UsageError(f"--{name.replace('_', '-')} is required for {args.verb}")
    return value


def _poly(text):
    return Poly.parse(text)


def _gamma(args, name="gamma"):
    text = getattr(args, name)
    return parse_scalar(text if text is not None else "0")


def _spec(args):
    kind = args.algebra.upper()
    if kind == "D":
        return make_spec("D", _poly(_need(args, "q")), _gamma(args))
    return make_spec("H", _poly(_need(args, "p")), _gamma(args))


def _d_params(args, q="q", gamma="gamma"):
    params, xi = iso.normalize_monic(_poly(_need(args, q)), _gamma(args, gamma))
    return params


def _verdict(witness, moduli):
    return {
        "isomorphic": witness is not None,
        "case": None,
        "witness": witness.to_json() if witness is not None else None,
        "moduli": [str(x) for x in moduli.scalars()],
    }


def cmd_derive_p(args):
    return {"p": solve_p_from_q(_poly(_need(args, "q"))).to_text()}


def cmd_derive_q(args):
    return {"q": solve_q_from_p(_poly(_need(args, "p"))).to_text()}


def cmd_reduce(args):
    spec = _spec(args)
    return {"element": spec.reduce(_need(args, "expr")).to_text()}


def cmd_commutator(args):
    spec = _spec(args)
    x = spec.reduce(_need(args, "expr"))
    y = spec.reduce(_need(args, "expr2"))
    return {"element": spec.commutator(x, y).to_text()}


def cmd_center(args):
    P = _poly(_need(args, "p"))
    spec = make_spec("H", P, _gamma(args))
    Q = solve_q_from_p(P)
    omega = center_element(spec, Q)
    return {"q": Q.to_text(), "omega": omega.to_text(), "central": is_central(omega)}


def cmd_is_central(args):
    spec = _spec(args)
    return {"central": is_central(spec.reduce(_need(args, "expr")))}


def cmd_diamond(args):
    reports = check_diamond(_spec(args))
    return {
        "resolved": all(r.resolved for r in reports),
        "overlaps": [{"overlap": r.overlap, "resolved": r.resolved,
                      "left": r.left.to_text(), "right": r.right.to_text()} for r in reports],
    }


def cmd_degree(args):
    spec = _spec(args)
    x = spec.reduce(_need(args, "expr"))
    out = {"standard": degree_standard(x)}
    if spec.kind == "D":
        (i, j, k), c = leading_term(x)
        out["limit"] = list(degree_limit(x))
        out["leading_term"] = spec.monomial(i, j, k, c).to_text()
    return out


def cmd_iso_d(args):
    p1 = _d_params(args)
    p2 = _d_params(args, "q2", "gamma2")
    return _verdict(iso.is_isomorphic_D(p1, p2), iso.moduli_invariants(p1))


def cmd_iso_h(args):
    P1, P2 = _poly(_need(args, "p")), _poly(_need(args, "p2"))
    g1, g2 = _gamma(args), _gamma(args, "gamma2")
    verdict = iso.is_isomorphic_H(P1, g1, P2, g2)
    witness = iso.is_isomorphic_H_via_D(P1, g1, P2, g2)
    if verdict.isomorphic != (witness is not None):
        raise AssertionError("closed-form verdict disagrees with the orbit search")
    out = _verdict(witness, iso.moduli_invariants(iso.h_to_d(P1, g1)))
    out["case"] = verdict.case
    return out


def cmd_aut(args):
    p = _d_params(args)
    group = iso.automorphism_group(p)
    out = {"group": group.label, "order": group.order}
    if p.n == 3:
        out["stabilizer"] = iso.stabilizer(p)
    return out


def cmd_orbit(args):
    p = _d_params(args)
    return {"orbit": [{"q": q.Q.to_text(), "gamma": str(q.gamma), "witness": w.name}
                      for q, w in iso.orbit(p)]}


def cmd_moduli(args):
    p = _d_params(args)
    return {"moduli": [str(x) for x in iso.moduli_invariants(p).scalars()]}


def cmd_semiclassical(args):
    spec = _spec(args)
    x = spec.reduce(_need(args, "expr"))
    y = spec.reduce(_need(args, "expr2"))
    br = bracket_phi(principal_symbol(x), principal_symbol(y), kleinian_phi(spec.n))
    return {"holds": semiclassical_check(spec, x, y), "bracket": br.to_text()}


def cmd_verify(args):
    results = run_acceptance(seed=args.seed, max_degree=args.max_degree,
                             echo=lambda r: print(r.line(), file=sys.stderr, flush=True))
    return {
        "passed": sum(r.passed for r in results),
        "failed": sum(not r.passed for r in results),
        "seed": args.seed,
        "checks": [{"index": r.index, "name": r.name, "passed": r.passed,
                    "detail": r.detail, "seconds": round(r.seconds, 3)} for r in results],
    }


VERBS = {
    "derive-p": (cmd_derive_p, "solve P from a monic Q (--q)"),
    "derive-q": (cmd_derive_q, "solve Q from P (--p), zero constant term"),
    "reduce": (cmd_reduce, "normal form of --expr"),
    "commutator": (cmd_commutator, "[--expr, --expr2]"),
    "center": (cmd_center, "central element of H(--p, --gamma)"),
    "is-central": (cmd_is_central, "is --expr central"),
    "diamond": (cmd_diamond, "resolve every overlap of the rewriting rules"),
    "degree": (cmd_degree, "standard and limit degree of --expr"),
    "iso-d": (cmd_iso_d, "is D(--q, --gamma) isomorphic to D(--q2, --gamma2)"),
    "iso-h": (cmd_iso_h, "is H(--p, --gamma) isomorphic to H(--p2, --gamma2)"),
    "aut": (cmd_aut, "automorphism group of D(--q, --gamma)"),
    "orbit": (cmd_orbit, "parameters reachable from (--q, --gamma)"),
    "moduli": (cmd_moduli, "separating invariants of (--q, --gamma)"),
    "semiclassical": (cmd_semiclassical, "compare the symbol of [x, y] with the Poisson bracket"),
    "verify": (cmd_verify, "run the acceptance suite"),
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kleinian-d",
        description="Exact computations in the deformations H(P, gamma) and D(Q, gamma).",
        epilog="verbs: " + "; ".join(f"{k}: {v[1]}" for k, v in VERBS.items()),
    )
    parser.add_argument("verb", choices=sorted(VERBS))
    parser.add_argument("--algebra", choices=["d", "h", "D", "H"], default="d")
    parser.add_argument("--q", help="polynomial in t, e.g. 't^3+2*t^2-1'")
    parser.add_argument("--p", help="polynomial in t, e.g. '3*t^2+8*t+8'")
    parser.add_argument("--gamma", help="scalar in Q(i), e.g. '1/2-3*i'")
    parser.add_argument("--expr", help="word in u, v, w (U, V, W for H)")
    parser.add_argument("--expr2")
    parser.add_argument("--q2")
    parser.add_argument("--p2")
    parser.add_argument("--gamma2")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--max-degree", type=int, default=20)
    return parser


def run(argv=None) -> int:
    args = build_parser().parse_args(argv)
    fn = VERBS[args.verb][0]
    try:
        result = fn(args)
    except (ParseError, UsageError, NotASquareError, ValueError) as exc:
        print(json.dumps({"error": type(exc).__name__, "message": str(exc)}), file=sys.stderr)
        return 2
    print(json.dumps(result, ensure_ascii=False))
    if args.verb == "verify" and result["failed"]:
        return 1
    return 0


def main():
    sys.exit(run())
