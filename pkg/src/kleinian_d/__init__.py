"""Exact arithmetic in the noncommutative deformations H(P, gamma) and D(Q, gamma)
of type-D Kleinian singularities, with their isomorphism classification.

All coefficients live in the Gaussian rationals Q(i), so every identity is
checked as an exact equality.
"""

from .scalar import I, ONE, ZERO, NotASquareError, Scalar, ScalarDivisionError, as_scalar, sqrt
from .parsing import ParseError
from .poly import (InvariantViolation, OpPoly, Poly, alpha_beta, f_poly, f_product, pq_polys,
                   qp_defect, rho_mu, solve_p_from_q, solve_q_from_p)
from .ncalg import (AlgebraSpec, DiamondReport, Element, LimitDegree, SpecMismatchError,
                    TermBlowupError, ZeroElementError, apply_op_poly, center_element,
                    check_diamond, commutator, degree_limit, degree_standard, is_central,
                    leading_term, make_spec, mul, reduce, rewrite_rules, rewrite_words)
from .poisson import (CPoly, LIMIT_PHI, bracket_gr_limit, bracket_phi, hamiltonian_iterate,
                      kleinian_phi, principal_symbol, semiclassical_check)
from .iso import (AutomorphismGroup, DParams, HVerdict, IsoWitness, ModuliPoint,
                  automorphism_group, is_isomorphic_D, is_isomorphic_H, is_isomorphic_H_via_D,
                  moduli_invariants, normalize_monic, orbit, psi, psi_inv, theta,
                  verify_homomorphism)

__version__ = "0.1.0"
