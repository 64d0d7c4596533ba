"""Exact symbolic verifier for a quintic numerical Godeaux surface.

The package rebuilds the classical invariant quintic over the cubic field
Q(u), u^3 + u^2 - 1 = 0, certifies its four simple elliptic singularities
by an exact weighted-jet test, and replays the divisor-class and
intersection-number bookkeeping of the associated double-plane model on
declared lattices.  Every check is exact rational or number-field
arithmetic; floating point appears only in optional display output.
"""

__version__ = "0.1.0"

from .exactnum import (DivisionByZero, Interval, NumberFieldElement, Rational,
                       U, embed_real, nf, parse_element, render_element)
from .mpoly import (LinearMap4, MPoly, ProjectivePoint, binary_form_squarefree,
                    parse_poly, render_poly)
from .quintic import (Parameters, SurfaceBundle, build_parameters,
                      build_quintic, check_critical_points,
                      check_fixed_points, check_line_containment,
                      check_sigma_invariance, perturbed_parameters)
from .germlab import (Germ, GermError, TildeE8Certificate, germ_from_text,
                      localize, tilde_e8_certificate)
from .divcalc import (DeclaredLattice, DivisorClass, SurfaceInvariants,
                      adjunction_genus, blow_down, blowup_basis, class_equal,
                      double_cover_pullback, euler_bookkeeping, noether_check,
                      pair, parse_lattice, solve_class)
from .scenarios import (SUITES, VerificationReport, run_section2,
                        run_section3, run_section4, run_section6_identity,
                        run_suites)
