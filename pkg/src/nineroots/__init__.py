"""Exact-arithmetic verification of rank-nine rational-curve configurations
on Enriques surfaces in characteristic two: root-lattice computations, Tate's
algorithm at residue characteristic two, Mordell-Weil heights, quadratic
twist families, and integral models."""

from .fields import GF2, GF2Ext, PrimeField, QQ
from .lattice import (GramLattice, LatticeVector, RootType, classify_root_lattice,
                      dual_vector, gram_of, orthogonal_complement,
                      primitive_closure, quotient_group, root_sublattice_embeds,
                      short_vectors)
from .linalg import smith_normal_form
from .poly import FunctionField, MultiPoly, RatFunc, is_identically_zero, parse_poly, parse_ratfunc
from .factor import factor_univariate
from .weierstrass import (SectionPoint, WeierstrassModel, find_integral_sections,
                          on_curve, point_add, point_neg, solve_y_for_x)
from .tate import FiberDatum, Place, fiber_configuration, tate_local
from .heights import height_pairing, ns_discriminant, section_height
from .enriques import (compatible_configurations, lemma_3no_check, num_s_lattice,
                       verify_table1_row)
from .suites import SuiteReport, report_emit, run_suite

__version__ = "0.1.0"
