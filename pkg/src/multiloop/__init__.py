"""Exact computations with twisted multiloop and toroidal Lie algebras and their modules."""

from .scalars import CycScalar, root_of_unity, promote, parse_scalar, format_scalar
from .liealg import (RootSystem, ChevalleyAlgebra, IrrepModule, build_simple, build_irrep,
                     extended_roots, invariant_form, weyl_dimension)
from .grading import (FiniteOrderAut, GradingGroup, EigenspaceDecomposition, make_diagram_aut,
                      make_torus_aut, validate_tuple, eigenspace_decompose, check_lie_torus,
                      character_aut, outer_part, ghat_orbit)
from .toroidal import ToroidalAlgebra
from .repmod import (build_gln_module, build_evaluation, twist_module, choose_points,
                     build_graded_sum, build_realized, build_L_beta, weight_table,
                     highest_weight_space, check_integrable, iso_check, find_intertwiner)
from .verify import SweepConfig, SweepReport, sweep_jacobi, sweep_module, sweep_lietorus

__version__ = "0.1.0"
