"""Skew polynomial arithmetic and Koetter-Nielsen-Hoeholdt interpolation
over free modules of skew polynomials, with a divide-and-conquer solver."""

from .field import (DivisionByZero, FieldCtx, FieldError, NotPrime, Reducible, field_make)
from .functionals import (FunctionalSet, MinPolyTree, build_minpoly_tree, eval_functional,
                          eval_x_shift, make_functionals, min_vector_range)
from .knh import knh_interpolate, knh_solve
from .knh_fast import (SolveOptions, VerificationFailed, interpolate_point, interpolate_tree,
                       solve_interpolation, verify_basis)
from .module import (SkewMat, SkewVec, identity, is_wowpb, mat_mul, mat_mod_r, vec, vec_mod_r,
                     wdeg, wdeg_pivot)
from .rank_codes import (DecodingFailure, GabidulinCode, gabidulin_decode, gabidulin_encode,
                         random_rank_error)
from .ring import (SkewPoly, annihilator, fast_arithmetic, gcrd_lclm, lclm, left_divmod,
                   min_poly_set, op_eval, rem_eval, right_divmod, rmod, skew_mul)

__version__ = "0.1.0"
