"""Exact Weil/projective heights, certified lower-bound constants for
multihomogeneous polynomials with exceptional index sets, and desk-scale
extremal search."""

from .algebraic import AlgebraicNumber, DegreeCapExceeded, as_algebraic
from .bounds import (BoundConstants, OptimalWeight, SegmentMinSolution,
                     bound_constants, lambda_bound, optimal_b, rho,
                     segment_min, xi_peak)
from .factor import factor_over_rationals, is_irreducible
from .forms import (ExceptionalSet, MultihomogeneousPolynomial, WeightScheme,
                    c_max, c_value, degree_data, delta, reciprocal_transform,
                    validate, weight_scheme)
from .heights import (HeightValue, MultiProjectivePoint, mahler_measure,
                      point_log_height, rational_block_log_height,
                      weil_log_height)
from .intervals import Interval
from .polys import IntPolynomial, count_real_roots, parse_polynomial, squarefree_part
from .roots import RootBox, isolate_roots, refine_box
from .search import SearchSpace, SearchRecord, equality_hunt, min_height_survey
from .spotcheck import polydisk_spotcheck
from .verify import (CorollaryInstance, Verdict, check_hypotheses, evaluate,
                     schinzel_check, verify_corollary, verify_corollary_batch,
                     verify_theorem)

__version__ = "0.1.0"
