"""Numerical tools around spectral sets, the numerical range and the
(1 + sqrt 2) functional-calculus lemma."""

from .calculus import (CalculusContext, calibrate, cauchy_transform_eval,
                       cauchy_transform_of_matrix, cauchy_transform_taylor, func_of_matrix,
                       realpart_measure_check)
from .funcspace import Piece, PiecewiseHolo, add, evaluate, multiply, scale, validate
from .geometry import (BoundaryQuadrature, Disk, Domain, Ellipse, area, boundary_quadrature,
                       contains, diameter, inflate, sup_norm)
from .lemma import (LemmaReport, closed_form_fT_two_disk, crouzeix_palencia_check, delyon_bound,
                    k_bound, okubo_ando_check, two_disk_domain, two_disk_g, two_disk_h,
                    proof_identity_residual, sharpness_demo, unital_antilinear_audit,
                    verify_conditions)
from .numrange import (NRBoundary, convex_domain_contains_W, enclosing_disk,
                       numerical_range_boundary, support_point)
from .optimize import FamilyConfig, OptResult, SearchConfig, estimate_constant, random_ensemble_sweep

__version__ = "0.1.0"
