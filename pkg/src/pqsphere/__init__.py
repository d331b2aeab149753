"""Spherical functions of SO0(p,q) via two-variable hypergeometric series,
an independent quadrature oracle, and surface-delta derivative transforms."""

from .errors import (AccuracyError, BudgetError, ConvergenceError, PoleError,
                     SingularMatrixError)
from .special import (SeriesValue, appell_f2_terminating, appell_f2_unit,
                      gauss_2f1, gegenbauer, hyp3f2_unit, ln_gamma, pochhammer)
from .horn import (BalanceReport, HornSeriesSpec, dump_spec, evaluate_horn,
                   load_spec, make_spec, shell_terms, spec_2f1, spec_from_dict,
                   spec_to_dict, validate_spec)
from .spherical import (AssocIndex, GroupSignature, RepLabel, SpecialGroup,
                        assoc_horn, assoc_horn_spec, assoc_series, index_map,
                        lambda_kernel, lambda_kernel_angles, lambda_power,
                        norm_constant_a, norm_constant_integral,
                        principal_sigma, zonal_horn, zonal_horn_spec,
                        zonal_horn_spec_symmetric, zonal_q1, zonal_series,
                        zonal_special)
from .quadrature import (QuadratureRule, assoc_oracle, axis_mass,
                         expansion_residual, make_rule, zonal_oracle)
from .deltas import (MultiIndex, PackingMatrix, PointwiseMatrix,
                     compose_transforms, enumerate_packings,
                     jacobi_formula_check, packing_count,
                     packing_multiplicity, transform_coefficients,
                     transform_index_form)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
