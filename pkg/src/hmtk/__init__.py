"""Norms of planar harmonic polynomial maps on the unit disk.

Bloch seminorm, ``BMO_p`` norms, Lipschitz constants against majorants,
circle and disk p-means, the Poisson gap, and executable checks of the
inequalities relating them.
"""

__version__ = "0.1.0"

from .core import (AffineChart, DerivativeBundle, DiskWindow, HarmonicPolynomial, area_mean,
                   boundary_distance, chart_compose, derivatives, evaluate, hyperbolic_distance)
from .errors import ConvergenceError, DomainError, FieldError, HMTKError, PreconditionError
from .kernels import BACKEND
from .majorant import (LipschitzFit, Majorant, PairSampler, is_regular, is_valid_majorant,
                       lipschitz_fit, regularity_condition_I, regularity_condition_II)
from .norms import (NormReport, bloch_seminorm, bmo_norm, center_oscillation, circle_mean_Mp,
                    disk_mean_Ip, dMp_dr_green, green_identity_check, norm_report,
                    poisson_quadratic)
from .quad import (QuadratureSpec, SupSearchSpec, circle_integral, disk_integral,
                   finite_difference, sup_over_disk)

__all__ = [
    "AffineChart",
    "area_mean",
    "BACKEND",
    "bloch_seminorm",
    "bmo_norm",
    "boundary_distance",
    "center_oscillation",
    "chart_compose",
    "circle_integral",
    "circle_mean_Mp",
    "ConvergenceError",
    "DerivativeBundle",
    "derivatives",
    "disk_integral",
    "disk_mean_Ip",
    "DiskWindow",
    "dMp_dr_green",
    "DomainError",
    "evaluate",
    "FieldError",
    "finite_difference",
    "green_identity_check",
    "HarmonicPolynomial",
    "HMTKError",
    "hyperbolic_distance",
    "is_regular",
    "is_valid_majorant",
    "lipschitz_fit",
    "LipschitzFit",
    "Majorant",
    "norm_report",
    "NormReport",
    "PairSampler",
    "poisson_quadratic",
    "PreconditionError",
    "QuadratureSpec",
    "regularity_condition_I",
    "regularity_condition_II",
    "sup_over_disk",
    "SupSearchSpec",
]
