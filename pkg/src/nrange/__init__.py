"""C-numerical and alpha-numerical ranges of operators in tracial von Neumann algebras."""

__version__ = "0.1.0"

from .kernels import BACKEND
from .eigfun import StepFunction, majorizes, pairing_integral, partial_integral, rearrange
from .spectral import RealDistribution, SpectralModel, quantile_step, real_part_distribution
from .convexgeom import ConvexRegion, SupportSample, contains, hausdorff, minkowski_combine, region_from_support
from .range_engine import (
    RangeReport,
    WeightSpec,
    compute_range,
    normal_range_exact,
    range_from_alpha_family,
    selfadjoint_range,
    support_value,
)
from .catalog import circular_radius, closed_form, haar_radius
