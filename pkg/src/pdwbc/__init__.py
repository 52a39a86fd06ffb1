"""Exact partition and one-point functions of the rational six-vertex model with partial domain walls."""
from .errors import (
    DegenerateInputError,
    DimensionError,
    DomainError,
    PdwbcError,
    PoleError,
    ResourceGuardError,
    WindowError,
)
from .lattice_oracle import LatticeSpec, g_down_bruteforce, mc_sample_exits, z_bruteforce, z_exitpattern_bruteforce
from .onepoint import g_finite_N, g_residue_homogeneous, g_series, g_value
from .partition_functions import partition_function, z_foda_wheeler, z_homogeneous, z_kostov, z_partial_homogeneous
from .scalar import Poly, TruncSeries, as_scalar, det_exact

__version__ = "0.1.0"
