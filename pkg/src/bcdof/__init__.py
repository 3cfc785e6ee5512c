"""Exact DoF regions and linear precoding verification for the two-user MIMO
broadcast channel with private and common messages under hybrid CSIT."""

from .core import (
    ALL_CSIT, COORD_NAMES, D0, D1, D2, ORIGIN, AntennaConfig, CsitModel,
    DofPoint, Halfspace, MessageSet, Region, RegionUnboundedError, as_fraction,
    contains, eliminate_redundant, region_equals, slice_region, vertices,
)
from .catalog import (
    Corner, RegionLabel, SchemeKind, bc_cm_region, bc_dm_region, bc_pm_region,
    catalog_region, corner_catalog, devolve_outer,
)
from .linalg import (
    DEFAULT_ENTRY_BOUND, LiftedChannel, Matrix, block_diag, float_rank,
    hstack, lift_channels, nullspace_basis, rank, sample_generic, spawn_seed,
    vstack,
)
from .schemes import (
    CornerTask, InfeasiblePointError, Precoder, SchemeTrace, SimulationReport,
    TimeSharePlan, TimeShareComponent, UnsupportedSchemeError, achieve_point,
    build_corner_precoder, check_decodability, dm_nd_parameters, scheme_dm_nd,
    scheme_dm_nd_precoder, scheme_dp_np_corner, scheme_np_pm, scheme_pp,
    scheme_trivial, simulate, simulate_corner, simulate_plan, simulate_precoder,
)
from .rankbounds import (
    BLOCK_PRESETS, PRECODER_FAMILIES, CanonicalizationLog, block_rank_check,
    canonicalize, converse_chain_check, rank_ratio_check,
)

__version__ = "0.1.0"
