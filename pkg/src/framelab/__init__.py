"""Quantitative redundancy of finite frames.

Compute upper/lower redundancy (the frame bounds of the normalized frame),
the canonical-Parseval variant, and exact combinatorial certificates: the
fewest linearly independent sets and the most disjoint spanning sets a
frame splits into.
"""

from .errors import (
    ConvergenceError,
    DimensionMismatchError,
    FrameError,
    FrameFormatError,
    NotSpanningError,
    ZeroFrameError,
)
from .frames import (
    DEFAULT_TOLERANCES,
    Frame,
    FrameBounds,
    HermitianOperator,
    Tolerances,
    analysis,
    canonical_dual,
    canonical_parseval,
    classify,
    dump_frame,
    frame_bounds,
    frame_operator,
    load_frame,
    reconstruct,
    strip_and_normalize,
    synthesis,
)
from .redundancy import (
    alt_redundancy_at,
    alt_redundancy_bounds,
    additivity_check,
    check_invariance,
    is_uniform,
    redundancy_at,
    redundancy_bounds,
)
from .matroid import (
    LinearMatroid,
    brute_force_max_packing,
    brute_force_min_partition,
    max_disjoint_spanning_sets,
    min_independent_partition,
    projection_duality_check,
)
from .desiderata import desiderata_audit
from .truncation import run_truncation_study

__version__ = "0.1.0"
