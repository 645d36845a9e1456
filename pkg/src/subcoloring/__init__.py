"""Subcoloring of unit disk, delta-disk and general disk graphs."""

from __future__ import annotations

from .decompose import (
    DecompositionTree,
    color_disk_approx,
    color_disk_log3,
    decompose,
    horizontal_median_separator,
    transform_to_delta,
    vertical_split_linear,
)
from .delta import (
    DeltaRepresentation,
    delta_color_approx,
    delta_color_log,
    delta_separator,
    external_layers,
    validate_delta,
)
from .errors import (
    EmbeddingError,
    InputError,
    InvariantViolation,
    ParseError,
    SearchBudgetExceeded,
    SizeGuardError,
    SubcoloringError,
)
from .generators import (
    GadgetSpec,
    IntervalSet,
    bc_graph,
    gen_bc,
    gen_gadget,
    gen_interval_to_delta,
    gen_random_delta,
    gen_random_disks,
    gen_random_unit,
)
from .geometry import Disk, DiskInstance, Point, disk_contains_disk, disks_intersect, point_in_disk
from .graph import (
    Coloring,
    IntersectionGraph,
    build_intersection_graph,
    find_induced_p3,
    is_cluster_graph,
    validate_subcoloring,
)
from .io import parse_coloring, parse_instance, render_svg, serialize_coloring, serialize_instance
from .solver import decide_k_subcoloring, exact_subchromatic
from .unit import approx3_unit, color_unit_7, hex_cell_of, isbell_color, region_of

__version__ = "0.1.0"
