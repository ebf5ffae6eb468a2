"""Approximate Tukey depth through intersections of closed balls."""
from .data import (
    BallIndex,
    DataError,
    DataMatrix,
    DistanceStore,
    ball_contains,
    ball_radius,
    build_ball_index,
    index_for,
    load_csv,
    pairwise_distances,
)
from .depth import (
    AlphaLevel,
    AugmentationConfig,
    ContourLevels,
    DepthResult,
    LevelSet,
    MedianResult,
    ball_cardinality,
    contour_levels,
    external_point_depth,
    generate_artificial_points,
    level_set,
    median_from_index,
    required_cardinality,
    sample_depths,
    sample_point_depth,
    tukey_median,
)
from .augment import artificial_points, uniform_in_box, uniform_in_hull
from .bench import BenchRecord, bench_scaling
from .generators import GeneratorSpec, generate
from .hull import ContourSet, UnsupportedDimensionError, contours_from_level_sets, convex_hull_2d
from .oracle import (
    AccuracyReport,
    accuracy_report,
    depth_upper_bound,
    exact_depth,
    exact_depth_1d,
    exact_depth_2d,
)

__version__ = "0.1.0"
