"""posebench: quality diagnostics for pose-keypoint sequences.

Loads skeletal keypoint sequences from heterogeneous estimator layouts into
one container and computes pose-quality diagnostics for sign-language
processing pipelines: temporal stability (motion energy and jitter),
missing-hand statistics with threshold sweeps, occlusion-candidate
screening, and the translation-input preprocessing pipeline.
"""

from . import errors
from .container import (
    Frame,
    PoseSequence,
    import_json,
    load_pose_file,
    read_pose,
    validate_sequence,
    write_pose,
    write_pose_file,
)
from .hands import (
    DEFAULT_THRESHOLDS,
    HandPresenceReport,
    hand_missing_stats,
    is_signing_frame,
    missing_fraction,
    pooled_sweep,
    threshold_sweep,
)
from .occlusion import (
    OcclusionCandidate,
    box_iou,
    component_bbox,
    screen_occlusions,
)
from .preprocess import (
    FeatureMatrix,
    drop_legs,
    dropped_scheme,
    flatten,
    mask_zero_fill,
    normalize,
    run_pipeline,
)
from .schemes import (
    KeypointScheme,
    Region,
    builtin_scheme_ids,
    get_scheme,
    landmark_index,
    load_scheme_file,
    parse_descriptor,
    region_indices,
    scheme_to_descriptor,
)
from .stability import (
    DEFAULT_REGIONS,
    METRIC_NAMES,
    CorpusAggregate,
    StabilitySummary,
    aggregate,
    finite_difference,
    sequence_metric,
    stability_report,
)

__version__ = "0.1.0"

__all__ = [
    "CorpusAggregate",
    "DEFAULT_REGIONS",
    "DEFAULT_THRESHOLDS",
    "FeatureMatrix",
    "Frame",
    "HandPresenceReport",
    "KeypointScheme",
    "METRIC_NAMES",
    "OcclusionCandidate",
    "PoseSequence",
    "Region",
    "StabilitySummary",
    "aggregate",
    "box_iou",
    "builtin_scheme_ids",
    "component_bbox",
    "drop_legs",
    "dropped_scheme",
    "errors",
    "finite_difference",
    "flatten",
    "get_scheme",
    "hand_missing_stats",
    "import_json",
    "is_signing_frame",
    "landmark_index",
    "load_pose_file",
    "load_scheme_file",
    "mask_zero_fill",
    "missing_fraction",
    "normalize",
    "parse_descriptor",
    "pooled_sweep",
    "read_pose",
    "region_indices",
    "run_pipeline",
    "scheme_to_descriptor",
    "screen_occlusions",
    "sequence_metric",
    "stability_report",
    "threshold_sweep",
    "validate_sequence",
    "write_pose",
    "write_pose_file",
]
