"""Temporal-stability metrics.

Three scalars per sequence and region, all built from forward temporal
differences of the 2-D image-plane coordinates:

* ``E_v``     motion energy, mean first-difference magnitude
* ``J_acc``   acceleration jitter, mean second-difference magnitude
* ``J_jerk``  jerk jitter, mean third-difference magnitude

A differencing window that touches any c = 0 sample of a joint is excluded
from the mean; 3-D schemes contribute x and y only.  When the sequence
declares an image size, coordinates are divided by the image diagonal first
so corpora with different resolutions stay comparable.  Corpus aggregation
reports median and quartiles (linear interpolation) scaled by 100.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .container import PoseSequence, validate_sequence
from .errors import EmptyInput, NoValidWindows, TooShort
from .schemes import KeypointScheme, Region, region_indices

METRIC_NAMES = ("E_v", "J_acc", "J_jerk")
METRIC_ORDER = {"E_v": 1, "J_acc": 2, "J_jerk": 3}

DEFAULT_REGIONS = (Region.ALL_EXCL_LEGS, Region.HANDS, Region.FACE)


@dataclass(frozen=True)
class StabilitySummary:
    """Per-sequence metric values for one region (unscaled).

    A metric is ``None`` when the sequence is too short for its stencil or
    no window survives the missing-data rule.  The two counts describe the
    first-difference pass: joints with at least one valid window, and the
    total number of valid windows.
    """

    sequence_id: str
    region: Region
    E_v: Optional[float]
    J_acc: Optional[float]
    J_jerk: Optional[float]
    valid_joint_count: int
    valid_window_count: int

    def value(self, metric: str) -> Optional[float]:
        return {"E_v": self.E_v, "J_acc": self.J_acc, "J_jerk": self.J_jerk}[metric]


@dataclass(frozen=True)
class CorpusAggregate:
    region: Region
    metric: str
    median: float
    q1: float
    q3: float
    n_sequences: int
    scale_applied: bool = True


def finite_difference(trajectory, order: int) -> np.ndarray:
    """Forward-difference stencil of one trajectory (length F, any point
    dimensionality); returns F - order difference vectors."""
    traj = np.asarray(trajectory, dtype=np.float64)
    if traj.ndim != 2:
        raise ValueError("trajectory must be a (frames, dims) array")
    if order not in (1, 2, 3):
        raise ValueError("order must be 1, 2 or 3")
    if traj.shape[0] < order + 1:
        raise TooShort(
            f"order-{order} difference needs {order + 1} frames, "
            f"got {traj.shape[0]}")
    return np.diff(traj, n=order, axis=0)


def _plane_coords(seq: PoseSequence, indices) -> np.ndarray:
    xy = seq.coords[:, indices, :2]
    if seq.image_size is not None:
        w, h = seq.image_size
        xy = xy / float(np.hypot(w, h))
    return xy


def sequence_metric(
    seq: PoseSequence,
    scheme: KeypointScheme,
    region: Region,
    metric: str,
) -> float:
    """One unscaled stability scalar: the mean difference magnitude over all
    (joint, window) pairs whose samples all have c > 0."""
    if metric not in METRIC_ORDER:
        raise ValueError(f"unknown metric {metric!r}")
    validate_sequence(seq, scheme)
    order = METRIC_ORDER[metric]
    if seq.frame_count < order + 1:
        raise TooShort(
            f"{metric} needs {order + 1} frames, sequence has {seq.frame_count}")
    idx = region_indices(scheme, region)
    if not idx:
        raise NoValidWindows(f"region {region} selects no keypoints")
    xy = _plane_coords(seq, idx)
    present = seq.conf[:, idx] > 0
    diffs = np.diff(xy, n=order, axis=0)
    norms = np.linalg.norm(diffs, axis=2)
    windows = np.lib.stride_tricks.sliding_window_view(present, order + 1, axis=0)
    valid = windows.all(axis=2)
    if not valid.any():
        raise NoValidWindows(
            f"every {metric} window touches a missing sample")
    return float(norms[valid].mean())


def aggregate(values, region: Region | None = None, metric: str = "") -> CorpusAggregate:
    """Median and quartiles (linear interpolation) of per-sequence scalars,
    scaled by 100 for reporting."""
    vals = np.asarray(list(values), dtype=np.float64)
    if vals.size == 0:
        raise EmptyInput("no values to aggregate")
    q1, med, q3 = np.percentile(vals, [25.0, 50.0, 75.0], method="linear")
    return CorpusAggregate(
        region=region,
        metric=metric,
        median=float(med) * 100.0,
        q1=float(q1) * 100.0,
        q3=float(q3) * 100.0,
        n_sequences=int(vals.size),
    )


def _sequence_summary(
    seq: PoseSequence,
    scheme: KeypointScheme,
    region: Region,
    sequence_id: str,
) -> StabilitySummary:
    values: dict[str, Optional[float]] = {}
    for metric in METRIC_NAMES:
        try:
            values[metric] = sequence_metric(seq, scheme, region, metric)
        except (TooShort, NoValidWindows):
            values[metric] = None

    # first-difference validity diagnostics
    idx = region_indices(scheme, region)
    present = seq.conf[:, idx] > 0
    if seq.frame_count >= 2 and idx:
        pair_valid = present[:-1] & present[1:]
        joint_count = int((pair_valid.any(axis=0)).sum())
        window_count = int(pair_valid.sum())
    else:
        joint_count = window_count = 0
    return StabilitySummary(
        sequence_id=sequence_id,
        region=Region(region),
        E_v=values["E_v"],
        J_acc=values["J_acc"],
        J_jerk=values["J_jerk"],
        valid_joint_count=joint_count,
        valid_window_count=window_count,
    )


def stability_report(
    seqs: Sequence[PoseSequence],
    scheme: KeypointScheme,
    regions: Sequence[Region] = DEFAULT_REGIONS,
    sequence_ids: Sequence[str] | None = None,
) -> tuple[list[CorpusAggregate], list[StabilitySummary]]:
    """Corpus aggregates (one per region and metric) plus per-sequence rows.

    ``sequence_ids`` labels the rows; it defaults to the positional index.
    A metric that no sequence supports (all rows ``None``) still gets its
    aggregate row, with NaN quartiles and ``n_sequences`` 0.
    """
    if not seqs:
        raise EmptyInput("no sequences")
    if sequence_ids is None:
        sequence_ids = [str(i) for i in range(len(seqs))]
    if len(sequence_ids) != len(seqs):
        raise ValueError("sequence_ids must parallel seqs")
    summaries = [
        _sequence_summary(seq, scheme, Region(region), sid)
        for seq, sid in zip(seqs, sequence_ids)
        for region in regions
    ]
    aggregates = []
    for region in regions:
        region = Region(region)
        for metric in METRIC_NAMES:
            values = [
                s.value(metric)
                for s in summaries
                if s.region is region and s.value(metric) is not None
            ]
            if values:
                aggregates.append(aggregate(values, region=region, metric=metric))
            else:
                nan = float("nan")
                aggregates.append(CorpusAggregate(
                    region=region, metric=metric,
                    median=nan, q1=nan, q3=nan, n_sequences=0))
    return aggregates, summaries
