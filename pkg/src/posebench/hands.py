"""Missing-hand statistics over signing frames.

A frame counts as a *signing frame* when at least one wrist sits vertically
above its elbow (image convention: y grows downward; pass ``y_up=True`` for
mathematical axes).  Within signing frames, a hand is *missing* at
threshold x when at least that fraction of its keypoints have c = 0.
Percentages for left / right / both share the signing-frame denominator.

The 100% column is read as ``missing_fraction >= 1.0``, i.e. strictly all
keypoints dropped; a hand that is completely absent therefore still counts
at threshold 1.0.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .container import Frame, PoseSequence, validate_sequence
from .errors import LandmarkMissing, NoSigningFrames
from .schemes import KeypointScheme, landmark_index

DEFAULT_THRESHOLDS = tuple(i / 10 for i in range(1, 11))

HANDS = ("left", "right")


@dataclass(frozen=True)
class HandPresenceReport:
    """Sweep result: one (pct_left, pct_right, pct_both) triple per threshold."""

    thresholds: tuple[float, ...]
    pct_left: tuple[float, ...]
    pct_right: tuple[float, ...]
    pct_both: tuple[float, ...]
    n_signing_frames: int
    n_total_frames: int

    def rows(self):
        """(hand, threshold, pct) rows in CSV emission order."""
        for hand, pcts in (("left", self.pct_left), ("right", self.pct_right),
                           ("both", self.pct_both)):
            for t, pct in zip(self.thresholds, pcts):
                yield hand, t, pct


def missing_fraction(frame: Frame, hand: str, scheme: KeypointScheme) -> float:
    """Fraction of this hand's keypoints with c = 0 in one frame."""
    if hand not in HANDS:
        raise ValueError(f"hand must be 'left' or 'right', got {hand!r}")
    idx = list(scheme.component(f"{hand}_hand"))
    return float(np.count_nonzero(frame.conf[idx] == 0)) / len(idx)


def is_signing_frame(
    frame: Frame,
    hand: str,
    scheme: KeypointScheme,
    y_up: bool = False,
) -> bool:
    """True when this hand's wrist is vertically above its elbow."""
    wrist = landmark_index(scheme, "wrist", hand)
    elbow = landmark_index(scheme, "elbow", hand)
    if frame.conf[wrist] == 0 or frame.conf[elbow] == 0:
        raise LandmarkMissing(
            f"{hand} wrist/elbow not detected; frame cannot be classified")
    wrist_y = float(frame.coords[wrist, 1])
    elbow_y = float(frame.coords[elbow, 1])
    return wrist_y > elbow_y if y_up else wrist_y < elbow_y


def _sweep_counts(seq: PoseSequence, scheme: KeypointScheme, y_up: bool):
    """Per-frame signing mask plus per-hand missing fractions.

    A hand whose wrist or elbow is undetected simply cannot vote for the
    frame being a signing frame.
    """
    validate_sequence(seq, scheme)
    signing = np.zeros(seq.frame_count, dtype=bool)
    for hand in HANDS:
        wrist = landmark_index(scheme, "wrist", hand)
        elbow = landmark_index(scheme, "elbow", hand)
        measurable = (seq.conf[:, wrist] > 0) & (seq.conf[:, elbow] > 0)
        if y_up:
            above = seq.coords[:, wrist, 1] > seq.coords[:, elbow, 1]
        else:
            above = seq.coords[:, wrist, 1] < seq.coords[:, elbow, 1]
        signing |= measurable & above
    fractions = {}
    for hand in HANDS:
        idx = list(scheme.component(f"{hand}_hand"))
        fractions[hand] = (seq.conf[:, idx] == 0).sum(axis=1) / len(idx)
    return signing, fractions["left"], fractions["right"]


def hand_missing_stats(
    seq: PoseSequence,
    scheme: KeypointScheme,
    threshold: float,
    y_up: bool = False,
) -> tuple[float, float, float]:
    """(pct_left, pct_right, pct_both) of signing frames at one threshold."""
    if not 0 < threshold <= 1:
        raise ValueError("threshold must lie in (0, 1]")
    signing, frac_left, frac_right = _sweep_counts(seq, scheme, y_up)
    n = int(signing.sum())
    if n == 0:
        raise NoSigningFrames("no frame passes the signing test")
    left = frac_left[signing] >= threshold
    right = frac_right[signing] >= threshold
    return (
        100.0 * int(left.sum()) / n,
        100.0 * int(right.sum()) / n,
        100.0 * int((left & right).sum()) / n,
    )


def threshold_sweep(
    seq: PoseSequence,
    scheme: KeypointScheme,
    thresholds: Sequence[float] = DEFAULT_THRESHOLDS,
    y_up: bool = False,
) -> HandPresenceReport:
    """Missing-hand percentages across a sorted ascending threshold list."""
    thresholds = _check_thresholds(thresholds)
    signing, frac_left, frac_right = _sweep_counts(seq, scheme, y_up)
    n = int(signing.sum())
    if n == 0:
        raise NoSigningFrames("no frame passes the signing test")
    report = _report_from_fractions(
        thresholds, frac_left[signing], frac_right[signing], n, seq.frame_count)
    _assert_monotone(report)
    return report


def pooled_sweep(
    seqs: Sequence[PoseSequence],
    scheme: KeypointScheme,
    thresholds: Sequence[float] = DEFAULT_THRESHOLDS,
    y_up: bool = False,
) -> HandPresenceReport:
    """Corpus-level sweep: signing frames of all sequences pooled into one
    denominator.  Sequences without signing frames contribute nothing; an
    entirely non-signing corpus raises ``NoSigningFrames``."""
    thresholds = _check_thresholds(thresholds)
    left_parts, right_parts = [], []
    total_frames = 0
    for seq in seqs:
        signing, frac_left, frac_right = _sweep_counts(seq, scheme, y_up)
        left_parts.append(frac_left[signing])
        right_parts.append(frac_right[signing])
        total_frames += seq.frame_count
    frac_left = np.concatenate(left_parts) if left_parts else np.zeros(0)
    frac_right = np.concatenate(right_parts) if right_parts else np.zeros(0)
    n = frac_left.size
    if n == 0:
        raise NoSigningFrames("no signing frames anywhere in the corpus")
    report = _report_from_fractions(thresholds, frac_left, frac_right, n,
                                    total_frames)
    _assert_monotone(report)
    return report


def _check_thresholds(thresholds) -> tuple[float, ...]:
    thresholds = tuple(float(t) for t in thresholds)
    if not thresholds:
        raise ValueError("need at least one threshold")
    if any(not 0 < t <= 1 for t in thresholds):
        raise ValueError("thresholds must lie in (0, 1]")
    if list(thresholds) != sorted(thresholds):
        raise ValueError("thresholds must be sorted ascending")
    return thresholds


def _report_from_fractions(thresholds, frac_left, frac_right, n, total_frames):
    pct_left, pct_right, pct_both = [], [], []
    for t in thresholds:
        left = frac_left >= t
        right = frac_right >= t
        pct_left.append(100.0 * int(left.sum()) / n)
        pct_right.append(100.0 * int(right.sum()) / n)
        pct_both.append(100.0 * int((left & right).sum()) / n)
    return HandPresenceReport(
        thresholds=tuple(thresholds),
        pct_left=tuple(pct_left),
        pct_right=tuple(pct_right),
        pct_both=tuple(pct_both),
        n_signing_frames=n,
        n_total_frames=total_frames,
    )


def _assert_monotone(report: HandPresenceReport) -> None:
    # sanity: percentages can only fall as the threshold rises
    for pcts in (report.pct_left, report.pct_right, report.pct_both):
        assert all(a >= b for a, b in zip(pcts, pcts[1:])), \
            "threshold sweep lost monotonicity"
