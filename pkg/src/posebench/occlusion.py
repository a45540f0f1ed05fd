"""Occlusion-candidate screening.

Flags frames where the hands plausibly overlap each other or the face, as a
pre-filter for manual occlusion review.  The score is the IoU of tight
axis-aligned boxes around each component's detected (c > 0) keypoints in
the image plane; a box needs at least 3 visible keypoints to exist.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .container import Frame, PoseSequence, validate_sequence
from .schemes import KeypointScheme

Box = tuple[float, float, float, float]  # x0, y0, x1, y1

KIND_HAND_HAND = "hand-hand"
KIND_HAND_FACE = "hand-face"


@dataclass(frozen=True)
class OcclusionCandidate:
    frame_index: int
    kind: str
    overlap_score: float


def component_bbox(frame: Frame, indices) -> Optional[Box]:
    """Tight box over the component's visible keypoints, or None when fewer
    than 3 are visible."""
    idx = list(indices)
    pts = frame.coords[idx, :2][frame.conf[idx] > 0]
    if pts.shape[0] < 3:
        return None
    x0, y0 = pts.min(axis=0)
    x1, y1 = pts.max(axis=0)
    return (float(x0), float(y0), float(x1), float(y1))


def box_iou(a: Box, b: Box) -> float:
    """Intersection over union of two axis-aligned boxes.

    Degenerate boxes (zero area) get IoU 1 when identical, else 0, keeping
    the score(A, A) = 1 identity.
    """
    ix = min(a[2], b[2]) - max(a[0], b[0])
    iy = min(a[3], b[3]) - max(a[1], b[1])
    inter = max(0.0, ix) * max(0.0, iy)
    area_a = (a[2] - a[0]) * (a[3] - a[1])
    area_b = (b[2] - b[0]) * (b[3] - b[1])
    union = area_a + area_b - inter
    if union <= 0.0:
        return 1.0 if a == b else 0.0
    return inter / union


def screen_occlusions(
    seq: PoseSequence,
    scheme: KeypointScheme,
    iou_threshold: float = 0.1,
) -> list[OcclusionCandidate]:
    """Per-frame hand-hand and hand-face overlap candidates with
    score >= iou_threshold, sorted by frame then score descending."""
    if not 0 < iou_threshold <= 1:
        raise ValueError("iou_threshold must lie in (0, 1]")
    validate_sequence(seq, scheme)
    left = scheme.components.get("left_hand")
    right = scheme.components.get("right_hand")
    face = scheme.components.get("face")
    out: list[OcclusionCandidate] = []
    for f in range(seq.frame_count):
        frame = seq.frame(f)
        lbox = component_bbox(frame, left) if left else None
        rbox = component_bbox(frame, right) if right else None
        fbox = component_bbox(frame, face) if face else None
        scored = []
        if lbox and rbox:
            scored.append((KIND_HAND_HAND, box_iou(lbox, rbox)))
        if lbox and fbox:
            scored.append((KIND_HAND_FACE, box_iou(lbox, fbox)))
        if rbox and fbox:
            scored.append((KIND_HAND_FACE, box_iou(rbox, fbox)))
        scored = [(k, s) for k, s in scored if s >= iou_threshold]
        scored.sort(key=lambda ks: -ks[1])
        out.extend(
            OcclusionCandidate(frame_index=f, kind=k, overlap_score=s)
            for k, s in scored
        )
    return out
