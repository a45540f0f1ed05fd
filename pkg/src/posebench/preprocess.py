"""Translation-input preprocessing pipeline.

Four steps, applied in this order:

1. ``drop_legs``       remove knee/ankle and foot keypoints
2. ``normalize``       per-sequence translation + uniform scale from shoulders
3. ``mask_zero_fill``  force coordinates of c = 0 keypoints to exactly zero
4. ``flatten``         one row per frame: x, y (, z) per keypoint in scheme order

Masking runs after normalization on purpose: zero-filled points must not
leak into the translation/scale statistics.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .container import PoseSequence, validate_sequence
from .errors import NoValidShoulders, UnmaskedMissing
from .schemes import KeypointScheme, landmark_index


@dataclass(frozen=True)
class FeatureMatrix:
    """Flattened frame vectors: ``features`` is (F, D) with
    D = len(kept_indices) * dims.  ``kept_indices`` are the surviving slots
    expressed in the original scheme's numbering."""

    features: np.ndarray
    scheme_id: str
    kept_indices: tuple[int, ...]
    dims: int

    @property
    def D(self) -> int:
        return self.features.shape[1]

    @property
    def frame_count(self) -> int:
        return self.features.shape[0]


def dropped_scheme(scheme: KeypointScheme) -> tuple[KeypointScheme, list[int]]:
    """Derived scheme after leg/foot removal, plus the kept original indices.

    Components and landmarks are renumbered to the compacted layout; the
    legs and feet components become declared-empty.
    """
    removed = set(scheme.components.get("legs", ())) | set(
        scheme.components.get("feet", ()))
    kept = [i for i in range(scheme.total) if i not in removed]
    new_pos = {old: new for new, old in enumerate(kept)}
    components = {}
    for name, idx in scheme.components.items():
        components[name] = tuple(new_pos[i] for i in idx if i in new_pos)
    landmarks = {name: new_pos[i] for name, i in scheme.landmarks.items()
                 if i in new_pos}
    derived = KeypointScheme(
        id=scheme.id if not removed else scheme.id + "#nolegs",
        total=len(kept),
        dims=scheme.dims,
        has_confidence=scheme.has_confidence,
        components=components,
        landmarks=landmarks,
        description=scheme.description and scheme.description + " (legs removed)",
    )
    return derived, kept


def drop_legs(
    seq: PoseSequence, scheme: KeypointScheme
) -> tuple[PoseSequence, KeypointScheme]:
    """Remove every keypoint in the legs and feet components.

    Returns the reduced sequence together with the derived scheme that
    describes it.  With no legs or feet declared this is the identity.
    """
    validate_sequence(seq, scheme)
    derived, kept = dropped_scheme(scheme)
    out = PoseSequence(
        seq.coords[:, kept, :],
        seq.conf[:, kept],
        scheme_id=derived.id,
        fps=seq.fps,
        image_size=seq.image_size,
    )
    return out, derived


def normalize(seq: PoseSequence, scheme: KeypointScheme) -> PoseSequence:
    """Translate and uniformly rescale one sequence from its shoulders.

    Statistics come only from frames where both shoulders have c > 0: the
    mean mid-shoulder point moves to the origin and the mean inter-shoulder
    distance becomes 1.  Every keypoint (including c = 0 ones) is
    transformed; confidences are untouched.
    """
    validate_sequence(seq, scheme)
    ls = landmark_index(scheme, "shoulder", "left")
    rs = landmark_index(scheme, "shoulder", "right")
    ok = (seq.conf[:, ls] > 0) & (seq.conf[:, rs] > 0)
    if not ok.any():
        raise NoValidShoulders(
            "no frame has both shoulders detected; cannot normalize")
    left = seq.coords[ok, ls, :]
    right = seq.coords[ok, rs, :]
    center = ((left + right) / 2.0).mean(axis=0)
    scale = np.linalg.norm(left - right, axis=1).mean()
    if scale == 0.0:
        raise NoValidShoulders(
            "shoulders coincide in every valid frame; scale is undefined")
    return PoseSequence(
        (seq.coords - center) / scale,
        seq.conf,
        scheme_id=seq.scheme_id,
        fps=seq.fps,
        image_size=seq.image_size,
    )


def mask_zero_fill(seq: PoseSequence) -> PoseSequence:
    """Set the coordinates of every c = 0 keypoint to exactly zero."""
    coords = seq.coords.copy()
    coords[seq.conf == 0] = 0.0
    return PoseSequence(coords, seq.conf, scheme_id=seq.scheme_id,
                        fps=seq.fps, image_size=seq.image_size)


def flatten(
    seq: PoseSequence,
    kept_indices=None,
    scheme_id: str | None = None,
) -> FeatureMatrix:
    """Flatten each frame to a vector (x, y[, z] per keypoint, scheme order).

    Requires masking to have happened already: a c = 0 keypoint that still
    carries nonzero coordinates raises ``UnmaskedMissing``.
    """
    missing = seq.conf == 0
    if (seq.coords[missing] != 0).any():
        raise UnmaskedMissing(
            "c=0 keypoints with nonzero coordinates; run mask_zero_fill first")
    if kept_indices is None:
        kept_indices = range(seq.keypoint_count)
    kept_indices = tuple(int(i) for i in kept_indices)
    if len(kept_indices) != seq.keypoint_count:
        raise ValueError("kept_indices length must match the keypoint count")
    rows = seq.coords.reshape(seq.frame_count, seq.keypoint_count * seq.dims)
    return FeatureMatrix(
        features=rows,
        scheme_id=seq.scheme_id if scheme_id is None else scheme_id,
        kept_indices=kept_indices,
        dims=seq.dims,
    )


def run_pipeline(
    seq: PoseSequence,
    scheme: KeypointScheme,
    remove_legs: bool = True,
) -> FeatureMatrix:
    """drop_legs -> normalize -> mask_zero_fill -> flatten.

    ``remove_legs=False`` skips the first step, keeping the scheme's full
    keypoint set in the feature rows.
    """
    if remove_legs:
        reduced, derived = drop_legs(seq, scheme)
        _, kept = dropped_scheme(scheme)
    else:
        validate_sequence(seq, scheme)
        reduced, derived = seq, scheme
        kept = list(range(scheme.total))
    normalized = normalize(reduced, derived)
    masked = mask_zero_fill(normalized)
    return flatten(masked, kept_indices=kept, scheme_id=scheme.id)
