"""Synthetic signer clips for demos and self-contained corpus tests.

The generated values are snapped to the 32-bit float grid so a clip
survives container round trips without losing precision.
"""

from __future__ import annotations

import numpy as np

from .container import PoseSequence
from .schemes import KeypointScheme, landmark_index

# canvas used by the generator (pixels, y down)
CANVAS = (512, 512)

_CLUSTERS = {
    "body": ((190.0, 322.0), (150.0, 260.0)),
    "face": ((216.0, 296.0), (80.0, 150.0)),
    "legs": ((216.0, 296.0), (330.0, 400.0)),
    "feet": ((216.0, 296.0), (400.0, 440.0)),
}


def signer_clip(
    scheme: KeypointScheme,
    frames: int = 40,
    seed: int = 0,
    noise: float = 0.0,
    fps: float = 25.0,
    image_size: tuple[int, int] | None = None,
    signing: bool = True,
) -> PoseSequence:
    """A plausible frontal signer on a 512x512 canvas.

    Shoulders stay put, elbows hang below them, and the wrists (with the
    hand clusters riding along) swing sinusoidally.  With ``signing=True``
    the wrists stay above the elbows in every frame; otherwise they hang
    below.  ``noise`` adds Gaussian jitter to everything.
    """
    rng = np.random.default_rng(seed)
    K = scheme.total
    coords = np.zeros((frames, K, scheme.dims))
    t = np.arange(frames)[:, None]

    placed = np.zeros(K, dtype=bool)

    def put(i, xy):
        coords[:, i, 0] = xy[0]
        coords[:, i, 1] = xy[1]
        placed[i] = True

    # static clusters first, so arm landmarks can overwrite their slots
    for comp, ((x0, x1), (y0, y1)) in _CLUSTERS.items():
        for i in scheme.components.get(comp, ()):
            put(i, (rng.uniform(x0, x1), rng.uniform(y0, y1)))

    shoulders = {"left": (206.0, 180.0), "right": (306.0, 180.0)}
    elbows = {"left": (186.0, 255.0), "right": (326.0, 255.0)}
    wrist_rest_y = 210.0 if signing else 300.0
    wrist_traj = {}
    for side, phase in (("left", 0.0), ("right", np.pi / 2)):
        put(landmark_index(scheme, "shoulder", side), shoulders[side])
        put(landmark_index(scheme, "elbow", side), elbows[side])
        wx = elbows[side][0] + 28.0 * np.sin(2 * np.pi * t / max(frames, 2) + phase)
        wy = wrist_rest_y + 18.0 * np.cos(2 * np.pi * t / max(frames, 2) + phase)
        wrist = landmark_index(scheme, "wrist", side)
        coords[:, wrist, 0:1] = wx
        coords[:, wrist, 1:2] = wy
        placed[wrist] = True
        wrist_traj[side] = (wx, wy)

    # hand clusters follow their wrist
    for side in ("left", "right"):
        wx, wy = wrist_traj[side]
        for i in scheme.components.get(f"{side}_hand", ()):
            ox, oy = rng.uniform(-16, 16), rng.uniform(4, 36)
            coords[:, i, 0:1] = wx + ox
            coords[:, i, 1:2] = wy + oy
            placed[i] = True

    # anything outside a named component drifts near the torso
    for i in np.flatnonzero(~placed):
        put(i, (rng.uniform(180, 330), rng.uniform(150, 350)))

    if scheme.dims == 3:
        coords[:, :, 2] = rng.uniform(-30, 30, size=K)

    if noise:
        coords += rng.normal(0.0, noise, size=coords.shape)

    coords = coords.astype(np.float32).astype(np.float64)
    conf = np.ones((frames, K))
    return PoseSequence(coords, conf, scheme_id=scheme.id, fps=fps,
                        image_size=image_size)


def with_dropout(seq: PoseSequence, mask) -> PoseSequence:
    """Copy of ``seq`` with conf = 0 wherever the (F, K) boolean mask is
    set.  Coordinates are left untouched, as estimators do."""
    mask = np.asarray(mask, dtype=bool)
    if mask.shape != seq.conf.shape:
        raise ValueError("mask must have shape (frames, keypoints)")
    conf = seq.conf.copy()
    conf[mask] = 0.0
    return PoseSequence(seq.coords, conf, scheme_id=seq.scheme_id,
                        fps=seq.fps, image_size=seq.image_size)


def drop_hand_frames(
    seq: PoseSequence,
    scheme: KeypointScheme,
    hand: str,
    frame_indices,
) -> PoseSequence:
    """Zero out every keypoint of one hand in the given frames."""
    mask = np.zeros(seq.conf.shape, dtype=bool)
    idx = list(scheme.component(f"{hand}_hand"))
    for f in frame_indices:
        mask[f, idx] = True
    return with_dropout(seq, mask)
