import numpy as np
import pytest

from posebench import KeypointScheme, PoseSequence


def f32_grid(array):
    """Snap float64 values onto the 32-bit float grid (container precision)."""
    return np.asarray(array, dtype=np.float32).astype(np.float64)


def random_sequence(rng, frames=None, keypoints=None, dims=None,
                    zero_prob=0.15, with_image=None, scheme_id="test"):
    """A random but valid sequence with f32-representable values."""
    frames = frames or int(rng.integers(1, 12))
    keypoints = keypoints or int(rng.integers(1, 8))
    dims = dims or int(rng.choice([2, 3]))
    coords = f32_grid(rng.uniform(-400, 400, size=(frames, keypoints, dims)))
    conf = f32_grid(rng.uniform(0.0, 1.0, size=(frames, keypoints)))
    conf[rng.random(size=conf.shape) < zero_prob] = 0.0
    if with_image is None:
        with_image = bool(rng.integers(0, 2))
    image_size = (int(rng.integers(16, 4096)), int(rng.integers(16, 4096))) \
        if with_image else None
    fps = float(np.float32(rng.uniform(1, 120)))
    return PoseSequence(coords, conf, scheme_id=scheme_id, fps=fps,
                        image_size=image_size)


def tiny_scheme(total, dims=2):
    """Bare scheme with no components: every slot lands in the all region."""
    return KeypointScheme(id=f"tiny{total}d{dims}", total=total, dims=dims)


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)


@pytest.fixture(scope="session")
def coco():
    from posebench import get_scheme
    return get_scheme("coco-wholebody")


@pytest.fixture(scope="session")
def mediapipe():
    from posebench import get_scheme
    return get_scheme("mediapipe-holistic")
