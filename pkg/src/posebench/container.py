"""Pose sequence type plus the SPC1 byte format and JSON interchange import.

SPC1 layout (all integers little-endian)::

    magic   4 bytes  b"SPC1"
    version u16      currently 1
    id_len  u8       length of the UTF-8 scheme id that follows
    id      bytes    scheme id text
    fps     f32      frames per second, > 0
    flags   u8       bit 0: image size present, bit 1: 3-D coordinates
    width   u16      only when flag bit 0 is set
    height  u16      only when flag bit 0 is set
    frames  u32      frame count F, >= 1
    points  u16      keypoints per frame K, >= 1
    payload F*K records, frame-major; each record is dims f32 coordinates
            followed by one f32 confidence

A stream must end exactly after the payload: trailing bytes are rejected,
as are NaN coordinates and confidences outside [0, 1].  Coordinates are
held as float64 in memory and quantized to f32 at write time, so
``read(write(s))`` reproduces ``s`` exactly whenever its values sit on the
f32 grid (which everything read from disk does), and ``write(read(b))``
always reproduces ``b`` byte for byte.
"""

from __future__ import annotations

import json
import math
import struct
from typing import NamedTuple, Optional, Sequence

import numpy as np

from .errors import (
    BadMagic,
    CountMismatch,
    MalformedPayload,
    UnsupportedVersion,
)
from .schemes import KeypointScheme

MAGIC = b"SPC1"
VERSION = 1

_FLAG_IMAGE_SIZE = 0x01
_FLAG_3D = 0x02


class Frame(NamedTuple):
    """One frame of a sequence: ``coords`` is (K, dims), ``conf`` is (K,)."""

    coords: np.ndarray
    conf: np.ndarray


class PoseSequence:
    """An estimator's output for one clip: coordinates plus confidences.

    ``coords`` has shape (frames, keypoints, dims) and ``conf`` shape
    (frames, keypoints) with values in [0, 1]; c = 0 marks a missing
    detection.  Arrays are stored read-only.
    """

    def __init__(
        self,
        coords,
        conf,
        scheme_id: str = "",
        fps: float = 25.0,
        image_size: Optional[tuple[int, int]] = None,
    ):
        coords = np.array(coords, dtype=np.float64)
        conf = np.array(conf, dtype=np.float64)
        if coords.ndim != 3 or coords.shape[2] not in (2, 3):
            raise ValueError("coords must have shape (frames, keypoints, 2 or 3)")
        if conf.shape != coords.shape[:2]:
            raise ValueError("conf must have shape (frames, keypoints)")
        if coords.shape[0] < 1 or coords.shape[1] < 1:
            raise ValueError("need at least one frame and one keypoint")
        if not np.isfinite(coords).all():
            raise ValueError("coordinates must be finite")
        if not np.isfinite(conf).all() or (conf < 0).any() or (conf > 1).any():
            raise ValueError("confidences must lie in [0, 1]")
        if not (isinstance(fps, (int, float)) and math.isfinite(fps) and fps > 0):
            raise ValueError("fps must be a positive finite number")
        if image_size is not None:
            w, h = image_size
            if not (isinstance(w, int) and isinstance(h, int) and w >= 1 and h >= 1):
                raise ValueError("image_size must be a pair of positive integers")
            image_size = (w, h)
        coords.setflags(write=False)
        conf.setflags(write=False)
        self.coords = coords
        self.conf = conf
        self.scheme_id = str(scheme_id)
        self.fps = float(fps)
        self.image_size = image_size

    # shape accessors -------------------------------------------------------

    @property
    def frame_count(self) -> int:
        return self.coords.shape[0]

    @property
    def keypoint_count(self) -> int:
        return self.coords.shape[1]

    @property
    def dims(self) -> int:
        return self.coords.shape[2]

    def frame(self, i: int) -> Frame:
        return Frame(self.coords[i], self.conf[i])

    def __eq__(self, other) -> bool:
        if not isinstance(other, PoseSequence):
            return NotImplemented
        return (
            self.scheme_id == other.scheme_id
            and self.fps == other.fps
            and self.image_size == other.image_size
            and self.coords.shape == other.coords.shape
            and np.array_equal(self.coords, other.coords)
            and np.array_equal(self.conf, other.conf)
        )

    def __repr__(self) -> str:
        return (
            f"PoseSequence(scheme_id={self.scheme_id!r}, frames={self.frame_count}, "
            f"keypoints={self.keypoint_count}, dims={self.dims}, fps={self.fps:g})"
        )


def validate_sequence(seq: PoseSequence, scheme: KeypointScheme) -> None:
    """Check that a sequence structurally matches a scheme."""
    if seq.keypoint_count != scheme.total:
        raise CountMismatch(
            f"sequence has {seq.keypoint_count} keypoints per frame, "
            f"scheme {scheme.id!r} expects {scheme.total}")
    if seq.dims != scheme.dims:
        raise CountMismatch(
            f"sequence is {seq.dims}-D, scheme {scheme.id!r} is {scheme.dims}-D")
    if not scheme.has_confidence and not (seq.conf == 1.0).all():
        raise MalformedPayload(
            f"scheme {scheme.id!r} carries no confidence channel; "
            "every record must have c = 1")


# ---------------------------------------------------------------------------
# SPC1 writer / reader
# ---------------------------------------------------------------------------

def write_pose(seq: PoseSequence) -> bytes:
    """Serialize a sequence; equal sequences produce identical bytes."""
    id_bytes = seq.scheme_id.encode("utf-8")
    if len(id_bytes) > 255:
        raise ValueError("scheme id longer than 255 bytes")
    flags = 0
    if seq.image_size is not None:
        flags |= _FLAG_IMAGE_SIZE
    if seq.dims == 3:
        flags |= _FLAG_3D
    parts = [
        MAGIC,
        struct.pack("<H", VERSION),
        struct.pack("<B", len(id_bytes)),
        id_bytes,
        struct.pack("<f", seq.fps),
        struct.pack("<B", flags),
    ]
    if seq.image_size is not None:
        parts.append(struct.pack("<HH", *seq.image_size))
    parts.append(struct.pack("<IH", seq.frame_count, seq.keypoint_count))
    records = np.concatenate(
        [seq.coords, seq.conf[:, :, None]], axis=2).astype("<f4")
    parts.append(records.tobytes())
    return b"".join(parts)


class _Cursor:
    """Byte reader that reports the offset of whatever failed."""

    def __init__(self, data: bytes):
        self.data = data
        self.pos = 0

    def take(self, n: int, what: str) -> bytes:
        if self.pos + n > len(self.data):
            raise MalformedPayload(
                f"stream truncated while reading {what}", offset=self.pos)
        chunk = self.data[self.pos:self.pos + n]
        self.pos += n
        return chunk

    def unpack(self, fmt: str, what: str):
        return struct.unpack(fmt, self.take(struct.calcsize(fmt), what))


def read_pose(data: bytes) -> PoseSequence:
    """Parse SPC1 bytes, rejecting anything structurally unsound."""
    cur = _Cursor(data)
    magic = cur.take(4, "magic")
    if magic != MAGIC:
        raise BadMagic(f"expected {MAGIC!r}, found {magic!r}", offset=0)
    (version,) = cur.unpack("<H", "version")
    if version != VERSION:
        raise UnsupportedVersion(f"unsupported version {version}", offset=4)
    (id_len,) = cur.unpack("<B", "scheme id length")
    id_offset = cur.pos
    try:
        scheme_id = cur.take(id_len, "scheme id").decode("utf-8")
    except UnicodeDecodeError:
        raise MalformedPayload("scheme id is not UTF-8", offset=id_offset) from None
    fps_offset = cur.pos
    (fps,) = cur.unpack("<f", "fps")
    if not (math.isfinite(fps) and fps > 0):
        raise MalformedPayload(f"fps must be positive, got {fps}", offset=fps_offset)
    flags_offset = cur.pos
    (flags,) = cur.unpack("<B", "flags")
    if flags & ~(_FLAG_IMAGE_SIZE | _FLAG_3D):
        raise MalformedPayload(f"unknown flag bits 0x{flags:02x}", offset=flags_offset)
    image_size = None
    if flags & _FLAG_IMAGE_SIZE:
        size_offset = cur.pos
        w, h = cur.unpack("<HH", "image size")
        if w < 1 or h < 1:
            raise MalformedPayload("image size must be positive", offset=size_offset)
        image_size = (w, h)
    counts_offset = cur.pos
    frames, points = cur.unpack("<IH", "frame/keypoint counts")
    if frames < 1 or points < 1:
        raise MalformedPayload(
            "frame and keypoint counts must be >= 1", offset=counts_offset)
    dims = 3 if flags & _FLAG_3D else 2
    payload_offset = cur.pos
    expected = frames * points * (dims + 1) * 4
    available = len(data) - cur.pos
    if available < expected:
        raise MalformedPayload(
            f"payload needs {expected} bytes, only {available} remain "
            "(count mismatch between header and payload)", offset=len(data))
    if available > expected:
        raise MalformedPayload(
            f"{available - expected} trailing bytes after payload",
            offset=payload_offset + expected)
    raw = cur.take(expected, "payload")
    records = np.frombuffer(raw, dtype="<f4").reshape(frames, points, dims + 1)
    coords = records[:, :, :dims].astype(np.float64)
    conf = records[:, :, dims].astype(np.float64)
    bad = ~np.isfinite(coords)
    if bad.any():
        f, k, d = (int(v[0]) for v in np.nonzero(bad))
        off = payload_offset + ((f * points + k) * (dims + 1) + d) * 4
        raise MalformedPayload("non-finite coordinate", offset=off)
    bad = ~np.isfinite(conf) | (conf < 0) | (conf > 1)
    if bad.any():
        f, k = (int(v[0]) for v in np.nonzero(bad))
        off = payload_offset + ((f * points + k) * (dims + 1) + dims) * 4
        raise MalformedPayload("confidence outside [0, 1]", offset=off)
    return PoseSequence(coords, conf, scheme_id, fps, image_size)


# ---------------------------------------------------------------------------
# JSON interchange
# ---------------------------------------------------------------------------

def import_json(
    document,
    scheme: KeypointScheme,
    fps: float = 25.0,
    image_size: Optional[tuple[int, int]] = None,
) -> PoseSequence:
    """Build a sequence from the interchange form: a list of frames, each a
    list of ``[x, y(, z), c]`` records.  A record may omit the confidence,
    which then defaults to 1."""
    if not isinstance(document, list) or not document:
        raise MalformedPayload("document must be a non-empty list of frames")
    dims = scheme.dims
    coords = np.zeros((len(document), scheme.total, dims))
    conf = np.ones((len(document), scheme.total))
    for f, frame in enumerate(document):
        if not isinstance(frame, list):
            raise MalformedPayload(f"frame {f} is not a list")
        if len(frame) != scheme.total:
            raise CountMismatch(
                f"frame {f} has {len(frame)} keypoints, "
                f"scheme {scheme.id!r} expects {scheme.total}")
        for k, entry in enumerate(frame):
            if not isinstance(entry, (list, tuple)) or len(entry) not in (dims, dims + 1):
                raise MalformedPayload(
                    f"frame {f} keypoint {k}: expected {dims} or {dims + 1} "
                    "numbers per record")
            for v in entry:
                if isinstance(v, bool) or not isinstance(v, (int, float)) \
                        or not math.isfinite(v):
                    raise MalformedPayload(
                        f"frame {f} keypoint {k}: non-numeric value {v!r}")
            coords[f, k] = entry[:dims]
            if len(entry) == dims + 1:
                c = float(entry[dims])
                if not 0.0 <= c <= 1.0:
                    raise MalformedPayload(
                        f"frame {f} keypoint {k}: confidence {c} outside [0, 1]")
                if not scheme.has_confidence and c != 1.0:
                    raise MalformedPayload(
                        f"frame {f} keypoint {k}: scheme {scheme.id!r} carries "
                        "no confidence channel, records must have c = 1")
                conf[f, k] = c
    return PoseSequence(coords, conf, scheme.id, fps, image_size)


# ---------------------------------------------------------------------------
# file helpers
# ---------------------------------------------------------------------------

def write_pose_file(path, seq: PoseSequence) -> None:
    with open(path, "wb") as f:
        f.write(write_pose(seq))


def load_pose_file(
    path,
    scheme: Optional[KeypointScheme] = None,
    fps: float = 25.0,
) -> PoseSequence:
    """Read either an SPC1 file or an interchange JSON file.  JSON carries
    no scheme id or frame rate of its own, so those must be supplied."""
    with open(path, "rb") as f:
        data = f.read()
    if data[:4] == MAGIC:
        return read_pose(data)
    try:
        document = json.loads(data.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError):
        raise BadMagic(
            f"{path}: neither an SPC1 stream nor interchange JSON", offset=0
        ) from None
    if scheme is None:
        raise CountMismatch(
            f"{path}: interchange JSON needs an explicit scheme for validation")
    return import_json(document, scheme, fps=fps)
