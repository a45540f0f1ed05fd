"""Keypoint scheme registry.

A *scheme* names every keypoint slot an estimator emits: how many there are,
whether coordinates are 2-D or 3-D, which slots form the body / face / hand /
leg components and where the six arm landmarks (shoulder, elbow, wrist on
each side) live.  Layouts are data, not code: each built-in ships as a JSON
descriptor under ``posebench/descriptors`` and extra search directories can
be supplied through the ``POSEBENCH_SCHEME_DIR`` environment variable
(``os.pathsep``-separated list).

Descriptor grammar (JSON)::

    {
      "id": "coco-wholebody",          # registry key
      "aliases": ["mmpose-wholebody"], # optional extra keys
      "total": 133,                    # keypoint slots per frame
      "dims": 2,                       # 2 or 3 coordinates per slot
      "has_confidence": true,          # false -> every record carries c = 1
      "components": {"body": ["0-12"], "legs": [13, "14-16"], ...},
      "landmarks": {"left_wrist": 9, ...}
    }

Component index lists may mix plain integers with inclusive ``"a-b"`` span
strings.  Components must be pairwise disjoint; they may cover fewer than
``total`` slots (slots outside every named component still count toward the
all-excluding-legs region, which is defined by complement).
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from enum import Enum
from importlib import resources

from .errors import (
    MissingComponent,
    MissingLandmark,
    OverlappingComponents,
    SchemeError,
    UnknownScheme,
)

COMPONENT_NAMES = ("body", "legs", "feet", "face", "left_hand", "right_hand")
LANDMARK_NAMES = ("shoulder", "elbow", "wrist")
SIDES = ("left", "right")

SCHEME_DIR_ENV = "POSEBENCH_SCHEME_DIR"


class Region(str, Enum):
    """Addressable keypoint subsets used by the diagnostics."""

    ALL_EXCL_LEGS = "all"
    HANDS = "hands"
    FACE = "face"
    LEFT_HAND = "left_hand"
    RIGHT_HAND = "right_hand"
    LEGS = "legs"
    BODY = "body"

    def __str__(self) -> str:  # keep CLI/CSV output plain
        return self.value


@dataclass(frozen=True)
class KeypointScheme:
    id: str
    total: int
    dims: int
    has_confidence: bool = True
    components: dict[str, tuple[int, ...]] = field(default_factory=dict)
    landmarks: dict[str, int] = field(default_factory=dict)
    aliases: tuple[str, ...] = ()
    description: str = ""

    def component(self, name: str) -> tuple[int, ...]:
        """Indices of a named component; raises if it was never declared."""
        try:
            return self.components[name]
        except KeyError:
            raise MissingComponent(
                f"scheme {self.id!r} declares no {name!r} component"
            ) from None


# ---------------------------------------------------------------------------
# descriptor parsing
# ---------------------------------------------------------------------------

def _expand_indices(tokens, where: str) -> tuple[int, ...]:
    out: list[int] = []
    for tok in tokens:
        if isinstance(tok, bool):
            raise SchemeError(f"{where}: boolean is not an index")
        if isinstance(tok, int):
            out.append(tok)
        elif isinstance(tok, str):
            a, sep, b = tok.partition("-")
            if not sep or not a.isdigit() or not b.isdigit():
                raise SchemeError(f"{where}: bad span token {tok!r}")
            lo, hi = int(a), int(b)
            if hi < lo:
                raise SchemeError(f"{where}: empty span {tok!r}")
            out.extend(range(lo, hi + 1))
        else:
            raise SchemeError(f"{where}: bad index entry {tok!r}")
    return tuple(sorted(out))


def parse_descriptor(doc: dict, source: str = "<descriptor>") -> KeypointScheme:
    """Turn one decoded descriptor document into a validated scheme."""
    if not isinstance(doc, dict):
        raise SchemeError(f"{source}: descriptor must be a JSON object")
    try:
        scheme_id = doc["id"]
        total = doc["total"]
        dims = doc["dims"]
    except KeyError as exc:
        raise SchemeError(f"{source}: missing required field {exc}") from None
    if not isinstance(scheme_id, str) or not scheme_id:
        raise SchemeError(f"{source}: id must be a non-empty string")
    if not isinstance(total, int) or isinstance(total, bool) or total < 1:
        raise SchemeError(f"{source}: total must be a positive integer")
    if dims not in (2, 3):
        raise SchemeError(f"{source}: dims must be 2 or 3, got {dims!r}")

    components: dict[str, tuple[int, ...]] = {}
    seen: set[int] = set()
    for name, tokens in doc.get("components", {}).items():
        if name not in COMPONENT_NAMES:
            raise SchemeError(f"{source}: unknown component {name!r}")
        idx = _expand_indices(tokens, f"{source}:{name}")
        if any(i < 0 or i >= total for i in idx):
            raise SchemeError(f"{source}: component {name!r} index out of range")
        if len(set(idx)) != len(idx):
            raise OverlappingComponents(
                f"{source}: component {name!r} repeats an index")
        clash = seen & set(idx)
        if clash:
            raise OverlappingComponents(
                f"{source}: index {min(clash)} appears in two components")
        seen.update(idx)
        components[name] = idx

    landmarks: dict[str, int] = {}
    for lname, i in doc.get("landmarks", {}).items():
        side, _, part = lname.partition("_")
        if side not in SIDES or part not in LANDMARK_NAMES:
            raise SchemeError(f"{source}: unknown landmark {lname!r}")
        if not isinstance(i, int) or isinstance(i, bool) or not 0 <= i < total:
            raise SchemeError(f"{source}: landmark {lname!r} index out of range")
        landmarks[lname] = i

    aliases = doc.get("aliases", [])
    if not isinstance(aliases, list) or not all(isinstance(a, str) for a in aliases):
        raise SchemeError(f"{source}: aliases must be a list of strings")

    return KeypointScheme(
        id=scheme_id,
        total=total,
        dims=dims,
        has_confidence=bool(doc.get("has_confidence", True)),
        components=components,
        landmarks=landmarks,
        aliases=tuple(aliases),
        description=str(doc.get("description", "")),
    )


def scheme_to_descriptor(scheme: KeypointScheme) -> dict:
    """Inverse of :func:`parse_descriptor`, with index lists fully expanded."""
    return {
        "id": scheme.id,
        "aliases": list(scheme.aliases),
        "description": scheme.description,
        "total": scheme.total,
        "dims": scheme.dims,
        "has_confidence": scheme.has_confidence,
        "components": {k: list(v) for k, v in scheme.components.items()},
        "landmarks": dict(scheme.landmarks),
    }


# ---------------------------------------------------------------------------
# registry lookup
# ---------------------------------------------------------------------------

_builtin_cache: dict[str, KeypointScheme] | None = None


def _load_builtins() -> dict[str, KeypointScheme]:
    global _builtin_cache
    if _builtin_cache is None:
        table: dict[str, KeypointScheme] = {}
        root = resources.files("posebench").joinpath("descriptors")
        for entry in sorted(root.iterdir(), key=lambda e: e.name):
            if not entry.name.endswith(".json"):
                continue
            scheme = parse_descriptor(json.loads(entry.read_text()), entry.name)
            for key in (scheme.id, *scheme.aliases):
                table[key] = scheme
        _builtin_cache = table
    return _builtin_cache


def builtin_scheme_ids() -> list[str]:
    """Primary ids of the descriptors shipped with the package."""
    return sorted({s.id for s in _load_builtins().values()})


def load_scheme_file(path: str | os.PathLike) -> KeypointScheme:
    with open(path, "r", encoding="utf-8") as f:
        try:
            doc = json.load(f)
        except json.JSONDecodeError as exc:
            raise SchemeError(f"{path}: not valid JSON ({exc})") from None
    return parse_descriptor(doc, str(path))


def _search_dirs() -> list[str]:
    raw = os.environ.get(SCHEME_DIR_ENV, "")
    return [d for d in raw.split(os.pathsep) if d]


def get_scheme(scheme_id: str) -> KeypointScheme:
    """Resolve a scheme id or alias against built-ins and, failing that,
    any ``POSEBENCH_SCHEME_DIR`` directories (scanned in listed order)."""
    builtins = _load_builtins()
    if scheme_id in builtins:
        return builtins[scheme_id]
    for d in _search_dirs():
        if not os.path.isdir(d):
            continue
        for fname in sorted(os.listdir(d)):
            if not fname.endswith(".json"):
                continue
            try:
                scheme = load_scheme_file(os.path.join(d, fname))
            except SchemeError:
                continue
            if scheme_id == scheme.id or scheme_id in scheme.aliases:
                return scheme
    raise UnknownScheme(f"no scheme descriptor found for id {scheme_id!r}")


# ---------------------------------------------------------------------------
# region / landmark addressing
# ---------------------------------------------------------------------------

def region_indices(scheme: KeypointScheme, region: Region) -> list[int]:
    """Sorted keypoint indices selected by ``region``.

    ``Region.ALL_EXCL_LEGS`` is defined by complement: every slot that is in
    neither the legs nor the feet component (so also slots outside any named
    component).  The other regions require their component to be declared.
    """
    region = Region(region)
    if region is Region.ALL_EXCL_LEGS:
        dropped = set(scheme.components.get("legs", ())) | set(
            scheme.components.get("feet", ()))
        return [i for i in range(scheme.total) if i not in dropped]
    if region is Region.HANDS:
        return sorted(scheme.component("left_hand") + scheme.component("right_hand"))
    if region is Region.FACE:
        return list(scheme.component("face"))
    if region is Region.LEFT_HAND:
        return list(scheme.component("left_hand"))
    if region is Region.RIGHT_HAND:
        return list(scheme.component("right_hand"))
    if region is Region.LEGS:
        return list(scheme.component("legs"))
    if region is Region.BODY:
        return list(scheme.component("body"))
    raise MissingComponent(f"unhandled region {region!r}")  # pragma: no cover


def landmark_index(scheme: KeypointScheme, name: str, side: str) -> int:
    """Slot index of a named arm landmark (``wrist``/``elbow``/``shoulder``,
    side ``left``/``right``)."""
    if name not in LANDMARK_NAMES or side not in SIDES:
        raise MissingLandmark(f"no such landmark {side}_{name}")
    key = f"{side}_{name}"
    try:
        return scheme.landmarks[key]
    except KeyError:
        raise MissingLandmark(
            f"scheme {scheme.id!r} does not declare landmark {key}") from None
