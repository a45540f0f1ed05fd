"""
Keypoint schemes: what the library knows about each estimator layout
====================================================================

Every analysis addresses keypoints through a scheme: a named layout with
anatomical components (face, hands, legs...) and landmark indices.
"""

from posebench import Region, builtin_scheme_ids, get_scheme, region_indices
from posebench.schemes import landmark_index

print("built-in schemes:")
for scheme_id in builtin_scheme_ids():
    s = get_scheme(scheme_id)
    comps = ", ".join(f"{name}:{len(idx)}" for name, idx in sorted(s.components.items()))
    print(f"  {s.id:30s} total={s.total:3d} dims={s.dims}  [{comps}]")

# estimator names resolve through aliases to their layout
for name in ("mmpose-wholebody", "alphapose-fullbody", "goliath-308"):
    print(f"alias {name!r} -> {get_scheme(name).id}")

coco = get_scheme("coco-wholebody")

# region selectors are how the metrics pick their keypoint subsets
print()
for region in (Region.ALL_EXCL_LEGS, Region.HANDS, Region.FACE):
    idx = region_indices(coco, region)
    print(f"coco-wholebody {region.value:5s}: {len(idx)} keypoints "
          f"(first {idx[:4]} ... last {idx[-2:]})")

# the signing-frame rule needs wrists and elbows by name
for side in ("left", "right"):
    w = landmark_index(coco, "wrist", side)
    e = landmark_index(coco, "elbow", side)
    print(f"{side} wrist at index {w}, elbow at {e}")

# schemes are plain data; dump one and look at it
from posebench import scheme_to_descriptor
doc = scheme_to_descriptor(get_scheme("sapiens-308"))
print()
print("sapiens-308 face component spans", doc["components"]["face"][:1],
      "->", len(get_scheme("sapiens-308").component("face")), "indices")
