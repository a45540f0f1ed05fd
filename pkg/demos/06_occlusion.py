"""Screening for hand-hand and hand-face occlusion candidates.

The screener is a pre-filter for manual review: it boxes each hand and the
face from their visible keypoints and flags frames where boxes overlap.
"""

from posebench import PoseSequence, get_scheme, screen_occlusions
from posebench.synthetic import signer_clip

coco = get_scheme("coco-wholebody")

clip = signer_clip(coco, frames=24, seed=4, noise=0.5)

# steer the right hand across the face for a few frames
coords = clip.coords.copy()
face = list(coco.component("face"))
right = list(coco.component("right_hand"))
face_center = coords[:, face].mean(axis=1)
for f in range(8, 13):
    offset = face_center[f] - coords[f, right].mean(axis=0)
    coords[f, right] += offset
clip = PoseSequence(coords, clip.conf, scheme_id=clip.scheme_id, fps=clip.fps)

candidates = screen_occlusions(clip, coco, iou_threshold=0.1)
print(f"{len(candidates)} candidates at IoU >= 0.1")
for c in candidates:
    print(f"  frame {c.frame_index:3d}  {c.kind:9s}  score {c.overlap_score:.3f}")

# tightening the threshold can only shrink the candidate list
for thr in (0.05, 0.2, 0.5):
    n = len(screen_occlusions(clip, coco, iou_threshold=thr))
    print(f"IoU >= {thr:4.2f}: {n} candidates")

# hands that drop below 3 visible keypoints produce no box at all
conf = clip.conf.copy()
conf[10, right] = 0.0
masked = PoseSequence(clip.coords, conf, scheme_id=clip.scheme_id, fps=clip.fps)
frames = {c.frame_index for c in screen_occlusions(masked, coco, iou_threshold=0.1)}
print("frame 10 still flagged after hiding the right hand?", 10 in frames)
