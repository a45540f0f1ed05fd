"""
The translation-input pipeline: drop legs, normalize, mask, flatten
===================================================================

run_pipeline turns a raw keypoint sequence into the F x D feature matrix a
translation model trains on.  The four stages run in a fixed order:

    drop_legs -> normalize -> mask_zero_fill -> flatten
"""

import numpy as np

from posebench import get_scheme, run_pipeline
from posebench.preprocess import drop_legs, normalize
from posebench.synthetic import signer_clip, with_dropout

coco = get_scheme("coco-wholebody")
mediapipe = get_scheme("mediapipe-holistic")

clip = signer_clip(coco, frames=8, seed=7, noise=1.0)

# knock out a few face keypoints to see the zero-fill behaviour
mask = np.zeros(clip.conf.shape, dtype=bool)
mask[2:5, 30:40] = True
clip = with_dropout(clip, mask)

fm = run_pipeline(clip, coco)
print(f"COCO-WholeBody: {clip.keypoint_count} keypoints"
      f" -> drop 4 leg + 6 foot slots -> 123 kept -> D = 123*2 = {fm.D}")
print("feature matrix shape:", fm.features.shape)

# a dropped keypoint contributes an exact zero pair, nothing else does
block = fm.features[3].reshape(-1, 2)
zeros = np.flatnonzero((block == 0).all(axis=1))
print("frame 3 zero pairs at kept slots:", zeros, "(the masked face points)")

# normalization: mid-shoulder to origin, shoulder distance to 1
dropped, scheme_nolegs = drop_legs(clip, coco)
norm = normalize(dropped, scheme_nolegs)
l, r = 5, 6  # shoulder slots survive leg removal unchanged
mid = (norm.coords[:, l] + norm.coords[:, r]) / 2
dist = np.linalg.norm(norm.coords[:, l] - norm.coords[:, r], axis=1)
print("mean mid-shoulder after normalize:", mid.mean(axis=0).round(9))
print("mean shoulder distance after normalize:", round(dist.mean(), 9))

# the whole pipeline is invariant to where the camera put the signer
shifted = with_dropout(signer_clip(coco, frames=8, seed=7, noise=1.0), mask)
import posebench
shifted = posebench.PoseSequence(shifted.coords * 2.5 + [300.0, -40.0],
                                 shifted.conf, scheme_id=shifted.scheme_id)
fm2 = run_pipeline(shifted, coco)
print("max |feature delta| after scale+shift of the input:",
      float(np.max(np.abs(fm2.features - fm.features))))

# 3D schemes flatten to three columns per keypoint
mp = signer_clip(mediapipe, frames=4, seed=1)
print("mediapipe full, legs kept:  D =", run_pipeline(mp, mediapipe, remove_legs=False).D)
print("mediapipe with leg removal: D =", run_pipeline(mp, mediapipe).D)
