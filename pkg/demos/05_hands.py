"""Missing-hand statistics over signing frames.

A frame counts for the denominator when either wrist is above its elbow
(the signer is plausibly signing).  A hand is "missing" at threshold x when
at least x of its keypoints have confidence 0.  Sweeping x from 10% to 100%
reproduces the appendix-style table layout.
"""

import numpy as np

from posebench import get_scheme, pooled_sweep, threshold_sweep
from posebench.synthetic import drop_hand_frames, signer_clip, with_dropout

coco = get_scheme("coco-wholebody")

# estimator A: binary failure mode - when a hand is lost, all 21 keypoints
# go at once.  The sweep is flat until the 100% column.
clip_a = signer_clip(coco, frames=40, seed=1)
clip_a = drop_hand_frames(clip_a, coco, "left", range(0, 40, 5))

# estimator B: graded failure mode - random per-keypoint dropout
clip_b = signer_clip(coco, frames=40, seed=2)
rng = np.random.default_rng(0)
mask = np.zeros(clip_b.conf.shape, dtype=bool)
mask[:, 91:133] = rng.random((40, 42)) < 0.35
clip_b = with_dropout(clip_b, mask)

for label, clip in (("binary dropout", clip_a), ("graded dropout", clip_b)):
    report = threshold_sweep(clip, coco)
    print(f"--- {label} ({report.n_signing_frames} signing frames) ---")
    header = "      " + "".join(f"{int(t * 100):>7d}%" for t in report.thresholds)
    print(header)
    for hand, pcts in (("left", report.pct_left), ("right", report.pct_right),
                       ("both", report.pct_both)):
        print(f"{hand:5s} " + "".join(f"{p:8.2f}" for p in pcts))
    print()

# corpus-level: pool every signing frame into one denominator
corpus = [drop_hand_frames(signer_clip(coco, frames=20, seed=s), coco,
                           "right", [0, 7]) for s in range(5)]
pooled = pooled_sweep(corpus, coco, thresholds=[0.5])
print(f"pooled over {len(corpus)} clips: {pooled.n_signing_frames} signing "
      f"frames, right hand missing at 50%: {pooled.pct_right[0]:.2f}%")
