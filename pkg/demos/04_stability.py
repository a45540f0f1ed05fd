"""Temporal stability: separating smooth estimators from jittery ones.

E_v measures how much things move; J_acc and J_jerk measure how erratically.
A clean tracker and a noisy one produce the same E_v scale but wildly
different jitter, which is exactly what the corpus aggregates show.
"""

import numpy as np

from posebench import Region, get_scheme, sequence_metric, stability_report
from posebench.synthetic import signer_clip, with_dropout

coco = get_scheme("coco-wholebody")

smooth = [signer_clip(coco, frames=30, seed=i, noise=0.2) for i in range(12)]
jittery = [signer_clip(coco, frames=30, seed=i, noise=3.0) for i in range(12)]

for label, corpus in (("smooth", smooth), ("jittery", jittery)):
    aggregates, _ = stability_report(corpus, coco)
    print(f"--- {label} corpus (median [q1, q3], x100) ---")
    for a in aggregates:
        print(f"  {a.region.value:5s} {a.metric:6s} "
              f"{a.median:8.2f}  [{a.q1:8.2f}, {a.q3:8.2f}]  n={a.n_sequences}")

# jitter reacts to noise much more strongly than motion energy does
e_smooth = np.median([sequence_metric(s, coco, Region.HANDS, "E_v") for s in smooth])
e_jit = np.median([sequence_metric(s, coco, Region.HANDS, "E_v") for s in jittery])
j_smooth = np.median([sequence_metric(s, coco, Region.HANDS, "J_jerk") for s in smooth])
j_jit = np.median([sequence_metric(s, coco, Region.HANDS, "J_jerk") for s in jittery])
print(f"\nhands E_v ratio jittery/smooth:   {e_jit / e_smooth:5.1f}x")
print(f"hands J_jerk ratio jittery/smooth: {j_jit / j_smooth:5.1f}x")

# windows touching a dropped (c=0) sample are excluded from the mean,
# so intermittent detection failures don't masquerade as motion
seq = signer_clip(coco, frames=30, seed=0, noise=0.2)
mask = np.zeros(seq.conf.shape, dtype=bool)
mask[::4, 91:133] = True  # hands vanish every 4th frame
holey = with_dropout(seq, mask)
print("\nE_v hands, full clip:   ", sequence_metric(seq, coco, Region.HANDS, "E_v"))
print("E_v hands, dropout clip:", sequence_metric(holey, coco, Region.HANDS, "E_v"))
