"""Round-tripping pose sequences through the SPC1 container."""

import json
import tempfile
from pathlib import Path

from posebench import get_scheme, load_pose_file, read_pose, write_pose
from posebench.container import import_json, write_pose_file
from posebench.synthetic import signer_clip

coco = get_scheme("coco-wholebody")
clip = signer_clip(coco, frames=12, seed=3, noise=0.5, image_size=(512, 512))

data = write_pose(clip)
print(f"12-frame COCO clip -> {len(data)} bytes "
      f"(header {len(data) - 12 * 133 * 3 * 4}, payload {12 * 133 * 3 * 4})")
print("magic:", data[:4], " version:", int.from_bytes(data[4:6], "little"))

back = read_pose(data)
print("read(write(clip)) == clip:", back == clip)

workdir = Path(tempfile.mkdtemp())
spc = workdir / "clip.spc1"
write_pose_file(spc, clip)
print("loaded from disk, equal:", load_pose_file(spc) == clip)

# the JSON interchange form: a list of frames of [x, y(, z), c] records.
# Records may omit c, which then defaults to 1 (estimators without
# confidence channels report every keypoint as trusted).
doc = [[[float(x), float(y), float(c)]
        for (x, y), c in zip(clip.coords[f], clip.conf[f])]
       for f in range(clip.frame_count)]
imported = import_json(doc, coco, fps=clip.fps)
print("JSON import frames:", imported.frame_count,
      "coords equal:", bool((imported.coords == clip.coords).all()))

jsonfile = workdir / "clip.json"
jsonfile.write_text(json.dumps(doc))
again = load_pose_file(jsonfile, scheme=coco, fps=25.0)
print("load_pose_file dispatches on magic bytes; JSON path ok:",
      again.keypoint_count == 133)

# malformed streams are rejected with the byte offset of the problem
try:
    read_pose(data[:-40])
except Exception as exc:
    print("truncated stream ->", type(exc).__name__, "-", exc)
