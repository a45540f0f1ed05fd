"""Batch reporting frontend.

    posebench <info|stability|hands|preprocess|occlusion|dump-scheme>
              [--scheme ID | --scheme-file PATH] [--regions all,hands,face]
              [--thresholds 0.1..1.0:0.1] [--iou 0.1] [--y-up] [--jobs N]
              [--fps 25] [--keep-legs] [--out PATH] INPUTS...

Inputs are SPC1 (``.spc1``) or interchange JSON (``.json``) files;
directories are walked recursively and sorted, so output order never
depends on filesystem enumeration.  One malformed file fails that file
only: it is reported in the failures section on stderr and the rest of the
batch proceeds (exit 1; exit 2 means the run produced nothing).

CSV output is pinned for reproducibility: ',' separator, '.' decimal,
LF line endings, always a header row, floats at 6 significant digits.
The ``POSEBENCH_SCHEME_DIR`` environment variable may list extra descriptor
directories (``os.pathsep``-separated) for ``--scheme`` lookups.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from .container import load_pose_file, validate_sequence
from .errors import PoseBenchError
from .hands import DEFAULT_THRESHOLDS, pooled_sweep
from .occlusion import screen_occlusions
from .preprocess import run_pipeline
from .schemes import (
    KeypointScheme,
    Region,
    get_scheme,
    load_scheme_file,
    scheme_to_descriptor,
)
from .stability import METRIC_NAMES, stability_report

INPUT_SUFFIXES = (".spc1", ".json")

_AXES = "xyz"


def _fmt(v: float) -> str:
    """Float cell at 6 significant digits (CSV contract)."""
    return format(float(v), ".6g")


def _write_csv(path: Path, header, rows) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(",".join(header) + "\n")
        for cells in rows:
            f.write(",".join(cells) + "\n")


def _collect_inputs(paths) -> list[Path]:
    files: set[Path] = set()
    for raw in paths:
        p = Path(raw)
        if p.is_dir():
            for suffix in INPUT_SUFFIXES:
                files.update(p.rglob(f"*{suffix}"))
        elif p.is_file():
            files.add(p)
        else:
            raise FileNotFoundError(f"no such input: {raw}")
    return sorted(files, key=lambda p: p.as_posix())


def _parse_regions(text: str) -> list[Region]:
    regions = []
    for name in text.split(","):
        name = name.strip()
        if not name:
            continue
        try:
            regions.append(Region(name))
        except ValueError:
            valid = ",".join(r.value for r in Region)
            raise SystemExit(f"error: unknown region {name!r} (choose from {valid})")
    if not regions:
        raise SystemExit("error: --regions selected nothing")
    return regions


def _parse_thresholds(text: str) -> list[float]:
    """Either "a..b:step" or a comma-separated list."""
    try:
        if ".." in text:
            span, _, step = text.partition(":")
            a, b = (float(v) for v in span.split(".."))
            s = float(step) if step else 0.1
            n = int(round((b - a) / s)) + 1
            values = [round(a + i * s, 10) for i in range(n)]
        else:
            values = [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise SystemExit(f"error: cannot parse thresholds {text!r}")
    if not values or any(not 0 < v <= 1 for v in values) or values != sorted(values):
        raise SystemExit(
            "error: thresholds must be ascending and lie in (0, 1]")
    return values


def _resolve_override(args) -> KeypointScheme | None:
    if args.scheme_file:
        return load_scheme_file(args.scheme_file)
    if args.scheme:
        return get_scheme(args.scheme)
    return None


def _load_one(path: Path, override: KeypointScheme | None, fps: float):
    seq = load_pose_file(path, scheme=override, fps=fps)
    scheme = override if override is not None else get_scheme(seq.scheme_id)
    validate_sequence(seq, scheme)
    return seq, scheme


def _load_corpus(files, args):
    """Load every input, splitting successes from failures; order follows
    the (already sorted) input list regardless of worker scheduling."""
    override = _resolve_override(args)

    def work(path):
        try:
            return path, _load_one(path, override, args.fps), None
        except (PoseBenchError, OSError, ValueError) as exc:
            return path, None, exc

    if args.jobs > 1:
        with ThreadPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(work, files))
    else:
        results = [work(p) for p in files]
    loaded, failures = [], []
    for path, value, exc in results:
        if exc is None:
            loaded.append((path, *value))
        else:
            failures.append((path, exc))
    return loaded, failures


def _report_failures(failures) -> None:
    if failures:
        print("failures:", file=sys.stderr)
        for path, exc in failures:
            print(f"  {path}: {exc}", file=sys.stderr)


def _outdir(args) -> Path:
    out = Path(args.out) if args.out else Path(".")
    out.mkdir(parents=True, exist_ok=True)
    return out


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def cmd_info(args) -> int:
    files = _collect_inputs(args.inputs)
    if not files:
        print("no inputs", file=sys.stderr)
        return 2
    override = _resolve_override(args)
    failed = False
    for path in files:
        try:
            seq, scheme = _load_one(path, override, args.fps)
        except (PoseBenchError, OSError, ValueError) as exc:
            print(f"{path}: error: {exc}", file=sys.stderr)
            failed = True
            continue
        size = "none" if seq.image_size is None else \
            f"{seq.image_size[0]}x{seq.image_size[1]}"
        zero_fraction = float((seq.conf == 0).mean())
        print(f"path: {path}")
        print(f"scheme_id: {seq.scheme_id}")
        print(f"frames: {seq.frame_count}")
        print(f"keypoints: {seq.keypoint_count}")
        print(f"dims: {seq.dims}")
        print(f"fps: {_fmt(seq.fps)}")
        print(f"image_size: {size}")
        print(f"confidence: min {_fmt(seq.conf.min())} "
              f"mean {_fmt(seq.conf.mean())} "
              f"zero_fraction {_fmt(zero_fraction)}")
        print()
    return 1 if failed else 0


def cmd_stability(args) -> int:
    files = _collect_inputs(args.inputs)
    if not files:
        print("no inputs", file=sys.stderr)
        return 2
    loaded, failures = _load_corpus(files, args)
    _report_failures(failures)
    if not loaded:
        return 2 if not failures else 1
    scheme_ids = {sch.id for _, _, sch in loaded}
    if len(scheme_ids) > 1:
        print(f"error: corpus mixes schemes {sorted(scheme_ids)}", file=sys.stderr)
        return 2
    scheme = loaded[0][2]
    regions = _parse_regions(args.regions)
    seqs = [seq for _, seq, _ in loaded]
    ids = [p.stem for p, _, _ in loaded]
    aggregates, summaries = stability_report(seqs, scheme, regions, ids)

    out = _outdir(args)
    _write_csv(
        out / "stability_aggregates.csv",
        ("region", "metric", "median", "q1", "q3", "n"),
        ((str(a.region), a.metric, _fmt(a.median), _fmt(a.q1), _fmt(a.q3),
          str(a.n_sequences)) for a in aggregates),
    )
    _write_csv(
        out / "stability_sequences.csv",
        ("sequence_id", "region", "E_v_x100", "J_acc_x100", "J_jerk_x100"),
        ((s.sequence_id, str(s.region),
          *("" if s.value(m) is None else _fmt(s.value(m) * 100.0)
            for m in METRIC_NAMES)) for s in summaries),
    )
    print(f"wrote {out / 'stability_aggregates.csv'}")
    print(f"wrote {out / 'stability_sequences.csv'}")
    return 1 if failures else 0


def cmd_hands(args) -> int:
    files = _collect_inputs(args.inputs)
    if not files:
        print("no inputs", file=sys.stderr)
        return 2
    loaded, failures = _load_corpus(files, args)
    thresholds = _parse_thresholds(args.thresholds)

    # one report per estimator directory (immediate parent of each file)
    groups: dict[str, list] = {}
    for path, seq, scheme in loaded:
        groups.setdefault(path.parent.name or ".", []).append((path, seq, scheme))

    rows = []
    doc: dict = {"thresholds": thresholds, "estimators": {}}
    for label in sorted(groups):
        members = groups[label]
        scheme_ids = {sch.id for _, _, sch in members}
        if len(scheme_ids) > 1:
            failures.extend(
                (p, PoseBenchError(f"estimator {label!r} mixes schemes"))
                for p, _, _ in members)
            continue
        try:
            report = pooled_sweep([seq for _, seq, _ in members],
                                  members[0][2], thresholds, y_up=args.y_up)
        except PoseBenchError as exc:
            failures.extend((p, exc) for p, _, _ in members)
            continue
        rows.extend((label, hand, _fmt(t), _fmt(pct))
                    for hand, t, pct in report.rows())
        doc["estimators"][label] = {
            "pct_left": list(report.pct_left),
            "pct_right": list(report.pct_right),
            "pct_both": list(report.pct_both),
            "n_signing_frames": report.n_signing_frames,
            "n_total_frames": report.n_total_frames,
        }

    _report_failures(failures)
    if not rows:
        return 2 if not failures else 1
    out = _outdir(args)
    _write_csv(out / "hands.csv", ("estimator", "hand", "threshold", "pct"), rows)
    with open(out / "hands.json", "w", encoding="utf-8", newline="\n") as f:
        json.dump(doc, f, indent=2, sort_keys=True)
        f.write("\n")
    print(f"wrote {out / 'hands.csv'}")
    print(f"wrote {out / 'hands.json'}")
    return 1 if failures else 0


def cmd_preprocess(args) -> int:
    files = _collect_inputs(args.inputs)
    if not files:
        print("no inputs", file=sys.stderr)
        return 2
    loaded, failures = _load_corpus(files, args)
    out = _outdir(args)
    wrote = 0
    for path, seq, scheme in loaded:
        try:
            fm = run_pipeline(seq, scheme, remove_legs=not args.keep_legs)
        except PoseBenchError as exc:
            failures.append((path, exc))
            continue
        header = [f"k{i}_{_AXES[d]}" for i in fm.kept_indices
                  for d in range(fm.dims)]
        _write_csv(out / f"{path.stem}_features.csv", header,
                   ((_fmt(v) for v in row) for row in fm.features))
        meta = {
            "scheme_id": fm.scheme_id,
            "kept_indices": list(fm.kept_indices),
            "D": fm.D,
            "dims": fm.dims,
            "frames": fm.frame_count,
            "fps": seq.fps,
        }
        with open(out / f"{path.stem}_meta.json", "w", encoding="utf-8",
                  newline="\n") as f:
            json.dump(meta, f, indent=2, sort_keys=True)
            f.write("\n")
        wrote += 1
        print(f"wrote {out / (path.stem + '_features.csv')}")
    _report_failures(failures)
    if not wrote:
        return 2 if not failures else 1
    return 1 if failures else 0


def cmd_occlusion(args) -> int:
    if not 0 < args.iou <= 1:
        print("error: --iou must lie in (0, 1]", file=sys.stderr)
        return 2
    files = _collect_inputs(args.inputs)
    if not files:
        print("no inputs", file=sys.stderr)
        return 2
    loaded, failures = _load_corpus(files, args)
    rows = []
    for path, seq, scheme in loaded:
        candidates = screen_occlusions(seq, scheme, iou_threshold=args.iou)
        rows.extend((path.stem, str(c.frame_index), c.kind,
                     _fmt(c.overlap_score)) for c in candidates)
    _report_failures(failures)
    if not loaded:
        return 2 if not failures else 1
    out = _outdir(args)
    _write_csv(out / "occlusion.csv",
               ("sequence_id", "frame_index", "kind", "score"), rows)
    print(f"wrote {out / 'occlusion.csv'}")
    return 1 if failures else 0


def cmd_dump_scheme(args) -> int:
    scheme = _resolve_override(args)
    if scheme is None:
        print("error: dump-scheme needs --scheme or --scheme-file",
              file=sys.stderr)
        return 2
    text = json.dumps(scheme_to_descriptor(scheme), indent=2) + "\n"
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
        print(f"wrote {args.out}")
    else:
        sys.stdout.write(text)
    return 0


# ---------------------------------------------------------------------------
# argument plumbing
# ---------------------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="posebench",
        description="Pose-keypoint quality diagnostics over SPC1/JSON corpora.")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--scheme", help="scheme id (built-in or on "
                        "POSEBENCH_SCHEME_DIR) overriding file headers")
    common.add_argument("--scheme-file", help="path to a descriptor JSON file")
    common.add_argument("--out", help="output directory (default: .)")
    common.add_argument("--jobs", type=int, default=1,
                        help="parallel file loads (default 1)")
    common.add_argument("--fps", type=float, default=25.0,
                        help="frame rate assumed for JSON inputs (default 25)")
    common.add_argument("--y-up", action="store_true", dest="y_up",
                        help="coordinates use mathematical y-up axes")
    common.add_argument("inputs", nargs="*", metavar="INPUTS",
                        help="SPC1/JSON files or directories")

    p = sub.add_parser("info", parents=[common],
                       help="per-file header and confidence summary")
    p.set_defaults(func=cmd_info)

    p = sub.add_parser("stability", parents=[common],
                       help="temporal stability metrics and aggregates")
    p.add_argument("--regions", default="all,hands,face",
                   help="comma list: all,hands,face,left_hand,right_hand,"
                        "legs,body (default all,hands,face)")
    p.set_defaults(func=cmd_stability)

    p = sub.add_parser("hands", parents=[common],
                       help="missing-hand sweep per estimator directory")
    p.add_argument("--thresholds", default="0.1..1.0:0.1",
                   help="'a..b:step' span or comma list (default 0.1..1.0:0.1)")
    p.set_defaults(func=cmd_hands)

    p = sub.add_parser("preprocess", parents=[common],
                       help="translation-input feature matrices")
    p.add_argument("--keep-legs", action="store_true",
                   help="skip leg/foot removal")
    p.set_defaults(func=cmd_preprocess)

    p = sub.add_parser("occlusion", parents=[common],
                       help="hand-hand / hand-face overlap candidates")
    p.add_argument("--iou", type=float, default=0.1,
                   help="candidate IoU threshold (default 0.1)")
    p.set_defaults(func=cmd_occlusion)

    p = sub.add_parser("dump-scheme", parents=[common],
                       help="print a descriptor with index lists expanded")
    p.set_defaults(func=cmd_dump_scheme)

    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except PoseBenchError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
