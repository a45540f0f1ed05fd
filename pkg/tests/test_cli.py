import json

import numpy as np
import pytest

from posebench import PoseSequence, get_scheme, screen_occlusions
from posebench.cli import _fmt, main
from posebench.container import write_pose, write_pose_file
from posebench.stability import stability_report
from posebench.synthetic import drop_hand_frames, signer_clip, with_dropout


def make_corpus(directory, scheme, n, frames=8, **kw):
    directory.mkdir(parents=True, exist_ok=True)
    paths = []
    for i in range(n):
        seq = signer_clip(scheme, frames=frames, seed=i, **kw)
        p = directory / f"clip{i:02d}.spc1"
        write_pose_file(p, seq)
        paths.append(p)
    return paths


def write_json_clip(path, seq):
    doc = [[[float(v) for v in seq.coords[f, k]] + [float(seq.conf[f, k])]
            for k in range(seq.keypoint_count)]
           for f in range(seq.frame_count)]
    path.write_text(json.dumps(doc), encoding="utf-8")


def csv_rows(path):
    lines = path.read_text(encoding="utf-8").splitlines()
    return [line.split(",") for line in lines]


# ---------------------------------------------------------------------------
# info
# ---------------------------------------------------------------------------

def test_info_spc1(tmp_path, coco, capsys):
    p = tmp_path / "clip.spc1"
    write_pose_file(p, signer_clip(coco, frames=6))
    assert main(["info", str(p)]) == 0
    out = capsys.readouterr().out
    assert "scheme_id: coco-wholebody" in out
    assert "frames: 6" in out
    assert "keypoints: 133" in out
    assert "dims: 2" in out
    assert "zero_fraction 0" in out


def test_info_json(tmp_path, coco, capsys):
    p = tmp_path / "clip.json"
    write_json_clip(p, signer_clip(coco, frames=4))
    assert main(["info", "--scheme", "coco-wholebody", str(p)]) == 0
    out = capsys.readouterr().out
    assert "frames: 4" in out and "keypoints: 133" in out

    # interchange JSON cannot be interpreted without a scheme
    assert main(["info", str(p)]) == 1
    assert "scheme" in capsys.readouterr().err


def test_info_truncated(tmp_path, coco, capsys):
    data = write_pose(signer_clip(coco, frames=3))
    p = tmp_path / "cut.spc1"
    p.write_bytes(data[:-10])
    assert main(["info", str(p)]) == 1
    assert "byte offset" in capsys.readouterr().err


def test_missing_input_path(capsys):
    assert main(["info", "/nonexistent/clip.spc1"]) == 2
    assert "no such input" in capsys.readouterr().err


# ---------------------------------------------------------------------------
# stability
# ---------------------------------------------------------------------------

def test_stability_corpus(tmp_path, coco, capsys):
    paths = make_corpus(tmp_path / "est", coco, 20, frames=6, noise=0.5)
    out = tmp_path / "out"
    assert main(["stability", "--out", str(out), str(tmp_path / "est")]) == 0

    agg = csv_rows(out / "stability_aggregates.csv")
    assert agg[0] == ["region", "metric", "median", "q1", "q3", "n"]
    assert len(agg) == 1 + 9
    assert all(row[5] == "20" for row in agg[1:])

    seq_rows = csv_rows(out / "stability_sequences.csv")
    assert seq_rows[0] == ["sequence_id", "region",
                          "E_v_x100", "J_acc_x100", "J_jerk_x100"]
    assert len(seq_rows) == 1 + 20 * 3
    ids = [r[0] for r in seq_rows[1:]]
    assert ids == sorted(ids)  # input order is path-sorted

    # the CSV is a faithful render of the library result
    seqs = [signer_clip(coco, frames=6, seed=i, noise=0.5) for i in range(20)]
    aggregates, _ = stability_report(seqs, coco,
                                     sequence_ids=[p.stem for p in paths])
    assert agg[1][2] == _fmt(aggregates[0].median)
    assert agg[9][4] == _fmt(aggregates[8].q3)


def test_stability_rerun_is_byte_identical(tmp_path, coco):
    make_corpus(tmp_path / "est", coco, 5, noise=1.0)
    out1, out2 = tmp_path / "a", tmp_path / "b"
    for out, jobs in ((out1, "1"), (out2, "4")):
        assert main(["stability", "--out", str(out), "--jobs", jobs,
                     str(tmp_path / "est")]) == 0
    for name in ("stability_aggregates.csv", "stability_sequences.csv"):
        assert (out1 / name).read_bytes() == (out2 / name).read_bytes()


def test_stability_empty_dir(tmp_path, capsys):
    empty = tmp_path / "none"
    empty.mkdir()
    assert main(["stability", "--out", str(tmp_path / "o"), str(empty)]) == 2
    assert "no inputs" in capsys.readouterr().err


def test_stability_mixed_schemes(tmp_path, coco, capsys):
    make_corpus(tmp_path / "c" / "a", coco, 1)
    make_corpus(tmp_path / "c" / "b", get_scheme("openpose-137"), 1)
    assert main(["stability", "--out", str(tmp_path / "o"),
                 str(tmp_path / "c")]) == 2
    assert "mixes schemes" in capsys.readouterr().err


def test_stability_bad_file_isolated(tmp_path, coco, capsys):
    make_corpus(tmp_path / "est", coco, 3)
    (tmp_path / "est" / "broken.spc1").write_bytes(b"not a container")
    out = tmp_path / "out"
    assert main(["stability", "--out", str(out), str(tmp_path / "est")]) == 1
    err = capsys.readouterr().err
    assert "failures:" in err and "broken.spc1" in err
    agg = csv_rows(out / "stability_aggregates.csv")
    assert len(agg) == 10 and all(row[5] == "3" for row in agg[1:])


def test_stability_region_selection(tmp_path, coco, capsys):
    make_corpus(tmp_path / "est", coco, 2)
    out = tmp_path / "out"
    assert main(["stability", "--regions", "left_hand,right_hand",
                 "--out", str(out), str(tmp_path / "est")]) == 0
    agg = csv_rows(out / "stability_aggregates.csv")
    assert [r[0] for r in agg[1:]] == ["left_hand"] * 3 + ["right_hand"] * 3
    capsys.readouterr()
    with pytest.raises(SystemExit):
        main(["stability", "--regions", "arms", "--out", str(out),
              str(tmp_path / "est")])


# ---------------------------------------------------------------------------
# hands
# ---------------------------------------------------------------------------

def test_hands_grouping_and_values(tmp_path, coco, capsys):
    make_corpus(tmp_path / "corpus" / "estA", coco, 3, frames=6)
    drop_dir = tmp_path / "corpus" / "estB"
    drop_dir.mkdir(parents=True)
    for i in range(2):
        seq = drop_hand_frames(signer_clip(coco, frames=8, seed=10 + i),
                               coco, "left", [1, 5])
        write_pose_file(drop_dir / f"clip{i}.spc1", seq)

    out = tmp_path / "out"
    assert main(["hands", "--out", str(out), str(tmp_path / "corpus")]) == 0
    rows = csv_rows(out / "hands.csv")
    assert rows[0] == ["estimator", "hand", "threshold", "pct"]
    assert len(rows) == 1 + 2 * 3 * 10

    a_rows = [r for r in rows[1:] if r[0] == "estA"]
    assert {r[3] for r in a_rows} == {"0"}
    b_left = [r for r in rows[1:] if r[0] == "estB" and r[1] == "left"]
    assert {r[3] for r in b_left} == {"25"}  # binary dropout: constant sweep
    b_right = [r for r in rows[1:] if r[0] == "estB" and r[1] == "right"]
    assert {r[3] for r in b_right} == {"0"}

    doc = json.loads((out / "hands.json").read_text(encoding="utf-8"))
    assert sorted(doc["estimators"]) == ["estA", "estB"]
    assert doc["estimators"]["estB"]["pct_left"] == [25.0] * 10
    assert doc["estimators"]["estB"]["n_signing_frames"] == 16


def test_hands_threshold_flag(tmp_path, coco, capsys):
    make_corpus(tmp_path / "est", coco, 1, frames=4)
    out = tmp_path / "out"
    assert main(["hands", "--thresholds", "0.2..0.6:0.2", "--out", str(out),
                 str(tmp_path / "est")]) == 0
    rows = csv_rows(out / "hands.csv")
    assert [r[2] for r in rows[1:4]] == ["0.2", "0.4", "0.6"]
    capsys.readouterr()
    for bad in ("0.5,0.3", "0,0.5", "nonsense"):
        with pytest.raises(SystemExit):
            main(["hands", "--thresholds", bad, "--out", str(out),
                  str(tmp_path / "est")])


def test_hands_resting_corpus_fails_per_estimator(tmp_path, coco, capsys):
    make_corpus(tmp_path / "est", coco, 2, signing=False)
    assert main(["hands", "--out", str(tmp_path / "o"),
                 str(tmp_path / "est")]) == 1
    assert "failures:" in capsys.readouterr().err


def test_hands_rerun_byte_identical(tmp_path, coco):
    make_corpus(tmp_path / "est", coco, 3)
    for sub in ("a", "b"):
        assert main(["hands", "--out", str(tmp_path / sub),
                     str(tmp_path / "est")]) == 0
    for name in ("hands.csv", "hands.json"):
        assert (tmp_path / "a" / name).read_bytes() == \
            (tmp_path / "b" / name).read_bytes()


# ---------------------------------------------------------------------------
# preprocess
# ---------------------------------------------------------------------------

def test_preprocess_outputs(tmp_path, coco, mediapipe, capsys):
    p = tmp_path / "in" / "clip.spc1"
    p.parent.mkdir()
    write_pose_file(p, signer_clip(coco, frames=5))
    out = tmp_path / "out"
    assert main(["preprocess", "--out", str(out), str(p)]) == 0

    meta = json.loads((out / "clip_meta.json").read_text(encoding="utf-8"))
    assert meta["D"] == 246
    assert meta["frames"] == 5
    assert meta["scheme_id"] == "coco-wholebody"
    rows = csv_rows(out / "clip_features.csv")
    assert len(rows) == 1 + 5
    assert len(rows[0]) == 246
    assert rows[0][0] == "k0_x" and rows[0][1] == "k0_y"

    mp = tmp_path / "in" / "mp.spc1"
    write_pose_file(mp, signer_clip(mediapipe, frames=3))
    assert main(["preprocess", "--keep-legs", "--out", str(out), str(mp)]) == 0
    meta = json.loads((out / "mp_meta.json").read_text(encoding="utf-8"))
    assert meta["D"] == 1728
    header = csv_rows(out / "mp_features.csv")[0]
    assert len(header) == 1728 and header[2] == "k0_z"


def test_preprocess_rerun_byte_identical(tmp_path, coco):
    p = tmp_path / "clip.spc1"
    write_pose_file(p, signer_clip(coco, frames=6, noise=2.0))
    for sub in ("a", "b"):
        assert main(["preprocess", "--out", str(tmp_path / sub), str(p)]) == 0
    for name in ("clip_features.csv", "clip_meta.json"):
        assert (tmp_path / "a" / name).read_bytes() == \
            (tmp_path / "b" / name).read_bytes()


def test_preprocess_shoulder_failure_isolated(tmp_path, coco, capsys):
    good = signer_clip(coco, frames=4)
    bad = with_dropout(good, np.ones(good.conf.shape, dtype=bool))
    d = tmp_path / "est"
    d.mkdir()
    write_pose_file(d / "good.spc1", good)
    write_pose_file(d / "noshoulders.spc1", bad)
    out = tmp_path / "out"
    assert main(["preprocess", "--out", str(out), str(d)]) == 1
    err = capsys.readouterr().err
    assert "noshoulders.spc1" in err
    assert (out / "good_features.csv").exists()
    assert not (out / "noshoulders_features.csv").exists()


# ---------------------------------------------------------------------------
# occlusion
# ---------------------------------------------------------------------------

def test_occlusion_csv_matches_library(tmp_path, coco, capsys):
    seqs = [signer_clip(coco, frames=10, seed=i) for i in range(2)]
    d = tmp_path / "est"
    d.mkdir()
    for i, seq in enumerate(seqs):
        write_pose_file(d / f"c{i}.spc1", seq)
    out = tmp_path / "out"
    assert main(["occlusion", "--iou", "0.02", "--out", str(out), str(d)]) == 0
    rows = csv_rows(out / "occlusion.csv")
    assert rows[0] == ["sequence_id", "frame_index", "kind", "score"]
    expected = []
    for i, seq in enumerate(seqs):
        expected.extend(
            [f"c{i}", str(c.frame_index), c.kind, _fmt(c.overlap_score)]
            for c in screen_occlusions(seq, coco, iou_threshold=0.02))
    assert rows[1:] == expected


def test_occlusion_iou_domain(tmp_path, coco, capsys):
    p = tmp_path / "c.spc1"
    write_pose_file(p, signer_clip(coco, frames=2))
    for bad in ("0", "1.5", "-0.1"):
        assert main(["occlusion", "--iou", bad, "--out", str(tmp_path / "o"),
                     str(p)]) == 2
    assert "--iou" in capsys.readouterr().err


# ---------------------------------------------------------------------------
# dump-scheme
# ---------------------------------------------------------------------------

def test_dump_scheme_stdout(capsys):
    assert main(["dump-scheme", "--scheme", "coco-wholebody"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["id"] == "coco-wholebody"
    assert doc["total"] == 133


def test_dump_scheme_alias_and_out(tmp_path, capsys):
    target = tmp_path / "dumped.json"
    assert main(["dump-scheme", "--scheme", "mmpose-wholebody",
                 "--out", str(target)]) == 0
    doc = json.loads(target.read_text(encoding="utf-8"))
    assert doc["id"] == "coco-wholebody"


def test_dump_scheme_needs_scheme(capsys):
    assert main(["dump-scheme"]) == 2
    assert "dump-scheme needs" in capsys.readouterr().err


def test_scheme_file_override(tmp_path, coco, capsys):
    target = tmp_path / "custom.json"
    assert main(["dump-scheme", "--scheme", "coco-wholebody",
                 "--out", str(target)]) == 0
    doc = json.loads(target.read_text(encoding="utf-8"))
    doc["id"] = "custom-layout"
    target.write_text(json.dumps(doc), encoding="utf-8")

    clip = tmp_path / "clip.json"
    write_json_clip(clip, signer_clip(coco, frames=4))
    out = tmp_path / "out"
    assert main(["stability", "--scheme-file", str(target),
                 "--out", str(out), str(clip)]) == 0
    agg = csv_rows(out / "stability_aggregates.csv")
    assert len(agg) == 10
