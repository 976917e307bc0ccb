"""End-to-end command-line interface tests."""
import struct

import numpy as np
import pytest

from masks import Layer, MlpNetwork, write_weights
from masks.cli import main
from masks.dataio import IMAGES_MAGIC, LABELS_MAGIC

MODEL = """\
worlds: w0 w6 w8 w9
agent A0: {w0 w6 w8 w9}
agent A1: {w0 w6 w8}
val w0: c0
val w6: c6
val w8: c8
val w9: c9
"""


@pytest.fixture
def model_file(tmp_path):
    path = tmp_path / "model.txt"
    path.write_text(MODEL)
    return str(path)


def constant_net(label_index: int) -> MlpNetwork:
    bias = np.zeros(2, dtype=np.float32)
    bias[label_index] = 1.0
    return MlpNetwork(
        (Layer(np.zeros((2, 2), dtype=np.float32), bias),), ("a", "b"))


def identity_net() -> MlpNetwork:
    return MlpNetwork(
        (Layer(np.eye(2, dtype=np.float32), np.zeros(2, np.float32)),),
        ("a", "b"))


def write_point(tmp_path, *values) -> str:
    name = "point_" + "_".join(str(v).replace(".", "p").replace("-", "m")
                               for v in values) + ".txt"
    path = tmp_path / name
    path.write_text(",".join(str(v) for v in values) + "\n")
    return str(path)


class TestModelCommands:
    def test_check_true_and_false(self, model_file, capsys):
        assert main(["check", "--model", model_file, "--world", "w0",
                     "--formula", "K{A0} (c0 | c6 | c8 | c9)"]) == 0
        assert capsys.readouterr().out.strip() == "true"
        assert main(["check", "--model", model_file, "--world", "w0",
                     "--formula", "K{A0} c0"]) == 0
        assert capsys.readouterr().out.strip() == "false"

    def test_check_unknown_world_errors(self, model_file, capsys):
        assert main(["check", "--model", model_file, "--world", "nope",
                     "--formula", "T"]) == 1
        assert "error:" in capsys.readouterr().err

    def test_announce_filters_worlds(self, model_file, capsys):
        assert main(["announce", "--model", model_file,
                     "--formula", "c0 | c2 | c4 | c6 | c8"]) == 0
        out = capsys.readouterr().out
        assert out.splitlines()[0] == "worlds: w0 w6 w8"

    def test_reduce_roundtrip(self, tmp_path, capsys):
        # a power-set model over two classes reduces to the two singletons
        path = tmp_path / "m.txt"
        path.write_text(
            "worlds: a b ab\n"
            "agent A: {a b ab}\n"
            "val a: c0\nval b: c1\nval ab: c0 c1\n")
        assert main(["reduce", "--model", str(path)]) == 0
        out = capsys.readouterr().out
        assert out.splitlines()[0] == "worlds: a b"

    def test_product_with_announcement(self, tmp_path, capsys):
        b = tmp_path / "b.txt"
        b.write_text("worlds: 0 3\nagent B: {0 3}\nval 0: c0\nval 3: c3\n")
        a = tmp_path / "a.txt"
        a.write_text("worlds: 0 6\nagent A: {0 6}\nval 0: c0\nval 6: c6\n")
        assert main(["product", "--model", str(b), "--model", str(a),
                     "--announce", "0:c0 | 1:c0"]) == 0
        out = capsys.readouterr().out
        assert out.splitlines()[0] == "worlds: 00 06 30"

    def test_product_cap(self, tmp_path, capsys):
        b = tmp_path / "b.txt"
        b.write_text("worlds: 0 3\nagent B: {0 3}\nval 0: c0\nval 3: c3\n")
        a = tmp_path / "a.txt"
        a.write_text("worlds: 0 6\nagent A: {0 6}\nval 0: c0\nval 6: c6\n")
        assert main(["product", "--model", str(b), "--model", str(a),
                     "--cap", "3"]) == 1


class TestNetCommands:
    def test_ckc_robust(self, tmp_path, capsys):
        net = tmp_path / "net.nn"
        net.write_bytes(write_weights(identity_net()))
        point = write_point(tmp_path, 0.9, 0.1)
        assert main(["ckc", "--net", str(net), "--input", point,
                     "--perturb", "eps:0.1:linf:2"]) == 0
        out = capsys.readouterr().out.splitlines()
        assert out == ["robust", "a"]

    def test_ckc_not_robust(self, tmp_path, capsys):
        net = tmp_path / "net.nn"
        net.write_bytes(write_weights(identity_net()))
        point = write_point(tmp_path, 0.5, 0.45)
        assert main(["ckc", "--net", str(net), "--input", point,
                     "--perturb", "eps:0.1:linf:2"]) == 0
        out = capsys.readouterr().out.splitlines()
        assert out == ["not-robust", "a", "b"]

    def test_verify_exit_codes(self, tmp_path, capsys):
        nets = tmp_path / "nets"
        nets.mkdir()
        (nets / "n0.nn").write_bytes(write_weights(identity_net()))
        verified_point = write_point(tmp_path, 0.9, 0.1)
        assert main(["verify", "--nets", str(nets), "--input", verified_point,
                     "--perturb", "eps:0.1:linf:2"]) == 0
        assert capsys.readouterr().out.strip() == "verified a"

        boundary = write_point(tmp_path, 0.5, 0.45)
        assert main(["verify", "--nets", str(nets), "--input", boundary,
                     "--perturb", "eps:0.1:linf:2"]) == 2
        assert capsys.readouterr().out.splitlines() == ["candidates", "a", "b"]

        (nets / "n1.nn").write_bytes(write_weights(constant_net(1)))
        assert main(["verify", "--nets", str(nets), "--input", verified_point,
                     "--perturb", "eps:0.1:linf:2"]) == 3
        assert capsys.readouterr().out.strip() == "inconsistent"

    def test_verify_with_external_source(self, tmp_path, capsys):
        nets = tmp_path / "nets"
        nets.mkdir()
        (nets / "n0.nn").write_bytes(write_weights(identity_net()))
        boundary = write_point(tmp_path, 0.5, 0.45)
        assert main(["verify", "--nets", str(nets), "--input", boundary,
                     "--perturb", "eps:0.1:linf:2",
                     "--external", "~b"]) == 0
        assert capsys.readouterr().out.strip() == "verified a"

    def test_missing_nets_dir(self, tmp_path, capsys):
        empty = tmp_path / "empty"
        empty.mkdir()
        point = write_point(tmp_path, 0.9, 0.1)
        assert main(["verify", "--nets", str(empty), "--input", point,
                     "--perturb", "eps:0.1:linf:2"]) == 1

    def test_perturb_file_spec(self, tmp_path, capsys):
        net = tmp_path / "net.nn"
        net.write_bytes(write_weights(identity_net()))
        point = write_point(tmp_path, 0.9, 0.1)
        extra = tmp_path / "extra.txt"
        extra.write_text("# a manipulation sample\n0.1,0.9\n")
        assert main(["ckc", "--net", str(net), "--input", point,
                     "--perturb", f"file:{extra}"]) == 0
        out = capsys.readouterr().out.splitlines()
        assert out == ["not-robust", "a", "b"]


class TestExperimentCommand:
    def test_writes_csv(self, tmp_path, capsys):
        # two 4-pixel "images" classified by a net reading pixel sums
        nets = tmp_path / "nets"
        nets.mkdir()
        net = MlpNetwork(
            (Layer(np.array([[1, 1, 1, 1], [-1, -1, -1, -1]],
                            dtype=np.float32),
                   np.array([-2.0, 2.0], dtype=np.float32)),),
            ("c1", "c0"))
        (nets / "n0.nn").write_bytes(write_weights(net))

        images = np.zeros((2, 2, 2), dtype=np.uint8)
        images[1] = 255
        img = tmp_path / "images.idx"
        lab = tmp_path / "labels.idx"
        img.write_bytes(struct.pack(">IIII", IMAGES_MAGIC, 2, 2, 2)
                        + images.tobytes())
        lab.write_bytes(struct.pack(">II", LABELS_MAGIC, 2) + bytes([0, 1]))

        out = tmp_path / "report.csv"
        assert main(["experiment", "--nets", str(nets),
                     "--mnist-images", str(img), "--mnist-labels", str(lab),
                     "--perturb", "affine:-0.2:0.2:5",
                     "--agents", "1", "--seed", "7",
                     "--out", str(out)]) == 0
        text = out.read_bytes().decode()
        lines = text.splitlines()
        assert any(l.startswith("# seed=7") for l in lines)
        assert ("agents,verified_correct,verified_wrong,unverified,"
                "inconsistent,error_rate,truth_rate,error_truth_ratio"
                in lines)
        assert text.endswith("\n") and "\r" not in text
