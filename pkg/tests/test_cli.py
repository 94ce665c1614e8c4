import json
import math
import subprocess
import sys

import pytest

from digifix.cli import main
from digifix.image import DigitalImage
from digifix.selfmap import SelfMap


@pytest.fixture
def files(tmp_path, cx_image, cx_map):
    def write(name, obj):
        p = tmp_path / name
        p.write_text(json.dumps(obj))
        return str(p)

    return {
        "img": write("img.json", cx_image.to_json()),
        "f": write("f.json", cx_map.to_json()),
        "id": write("id.json", SelfMap.identity(3).to_json()),
        "c1": write("c1.json", SelfMap.constant(3, 1).to_json()),
        "bad": write("bad.json", {"table": [0, 5, 1]}),
        "line": write("line.json", DigitalImage(((0,), (1,), (2,)), 1).to_json()),
        "write": write,
    }


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv)
    return code, json.loads(out)


def test_image_commands(capsys, files):
    code, out = run_json(capsys, "image", "validate", "--image", files["img"])
    assert code == 0 and out["valid"] and out["points"] == 3
    code, out = run_json(capsys, "image", "info", "--image", files["img"])
    assert code == 0 and out["connected"] and out["uniformly_connected"]
    assert out["diameter"]["payload"] == 5 and out["discreteness_witness"]["value"] == 2.0


def test_classify(capsys, files):
    code, out = run_json(capsys, "map", "classify", "--image", files["img"], "--map", files["f"])
    assert code == 0
    assert out["is_banach"] is True and out["continuous"] is False
    assert out["gamma_star"] == pytest.approx(2 / math.sqrt(5), abs=1e-12)
    code, out = run_json(capsys, "map", "classify", "--image", files["img"], "--map", files["id"])
    assert code == 0 and out["is_banach"] is False


def test_fixpoints_and_iterate(capsys, files):
    code, out = run_json(capsys, "map", "fixpoints", "--image", files["img"], "--map", files["f"])
    assert out["fixed_points"] == [0]
    code, out = run_json(capsys, "map", "iterate", "--image", files["img"], "--map", files["f"], "--x0", "2")
    assert out["image_sets"] == [[0, 1, 2], [0, 1], [0], [0]]
    assert out["singleton_collapse"]["steps"] == 2
    assert out["orbit"][:3] == [2, 1, 0]


def test_pair_commands(capsys, files):
    code, out = run_json(capsys, "pair", "check", "--image", files["img"], "--s", files["c1"], "--t", files["id"])
    assert code == 0 and out["containment"] and out["weakly_commutative"]
    code, out = run_json(capsys, "pair", "saluja", "--image", files["img"], "--j", files["c1"],
                         "--k", files["id"], "--xi", "1/2,0,0")
    assert code == 0 and out["common_fixed_point"] == 1
    code, out = run_json(capsys, "pair", "saluja", "--image", files["img"], "--j", files["id"], "--k", files["id"])
    assert code == 1 and out["error"] == "premise" and out["violations"]


def test_quad_commands(capsys, files):
    args = ["--image", files["img"], "--j", files["c1"], "--k", files["c1"], "--l", files["id"]]
    code, out = run_json(capsys, "quad", "saljhade", *args, "--m", files["id"], "--xi", "0.5")
    assert code == 0 and out["common_fixed_point"] == 1
    code, out = run_json(capsys, "quad", "lm-collapse", *args, "--xi", "1/2")
    assert code == 0 and out["J_equals_K"]


def test_complexity_and_scc(capsys, files, tmp_path):
    code, out = run_json(capsys, "complexity", "--image", files["img"])
    assert code == 0 and out["c_sharp"] == 2
    code, out = run_json(capsys, "scc", "find", "--dim", "2", "--u", "2", "--len", "7", "--window", "5x5")
    assert code == 0 and out["found"] and len(out["curve"]) == 7
    curve = files["write"]("curve.json", {"dim": 2, "adjacency": {"cu": 2}, "points": out["curve"]})
    code, out = run_json(capsys, "scc", "check", "--image", curve, "--han44", "--cap", "7")
    assert code == 0 and out["simple_closed_curve"] and out["bound_holds"]


def test_exit_codes(capsys, files, tmp_path):
    assert run(capsys, "map", "classify", "--image", files["img"], "--map", files["bad"])[0] == 2
    assert run(capsys, "map", "classify", "--image", files["img"])[0] == 2
    assert run(capsys, "paper-suite", "--only", "S11")[0] == 2
    assert run(capsys, "nonsense")[0] == 2
    broken = tmp_path / "broken.json"
    broken.write_text("{not json")
    assert run(capsys, "image", "validate", "--image", str(broken))[0] == 2
    assert run(capsys, "image", "validate", "--image", str(tmp_path / "missing.json"))[0] == 2
    big = files["write"]("big.json", DigitalImage(tuple((i,) for i in range(9)), 1).to_json())
    assert run(capsys, "complexity", "--image", big)[0] == 2
    assert run(capsys, "scc", "find", "--dim", "2", "--u", "1", "--len", "5", "--window", "4x4")[0] == 1
    assert run(capsys, "scc", "find", "--dim", "2", "--u", "2", "--len", "3", "--window", "4x4")[0] == 2
    assert run(capsys, "map", "classify", "--metric", "l0", "--image", files["img"], "--map", files["f"])[0] == 2


def test_json_round_trip(capsys, files):
    code, out = run_json(capsys, "scc", "find", "--dim", "2", "--u", "2", "--len", "6", "--window", "5x5")
    img = DigitalImage.from_json({"dim": 2, "adjacency": {"cu": 2}, "points": out["curve"]})
    assert len(img) == 6
    code, out = run_json(capsys, "complexity", "--image", files["img"])
    f = SelfMap.from_json({"table": out["witness_map"]})
    assert len(f) == 3


def test_paper_suite_subset_is_deterministic(capsys):
    first = run(capsys, "paper-suite", "--only", "S1,S2", "--only", "S9")
    second = run(capsys, "paper-suite", "--only", "S1,S2", "--only", "S9")
    assert first[0] == 0 and first[1] == second[1]
    report = json.loads(first[1])
    assert [r["scenario"] for r in report] == ["S1", "S2", "S9"]
    assert all(r["pass"] for r in report)


def test_pretty_output(capsys, files):
    code, out, _ = run(capsys, "paper-suite", "--only", "S1", "--pretty")
    assert code == 0 and "PASS" in out
    code, out, _ = run(capsys, "map", "fixpoints", "--image", files["img"], "--map", files["f"], "--pretty")
    assert "fixed_points: [0]" in out


def test_module_entry_point(files):
    proc = subprocess.run(
        [sys.executable, "-m", "digifix", "map", "fixpoints", "--image", files["img"], "--map", files["f"]],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0 and json.loads(proc.stdout)["fixed_points"] == [0]
