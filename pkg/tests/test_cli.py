import json
import subprocess
import sys

import numpy as np
import pytest

from convexcert.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def write(tmp_path, name, obj):
    p = tmp_path / name
    p.write_text(json.dumps(obj) if not isinstance(obj, str) else obj)
    return str(p)


SQUARE = {"dim": 2, "points": [[1, 0], [-1, 0], [0, 1], [0, -1]]}
CORNER = {"dim": 2, "points": [[0, 0], [1, 0], [0, 1]]}
ORTHANT = {"dim": 2, "points": [[1, 0], [0, 1]]}
SIMPLEX2 = {"dim": 2, "points": [[1, 0], [-0.5, 0.8660254037844386], [-0.5, -0.8660254037844386]]}


def test_member_square(tmp_path, capsys):
    code, out, _ = run(capsys, "member", "--in", write(tmp_path, "sq.json", SQUARE))
    res = json.loads(out)
    assert code == 0 and res["verdict"] == "inside"
    assert abs(sum(res["weights"]) - 1) < 1e-12


def test_rankin_check_simplex(tmp_path, capsys):
    code, out, _ = run(capsys, "rankin-check", "--mode", "obtuse", "--in", write(tmp_path, "s.json", SIMPLEX2))
    res = json.loads(out)
    assert code == 0 and res["n"] == 3 == res["d"] + 1


@pytest.mark.parametrize(
    "argv, data, expected",
    [
        (["member"], SQUARE, 0),
        (["member"], ORTHANT, 1),
        (["interior"], SQUARE, 0),
        (["interior"], CORNER, 1),
        (["separate"], ORTHANT, 0),
        (["separate"], SQUARE, 1),
        (["separate", "--mode", "weak"], CORNER, 0),
        (["separate", "--mode", "weak"], SQUARE, 1),
        (["separate", "--mode", "sideways"], SQUARE, 2),
        (["reduce-caratheodory"], SQUARE, 0),
        (["reduce-caratheodory", "--faithful"], SQUARE, 0),
        (["reduce-caratheodory"], ORTHANT, 1),
        (["reduce-caratheodory"], {**SQUARE, "weights": [0.9, 0.1, 0.0, 0.0]}, 2),
        (["reduce-steinitz"], SQUARE, 0),
        (["reduce-steinitz"], CORNER, 2),
        (["certify-caratheodory"], ORTHANT, 0),
        (["certify-caratheodory"], SQUARE, 1),
        (["certify-steinitz"], CORNER, 0),
        (["certify-steinitz"], SQUARE, 1),
        (["rankin-check", "--mode", "nonacute"], SQUARE, 0),
        (["rankin-check", "--mode", "obtuse"], SQUARE, 1),
        (["rankin-check"], CORNER, 2),
        (["rankin-check", "--mode", "acute"], SQUARE, 2),
        (["rankin-witness", "--mode", "nonacute"], SQUARE, 0),
        (["rankin-witness", "--dim", "2"], {"gram": [[1, -1 / 3, -1 / 3, -1 / 3], [-1 / 3, 1, -1 / 3, -1 / 3], [-1 / 3, -1 / 3, 1, -1 / 3], [-1 / 3, -1 / 3, -1 / 3, 1]]}, 1),
        (["rankin-witness"], {"gram": [[1, 0], [0, 1]]}, 2),
        (["rankin-witness", "--dim", "2"], {"gram": [[1, 2], [0, 1]]}, 2),
        (["member"], {"dim": 2, "points": [[1, 2, 3]]}, 2),
        (["member"], "{not json", 2),
        (["member"], {"dim": 2, "points": [[5e-9, 1.0], [5e-9, -1.0]]}, 3),
    ],
)
def test_exit_code_matrix(tmp_path, capsys, argv, data, expected):
    path = write(tmp_path, "in.json", data)
    code, out, err = run(capsys, *argv, "--in", path)
    assert code == expected, (out, err)
    json.loads(out)
    if expected >= 2:
        assert err


def test_missing_file(capsys):
    code, _, err = run(capsys, "member", "--in", "/nonexistent/x.json")
    assert code == 2 and "cannot read" in err


def test_unknown_command(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2


def test_gen_errors(capsys):
    assert run(capsys, "gen", "--dim", "2", "--n", "5", "--kind", "nonacute")[0] == 2
    assert run(capsys, "gen", "--dim", "2", "--kind", "inside")[0] == 2
    assert run(capsys, "gen", "--dim", "2", "--n", "3", "--kind", "bogus")[0] == 2


@pytest.mark.parametrize("kind", ["inside", "outside", "interior", "boundary", "obtuse", "nonacute"])
def test_gen_round_trip(tmp_path, capsys, kind):
    n = {"obtuse": 4, "nonacute": 5}.get(kind, 7)
    out_path = str(tmp_path / "g.json")
    code, _, _ = run(capsys, "gen", "--dim", "3", "--n", str(n), "--kind", kind, "--seed", "9", "--out", out_path)
    assert code == 0
    code, again, _ = run(capsys, "gen", "--dim", "3", "--n", str(n), "--kind", kind, "--seed", "9")
    text = open(out_path).read()
    assert text == again
    obj = json.loads(text)
    from convexcert.generate import InstanceSpec, generate

    np.testing.assert_array_equal(np.array(obj["points"]), generate(InstanceSpec(3, n, kind, 9)).points)
    expected = {"inside": 0, "outside": 1, "interior": 0, "boundary": 0}
    if kind in expected:
        assert run(capsys, "member", "--in", out_path)[0] == expected[kind]
    if kind == "inside":
        code, out, _ = run(capsys, "reduce-caratheodory", "--in", out_path)
        assert code == 0 and len(json.loads(out)["support"]) <= 4


def test_determinism(tmp_path, capsys):
    path = write(tmp_path, "o.json", {"dim": 3, "points": [[1, 0.2, 0.1], [0.3, 1, 0], [0.2, 0.1, 1], [1, 1, 1]]})
    a = run(capsys, "certify-caratheodory", "--in", path)[1]
    b = run(capsys, "certify-caratheodory", "--in", path)[1]
    assert a == b and json.loads(a)["kind"] == "caratheodory"


def test_config_file_and_override(tmp_path, capsys):
    cfg = write(tmp_path, "cfg.json", {"dim": 2, "n": 4, "kind": "interior", "seed": 3})
    code, a, _ = run(capsys, "gen", "--config", cfg)
    assert code == 0 and json.loads(a)["seed"] == 3
    code, b, _ = run(capsys, "gen", "--config", cfg, "--seed", "4")
    assert json.loads(b)["seed"] == 4
    bad = write(tmp_path, "bad.json", {"colour": "blue"})
    assert run(capsys, "gen", "--config", bad)[0] == 2


def test_stdin_input(monkeypatch, capsys):
    import io

    monkeypatch.setattr(sys, "stdin", io.StringIO(json.dumps(SQUARE)))
    assert run(capsys, "interior")[0] == 0


def test_floats_round_trip(tmp_path, capsys):
    x = 0.1 + 0.2
    path = write(tmp_path, "p.json", {"dim": 1, "points": [[x], [-x / 3]]})
    code, out, _ = run(capsys, "member", "--in", path)
    res = json.loads(out)
    assert code == 0 and res["weights"][0] + res["weights"][1] == pytest.approx(1, abs=1e-15)


def test_module_entry_point(tmp_path):
    path = write(tmp_path, "sq.json", SQUARE)
    proc = subprocess.run(
        [sys.executable, "-m", "convexcert", "member", "--in", path], capture_output=True, text=True
    )
    assert proc.returncode == 0 and json.loads(proc.stdout)["verdict"] == "inside"
