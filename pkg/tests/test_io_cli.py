import io as stdio
import json
from fractions import Fraction as F
from pathlib import Path

import pytest
from hypothesis import given

from gen import rand_frac, rngs
from okk import io
from okk.cli import COMMANDS, main, run
from okk.errors import ParseError
from okk.geometry import polygon, vec

ROOT = Path(__file__).resolve().parent.parent
PROBLEMS = ROOT / "problems"


def call(command, path, *, as_json=True, svg_path=None):
    out, err = stdio.StringIO(), stdio.StringIO()
    code = run(command, str(path), as_json, svg_path, out, err)
    return code, out.getvalue(), err.getvalue()


def write(tmp_path, doc, name="p.json"):
    p = tmp_path / name
    p.write_text(doc if isinstance(doc, str) else json.dumps(doc))
    return p


F1 = {"fan": [[1, 0], [0, 1], [-1, 0], [-1, -1]], "divisor": ["0", "0", "1", "2"],
      "flag": {"toric": [0, 1], "binomial": [0, 1]}}


def test_rat_parsing():
    assert io.rat("3/4", "x") == F(3, 4) and io.rat(-2, "x") == -2 and io.rat(" -7/3 ", "x") == F(-7, 3)
    for bad in ["1.5", "abc", True, None, "1/0", [1]]:
        with pytest.raises(ParseError):
            io.rat(bad, "x")


@given(rngs())
def test_rational_round_trip(rng):
    q = rand_frac(rng, -50, 50, 40)
    assert io.rat(io.fmt(q), "x") == q
    doc = io.to_jsonable({"p": vec(q, -q), "n": 3, "poly": polygon((0, 0), (q + 51, 0), (0, 1))})
    back = json.loads(json.dumps(doc))
    assert io.rat(back["p"][0], "x") == q and back["n"] == 3


def test_parse_errors_have_paths():
    cases = [
        ('{"fan": [[1, 0], [0, 1], [-1, -1]], "divisor": [1.5, 0, 0]}', "floating point"),
        ('{"fan": [[1, 0], [0, 1], [-1, -1]], "divisr": [1, 0, 0]}', "unknown field 'divisr'"),
        ('{"fan": [[1, 0], [0, 1], [-1, -1]], "divisor": [1, 0]}', "2 coefficients for 3 rays"),
        ('{"fan": [[1, 0], [0, 1], [-1, -1], "divisor": [1, 0]}', "line 1"),
        ('{"fan": [[1, 0], [0, "1"], [-1, -1]]}', "$.fan[1][1]"),
        ('{"divisor": [1]}', "needs a fan"),
        ('{"fan": [[1, 0], [0, 1], [-1, -1]], "options": {"k_max": 0}}', "must be positive"),
    ]
    for text, needle in cases:
        with pytest.raises(ParseError) as e:
            io.loads(text)
        assert needle in str(e.value), (text, str(e.value))


def test_witness_parsing():
    pf = io.loads(json.dumps({**F1, "witnesses": [{"shift": [0, 0], "target": [0, 0], "order": 1,
                                                  "factors": [{"support": [[0, 0], [1, 0]]}]}]}))
    w = pf.witnesses[0]
    assert w.claimed_order == 1 and w.factors[0].is_binomial
    with pytest.raises(ParseError):
        io.loads(json.dumps({**F1, "witnesses": [{"shift": [0, 0], "order": 1}]}))
    with pytest.raises(ParseError):
        io.loads(json.dumps({**F1, "witnesses": [{"shift": [0, 0], "target": [0, 0], "order": 1,
                                                  "factors": [{"support": [[0, 0]]}]}]}))


def test_certify_f1():
    code, out, _ = call("certify", PROBLEMS / "f1_certify.json")
    doc = json.loads(out)
    assert code == 0 and doc["exit_code"] == 0
    assert doc["result"]["lower"] == doc["result"]["upper"] == "11/6"
    assert doc["result"]["status"] == "Certified"


def test_text_output():
    code, out, _ = call("beta", PROBLEMS / "f1_certify.json", as_json=False)
    assert code == 0
    assert "breakpoints: 0 1 2" in out and "values: 1 1 0" in out


def test_homogenize_cli():
    code, out, _ = call("homogenize", PROBLEMS / "f1_homogenize.json")
    assert code == 0 and json.loads(out)["result"]["coefficients"] == ["0", "2", "1", "0"]


def test_zariski_cli_with_t():
    code, out, _ = call("zariski", PROBLEMS / "f1_nofun.json")
    r = json.loads(out)["result"]
    assert code == 0
    assert r["positive_part_polytope"] == [["0", "1/2"], ["1", "1/2"], ["1", "1"], ["0", "2"]]


def test_nofun_cli():
    code, out, _ = call("nofun", PROBLEMS / "f1_nofun.json")
    r = json.loads(out)["result"]
    assert r["opposite_vertex"] == ["1", "1"]
    assert r["function"] == {"gradient": ["-1", "1"], "constant": "1"}


def test_negative_verdicts_exit_one():
    assert call("zwc", PROBLEMS / "quadrilateral.json")[0] == 1
    code, out, _ = call("seshadri", PROBLEMS / "quadrilateral.json")
    assert code == 1 and json.loads(out)["result"]["reason"] == "NotZwc"


def test_gap_exits_one(tmp_path):
    code, out, _ = call("certify", write(tmp_path, F1))
    assert code == 1 and json.loads(out)["result"]["status"] == "Gap(11/6)"


def test_input_errors_exit_two(tmp_path):
    bad_fan = {**F1, "fan": [[1, 0], [0, 1], [-2, -1], [0, -1]]}
    assert call("polytope", write(tmp_path, bad_fan))[0] == 2
    code, _, err = call("polytope", write(tmp_path, '{"fan": 1.0}'))
    assert code == 2 and "ParseError" in err
    assert call("polytope", tmp_path / "missing.json")[0] == 2
    assert call("homogenize", PROBLEMS / "f1_certify.json")[0] == 2
    assert call("certify", PROBLEMS / "f1_zariski.json")[0] == 2
    assert call("zariski", write(tmp_path, {**F1, "divisor": [-1, 0, 3, 3]}))[0] == 2


def test_deterministic_output(tmp_path):
    for cmd in sorted(COMMANDS):
        for p in sorted(PROBLEMS.glob("*.json")):
            a, b = call(cmd, p), call(cmd, p)
            assert a == b


def test_kmax_env(tmp_path, monkeypatch):
    monkeypatch.setenv("OKK_KMAX", "1")
    code, out, _ = call("seshadri", PROBLEMS / "f1_certify.json")
    # the F1 witnesses have integral multiplicities, so k_max = 1 still works
    assert code == 0 and json.loads(out)["result"]["integral"] == "11/6"
    monkeypatch.setenv("OKK_KMAX", "zero")
    assert call("seshadri", PROBLEMS / "f1_certify.json")[0] == 2
    thirds = write(tmp_path, {"polygon": [[0, 0], [2, 0], [2, "1/3"], [0, "5/3"]], "flag": {"binomial": [1, 0]}})
    monkeypatch.setenv("OKK_KMAX", "2")
    assert call("seshadri", thirds)[0] == 1
    monkeypatch.setenv("OKK_KMAX", "3")
    assert json.loads(call("seshadri", thirds)[1])["result"]["integral"] == "73/27"


def test_svg_written(tmp_path):
    for cmd in ("polytope", "beta", "nobody", "plmap", "zwc", "seshadri"):
        target = tmp_path / f"{cmd}.svg"
        code, out, _ = call(cmd, PROBLEMS / "f1_certify.json", svg_path=str(target))
        text = target.read_text()
        assert text.startswith("<?xml") and "<svg" in text and text.rstrip().endswith("</svg>")
        assert json.loads(out)["svg"] == str(target)


def test_main_entry(capsys):
    assert main(["core", str(PROBLEMS / "f1_certify.json")]) == 0
    out = capsys.readouterr().out
    assert "r* = 1/2" in out and "q = 2" in out
    with pytest.raises(SystemExit):
        main(["nonsense", "x.json"])
