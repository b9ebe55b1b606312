import json
import subprocess
import sys

import pytest
from hypothesis import given, settings, strategies as st

from cmreg.cli import main
from cmreg.dsl import ScriptSemanticError, ScriptSyntaxError, parse, render_script
from cmreg.report import CommandResult, Flags, Report, execute, render

EX21 = """field QQ;
base y1 y2;
positive x1;
module M = coker { shifts: [(0,0,0)], matrix: [[x1]] };
reg M wrt (y1, y2)+R+;
"""


def test_parse_general_regime():
    s = parse("field QQ; positive x1 x2; ideal I = [x1^2, x1*x2, x2^2];")
    assert s.ring.regime == "GENERAL" and len(s.ideals["I"]) == 3


def test_semantic_errors():
    with pytest.raises(ScriptSemanticError, match="6 is not prime") as e:
        parse("field Fp 6; positive x1;")
    assert (e.value.line, e.value.col) == (1, 10)
    with pytest.raises(ScriptSemanticError, match="not fine-multihomogeneous in MULTIGRADED"):
        parse("field QQ; base y1; positive x1; module M = coker { shifts: [(0,0)], matrix: [[y1 + x1]] };")
    with pytest.raises(ScriptSemanticError, match="unknown variable"):
        parse("field QQ; positive x1; ideal I = [x2];")
    with pytest.raises(ScriptSemanticError, match="unknown name"):
        parse("field QQ; positive x1; betti N;")
    with pytest.raises(ScriptSemanticError, match="already used"):
        parse("field QQ; positive x1; ideal I = [x1]; ideal I = [x1^2];")
    with pytest.raises(ScriptSemanticError, match="tuple"):
        parse("field QQ; base y1; positive x1; module M = coker { shifts: [0], matrix: [[x1]] };")
    with pytest.raises(ScriptSemanticError, match="unknown statement"):
        parse("field QQ; positive x1; verify Thm9.9;")
    with pytest.raises(ScriptSemanticError, match="not homogeneous"):
        parse("field QQ; positive x1; ideal I = [x1^2 + x1];")


def test_syntax_errors_carry_position_and_expected_set():
    with pytest.raises(ScriptSyntaxError) as e:
        parse("field QQ positive x1;")
    assert (e.value.line, e.value.col) == (1, 10) and e.value.expected == ("';'",)
    with pytest.raises(ScriptSyntaxError) as e:
        parse("field QQ;\npositive x1;\nideal I = [x1 +];")
    assert e.value.line == 3 and "variable" in e.value.expected
    with pytest.raises(ScriptSyntaxError) as e:
        parse("field RR;")
    assert set(e.value.expected) == {"QQ", "Fp"}
    with pytest.raises(ScriptSyntaxError):
        parse("field QQ; positive x1; frobnicate;")
    with pytest.raises(ScriptSyntaxError):
        parse("field QQ; positive x1; ideal I = [x1 $ 2];")


def test_syntax_and_semantic_errors_are_distinct():
    assert not issubclass(ScriptSyntaxError, ScriptSemanticError)
    assert not issubclass(ScriptSemanticError, ScriptSyntaxError)


CANONICAL = [
    EX21,
    "field Fp 3;\npositive x1 x2 x3;\nideal I = [x1^2 - x2*x3, x2^2];\n"
    "module N = coker { shifts: [0, -1], matrix: [[x1, x2^2], [0, x3]] };\n"
    "gb N;\nresolve N 2;\nbetti N;\ncd N wrt R+;\ngrade I+R+ on N;\n",
    "field QQ;\nbase y1;\npositive x1;\nideal J = [y1];\n"
    "module M = coker { shifts: [(0,0), (1,-1)], matrix: [[x1], [y1]] };\n"
    "reg M wrt J+R+ level 1;\nend M wrt (y1) at 1;\nverify all --seed 2 --size 5;\n",
    "field Fp 2;\nbase y1 y2;\nideal A = [y1*y2];\nfdepth A;\n",
]


@pytest.mark.parametrize("text", CANONICAL)
def test_round_trip_idempotent(text):
    once = render_script(parse(text))
    assert render_script(parse(once)) == once


def test_comments_and_layout_are_normalized():
    messy = "# header\nfield   QQ ;base y1 y2;  positive x1; # trailing\n" \
            "module M = coker {shifts:[(0,0,0)],matrix:[[x1]]}; reg M wrt (y1,y2)+R+;"
    assert render_script(parse(messy)) == EX21


_names = ["x1", "x2", "x3"]
_atom = st.one_of(st.sampled_from(_names), st.integers(1, 5).map(str))
_expr = st.recursive(
    _atom,
    lambda inner: st.one_of(
        st.tuples(inner, st.sampled_from([" + ", " - ", "*"]), inner).map(lambda t: f"({t[0]}{t[1]}{t[2]})"),
        st.tuples(inner, st.integers(0, 3)).map(lambda t: f"({t[0]})^{t[1]}"),
    ),
    max_leaves=6,
)


@settings(max_examples=100, deadline=None)
@given(_expr)
def test_expression_render_reparses_to_same_polynomial(e):
    from cmreg.dsl import _Parser, _eval

    s = parse("field QQ; positive x1 x2 x3;")
    f = _eval(_Parser(e).expr(), s.ring, set(s.ring.names))
    g = _eval(_Parser(f.render()).expr(), s.ring, set(s.ring.names))
    assert f == g


def test_execute_examples():
    rep = execute(parse(EX21))
    assert rep.results[0].payload["reg"] == 2
    s = parse("field QQ; positive x1 x2; module K = coker { shifts: [0], matrix: [[x1, x2]] }; betti K;")
    assert execute(s).results[0].payload["ranks"] == [1, 2, 1]
    out = render(execute(parse("field QQ; positive x1 x2; module R = coker { shifts: [0], matrix: [[]] };"
                               "end R wrt R+ at 2;")))
    assert "H^2: end = -2 (certified)" in out
    js = json.loads(render(execute(parse("field QQ; positive x1 x2; module R = coker { shifts: [0], "
                                         "matrix: [[]] }; end R wrt R+ at 2;")), "json"))
    assert js["commands"][0]["result"]["end"] == -2
    assert js["commands"][0]["result"]["status"] == "CERTIFIED"


def test_fdepth_with_positive_variables_declared():
    # base-ring monomials must pass even when the x-block is nonempty
    s = parse("field Fp 2; base y1 y2; positive x1; ideal A = [y1*y2]; fdepth A;")
    res = execute(s).results[0]
    assert res.error is None and res.payload["fdepth"] == 1
    with pytest.raises(ScriptSemanticError, match="monomial ideal of the base ring"):
        parse("field Fp 2; base y1; positive x1; ideal A = [y1*x1]; fdepth A;")


def test_skipped_checks_name_the_hypothesis():
    text = render(execute(parse("field QQ; positive x1; verify all --seed 0 --size 10;")))
    skipped = [l for l in text.splitlines() if "SKIPPED(" in l]
    assert skipped and all("SKIPPED()" not in l for l in skipped)


def test_engine_error_is_anchored():
    s = parse("field QQ; positive x1 x2;\nmodule M = coker { shifts: [0], matrix: [[x1 + x2]] };\n"
              "end M wrt (x1) at 1; betti M;")
    rep = execute(s)
    assert rep.exit_code() == 3
    assert rep.error.startswith("3:1: end:")
    assert len(rep.results) == 1  # execution stops at the failing command


def test_exit_code_on_fails():
    rep = Report([CommandResult("verify all", {"verdicts": {"FAILS": 1, "HOLDS": 3}}, "")])
    assert rep.exit_code() == 1
    assert Report([]).exit_code() == 0


def test_json_determinism_across_threads():
    s = "field QQ; positive x1; verify all --seed 0 --size 20;"
    a = render(execute(parse(s), Flags(threads=1)), "json")
    b = render(execute(parse(s), Flags(threads=4)), "json")
    assert a == b
    assert "seconds" not in a


def test_cli_run_and_exit_codes(tmp_path, capsys, monkeypatch):
    p = tmp_path / "ex21.cm"
    p.write_text(EX21)
    assert main(["run", str(p)]) == 0
    assert "reg^0 = 2" in capsys.readouterr().out
    bad = tmp_path / "bad.cm"
    bad.write_text("field Fp 6; positive x1;")
    assert main(["run", str(bad)]) == 2
    assert "6 is not prime" in capsys.readouterr().err
    eng = tmp_path / "eng.cm"
    eng.write_text("field QQ; positive x1 x2; module M = coker { shifts: [0], matrix: [[x1 + x2]] };"
                   "end M wrt (x1) at 1;")
    assert main(["run", str(eng)]) == 3
    assert "unsupported ideal" in capsys.readouterr().err
    assert main(["run", str(tmp_path / "missing.cm")]) == 2
    monkeypatch.setenv("CMREG_THREADS", "3")
    assert main(["verify", "all", "--seed", "0", "--size", "20", "--json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["exit_code"] == 0 and "FAILS" not in doc["commands"][0]["result"]["verdicts"]
    assert main(["verify", "Thm9.9"]) == 2


def test_cli_stdin_subprocess():
    proc = subprocess.run([sys.executable, "-m", "cmreg.cli", "run", "-", "--json"], input=EX21,
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["commands"][0]["result"]["reg"] == 2
