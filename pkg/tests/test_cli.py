import io
import json
import os
from contextlib import redirect_stdout
from fractions import Fraction

import jsonschema
import pytest

import towerlab.ffield as ffield
from towerlab import cli
from towerlab.cli import ParseError, parse_elem, parse_poly, parse_unipoly
from helpers import F2, F4, F5, bivar

FAM = "(x+1)*y^3+(x+1)*y+x^3"


def run_cli(argv):
    buf = io.StringIO()
    with redirect_stdout(buf):
        code = cli.main(argv)
    return code, buf.getvalue()


def run_json(argv):
    code, out = run_cli(argv)
    return code, json.loads(out)


# -- expression parsing -------------------------------------------------------


def test_parse_poly_roundtrip():
    F = parse_poly(FAM, F2)
    assert F.to_str() == "(x + 1)*y^3 + (x + 1)*y + x^3"


def test_parse_precedence():
    # ^ binds tighter than *, which binds tighter than +
    F = parse_poly("x+2*y^2", F5)
    assert F == bivar(F5, {(1, 0): 1, (0, 2): 2})
    G = parse_poly("2*x^2", F5)
    assert G == bivar(F5, {(2, 0): 2})


def test_parse_unary_minus_and_mod_p():
    F = parse_poly("-x^2", F5)
    assert F == bivar(F5, {(2, 0): -1})
    assert parse_poly("7", F5) == bivar(F5, {(0, 0): 2})


def test_parse_parens():
    F = parse_poly("(x+1)*(y+1)", F2)
    assert F == bivar(F2, {(1, 1): 1, (0, 1): 1, (1, 0): 1, (0, 0): 1})


@pytest.mark.parametrize(
    "expr,pos,expected",
    [
        ("x+", 2, ("(", "integer", "x", "y")),
        ("x^y", 2, ("integer",)),
        ("(x", 2, (")",)),
        ("x$", 1, ("(", ")", "*", "+", "-", "^", "integer", "variable")),
        ("2*", 2, ("(", "integer", "x", "y")),
    ],
)
def test_parse_errors_carry_position_and_expectations(expr, pos, expected):
    with pytest.raises(ParseError) as exc:
        parse_poly(expr, F2)
    assert exc.value.pos == pos
    assert exc.value.expected == expected
    assert f"offset {pos}" in str(exc.value)


def test_parse_unipoly_rejects_y():
    with pytest.raises(ParseError) as exc:
        parse_unipoly("x*y", F2, "f")
    assert exc.value.expected == ("x-only expression",)


def test_parse_elem():
    g = F4.gen()
    assert parse_elem("t^2+t", F4) == g * g + g
    assert parse_elem("3", F5) == F5.elem(3)


# -- reports ------------------------------------------------------------------


def _load_schema():
    import towerlab

    path = os.path.join(os.path.dirname(towerlab.__file__), "schemas", "report.schema.json")
    with open(path) as fh:
        return json.load(fh)


ALL_COMMANDS = [
    ["analyze", "--p", "2", "--F", FAM, "--json"],
    ["analyze", "--p", "5", "--F", "y^2-x^3-x", "--json"],
    ["check-theorem", "--p", "2", "--F", FAM, "--f", "x", "--json"],
    ["check-theorem", "--p", "5", "--F", "y^2-x^3-x", "--f", "x", "--json"],
    ["climb", "--m", "3", "--n", "1", "--r", "2", "--p", "2", "--levels", "6", "--json"],
    ["family", "--q", "2", "--a", "0", "--b", "1", "--g", "x+1", "--json"],
    ["genus", "--p", "2", "--F", FAM, "--json"],
    ["genus", "--p", "5", "--F", "y^2-x^3-x", "--json"],
]


def test_reports_validate_against_schema():
    schema = _load_schema()
    for argv in ALL_COMMANDS:
        _, rep = run_json(argv)
        jsonschema.validate(rep, schema)


def test_reports_are_deterministic():
    for argv in ALL_COMMANDS:
        _, out1 = run_cli(argv)
        _, out2 = run_cli(argv)
        assert out1 == out2, argv


def test_analyze_family_report():
    code, rep = run_json(["analyze", "--p", "2", "--F", FAM, "--json"])
    assert code == 0
    assert rep["verdict"] == "bounds"
    assert rep["bounds"]["different_degree"] == [6, 10]
    assert rep["bounds"]["genus"] == [1, 3]
    assert rep["data"]["m"] == 3
    wild = next(w for w in rep["witnesses"] if w["e"] == 2)
    assert wild["refinement"] == [["y", "0", "u + 1"], ["y + 1", "-3/2", "u + 1"]]
    assert wild["d_min"] == 2 and wild["d_max"] == 6


def test_analyze_exact_report():
    code, rep = run_json(["analyze", "--p", "5", "--F", "y^2-x^3-x", "--json"])
    assert code == 0
    assert rep["verdict"] == "exact"
    assert rep["bounds"]["genus"] == [1, 1]


def test_check_theorem_exit_codes_and_payload():
    code, rep = run_json(["check-theorem", "--p", "2", "--F", FAM, "--f", "x", "--json"])
    assert code == 0
    assert rep["verdict"] == "holds"
    assert rep["data"]["hypotheses"] == {"m": 3, "n": 1, "r": 2, "p": 2, "d_prime_min": 2}
    assert rep["data"]["conclusion"] == "InfiniteGenus"
    code, rep = run_json(["check-theorem", "--p", "5", "--F", "y^2-x^3-x", "--f", "x", "--json"])
    assert code == 1
    assert rep["verdict"] == "fails"
    assert len(rep["data"]["failed_conditions"]) == 3


def test_climb_report():
    code, rep = run_json(
        ["climb", "--m", "3", "--n", "1", "--r", "2", "--p", "2", "--levels", "6", "--json"]
    )
    assert code == 0
    assert rep["verdict"] == "InfiniteGenus"
    assert rep["data"]["c"] == "1/2"
    assert [lv["d_bound"] for lv in rep["data"]["levels"]] == [2, 4, 10, 28, 82, 244, 730]
    assert rep["bounds"]["level_6:d"] == [730, 730]


def test_family_report():
    code, rep = run_json(["family", "--q", "2", "--a", "0", "--b", "1", "--g", "x+1", "--json"])
    assert code == 0
    assert rep["verdict"] == "true"
    assert rep["data"]["F"] == "(x + 1)*y^3 + (x + 1)*y + x^3"
    assert rep["data"]["c"] == "1"
    assert [c["name"] for c in rep["data"]["checks"]] == ["a", "b", "c", "d", "e", "f", "g"]
    assert all(c["passed"] for c in rep["data"]["checks"])


def test_family_gf4_generator_parameter():
    code, rep = run_json(["family", "--q", "4", "--a", "0", "--b", "t", "--g", "x+1", "--json"])
    assert code == 0
    assert rep["verdict"] == "true"


def test_family_constraint_violation_is_an_error():
    code, rep = run_json(["family", "--q", "2", "--a", "0", "--b", "0", "--g", "x+1", "--json"])
    assert code == 2
    assert rep["verdict"] == "error"
    assert rep["error"]["type"] == "InvalidParams"
    assert "b != 0" in rep["error"]["message"]


def test_genus_reconcile_report():
    code, rep = run_json(["genus", "--p", "2", "--F", FAM, "--json"])
    assert code == 0
    assert rep["verdict"] == "true"
    assert rep["data"]["zeta_genus"] == 2
    assert rep["data"]["riemann_hurwitz_genus"] == 2
    assert rep["bounds"]["different_degree"] == [8, 8]
    assert any("oracle" in n for n in rep["notes"])


def test_error_report_shape():
    code, rep = run_json(["analyze", "--p", "4", "--F", "y^2+x", "--json"])
    assert code == 2
    assert rep["verdict"] == "error"
    assert rep["error"] == {"type": "NotPrime", "message": "4 is not prime"}
    assert rep["schema_version"] == 1
    jsonschema.validate(rep, _load_schema())


def test_invalid_hypotheses_cli():
    code, rep = run_json(
        ["climb", "--m", "4", "--n", "1", "--r", "2", "--p", "2", "--levels", "3", "--json"]
    )
    assert code == 2
    assert rep["error"]["type"] == "InvalidHypotheses"


def test_text_mode_summary():
    code, out = run_cli(["climb", "--m", "3", "--n", "1", "--r", "2", "--p", "2", "--levels", "2"])
    assert code == 0
    assert "InfiniteGenus" in out
    assert "P0" in out  # small climbs include the ASCII diagram
    code, out = run_cli(["check-theorem", "--p", "2", "--F", FAM, "--f", "x"])
    assert code == 0
    assert "holds" in out


def test_seed_env_override():
    old = ffield.FACTOR_SEED
    os.environ["TOWERLAB_SEED"] = "12345"
    try:
        code, rep = run_json(["analyze", "--p", "2", "--F", FAM, "--json"])
        assert code == 0
        assert ffield.FACTOR_SEED == 12345
    finally:
        del os.environ["TOWERLAB_SEED"]
        ffield.FACTOR_SEED = old


def test_json_is_sorted_and_indented():
    _, out = run_cli(["genus", "--p", "2", "--F", FAM, "--json"])
    rep = json.loads(out)
    assert out == json.dumps(rep, sort_keys=True, indent=2) + "\n"
