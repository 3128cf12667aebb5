import io
import json
import subprocess
import sys
from importlib import resources

import jsonschema
import pytest

from s2star.cli import run
from s2star.expr import parse_expr

SCHEMA = json.loads(resources.files("s2star").joinpath("output_schema.json").read_text())


def call(*argv):
    out = io.StringIO()
    code = run(list(argv), out)
    return code, out.getvalue()


def call_json(*argv):
    code, text = call(*argv, "--json")
    doc = json.loads(text)
    jsonschema.validate(doc, SCHEMA)
    return code, doc


def test_star_example():
    code, text = call("star", "--lambda", "8", "--hbar", "symbolic", "A", "A")
    assert code == 0
    assert parse_expr(text.strip()) == parse_expr("1 - 4*(1 - h/8)*B*C")


def test_poles_example():
    assert call("poles", "B^2", "C^2") == (0, "{8}\n")


def test_twist_example():
    code, text = call("twist", "--order", "2")
    lines = text.split("\n")
    assert code == 0
    assert lines[0] == "c0 = (1)/(1)"
    assert lines[1] == "c1 = (-1/8*h)/(1)"
    from s2star.scalars import parse_scalar

    assert parse_scalar(lines[2].split(" = ")[1]) == parse_scalar("h^2/(16*(8 - h))")


@pytest.mark.parametrize(
    "argv",
    [
        ("star", "A", "B"),
        ("star", "A", "A", "--hbar", "1/2+1/3*i"),
        ("expand", "A", "B", "--order", "2"),
        ("poles", "B^2", "C^2"),
        ("pair", "Y^2", "X^2"),
        ("twist", "--order", "3"),
        ("seminorm", "U*Ubar", "--R", "1", "--C", "2"),
        ("continuity", "--degree", "3"),
        ("agree", "B", "C"),
        ("star", "A +", "B"),
        ("star", "U", "A"),
        ("star", "B^2", "C^2", "--hbar", "8"),
        ("star", "A", "A", "--lambda", "-1"),
        ("frobnicate",),
        (),
    ],
)
def test_json_validates_and_matches_text(argv):
    code_t, text = call(*argv)
    code_j, doc = call_json(*argv)
    assert code_t == code_j
    res = doc["result"]
    if doc["errors"]:
        assert res is None and text.startswith("error: ")
        assert doc["errors"][0]["message"] in text
        return
    if "poly" in res:
        lines = text.split("\n")
        assert parse_expr(lines[0]) is not None
        from s2star.orbit import InvariantPoly
        from s2star.scalars import parse_scalar

        poly = InvariantPoly._raw({tuple(r[:3]): parse_scalar(r[3]) for r in res["poly"]})
        assert poly == parse_expr(lines[0])
    else:
        # every reported string value appears in the text form
        for rec in res["report"]:
            for v in rec.values():
                if isinstance(v, str) and v not in ("UV", "ABC"):
                    assert v in text


def test_exit_codes():
    assert call("star", "A +", "B")[0] == 2
    assert call("star", "A", "A", "--hbar", "h")[0] == 2
    assert call("star", "B^2", "C^2", "--hbar", "8")[0] == 1
    assert call("star", "U", "A")[0] == 1
    assert call("poles", "A")[0] == 2
    assert call("twist")[0] == 0


def test_parse_error_is_structured():
    code, doc = call_json("star", "A +", "B")
    err = doc["errors"][0]
    assert code == 2 and err["type"] == "ParseError" and err["position"] == 3 and err["expected"]


def test_output_is_deterministic():
    assert call_json("continuity", "--degree", "3") == call_json("continuity", "--degree", "3")


def test_check_quick_reproducible():
    code, text = call("check", "--quick", "--seed", "11")
    assert code == 0
    assert text.startswith("seed 11\n")
    assert text.count("PASS") == 13
    assert call("check", "--quick", "--seed", "11")[1] == text
    code, doc = call_json("check", "--quick")
    assert doc["result"]["seed"] == 20240611 and all(r["passed"] for r in doc["result"]["report"])


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "s2star.cli", "poles", "B^2", "C^2"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "{8}\n"
    proc = subprocess.run([sys.executable, "-m", "s2star.cli", "star", "A +", "B"], capture_output=True, text=True)
    assert proc.returncode == 2
