import json
import os
import subprocess
import sys
from pathlib import Path

import pytest
from hypothesis import given, settings

from conftest import scalars
from qhwb.cli import main, run
from qhwb.dsl import AlgebraBlock, parse, parse_scalar, render_document
from qhwb.errors import DslSyntaxError, DuplicateName, ParseError, UnresolvedName
from qhwb.field_tower import render

ROOT = Path(__file__).resolve().parents[1]
SAMPLES = sorted((ROOT / "samples").glob("*.qh"))
FULL = ROOT / "samples" / "full_example.qh"
GOLDEN = ROOT / "tests" / "golden" / "full_example.json"

TINY = """algebra Q {
  field: rationals;
  basis: [one:0, x:2];
  unit: one;
  t_degree: 4;
  n: 2;
  product {
    one*one = one;
    one*x = x;
    x*x = %s;
  }
}
"""


def cli(path, *flags, env=None):
    full_env = dict(os.environ, **(env or {}))
    return subprocess.run([sys.executable, "-m", "qhwb.cli", str(path), *flags],
                          capture_output=True, text=True, env=full_env)


def write(tmp_path, text, name="doc.qh"):
    p = tmp_path / name
    p.write_text(text)
    return p


# -- parser -------------------------------------------------------------------------

def test_full_example_shape():
    doc = parse(FULL.read_text())
    (alg,) = doc.algebras().values()
    assert isinstance(alg, AlgebraBlock)
    assert alg.basis_names == ["one", "a", "b", "p"]
    assert set(doc.configs()) == {"D4"}
    assert doc.lattices()["CP2k4"].torus == "Clifford"


def test_unclosed_bracket():
    with pytest.raises(DslSyntaxError) as info:
        parse("algebra Q {\n  field: rationals;\n  basis: [one:0, x:2\n")
    assert (info.value.line, info.value.column) == (4, 1)
    assert "']'" in info.value.message


def test_duplicate_algebra():
    src = TINY % "T*one" + TINY % "T*one"
    with pytest.raises(DuplicateName) as info:
        parse(src)
    assert info.value.line == 13


def test_unresolved_names():
    with pytest.raises(UnresolvedName) as info:
        parse(TINY % "T*y")
    assert (info.value.line, info.value.column) == (10, 13)
    with pytest.raises(UnresolvedName):
        parse(TINY % "T*one" + "sphere L;\n")
    with pytest.raises(UnresolvedName):
        parse("config D4 parity=even;\n")


def test_linear_expressions_only():
    with pytest.raises(ParseError):
        parse(TINY % "x*x")
    with pytest.raises(ParseError):
        parse(TINY % "T + one")


def test_extension_field():
    doc = parse(TINY.replace("rationals", "extension(t^2 + t + 1)") % "t*T*one")
    alg = doc.algebras()["Q"]
    assert alg.modulus == (1, 1, 1)
    assert render(alg.products[-1][1][0]) == "(t)*T"


@pytest.mark.parametrize("path", SAMPLES, ids=lambda p: p.name)
def test_round_trip_on_samples(path):
    doc = parse(path.read_text())
    text = render_document(doc)
    again = parse(text)
    assert again == doc
    assert render_document(again) == text


@settings(max_examples=50, deadline=None)
@given(scalars())
def test_round_trip_through_product_tables(c):
    doc = parse(TINY % (f"({render(c)})*one" if c else "0"))
    assert parse(render_document(doc)) == doc


@given(scalars())
def test_scalar_grammar_round_trip(x):
    assert render(parse_scalar(render(x))) == render(x)


# -- driver ------------------------------------------------------------------------------

def test_golden_json_byte_for_byte():
    proc = cli(FULL, "--json")
    assert proc.returncode == 0
    assert proc.stdout == GOLDEN.read_text()


def test_json_is_deterministic():
    assert cli(FULL, "--json").stdout == cli(FULL, "--json").stdout


def test_schema_version():
    code, out = run(parse(FULL.read_text()), as_json=True)
    assert json.loads(out)["schema"] == 1


def test_d4_config_unsat_is_success():
    doc = parse("config D4 {\n  dynkin D 4;\n}\nconfig D4 parity=even;\n")
    code, out = run(doc, as_json=True)
    assert code == 0
    assert json.loads(out)["results"][0]["verdict"]["status"] == "UNSAT"


def test_sphere_command_reports_beta():
    code, out = run(parse(FULL.read_text()), as_json=True, command="sphere")
    (res,) = json.loads(out)["results"]
    assert res["beta"] == "T"


def test_parse_error_exit_code(tmp_path):
    p = write(tmp_path, "algebra Q {\n  field: rationals;\n  basis: [one:0, x:2\n")
    proc = cli(p)
    assert proc.returncode == 1
    assert proc.stderr.startswith(f"{p}:4:1: error:")
    proc = cli(p, "--json")
    diag = json.loads(proc.stdout)["diagnostics"][0]
    assert (diag["line"], diag["column"], diag["severity"]) == (4, 1, "error")


def test_validation_exit_code(tmp_path):
    src = TINY.replace("    one*x = x;\n", "    one*x = x;\n    x*one = 2*x;\n") % "T*one" + "check Q;\n"
    assert cli(write(tmp_path, src)).returncode == 2


def test_math_exit_code(tmp_path):
    p = write(tmp_path, TINY % "0" + "decompose Q;\n")
    proc = cli(p)
    assert proc.returncode == 3
    assert "NotSemisimple" in proc.stdout


def test_assertion_exit_code(tmp_path):
    src = (ROOT / "samples" / "split_model.qh").read_text().replace("n: 2;", "n: 4;")
    assert cli(write(tmp_path, src)).returncode == 4


def test_sparse_flag(tmp_path):
    p = write(tmp_path, TINY.replace("    x*x = %s;\n", "") + "check Q;\n")
    assert cli(p).returncode == 2
    assert cli(p, "--sparse").returncode == 0


def test_dimension_cap_env(tmp_path):
    p = write(tmp_path, TINY % "T*one" + "check Q;\n")
    assert cli(p, env={"QHWB_MAX_DIM": "1"}).returncode == 2
    assert cli(p, env={"QHWB_MAX_DIM": "2"}).returncode == 0


def test_main_entry_point(capsys):
    assert main([str(FULL), "--command", "semisimple"]) == 0
    assert "semisimple: true" in capsys.readouterr().out


def test_missing_file(tmp_path):
    assert main([str(tmp_path / "absent.qh")]) == 1
