import json
import subprocess
import sys

import pytest

from cobindex.charclass import CharClassPoly, catalogue_class
from cobindex.cli import run
from cobindex.cobordism import FundamentalVector, fundamental_polynomial, lattice_I
from cobindex.chow import build_variety
from cobindex.exactalg import IntegerLattice
from cobindex.symfun import MultiIndex


def ok(*argv):
    code, out, err = run(list(argv))
    assert code == 0, err
    return json.loads(out)


def test_spec_examples():
    assert ok("index-bound", "6", "3") == {"value": 1}
    assert ok("fund-poly", "P2") == {"degree": 2, "coords": {"1+1": 6, "2": -3}}
    assert ok("signature", "P2xP2") == {"value": 1}


def test_simple_subcommands():
    assert ok("chi", "6", "3") == {"value": 11}
    assert ok("threshold", "12") == {"value": 4}
    assert ok("gcd-lemma", "6", "3")["holds"] is True
    f = ok("fermat", "2", "1", "1")
    assert f["trace"] == [[0, 0], [1, 0], [1, 1]] and f["valid"]
    assert ok("chi-bundle", "P2", "T") == {"value": 8}
    assert ok("half-euler", "H2,2") == {"euler": 6, "half": 3, "rho": 3, "equal": True}


def test_lattice_round_trip():
    data = ok("dual-lattice", "3")
    assert data["partitions"] == [[1, 1, 1], [1, 2], [3]]
    assert IntegerLattice.from_json(data) == lattice_I(3)
    assert data["index"] == {"num": 1, "den": 96}


def test_fund_poly_round_trip():
    data = ok("fund-poly", "P1xH2,2")
    assert FundamentalVector.from_json(data) == fundamental_polynomial(build_variety("P1xH2,2"))


@pytest.mark.parametrize("d", range(0, 5))
def test_hattori_stong(d):
    data = ok("hattori-stong", str(d))
    assert data["holds"] is True and data["Iprime"] == data["I"]


def test_check_class_catalogue_and_file(tmp_path):
    data = ok("check-class", "steenrod", "--q", "2", "--partition", "1+3")
    assert data["integral"] is True
    assert CharClassPoly.from_json(data["class"]) == catalogue_class("steenrod", q=2, I=MultiIndex((3, 1)))
    half_c2 = CharClassPoly.from_json({"degree": 2, "coords": {"1+1": {"num": 1, "den": 2}}})
    path = tmp_path / "half_c2.json"
    path.write_text(json.dumps(half_c2.to_json()))
    data = ok("check-class", str(path))
    assert data["integral"] is False and data["witness"] == "P2"


def test_pair():
    assert ok("pair", "half_euler", "P1xP2", "--d", "3", "--tangent") == {"value": {"num": 3, "den": 1}}
    assert ok("pair", "signature", "P2", "--d", "2", "--tangent") == {"value": {"num": 1, "den": 1}}


def test_table_format_and_out_file(tmp_path):
    code, out, _ = run(["--format", "table", "index-bound", "5", "3"])
    assert code == 0 and out == "value: 5\n"
    target = tmp_path / "o.json"
    code, out, _ = run(["--out", str(target), "fund-poly", "P1"])
    assert code == 0 and out == ""
    assert json.loads(target.read_text()) == {"degree": 1, "coords": {"1": -2}}


@pytest.mark.parametrize(
    "argv",
    [
        ["fermat", "6", "3", "2"],
        ["fund-poly", "P2xQ"],
        ["chi-bundle", "P2", "T^^"],
        ["signature", "P3"],
        ["check-class", "half_euler", "--d", "2"],
        ["check-class", "no_such_class_or_file"],
        ["index-bound", "0", "3"],
    ],
)
def test_domain_errors_exit_1(argv):
    code, out, err = run(argv)
    assert code == 1 and out == "" and err


@pytest.mark.parametrize(
    "argv",
    [[], ["bogus"], ["index-bound", "6"], ["index-bound", "x", "3"], ["lattice", "2", "--frobnicate"],
     ["check-class", "steenrod", "--partition", "a+b"]],
)
def test_usage_errors_exit_2(argv):
    code, out, err = run(argv)
    assert code == 2 and out == "" and "error" in err


def test_parse_error_reports_position():
    code, _, err = run(["fund-poly", "P2xQ"])
    assert "position 3" in err


def test_deterministic_and_entry_point():
    argv = [sys.executable, "-m", "cobindex", "hattori-stong", "3"]
    a = subprocess.run(argv, capture_output=True, check=True).stdout
    b = subprocess.run(argv, capture_output=True, check=True).stdout
    assert a == b and json.loads(a)["holds"] is True
