import json
import subprocess
import sys

import pytest

from kpakns.cases import CASES, REPORT_SCHEMA, UnknownCase, run_case, sample_triples
from kpakns.cli import main
from kpakns.ncpoly import from_json_obj
from kpakns.ncpoly import parse as nparse


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_expand(capsys):
    code, out, _ = run(capsys, "expand", "P o P")
    assert code == 0
    assert out.strip() == "(2) + 2*(1,1)"


def test_expand_latex_and_json(capsys):
    _, out, _ = run(capsys, "expand", "P x P", "--format", "json")
    obj = json.loads(out)
    assert obj["terms"]
    code, out, _ = run(capsys, "expand", "P x P", "--format", "latex")
    assert code == 0 and out.strip()


def test_phi_kp(capsys):
    code, out, _ = run(capsys, "phi", "P^2", "--target", "kp")
    assert code == 0
    assert out.strip() == "u2_x + 2*u3"


def test_phi_akns_abstract(capsys):
    code, out, _ = run(capsys, "phi", "P", "--target", "akns")
    assert code == 0
    assert out.strip() == "v2*J"


def test_phi_akns_matrix_json(capsys):
    code, out, _ = run(capsys, "phi", "P", "--target", "akns", "--mode", "matrix2", "--format", "json")
    assert code == 0
    rows = json.loads(out)["matrix"]
    assert from_json_obj(rows[0][0]) == nparse("-q*r")


def test_insufficient_depth_exit_code(capsys):
    code, _, err = run(capsys, "phi", "P^5 o P^5", "--target", "kp", "--depth", "3")
    assert code == 2
    assert "insufficient depth" in err


def test_ambiguous_expression_is_usage_error(capsys):
    code, _, err = run(capsys, "expand", "P o P . P")
    assert code == 3
    assert "mixed" in err


def test_unknown_case_is_usage_error(capsys):
    code, _, _ = run(capsys, "run", "no-such-case")
    assert code == 3


def test_bad_flag_is_usage_error():
    with pytest.raises(SystemExit) as info:
        main(["phi", "P", "--target", "nowhere"])
    assert info.value.code == 3


def test_list(capsys):
    code, out, _ = run(capsys, "list")
    assert code == 0
    assert out.split() == list(CASES)


def test_run_case_json_schema(capsys):
    code, out, _ = run(capsys, "run", "nls", "--format", "json")
    assert code == 0
    obj = json.loads(out)
    assert obj["schema"] == REPORT_SCHEMA
    assert obj["verdict"] == "pass"
    assert {"case", "config", "checks", "outputs", "floor", "needed", "elapsed_s"} <= set(obj)


def test_report_values_round_trip(capsys):
    run(capsys, "run", "kp-id", "--format", "json")
    code, out, _ = run(capsys, "run", "kdv", "--format", "json")
    obj = json.loads(out)
    polys = [v for v in obj["outputs"].values() if isinstance(v, dict) and "ncpoly" in v]
    assert polys
    for v in polys:
        assert str(from_json_obj(v["ncpoly"])) == str(nparse(v["text"]))


def test_reports_are_deterministic():
    def strip(obj):
        obj = dict(obj)
        obj.pop("elapsed_s")
        return obj

    a = run_case("kp-id").to_json_obj()
    b = run_case("kp-id").to_json_obj()
    assert strip(a) == strip(b)


def test_random_samples_follow_the_seed():
    assert sample_triples(7, 40) == sample_triples(7, 40)
    assert sample_triples(7, 40) != sample_triples(8, 40)
    assert all(sum(map(sum, t)) <= 8 for t in sample_triples(3, 100))


def test_run_case_unknown():
    with pytest.raises(UnknownCase):
        run_case("nope")


def test_insufficient_case_verdict(capsys):
    code, out, _ = run(capsys, "run", "phi-p2-p3", "--depth", "2")
    assert code == 2
    assert "INSUFFICIENT-DEPTH" in out


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "kpakns.cli", "run", "burgers"], capture_output=True, text=True
    )
    assert proc.returncode == 0
    assert "case burgers: PASS" in proc.stdout
