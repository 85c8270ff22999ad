import json
import os

import pytest

from p1dom import fileformat as ff
from p1dom.cli import main
from p1dom.complexes import ChainComplex
from p1dom.laurent import BaseRing
from p1dom.scalars import QQ, ZZ

from helpers import two_term


@pytest.fixture
def xm1_file(tmp_path):
    path = tmp_path / "x-minus-1.cplx"
    ff.save_path(path, ff.complex_to_dict(two_term(QQ, [(0, -1), (1, 1)])))
    return str(path)


@pytest.fixture
def two_minus_x_file(tmp_path):
    path = tmp_path / "two-minus-x.cplx"
    ff.save_path(path, ff.complex_to_dict(two_term(ZZ, [(0, 2), (1, -1)])))
    return str(path)


@pytest.fixture
def free_rank_file(tmp_path):
    path = tmp_path / "rank1.cplx"
    c = ChainComplex.single(QQ, BaseRing.LAURENT, 0, 1)
    ff.save_path(path, ff.complex_to_dict(c))
    return str(path)


def test_validate_ok(xm1_file, capsys):
    assert main(["validate", xm1_file]) == 0
    assert "ok" in capsys.readouterr().out


def test_homology_output(xm1_file, capsys):
    assert main(["homology", xm1_file]) == 0
    out = capsys.readouterr().out
    assert "H_0" in out and "-1 + x" in out


def test_verify_pass_exit_zero(xm1_file, capsys):
    assert main(["verify", xm1_file]) == 0
    assert "PASS" in capsys.readouterr().out


def test_verify_fail_exit_one(free_rank_file, capsys):
    assert main(["verify", free_rank_file]) == 1
    out = capsys.readouterr().out
    assert "FAIL" in out and "free rank 1 in degree 0" in out


def test_novikov_integer_asymmetry(two_minus_x_file, capsys):
    assert main(["novikov", "--ring", "Z", two_minus_x_file]) == 0
    out = capsys.readouterr().out
    assert "x-side: no" in out
    assert "x^-1-side: yes" in out


def test_ring_flag_mismatch_is_input_error(two_minus_x_file):
    assert main(["novikov", "--ring", "Q", two_minus_x_file]) == 2


def test_missing_file_is_input_error(capsys):
    assert main(["validate", "/nonexistent/file.cplx"]) == 2


def test_malformed_file_is_input_error(tmp_path, capsys):
    path = tmp_path / "bad.cplx"
    path.write_text("{not json")
    assert main(["validate", str(path)]) == 2
    assert "input error" in capsys.readouterr().err


def test_twist_cohomology_example(capsys):
    assert main(["twist-cohomology", "--", "-3", "1"]) == 0
    out = capsys.readouterr().out
    assert "dim H^0 = 0" in out
    assert "dim H^1 = 2" in out


def test_extend_h0_pipeline(xm1_file, tmp_path, capsys):
    sheaf_path = str(tmp_path / "ext.sheaf")
    w_path = str(tmp_path / "w.cplx")
    assert main(["extend", xm1_file, "--out", sheaf_path]) == 0
    assert main(["h0", sheaf_path, "--out", w_path]) == 0
    w = ff.load_complex(w_path)
    assert {m: w.rank(m) for m in w.degrees()} == {0: 2, 1: 1}
    # emitted files re-ingest to equal values
    again = str(tmp_path / "w2.cplx")
    assert main(["h0", sheaf_path, "--out", again]) == 0
    assert open(w_path).read() == open(again).read()


def test_hyper_command(tmp_path, capsys):
    path = tmp_path / "plus.cplx"
    ff.save_path(path, ff.complex_to_dict(
        two_term(QQ, [(1, 1)], base=BaseRing.POLY)))
    assert main(["hyper", str(path), "--trunc", "8"]) == 0
    assert "window-matched True" in capsys.readouterr().out


def test_report_format_deterministic(xm1_file, tmp_path):
    out1 = str(tmp_path / "r1.json")
    out2 = str(tmp_path / "r2.json")
    assert main(["verify", xm1_file, "--format", "report",
                 "--out", out1]) == 0
    assert main(["verify", xm1_file, "--format", "report",
                 "--out", out2]) == 0
    b1, b2 = open(out1, "rb").read(), open(out2, "rb").read()
    assert b1 == b2
    data = json.loads(b1)
    assert data["verdict"] == "PASS"
    assert data["input_digest"]


def test_dominate_human_output(xm1_file, capsys):
    assert main(["dominate", xm1_file]) == 0
    out = capsys.readouterr().out
    assert "W ranks {0:2, 1:1}" in out
    assert "ledger holds: True" in out


def test_env_var_overrides(xm1_file, tmp_path, monkeypatch, capsys):
    target = str(tmp_path / "env-report.json")
    monkeypatch.setenv("P1DOM_FORMAT", "report")
    monkeypatch.setenv("P1DOM_OUT", target)
    assert main(["homology", xm1_file]) == 0
    assert os.path.exists(target)
    data = json.loads(open(target).read())
    assert data["command"] == "homology"


def test_trunc_exceeding_max_is_input_error(xm1_file):
    assert main(["verify", xm1_file, "--trunc", "128",
                 "--trunc-max", "64"]) == 2


def test_selftest_runs(capsys):
    assert main(["selftest", "--seed", "1"]) == 0
    out = capsys.readouterr().out
    assert "twist-cohomology-table" in out
    assert "FAIL" not in out.replace("PASS", "")
