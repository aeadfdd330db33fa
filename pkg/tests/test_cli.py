import json

import pytest

from dynwg import cli, geomsatake
from dynwg.ratfun import parse_ratfun


def run(capsys, *args):
    code = cli.main(list(args))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture()
def cache_args(tmp_path):
    return ["--cache-dir", str(tmp_path), "--jobs", "1"]


def test_op_rank1(capsys, cache_args):
    code, out, _ = run(capsys, "op", "--algebra", "A1", "--hw", "2", "--mu", "0",
                       "--word", "1", *cache_args)
    assert code == 0
    # the printed matrix entry is the rank-1 scalar
    entry = out.strip().splitlines()[-1].strip().strip("[]")
    assert parse_ratfun(entry, 1) == parse_ratfun("-(x1+2*h)/x1", 1)


def test_op_json_and_identity(capsys, cache_args):
    code, out, _ = run(capsys, "op", "--algebra", "A2", "--hw", "1,1", "--mu", "0,0",
                       "--word", "1,2,1", "--format", "json", "--seed", "3", *cache_args)
    assert code == 0
    obj = json.loads(out)
    assert obj["seed"] == 3
    assert len(obj["matrix"]) == 2
    code, out, _ = run(capsys, "op", "--algebra", "A2", "--hw", "1,1", "--mu", "0,0",
                       "--word", "", *cache_args)
    assert code == 0
    # empty word: identity block on V_(0,0)
    assert "V_(0,0) -> V_(0,0)" in out
    rows = [line.strip() for line in out.strip().splitlines()[1:]]
    assert rows == ["[1,  0]", "[0,  1]"]


def test_op_usage_errors(capsys, cache_args):
    code, _, err = run(capsys, "op", "--algebra", "A2", "--hw", "1,1", "--mu", "0,-1",
                       "--word", "1", *cache_args)
    assert code == 2 and "dominant" in err
    code, _, err = run(capsys, "op", "--algebra", "A2", "--hw", "1,1", "--mu", "0,0",
                       "--word", "1,1", *cache_args)
    assert code == 2 and "reduced" in err
    code, _, err = run(capsys, "op", "--algebra", "A2", "--hw", "1,1", *cache_args)
    assert code == 2
    code, _, err = run(capsys, "op", "--algebra", "Q5", "--hw", "1", "--mu", "1",
                       "--word", "1", *cache_args)
    assert code == 2


def test_verify_satake_rank1(capsys, cache_args):
    code, out, _ = run(capsys, "verify", "satake-rank1", "--lambda-max", "6", *cache_args)
    assert code == 0
    assert "satake-rank1: 16/16 cases pass" in out


def test_verify_cocycle_and_levi(capsys, cache_args):
    code, out, _ = run(capsys, "verify", "cocycle", "--algebra", "A2", "--hw", "1,1",
                       *cache_args)
    assert code == 0 and "2/2 cases pass" in out
    code, out, _ = run(capsys, "verify", "levi", "--algebra", "A2", "--hw", "1,1",
                       *cache_args)
    assert code == 0 and "cases pass" in out


def test_verify_rep(capsys, cache_args):
    code, out, _ = run(capsys, "verify", "rep", "--algebra", "A2", "--dim-cap", "15",
                       *cache_args)
    assert code == 0
    assert all(line.startswith("PASS") for line in out.splitlines()[:-1])


def test_verify_failure_exit_code(capsys, cache_args, monkeypatch):
    # force one failing case to exercise the exit-code contract
    original = geomsatake.verify_main_theorem_rank1

    def broken(lam, mu):
        r = original(lam, mu)
        r.equal = False
        return r

    monkeypatch.setattr(geomsatake, "verify_main_theorem_rank1", broken)
    code, out, _ = run(capsys, "verify", "satake-rank1", "--lambda-max", "0", *cache_args)
    assert code == 1 and "FAIL" in out


def test_json_reports_deterministic(capsys, cache_args):
    args = ["verify", "cocycle", "--algebra", "A2", "--hw", "1,0",
            "--format", "json", "--seed", "11", *cache_args]
    code1, out1, _ = run(capsys, *args)
    code2, out2, _ = run(capsys, *args)
    assert code1 == code2 == 0
    assert out1 == out2
    obj = json.loads(out1)
    assert obj["seed"] == 11 and obj["suite"] == "cocycle" and obj["ok"] is True


def test_cache_commands(capsys, tmp_path):
    cache = ["--cache-dir", str(tmp_path), "--jobs", "1"]
    code, out, _ = run(capsys, "cache", "list", *cache)
    assert code == 0 and out == ""
    code, out, _ = run(capsys, "cache", "warm", "--algebra", "A2", "--hw", "1,1", *cache)
    assert code == 0
    code, out, _ = run(capsys, "cache", "list", *cache)
    assert code == 0 and out.strip() == "A2__1_1.v1.json"
    # warm is idempotent
    run(capsys, "cache", "warm", "--algebra", "A2", "--hw", "1,1", *cache)
    code, out, _ = run(capsys, "cache", "list", *cache)
    assert out.strip() == "A2__1_1.v1.json"
    code, out, _ = run(capsys, "cache", "clear", *cache)
    assert code == 0
    code, out, _ = run(capsys, "cache", "list", *cache)
    assert out == ""


def test_cache_env_var(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("DYNWG_CACHE", str(tmp_path))
    code, _, _ = run(capsys, "cache", "warm", "--algebra", "A1", "--hw", "3", "--jobs", "1")
    assert code == 0
    assert list(tmp_path.glob("A1__3*.json"))


def test_rep_info(capsys, cache_args):
    code, out, _ = run(capsys, "rep-info", "--algebra", "A2", "--hw", "1,0",
                       "--format", "json", *cache_args)
    assert code == 0
    obj = json.loads(out)
    assert obj["dim"] == 3 and len(obj["weights"]) == 3


def test_bad_caps_rejected(capsys, cache_args):
    code, _, err = run(capsys, "verify", "satake-rank1", "--dim-cap", "0", *cache_args)
    assert code == 2
