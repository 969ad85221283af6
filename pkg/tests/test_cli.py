import csv
import io
import json
import subprocess
import sys
from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from boxsplines.cli import format_scalar, parse_scalar, run
from boxsplines.cyclo import Cyclo

PHI12 = '{"dim":1,"vectors":[[1],[2]]}'
A2 = '{"dim":2,"vectors":[[1,0],[0,1],[1,1]]}'


def records(capsys, argv):
    code = run(argv)
    out = capsys.readouterr().out
    return code, [json.loads(line) for line in out.splitlines() if line]


def test_eval_box(capsys):
    code, recs = records(capsys, ["eval-box", "--phi", PHI12, "--at", '["1/2"]'])
    assert code == 0 and recs == [{"value": "1/4", "exact": True}]
    code, recs = records(capsys, ["eval-box", "--phi", PHI12, "--at", '["1/2"]', "--r", '["1"]'])
    assert recs == [{"value": "1/2", "exact": True}]


def test_eval_box_parametric(capsys):
    code, recs = records(capsys, ["eval-box", "--phi", PHI12, "--at", '["1/2"]', "--y", '["0.01,0", "0.02,0"]'])
    assert code == 0 and recs[0]["exact"] is False
    z = parse_scalar(recs[0]["value"], exact=False)
    assert abs(z - 0.25) < 1e-2 and z.imag != 0


def test_vertex_set_and_walls(capsys):
    _, recs = records(capsys, ["vertex-set", "--phi", PHI12])
    assert recs == [{"angles": [["0"], ["1/2"]]}]
    _, recs = records(capsys, ["walls", "--phi", A2])
    assert recs == [{"walls": [[0, 1], [1, -1], [1, 0]]}]


def test_alcove_of(capsys):
    _, recs = records(capsys, ["alcove-of", "--phi", A2, "--at", '["1/3","1/2"]'])
    assert recs[0]["witness"] == ["1/3", "1/2"]
    assert len(recs[0]["slabs"]) == 3


def test_deconvolve_round_trip(capsys):
    f = '{"support":[[0],[1]],"values":["1","-2"]}'
    code, recs = records(capsys, ["deconvolve", "--phi", PHI12, "--f", f, "--eps", '["1"]'])
    assert code == 0
    got = {int(r["lambda"][0]): F(r["value"]) for r in recs}
    assert got == {k: {0: F(1), 1: F(-2)}.get(k, F(0)) for k in range(-2, 4)}


def test_eval_partition(capsys):
    _, recs = records(capsys, ["eval-partition", "--phi", PHI12, "--at", '["5"]', "--chamber", '["1"]'])
    assert recs[0]["count"] == 3 and recs[0]["todd"] == "3" and recs[0]["exact"]


def test_verify_suites(capsys):
    code, recs = records(capsys, ["verify", "--phi", PHI12, "--suite", "delta-recovery"])
    assert code == 0 and recs[0]["pass"] and recs[0]["checked"] > 0
    code, recs = records(capsys, ["verify", "--phi", PHI12, "--suite", "partition"])
    assert code == 0 and recs[0]["failures"] == 0


def test_emit_profile(tmp_path):
    out = tmp_path / "p.csv"
    assert run(["emit-profile", "--phi", PHI12, "--out", str(out)]) == 0
    rows = list(csv.DictReader(io.StringIO(out.read_text())))
    assert len(rows) == 30
    assert rows[0]["t"] == "1/20" and rows[0]["exact"] == "true"
    assert sum(F(r["value_re"]) for r in rows) / 10 == 1  # midpoint rule on a piecewise-linear spline


@pytest.mark.parametrize("argv,code", [
    (["eval-box", "--phi", "{oops", "--at", '["1/2"]'], 2),
    (["no-such-command"], 2),
    ([], 2),
    (["eval-box", "--phi", PHI12], 2),
    (["eval-box", "--phi", PHI12, "--at", '["1"]'], 1),
    (["emit-profile", "--phi", A2], 1),
    (["vertex-set", "--phi", '{"dim":2,"vectors":[[1,1],[2,2]]}'], 1),
    (["eval-partition", "--phi", '{"dim":1,"vectors":[[1],[-1]]}', "--at", '["0"]'], 1),
])
def test_exit_codes(argv, code, capsys):
    assert run(argv) == code
    assert capsys.readouterr().err


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "boxsplines", "vertex-set", "--phi", PHI12],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout) == {"angles": [["0"], ["1/2"]]}


@given(st.fractions(max_denominator=1000), st.fractions(max_denominator=1000))
def test_scalar_round_trip(re, im):
    text, exact = format_scalar(Cyclo.gaussian(re, im))
    assert exact
    assert parse_scalar(text) == Cyclo.gaussian(re, im)


@given(st.complex_numbers(allow_nan=False, allow_infinity=False))
def test_float_scalar_round_trip(z):
    text, exact = format_scalar(z)
    assert not exact
    assert parse_scalar(text, exact=False) == z
