import io
import json
import subprocess
import sys

import pytest

from bellcomp.cli import main
from bellcomp.ring import MultiPoly


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def test_bell_text():
    assert run("bell", "4", "2", "--strategy", "direct") == (0, "3*x2^2 + 4*x1*x3\n")
    assert run("bell", "4", "2", "--strategy", "direct", "--eval", "1,1,1") == (0, "7\n")
    assert run("bell", "2", "3", "--strategy", "direct") == (0, "0\n")


@pytest.mark.parametrize("strategy", ["direct", "compositions", "id1", "id2", "id3", "id4", "id5", "id6"])
def test_bell_every_strategy(strategy):
    assert run("bell", "6", "3", "--strategy", strategy) == (0, "15*x2^3 + 60*x1*x2*x3 + 15*x1^2*x4\n")


def test_bell_json_and_csv():
    code, text = run("bell", "4", "2", "--format", "json")
    assert code == 0
    data = json.loads(text)
    assert data == [{"coeff": "3", "monomial": {"2": 2}}, {"coeff": "4", "monomial": {"1": 1, "3": 1}}]
    assert MultiPoly.from_json(data) == MultiPoly.from_json(data)
    assert run("bell", "4", "2", "--format", "csv") == (0, "coeff,monomial\n3,x2^2\n4,x1*x3\n")
    assert run("bell", "4", "2", "--eval", "1,1,1", "--format", "json") == (0, '"7"\n')


def test_bell_errors(capsys):
    assert run("bell", "3", "3", "--strategy", "id1")[0] == 2
    assert run("bell", "3", "0", "--strategy", "id4")[0] == 2
    assert run("bell", "4", "2", "--eval", "1")[0] == 2
    with pytest.raises(SystemExit) as exc:
        run("bell", "4", "2", "--strategy", "bogus")
    assert exc.value.code == 2
    assert "error" in capsys.readouterr().err


def test_comps():
    assert run("comps", "4", "3", "-w", "0=2", "-w", "1=1", "-w", "2=1") == (0, "9\n")
    assert run("comps", "3", "2", "-w", "1=1", "-w", "2=1", "--list") == (0, "(1,2)\n(2,1)\n")
    assert run("comps", "0", "0") == (0, "1\n")


@pytest.mark.parametrize("strategy", ["enumerate", "partitions", "convolution", "weighted-conv", "part-removal"])
def test_comps_strategies(strategy):
    assert run("comps", "4", "3", "-w", "0=2", "-w", "1=1", "-w", "2=1", "--strategy", strategy) == (0, "9\n")


def test_comps_rationals_and_errors():
    assert run("comps", "3", "2", "-w", "1=1/2", "-w", "2=3", "--strategy", "depril") == (0, "3\n")
    assert run("comps", "4", "3", "-w", "0=2", "-w", "1=1", "--strategy", "depril")[0] == 2
    assert run("comps", "4", "3", "-w", "garbage")[0] == 2
    assert run("comps", "4", "3", "-w", "1=1", "--format", "json") == (0, '"0"\n')


def test_comps_table():
    code, text = run("comps", "2", "2", "-w", "1=1", "-w", "2=1", "--table", "--format", "csv")
    assert code == 0
    assert text == "k\\n,0,1,2\n0,1,0,0\n1,0,1,1\n2,0,0,1\n"


def test_verify_exit_codes_and_json():
    code, text = run("verify", "--n-max", "0")
    assert code == 0
    code, text = run("verify", "--n-max", "6", "--suites", "id3,stirling", "--format", "json")
    assert code == 0
    report = json.loads(text)
    assert report["range"] == [6, 6]
    assert set(report) >= {"range", "checks", "elapsed_ms"}
    assert all(c["passed"] for c in report["checks"])
    assert [(c["suite"], c["n"], c["k"]) for c in report["checks"]] == sorted(
        ((c["suite"], c["n"], c["k"]) for c in report["checks"]), key=lambda t: (["id3", "stirling"].index(t[0]), t[1], t[2])
    )
    assert run("verify", "--suites", "nope")[0] == 2


def test_verify_all_n10_has_many_checks():
    code, text = run("verify", "--n-max", "10", "--suites", "all", "--format", "json")
    assert code == 0
    report = json.loads(text)
    assert sum(c["passed"] for c in report["checks"]) > 500
    assert report["normalization_exponent"]["k"]["mismatches"] == 0
    assert report["normalization_exponent"]["n"]["mismatches"] > 0


def test_verify_parallel_matches_serial():
    _, serial = run("verify", "--n-max", "5", "--format", "csv")
    _, parallel = run("verify", "--n-max", "5", "--format", "csv", "--jobs", "2")
    assert serial == parallel


def test_verify_reports_failures(monkeypatch):
    from bellcomp import bell as B

    monkeypatch.setattr(B, "bell_by_id6", lambda n, k: MultiPoly.constant(0))
    code, text = run("verify", "--n-max", "2", "--suites", "id6")
    assert code == 1
    assert "FAIL" in text and "expected" in text


def test_bench_shape():
    code, text = run("bench", "--n-max", "1", "--repetitions", "1")
    lines = text.splitlines()
    assert lines[0] == "strategy,n,k,wall_time_ns,term_count"
    cells = [tuple(line.split(",")[:3]) for line in lines[1:]]
    assert cells[:3] == [("direct", "0", "0"), ("direct", "1", "0"), ("direct", "1", "1")]
    code, text = run("bench", "--n-max", "5", "--strategies", "direct,compositions", "--repetitions", "1")
    rows = text.splitlines()[1:]
    assert len(rows) == 2 * 21
    direct = [r.split(",") for r in rows if r.startswith("direct,")]
    comp = [r.split(",") for r in rows if r.startswith("compositions,")]
    assert [r[4] for r in direct] == [r[4] for r in comp]
    assert run("bench", "--strategies", "nope")[0] == 2


def test_output_is_deterministic():
    assert run("bell", "9", "4") == run("bell", "9", "4")
    assert run("verify", "--n-max", "4", "--format", "csv") == run("verify", "--n-max", "4", "--format", "csv")


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "bellcomp", "bell", "3", "2"], capture_output=True, text=True, check=True
    )
    assert proc.stdout == "3*x1*x2\n"
