from __future__ import annotations

import itertools
import json
import subprocess
import sys

import pytest

from pfcirc.circuit import EdgeOrder, evaluate, evaluate_bruteforce, substitute
from pfcirc.circuit import dumps as circuit_dumps
from pfcirc.cli import main
from pfcirc.pfaffian import LabeledSkewMatrix, sub_pfaffian_gate
from pfcirc.sampling import rng_from
from pfcirc.tensor import dumps as tensor_dumps, swap_gate
from pfcirc.topologies import cycle, swap_host, with_random_matrices


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def files(tmp_path):
    rng = rng_from(3)
    paths = {}
    paths["swap"] = tmp_path / "swap.json"
    paths["swap"].write_text(tensor_dumps(swap_gate("ket")))
    paths["swapb"] = tmp_path / "swapb.json"
    paths["swapb"].write_text(tensor_dumps(swap_gate("bra")))
    paths["gate"] = tmp_path / "gate.json"
    paths["gate"].write_text(tensor_dumps(sub_pfaffian_gate(LabeledSkewMatrix.from_upper(4, [1, 2, 3, 4, 5, 6]))))
    c = with_random_matrices(cycle(6), rng, bound=5)
    paths["circuit"] = tmp_path / "c6.json"
    paths["circuit"].write_text(circuit_dumps(c))
    want = evaluate_bruteforce(c)
    bad = next(p for p in itertools.permutations(c.edge_ids) if evaluate(c, EdgeOrder(p)) != want)
    paths["bad_order"] = tmp_path / "order.json"
    paths["bad_order"].write_text(json.dumps({"order": list(bad)}))
    paths["broken"] = tmp_path / "broken.json"
    paths["broken"].write_text("{not json")
    paths["host"] = tmp_path / "host.json"
    paths["host"].write_text(circuit_dumps(substitute(with_random_matrices(swap_host(), rng), "v", swap_gate("bra"))))
    return paths


def test_invariants_of_swap(capsys, files):
    code, out, _ = run(capsys, "invariants", str(files["swap"]), "--json")
    assert code == 0
    rep = json.loads(out)
    assert {k: rep["results"][k] for k in ("H", "detL", "detM", "detB")} == {"H": "2", "detL": "1", "detM": "0", "detB": "0"}
    assert rep["floats"]["H"] == 2.0


def test_dual_invariants(capsys, files):
    code, out, _ = run(capsys, "invariants", str(files["swapb"]), "--dual")
    assert code == 0 and "H " in out
    code, _, err = run(capsys, "invariants", str(files["swap"]), "--dual")
    assert code == 2 and "bra" in err


def test_eval_with_oracle(capsys, files):
    code, out, _ = run(capsys, "eval", str(files["circuit"]), "--oracle", "--json")
    rep = json.loads(out)
    assert code == 0
    assert rep["results"]["pfaffian"] == rep["results"]["bruteforce"]
    assert rep["verdicts"] == {"values_equal": True}


def test_eval_with_bad_order_fails(capsys, files):
    code, out, _ = run(capsys, "eval", str(files["circuit"]), "--oracle", "--order", str(files["bad_order"]))
    assert code == 1 and "FAIL" in out


def test_eval_non_elementary(capsys, files):
    code, _, err = run(capsys, "eval", str(files["host"]))
    assert code == 2 and "--oracle" in err
    code, out, _ = run(capsys, "eval", str(files["host"]), "--oracle")
    assert code == 0 and "brute force" in out


@pytest.mark.parametrize("argv", [["eval", "missing.json"], ["member", "missing.json", "--side", "gate"]])
def test_missing_file(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and "cannot read" in err


def test_malformed_file(capsys, files):
    code, _, _ = run(capsys, "eval", str(files["broken"]))
    assert code == 2
    code, _, _ = run(capsys, "invariants", str(files["broken"]))
    assert code == 2


def test_bad_arguments_exit_2(capsys):
    assert run(capsys, "member", "x.json")[0] == 2
    assert run(capsys, "nonsense")[0] == 2


def test_member(capsys, files):
    code, out, _ = run(capsys, "member", str(files["swap"]), "--side", "gate")
    assert code == 1
    assert "a[]a[1234]" in out
    code, out, _ = run(capsys, "member", str(files["gate"]), "--side", "gate", "--json")
    assert code == 0 and json.loads(out)["verdicts"]["member"] is True
    code, _, _ = run(capsys, "member", str(files["swap"]), "--side", "cogate")
    assert code == 2


def test_swap_demo(capsys):
    code, out, _ = run(capsys, "swap-demo", "--paper-solution", "--trials", "3", "--json")
    rep = json.loads(out)
    assert code == 0
    assert rep["results"]["solution"]["S"]["upper"][0] == [1, 2, "1/2"]
    assert len(rep["results"]["trials"]) == 3


def test_swap_demo_params(capsys):
    code, _, _ = run(capsys, "swap-demo", "--params", "1,2,3,4", "--trials", "2")
    assert code == 0
    code, _, err = run(capsys, "swap-demo", "--params", "1,2,0,4")
    assert code == 2 and "degenerate" in err
    code, _, _ = run(capsys, "swap-demo", "--params", "1,2")
    assert code == 2


def test_swap_obstruction(capsys):
    code, out, _ = run(capsys, "swap-obstruction", "--k", "2", "--trials", "2", "--json")
    rep = json.loads(out)
    assert code == 0
    assert all(t["relation"] for t in rep["results"]["trials"])


def test_cert(capsys, tmp_path):
    dump = tmp_path / "cert.json"
    code, out, _ = run(capsys, "cert", "--system", "paper-i-plus-j", "--degree", "6", "--dump", str(dump))
    assert code == 0 and "verified     : True" in out
    assert json.loads(dump.read_text())["degree_bound"] == 6
    code, _, _ = run(capsys, "cert", "--degree", "4")
    assert code == 2


def test_selftest_subset(capsys):
    code, out, _ = run(capsys, "selftest", "--scale", "0.02", "--only", "2", "3", "9")
    assert code == 0
    assert out.count("[PASS]") == 3


def test_reports_are_byte_identical(capsys, files):
    for argv in (["swap-demo", "--trials", "3"], ["swap-obstruction", "--trials", "2"], ["eval", str(files["circuit"]), "--oracle"]):
        first = run(capsys, *argv, "--json", "--seed", "7")[1]
        second = run(capsys, *argv, "--json", "--seed", "7")[1]
        assert first == second
        assert json.loads(first)["wall_ms"] is None


def test_timing_is_opt_in(capsys):
    out = run(capsys, "swap-demo", "--trials", "1", "--json", "--timing")[1]
    assert isinstance(json.loads(out)["wall_ms"], float)


def test_console_script_entry_point(files):
    proc = subprocess.run(
        [sys.executable, "-m", "pfcirc.cli", "invariants", str(files["swap"])],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0 and "detL" in proc.stdout
