import json
import shutil
import subprocess
import sys
from pathlib import Path

import pytest

from edasat.cli import EXIT_SAT, EXIT_UNKNOWN, main
from edasat.cnf import CnfFormula, read_dimacs, write_dimacs

DEMOS = Path(__file__).resolve().parents[1] / "demos"


def test_gen_deterministic(tmp_path):
    a, b = tmp_path / "a.cnf", tmp_path / "b.cnf"
    assert main(["gen", "-n", "20", "-m", "60", "-k", "3", "--seed", "1", "-o", str(a)]) == 0
    assert main(["gen", "-n", "20", "-m", "60", "-k", "3", "--seed", "1", "-o", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    f = read_dimacs(a)
    assert (f.num_vars, f.num_clauses) == (20, 60)


def test_gen_rejects_k_above_n(capsys):
    assert main(["gen", "-n", "2", "-k", "3", "--seed", "0"]) != 0
    assert "k <= n" in capsys.readouterr().err


def test_gen_without_seed_logs_it(capsys):
    assert main(["gen", "-n", "4", "-m", "3"]) == 0
    assert "no --seed given, using" in capsys.readouterr().err


def test_bad_flags_exit_nonzero():
    with pytest.raises(SystemExit) as info:
        main(["solve"])
    assert info.value.code != 0
    with pytest.raises(SystemExit):
        main(["gen", "-n", "x"])


@pytest.mark.parametrize("engine", ["eda", "sa", "hc"])
def test_solve_trivial(tmp_path, capsys, engine):
    path = tmp_path / "t.cnf"
    write_dimacs(CnfFormula(1, [[1]]), path)
    assert main(["solve", str(path), "--engine", engine, "--seed", "4"]) == EXIT_SAT
    out = capsys.readouterr().out
    assert "s SATISFIABLE" in out and "v 1 0" in out.splitlines()


def test_solve_contradiction(tmp_path, capsys):
    path = tmp_path / "u.cnf"
    write_dimacs(CnfFormula(1, [[1], [-1]]), path)
    assert main(["solve", str(path), "--seed", "1", "--max-iterations", "500"]) == EXIT_UNKNOWN
    out = capsys.readouterr().out
    assert "s UNKNOWN" in out and "c best_energy 1" in out


def test_solve_model_line_satisfies(tmp_path, capsys):
    f = read_dimacs(DEMOS / "data" / "uf20-60-s1.cnf")
    assert main(["solve", str(DEMOS / "data" / "uf20-60-s1.cnf"), "--seed", "3"]) == EXIT_SAT
    vline = [l for l in capsys.readouterr().out.splitlines() if l.startswith("v ")][0]
    lits = set(map(int, vline.split()[1:-1]))
    assert vline.endswith(" 0") and len(lits) == 20
    assert all(any(l in lits for l in c) for c in f.clauses)


def test_solve_trace_and_output(tmp_path):
    src = DEMOS / "data" / "uf12-51-s2.cnf"
    out1, tr1 = tmp_path / "o1.txt", tmp_path / "t1.csv"
    main(["solve", str(src), "--seed", "7", "-o", str(out1), "--trace", str(tr1)])
    assert tr1.read_text().startswith("iteration,energy,entropy,temperature\n")
    assert out1.read_text().startswith("c engine eda")


def test_solve_parse_error(tmp_path, capsys):
    path = tmp_path / "bad.cnf"
    path.write_text("p cnf 1 1\n2 0\n")
    assert main(["solve", str(path), "--seed", "1"]) == 1
    assert "line 2" in capsys.readouterr().err


def test_solve_bad_config(tmp_path, capsys):
    path = tmp_path / "t.cnf"
    write_dimacs(CnfFormula(1, [[1]]), path)
    assert main(["solve", str(path), "--seed", "1", "--theta0", "3"]) == 1


def test_profile_outputs(tmp_path):
    flat = tmp_path / "flat.cnf"
    write_dimacs(CnfFormula(4, []), flat)
    out = tmp_path / "p.json"
    assert main(["profile", str(flat), "-o", str(out)]) == 0
    rep = json.loads(out.read_text())["landscape"]
    assert rep["h_prof"] == pytest.approx(4 * 0.6931471805599453)
    assert rep["num_minima"] == 16 and rep["lambda_ruggedness"] == 0.0
    unique = tmp_path / "u.cnf"
    write_dimacs(CnfFormula(2, [[1], [-2]]), unique)
    assert main(["profile", str(unique), "-o", str(out)]) == 0
    assert json.loads(out.read_text())["landscape"]["h_prof"] == 0.0


def test_profile_refuses_large(tmp_path, capsys):
    big = tmp_path / "big.cnf"
    main(["gen", "-n", "30", "-m", "10", "--seed", "1", "-o", str(big)])
    assert main(["profile", str(big)]) != 0
    assert "limit of 26" in capsys.readouterr().err


def test_bench_sample_plan(tmp_path):
    work = tmp_path / "demos"
    shutil.copytree(DEMOS, work, ignore=shutil.ignore_patterns("out"))
    assert main(["bench", str(work / "sample_plan.json")]) == 0
    csv_text = (work / "out" / "sample_bench.csv").read_text()
    assert len(csv_text.splitlines()) == 1 + 3 * 3 * 5
    assert json.loads((work / "out" / "sample_bench.json").read_text())["aggregates"]


def test_bench_missing_files(tmp_path):
    write_dimacs(CnfFormula(1, [[1]]), tmp_path / "ok.cnf")
    plan = tmp_path / "plan.json"
    plan.write_text(json.dumps({"instances": {"files": ["ok.cnf", "gone.cnf"]}, "seeds_per_instance": 1}))
    assert main(["bench", str(plan), "-o", str(tmp_path / "r")]) == 0
    assert json.loads((tmp_path / "r.json").read_text())["errors"][0]["instance_id"] == "gone.cnf"
    plan.write_text(json.dumps({"instances": {"files": ["gone.cnf"]}, "seeds_per_instance": 1}))
    assert main(["bench", str(plan), "-o", str(tmp_path / "r")]) != 0


def test_bench_invalid_plan_lists_everything(tmp_path, capsys):
    plan = tmp_path / "plan.json"
    plan.write_text(json.dumps({"instances": {}, "max_iterations": 0, "engines": {"ga": {}}}))
    assert main(["bench", str(plan), "-o", str(tmp_path / "r")]) != 0
    err = capsys.readouterr().err
    assert "instances" in err and "max_iterations" in err and "ga" in err


def test_module_entry_point(tmp_path):
    path = tmp_path / "t.cnf"
    write_dimacs(CnfFormula(1, [[1]]), path)
    proc = subprocess.run([sys.executable, "-m", "edasat", "solve", str(path), "--seed", "1"],
                          capture_output=True, text=True)
    assert proc.returncode == 10 and "v 1 0" in proc.stdout
