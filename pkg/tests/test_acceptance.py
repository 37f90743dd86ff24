"""Exit criteria. Each test prints a single PASS/FAIL line (see the summary section)."""

import itertools
import json
import math
import random
import shutil
import time
from pathlib import Path

from edasat.baselines import BaselineConfig, run_hill_climb, run_sa
from edasat.cli import main
from edasat.cnf import CnfFormula, generate_random_ksat, write_dimacs
from edasat.eda import EdaConfig, EndpointExponential, Geometric, PureExponential, accept, run_eda, temperature_at
from edasat.profiler import (
    barrier_height,
    barrier_peak,
    boltzmann_distribution,
    convergence_bound,
    count_local_minima,
    entropy_profile,
    enumerate_solutions,
    ruggedness,
    state_energies,
)

from oracles import brute_energy, brute_minima, brute_models, iterate_bound, path_enumeration_peak

ROOT = Path(__file__).resolve().parents[1]


def test_c01_oracle_soundness(criterion):
    t0 = time.perf_counter()
    witnesses = false_pos = 0
    for i in range(200):
        f = generate_random_ksat(12, 51, 3, seed=1000 + i)
        _, models = enumerate_solutions(f)
        models = set(models)
        results = [
            run_eda(f, EdaConfig(max_iterations=1000, seed=i)),
            run_sa(f, BaselineConfig(max_iterations=1000, seed=i)),
            run_hill_climb(f, BaselineConfig(max_iterations=1000, restarts=20, seed=i)),
        ]
        for r in results:
            if r.solved:
                witnesses += 1
                false_pos += r.witness not in models
    dt = time.perf_counter() - t0
    criterion(false_pos == 0 and dt < 60, f"{witnesses} witnesses, {false_pos} false positives, {dt:.1f}s")


def test_c02_entropy_profile_identity(criterion):
    t0 = time.perf_counter()
    bad = unique = checked = 0
    rng = random.Random(2)
    for i in range(100):
        if i % 4 == 0:
            # forced unique model: unit clauses plus random clauses it satisfies
            target = [rng.random() < 0.5 for _ in range(8)]
            units = [[v if target[v - 1] else -v] for v in range(1, 9)]
            extra = [c for c in generate_random_ksat(8, 20, 3, seed=i).clauses
                     if any((l > 0) == target[abs(l) - 1] for l in c)]
            f = CnfFormula(8, units + extra)
        else:
            f = generate_random_ksat(10, 25 + i % 30, 3, seed=i)
        count = len(brute_models(f))
        h = entropy_profile(f)
        if count >= 1:
            checked += 1
            bad += h != math.log(count)
        if count == 1:
            unique += 1
            bad += h != 0.0
    dt = time.perf_counter() - t0
    criterion(bad == 0 and unique >= 25 and dt < 60,
              f"{checked} satisfiable checked, {unique} unique-model with H=0, {bad} mismatches, {dt:.1f}s")


def test_c03_metropolis_statistics(criterion):
    rng = random.Random(20260101)
    cfg = EdaConfig(entropy_weight=0.0, boltzmann_k=1.0)
    rate = sum(accept(0.0, 1.0, 0.0, 0.0, 1.0, cfg, rng) for _ in range(100_000)) / 100_000
    criterion(0.358 <= rate <= 0.378, f"empirical acceptance {rate:.5f} vs exp(-1)={math.exp(-1):.5f}")


def test_c04_schedule_exactness(criterion):
    ok = True
    for t0, t1, n in [(10.0, 0.1, 1000), (2.0, 0.05, 100_000), (123.4, 1e-3, 7), (1.0, 1.0, 3)]:
        s = EndpointExponential(t0, t1, n)
        ok &= abs(temperature_at(s, 0) - t0) <= 1e-9 * t0
        ok &= abs(temperature_at(s, n) - t1) <= 1e-9 * t1
    for t0, tau in [(2.0, 100), (7.5, 3), (1e-3, 10_000)]:
        ok &= abs(temperature_at(PureExponential(t0, tau), tau) - t0 / math.e) <= 1e-12
    g = Geometric(3.0, 0.95)
    seq = [temperature_at(g, i) for i in range(500)]
    ok &= all(b == 0.95 * a for a, b in zip(seq, seq[1:]))
    criterion(ok, "endpoint rel<=1e-9, exponential at tau = T/e within 1e-12, geometric ratio exact over 500 steps")


def test_c05_ablation_replay(criterion):
    mismatched = 0
    for i in range(20):
        f = generate_random_ksat(15, 64, 3, seed=500 + i)
        sched = EndpointExponential(2.0, 0.05, 3000)
        sa = run_sa(f, BaselineConfig(max_iterations=3000, schedule=sched, seed=i), record_decisions=True)
        eda = run_eda(f, EdaConfig(max_iterations=3000, schedule=sched, seed=i, entropy_weight=0.0,
                                   tabu_size=0, theta0=-1.0, theta_decay=1.0), record_decisions=True)
        mismatched += eda.decisions != sa.decisions
    criterion(mismatched == 0, f"{20 - mismatched}/20 decision sequences identical")


def test_c06_solver_effectiveness(criterion):
    t0 = time.perf_counter()
    instances, seed = [], 0
    while len(instances) < 50:
        f = generate_random_ksat(20, 60, 3, seed=seed)
        if enumerate_solutions(f, materialize_limit=-1)[0] > 0:
            instances.append((seed, f))
        seed += 1
    eda = [run_eda(f, EdaConfig(seed=s)) for s, f in instances]
    sa = [run_sa(f, BaselineConfig(seed=s)) for s, f in instances]
    eda_rate = sum(r.solved for r in eda) / 50
    sa_rate = sum(r.solved for r in sa) / 50
    dt = time.perf_counter() - t0
    out = ROOT / "results" / "effectiveness.json"
    out.parent.mkdir(exist_ok=True)
    out.write_text(json.dumps({
        "instances": "random 3-SAT n=20 m=60, first 50 generator seeds verified satisfiable by enumeration",
        "generator_seeds": [s for s, _ in instances],
        "budget": 100_000,
        "eda_default_config": {"t_start": 2.0, "t_final": 0.05, "tabu_size": 5, "theta0": 0.4,
                               "theta_decay": 0.9999, "entropy_weight": 1.0, "estimator": "clause"},
        "eda_success_rate": eda_rate,
        "sa_success_rate": sa_rate,
        "eda_median_iterations": sorted(r.iterations_used for r in eda)[25],
        "sa_median_iterations": sorted(r.iterations_used for r in sa)[25],
    }, indent=2) + "\n")
    criterion(eda_rate >= 0.95 and dt < 300, f"eda {eda_rate:.2f}, sa {sa_rate:.2f}, {dt:.1f}s")


def test_c07_boltzmann_normalization(criterion):
    worst = 0.0
    for i in range(50):
        f = generate_random_ksat(6 + i % 6, 20 + i, 3, seed=i)
        temp = [0.01, 0.1, 0.5, 1.0, 3.0, 100.0][i % 6]
        worst = max(worst, abs(boltzmann_distribution(f, temp).sum() - 1.0))
    f = generate_random_ksat(10, 45, 3, seed=77)
    e = state_energies(f)
    ground = float(boltzmann_distribution(f, 0.01)[e == e.min()].sum())
    criterion(worst <= 1e-9 and ground >= 0.999, f"max |sum-1| = {worst:.2e}, ground mass at T=0.01 = {ground:.6f}")


def _two_var_family():
    lits = [1, -1, 2, -2]
    clauses = [[l] for l in lits] + [[a, b] for a in (1, -1) for b in (2, -2)]
    yield CnfFormula(2, [])
    for c in clauses:
        yield CnfFormula(2, [c])
    for c1, c2 in itertools.product(clauses, repeat=2):
        yield CnfFormula(2, [c1, c2])


def test_c08_landscape_metrics(criterion):
    mismatches = checked = 0
    for f in _two_var_family():
        checked += 1
        expect_minima = sorted(brute_minima(f), key=lambda m: (m[1], m[0]))
        got = count_local_minima(f)
        mismatches += got != expect_minima
        states = [s for s, _ in expect_minima]
        lam_expect = 0
        for a, b in zip(states, states[1:]):
            peak = path_enumeration_peak(f, a, b)
            lam_expect += peak - brute_energy(f, a)
            mismatches += barrier_height(f, a, b) != peak - brute_energy(f, a)
        for a, b in itertools.product(itertools.product((False, True), repeat=2), repeat=2):
            pab, pba = barrier_peak(f, a, b), barrier_peak(f, b, a)
            mismatches += pab != pba or pab != path_enumeration_peak(f, a, b)
        mismatches += ruggedness(f)[0] != lam_expect
    criterion(mismatches == 0, f"{checked} two-variable formulas, {mismatches} mismatches")


def _capture(capsys, argv, files=()):
    code = main(argv)
    out = capsys.readouterr().out
    return code, out, tuple(Path(p).read_bytes() for p in files)


def test_c09_cli_determinism(criterion, tmp_path, capsys):
    cnf = tmp_path / "a.cnf"
    prof = tmp_path / "p.json"
    trace = tmp_path / "t.csv"
    work = tmp_path / "demos"
    shutil.copytree(ROOT / "demos", work, ignore=shutil.ignore_patterns("out", "*.py"))
    cases = {
        "gen": (["gen", "-n", "20", "-m", "60", "-k", "3", "--seed", "1", "-o", str(cnf)], [cnf]),
        "solve": (["solve", str(work / "data" / "uf20-60-s1.cnf"), "--seed", "5", "--trace", str(trace)], [trace]),
        "solve-sa": (["solve", str(work / "data" / "uf12-51-s2.cnf"), "--engine", "sa", "--seed", "5"], []),
        "solve-hc": (["solve", str(work / "data" / "uf12-51-s2.cnf"), "--engine", "hc", "--seed", "5"], []),
        "profile": (["profile", str(work / "data" / "uf12-51-s2.cnf"), "-o", str(prof)], [prof]),
        "bench": (["bench", str(work / "sample_plan.json")],
                  [work / "out" / "sample_bench.csv", work / "out" / "sample_bench.json"]),
    }
    unstable = []
    for name, (argv, files) in cases.items():
        runs = [_capture(capsys, argv, files) for _ in range(3)]
        if not (runs[0] == runs[1] == runs[2]):
            unstable.append(name)
    criterion(not unstable, f"{len(cases)} invocations x3 byte-identical" if not unstable else f"unstable: {unstable}")


def test_c10_convergence_bound(criterion):
    rng = random.Random(10)
    bad = 0
    for _ in range(1000):
        d0 = 10 ** rng.uniform(-3, 6)
        alpha = rng.uniform(0.01, 0.999)
        eps = d0 * 10 ** rng.uniform(-12, 0)
        bad += convergence_bound(d0, alpha, eps) != iterate_bound(d0, alpha, eps)
    criterion(bad == 0, f"{1000 - bad}/1000 triples agree with direct iteration")
