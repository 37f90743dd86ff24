# Ablation: with the entropy term off, no tabu memory and a threshold that keeps
# the solver exploring, EDA makes exactly the decisions plain annealing makes.
from edasat import BaselineConfig, EdaConfig, generate_random_ksat, run_eda, run_hill_climb, run_sa
from edasat.eda import EndpointExponential

f = generate_random_ksat(n=25, m=105, k=3, seed=3)
sched = EndpointExponential(2.0, 0.05, 20_000)

sa = run_sa(f, BaselineConfig(max_iterations=20_000, schedule=sched, seed=8), record_decisions=True)
eda0 = run_eda(
    f,
    EdaConfig(max_iterations=20_000, schedule=sched, seed=8, entropy_weight=0.0, tabu_size=0,
              theta0=-1.0, theta_decay=1.0),
    record_decisions=True,
)
print("identical decisions:", sa.decisions == eda0.decisions, "over", len(sa.decisions), "iterations")

full = run_eda(f, EdaConfig(max_iterations=20_000, schedule=sched, seed=8))
hc = run_hill_climb(f, BaselineConfig(max_iterations=20_000, restarts=20, seed=8))
for name, r in [("sa", sa), ("eda ablated", eda0), ("eda", full), ("hill climb", hc)]:
    print(f"{name:12s} solved={r.solved!s:5s} iterations={r.iterations_used:6d} best_energy={r.best_energy}")
