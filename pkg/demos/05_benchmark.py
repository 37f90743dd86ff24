# Running a small seeded benchmark and reading the aggregates back.
from edasat import BenchPlan, run_bench

plan = BenchPlan.from_dict({
    "instances": {"generate": {"n": 30, "m": 120, "k": 3, "count": 4, "seed": 1}},
    "engines": {"eda": {}, "sa": {}, "hc": {"restarts": 20}},
    "seeds_per_instance": 5,
    "max_iterations": 20_000,
})
report = run_bench(plan)
for a in report.aggregates:
    print(f"{a['instance_id']:28s} {a['engine']:3s} success={a['success_rate']:.2f} "
          f"median_iters={a['median_iterations']}")
print(report.to_csv().splitlines()[0])
# The same run from the command line:  edasat bench demos/sample_plan.json
