# Exact landscape quantities for a small instance: model count, entropy profile,
# local minima, barriers, ruggedness and the Boltzmann distribution.
import math

import numpy as np

from edasat import (
    boltzmann_distribution,
    convergence_bound,
    count_local_minima,
    entropy_profile,
    enumerate_solutions,
    generate_random_ksat,
    profile,
    ruggedness,
)
from edasat.profiler import state_energies

f = generate_random_ksat(n=10, m=42, k=3, seed=4)

count, models = enumerate_solutions(f)
print("models:", count, " H_prof =", entropy_profile(f), "nats =", entropy_profile(f) / math.log(2), "bits")

minima = count_local_minima(f)
print("local minima:", len(minima), " non-solution minima:", sum(e > 0 for _, e in minima))

lam, barriers = ruggedness(f)
print("ruggedness:", lam, "over", len(barriers), "consecutive pairs")

e = state_energies(f)
for temp in (2.0, 0.5, 0.1):
    p = boltzmann_distribution(f, temp)
    print(f"T={temp}: ground-state mass {p[e == e.min()].sum():.4f}, mean energy {np.dot(p, e):.3f}")

print("iterations to shrink distance 100 -> 0.01 at rate 0.8:", convergence_bound(100, 0.8, 0.01))

rep = profile(f)
print(rep.to_json()[:300], "...")
