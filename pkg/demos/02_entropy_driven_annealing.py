# Solving a random instance with entropy-driven annealing and inspecting the run.
from edasat import EdaConfig, generate_random_ksat, is_solution, run_eda, state_entropy
from edasat.landscape import EntropyEstimator

f = generate_random_ksat(n=40, m=160, k=3, seed=11)

res = run_eda(f, EdaConfig(seed=0))
print("solved:", res.solved, "after", res.iterations_used, "iterations")
print("accepted", res.accept_count, "rejected", res.reject_count)
if res.solved:
    assert is_solution(f, res.witness)

# The trace is downsampled: every 100 iterations plus each new best energy.
for p in res.energy_trace[:8]:
    print(f"  i={p.iteration:6d}  E={p.energy:3d}  H={p.entropy:.4f}  T={p.temperature:.4f}")

# Entropy weight 0 turns the free energy back into plain energy.
plain = run_eda(f, EdaConfig(seed=0, entropy_weight=0.0))
print("without entropy term:", plain.solved, plain.iterations_used)

# The bit-balance estimator is available for sensitivity checks.
bits = run_eda(f, EdaConfig(seed=0, estimator=EntropyEstimator.BIT_BALANCE))
print("bit-balance estimator:", bits.solved, bits.iterations_used)
print("entropy of the start state:", state_entropy(f, (False,) * 40))
