"""Entropy-driven annealing SAT solver, baseline annealers and an exact landscape profiler."""

from .baselines import BaselineConfig, run_hill_climb, run_sa
from .bench import BenchPlan, BenchReport, run_bench, write_report
from .cnf import CnfFormula, DimacsError, generate_random_ksat, parse_dimacs, serialize_dimacs
from .eda import (
    EdaConfig,
    EndpointExponential,
    Geometric,
    PureExponential,
    RunResult,
    TabuList,
    accept,
    acceptance_probability,
    anneal,
    free_energy,
    generate_new_state,
    run_eda,
    temperature_at,
)
from .landscape import (
    EntropyEstimator,
    SatLandscape,
    energy,
    entropy_gain_scores,
    flip,
    is_solution,
    satisfied_clauses,
    state_entropy,
)
from .profiler import (
    LandscapeReport,
    barrier_height,
    barrier_peak,
    boltzmann_distribution,
    convergence_bound,
    count_local_minima,
    entropy_profile,
    enumerate_solutions,
    profile,
    ruggedness,
)

__version__ = "0.1.0"
