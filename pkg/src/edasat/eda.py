"""Entropy-driven annealing for SAT.

The solver anneals on the free energy ``F = E - T * w * H`` where ``E`` counts
unsatisfied clauses and ``H`` is a per-state entropy estimate. Moves come from
an explore/exploit switch: while the local entropy sits above a decaying
threshold a random non-tabu variable is flipped, afterwards the best non-tabu
flip is taken greedily.
"""

from __future__ import annotations

import math
import random
from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Iterator, Sequence, Union

from .cnf import CnfFormula
from .landscape import (
    LN2,
    Assignment,
    ClauseTracker,
    EntropyEstimator,
    Landscape,
    is_solution,
    random_assignment,
)

# ---------------------------------------------------------------- schedules


@dataclass(frozen=True)
class EndpointExponential:
    """Exponential decay pinned to ``t_start`` at 0 and ``t_final`` at ``max_iterations``."""

    t_start: float
    t_final: float
    max_iterations: int

    def __post_init__(self):
        if not (self.t_start > 0 and self.t_final > 0):
            raise ValueError("temperatures must be positive")
        if self.t_final > self.t_start:
            raise ValueError("t_final must not exceed t_start")
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be >= 1")

    def temperature(self, i: int) -> float:
        if not 0 <= i <= self.max_iterations:
            raise ValueError(f"iteration {i} outside 0..{self.max_iterations}")
        if i == self.max_iterations:
            return self.t_final
        return self.t_start * (self.t_final / self.t_start) ** (i / self.max_iterations)


@dataclass(frozen=True)
class PureExponential:
    """``t_start * exp(-i / tau)``."""

    t_start: float
    tau: float

    def __post_init__(self):
        if not (self.t_start > 0 and self.tau > 0):
            raise ValueError("t_start and tau must be positive")

    def temperature(self, i: int) -> float:
        if i < 0:
            raise ValueError("iteration must be nonnegative")
        # floor keeps the schedule strictly positive for very long runs
        return max(self.t_start * math.exp(-i / self.tau), math.ulp(0.0))


@dataclass(frozen=True)
class Geometric:
    """``t_start * gamma**i``; consecutive temperatures differ by exactly a factor gamma."""

    t_start: float
    gamma: float

    def __post_init__(self):
        if not self.t_start > 0:
            raise ValueError("t_start must be positive")
        if not 0 < self.gamma < 1:
            raise ValueError("gamma must lie in (0, 1)")

    def temperature(self, i: int) -> float:
        if i < 0:
            raise ValueError("iteration must be nonnegative")
        t = self.t_start
        for _ in range(i):
            t *= self.gamma
        return max(t, math.ulp(0.0))

    def temperatures(self) -> Iterator[float]:
        t = self.t_start
        while True:
            yield max(t, math.ulp(0.0))
            t *= self.gamma


TemperatureSchedule = Union[EndpointExponential, PureExponential, Geometric]


def temperature_at(schedule: TemperatureSchedule, i: int) -> float:
    return schedule.temperature(i)


def _temperatures(schedule: TemperatureSchedule, start: int) -> Iterator[float]:
    """Temperatures for iterations ``start, start+1, ...`` without repeated work."""
    if isinstance(schedule, Geometric):
        it = schedule.temperatures()
        for _ in range(start):
            next(it)
        yield from it
    else:
        i = start
        while True:
            yield schedule.temperature(i)
            i += 1


def schedule_from_dict(d: dict, max_iterations: int | None = None) -> TemperatureSchedule:
    kind = d.get("kind", "endpoint")
    if kind == "endpoint":
        horizon = d.get("max_iterations", max_iterations)
        if horizon is None:
            raise ValueError("endpoint schedule needs max_iterations")
        return EndpointExponential(float(d["t_start"]), float(d["t_final"]), int(horizon))
    if kind == "exponential":
        return PureExponential(float(d["t_start"]), float(d["tau"]))
    if kind == "geometric":
        return Geometric(float(d["t_start"]), float(d["gamma"]))
    raise ValueError(f"unknown schedule kind {kind!r}")


def schedule_to_dict(schedule: TemperatureSchedule) -> dict:
    if isinstance(schedule, EndpointExponential):
        return {"kind": "endpoint", "t_start": schedule.t_start, "t_final": schedule.t_final,
                "max_iterations": schedule.max_iterations}
    if isinstance(schedule, PureExponential):
        return {"kind": "exponential", "t_start": schedule.t_start, "tau": schedule.tau}
    return {"kind": "geometric", "t_start": schedule.t_start, "gamma": schedule.gamma}


# ---------------------------------------------------------------- tabu memory


class TabuList:
    """FIFO of recently flipped variables, bounded by ``capacity``."""

    def __init__(self, capacity: int):
        if capacity < 0:
            raise ValueError("tabu capacity must be nonnegative")
        self.capacity = capacity
        self._entries: deque[int] = deque(maxlen=capacity)

    def push(self, var: int) -> None:
        if self.capacity:
            self._entries.append(var)

    def __contains__(self, var: int) -> bool:
        return var in self._entries

    def __len__(self) -> int:
        return len(self._entries)

    def __iter__(self):
        return iter(self._entries)


# ---------------------------------------------------------------- config / result

DEFAULT_MAX_ITERATIONS = 100_000
DEFAULT_T_START = 2.0
DEFAULT_T_FINAL = 0.05


@dataclass(frozen=True)
class EdaConfig:
    """Solver knobs.

    ``schedule`` defaults to an endpoint-exponential ramp from
    ``DEFAULT_T_START`` to ``DEFAULT_T_FINAL`` over ``max_iterations``.
    A negative ``theta0`` disables the exploit phase entirely.
    """

    max_iterations: int = DEFAULT_MAX_ITERATIONS
    schedule: TemperatureSchedule | None = None
    tabu_size: int = 5
    estimator: EntropyEstimator = EntropyEstimator.CLAUSE_SATISFACTION
    theta0: float = 0.4
    theta_decay: float = 0.9999
    entropy_weight: float = 1.0
    boltzmann_k: float = 1.0
    seed: int = 0
    trace_every: int = 100

    def __post_init__(self):
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be >= 1")
        if self.schedule is None:
            object.__setattr__(
                self, "schedule",
                EndpointExponential(DEFAULT_T_START, DEFAULT_T_FINAL, self.max_iterations),
            )
        if isinstance(self.schedule, EndpointExponential) and (
            self.schedule.max_iterations < self.max_iterations
        ):
            raise ValueError("endpoint schedule horizon is shorter than max_iterations")
        object.__setattr__(self, "estimator", EntropyEstimator(self.estimator))
        if self.tabu_size < 0:
            raise ValueError("tabu_size must be nonnegative")
        if self.theta0 > LN2:
            raise ValueError("theta0 must not exceed ln 2")
        if not 0 < self.theta_decay <= 1:
            raise ValueError("theta_decay must lie in (0, 1]")
        if self.entropy_weight < 0:
            raise ValueError("entropy_weight must be nonnegative")
        if not self.boltzmann_k > 0:
            raise ValueError("boltzmann_k must be positive")
        if self.trace_every < 1:
            raise ValueError("trace_every must be >= 1")


@dataclass(frozen=True)
class TracePoint:
    iteration: int
    energy: int
    entropy: float
    temperature: float


@dataclass(frozen=True)
class RunResult:
    solved: bool
    witness: Assignment | None
    iterations_used: int
    best_energy: int
    energy_trace: tuple[TracePoint, ...] = ()
    accept_count: int = 0
    reject_count: int = 0
    # (flipped variable, accepted) per iteration, only when requested
    decisions: tuple[tuple[int, bool], ...] | None = None


class _Trace:
    def __init__(self, every: int):
        self.every = every
        self.points: list[TracePoint] = []
        self.best = math.inf

    def record(self, i: int, e: int, h: float, t: float, force: bool = False) -> None:
        improved = e < self.best
        if improved:
            self.best = e
        if force or improved or i % self.every == 0:
            if not self.points or self.points[-1].iteration != i:
                self.points.append(TracePoint(i, e, h, t))


# ---------------------------------------------------------------- thermodynamics


def free_energy(energy: float, entropy: float, temp: float, entropy_weight: float) -> float:
    if entropy_weight == 0:
        return float(energy)
    return energy - temp * entropy_weight * entropy


def acceptance_probability(
    f_current: float, f_new: float, temp: float, boltzmann_k: float = 1.0
) -> float:
    """Metropolis rule ``min(1, exp(-dF / kT))``; saturates instead of overflowing."""
    if not temp > 0:
        raise ValueError("temperature must be positive")
    delta = f_new - f_current
    if delta <= 0:
        return 1.0
    x = delta / (boltzmann_k * temp)
    if x > 745.0:
        return 0.0
    return math.exp(-x)


def accept(
    energy_cur: float,
    energy_new: float,
    entropy_cur: float,
    entropy_new: float,
    temp: float,
    config: EdaConfig,
    rng: random.Random,
) -> bool:
    """Draw once from ``rng`` and compare with the free-energy acceptance probability."""
    f_cur = free_energy(energy_cur, entropy_cur, temp, config.entropy_weight)
    f_new = free_energy(energy_new, entropy_new, temp, config.entropy_weight)
    u = rng.random()
    return u < acceptance_probability(f_cur, f_new, temp, config.boltzmann_k)


def explore_threshold(i: int, config: EdaConfig) -> float:
    return config.theta0 * config.theta_decay**i


# ---------------------------------------------------------------- moves


def _choose_flip(
    tracker: ClauseTracker, tabu: TabuList, i: int, config: EdaConfig, rng: random.Random
) -> int:
    n = tracker.formula.num_vars
    if n == 0:
        raise ValueError("cannot move in an empty assignment")
    candidates = [v for v in range(1, n + 1) if v not in tabu] if len(tabu) else None
    if not candidates:
        # aspiration: with everything tabu the restriction is waived
        candidates = range(1, n + 1)
    h_local = tracker.entropy(config.estimator)
    if h_local > explore_threshold(i, config):
        return candidates[rng.randrange(len(candidates))]
    best_var, best_delta = 0, math.inf
    for v in candidates:
        d = tracker.delta(v)
        if d < best_delta:
            best_var, best_delta = v, d
    return best_var


def generate_new_state(
    formula: CnfFormula,
    state: Sequence[bool],
    tabu: TabuList,
    i: int,
    config: EdaConfig,
    rng: random.Random,
) -> tuple[Assignment, int]:
    """Candidate move from ``state``. Returns the new assignment and the flipped variable.

    The caller decides whether to push the variable onto ``tabu``.
    """
    tracker = ClauseTracker(formula, state)
    var = _choose_flip(tracker, tabu, i, config, rng)
    tracker.flip(var)
    return tracker.assignment(), var


# ---------------------------------------------------------------- main loop


def run_eda(
    formula: CnfFormula,
    config: EdaConfig | None = None,
    *,
    initial: Sequence[bool] | None = None,
    record_decisions: bool = False,
    progress: Callable[[int, int], None] | None = None,
    progress_every: int = 1000,
) -> RunResult:
    """Run entropy-driven annealing until a model is found or the budget runs out.

    ``progress(iteration, energy)`` is called every ``progress_every``
    iterations when given.
    """
    config = config or EdaConfig()
    rng = random.Random(config.seed)
    n = formula.num_vars
    state = tuple(initial) if initial is not None else random_assignment(n, rng)
    tracker = ClauseTracker(formula, state)
    tabu = TabuList(config.tabu_size)
    est = config.estimator
    trace = _Trace(config.trace_every)
    decisions: list[tuple[int, bool]] | None = [] if record_decisions else None

    e_cur = tracker.energy
    trace.record(0, e_cur, tracker.entropy(est), temperature_at(config.schedule, 0), force=True)
    if n == 0:
        solved = e_cur == 0
        return RunResult(solved, state if solved else None, 0, e_cur, tuple(trace.points))

    accepts = rejects = 0
    temps = _temperatures(config.schedule, 1)
    for i in range(1, config.max_iterations + 1):
        temp = next(temps)
        var = _choose_flip(tracker, tabu, i, config, rng)
        e_new = e_cur + tracker.delta(var)
        h_cur = tracker.entropy(est)
        h_new = tracker.entropy(est, after_flip=var)
        ok = accept(e_cur, e_new, h_cur, h_new, temp, config, rng)
        if ok:
            tracker.flip(var)
            tabu.push(var)
            e_cur = e_new
            accepts += 1
        else:
            rejects += 1
        if decisions is not None:
            decisions.append((var, ok))
        if progress is not None and i % progress_every == 0:
            progress(i, e_cur)
        if e_cur == 0:
            witness = tracker.assignment()
            if not is_solution(formula, witness):
                raise AssertionError("incremental energy disagrees with full evaluation")
            trace.record(i, 0, tracker.entropy(est), temp, force=True)
            return RunResult(True, witness, i, 0, tuple(trace.points), accepts, rejects,
                             None if decisions is None else tuple(decisions))
        trace.record(i, e_cur, tracker.entropy(est) if ok else h_cur, temp,
                     force=i == config.max_iterations)

    return RunResult(False, None, config.max_iterations, int(trace.best), tuple(trace.points),
                     accepts, rejects, None if decisions is None else tuple(decisions))


# ---------------------------------------------------------------- generic landscapes


@dataclass
class AnnealResult:
    state: object
    energy: float
    solved: bool
    iterations_used: int
    best_state: object = None
    best_energy: float = math.inf
    history: list = field(default_factory=list)


def anneal(
    landscape: Landscape,
    schedule: TemperatureSchedule,
    max_iterations: int,
    *,
    entropy_weight: float = 1.0,
    boltzmann_k: float = 1.0,
    seed: int = 0,
    initial=None,
) -> AnnealResult:
    """Free-energy Metropolis annealing over any object meeting the ``Landscape`` protocol.

    Moves pick a uniformly random neighbor. Stops early once
    ``landscape.is_solution`` holds.
    """
    rng = random.Random(seed)
    state = landscape.random_state(rng) if initial is None else initial
    e, h = landscape.energy(state), landscape.entropy(state)
    best_state, best_e = state, e
    for i in range(1, max_iterations + 1):
        if landscape.is_solution(state):
            return AnnealResult(state, e, True, i - 1, best_state, best_e)
        temp = temperature_at(schedule, i)
        nbrs = landscape.neighbors(state)
        cand = nbrs[rng.randrange(len(nbrs))]
        e_new, h_new = landscape.energy(cand), landscape.entropy(cand)
        p = acceptance_probability(
            free_energy(e, h, temp, entropy_weight),
            free_energy(e_new, h_new, temp, entropy_weight),
            temp,
            boltzmann_k,
        )
        if rng.random() < p:
            state, e, h = cand, e_new, h_new
            if e < best_e:
                best_state, best_e = state, e
    return AnnealResult(state, e, landscape.is_solution(state), max_iterations, best_state, best_e)
