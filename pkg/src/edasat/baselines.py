"""Reference solvers: plain simulated annealing and greedy hill climbing with restarts."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Sequence

from .cnf import CnfFormula
from .eda import (
    DEFAULT_MAX_ITERATIONS,
    DEFAULT_T_FINAL,
    DEFAULT_T_START,
    EndpointExponential,
    RunResult,
    TemperatureSchedule,
    _temperatures,
    _Trace,
    acceptance_probability,
    temperature_at,
)
from .landscape import ClauseTracker, EntropyEstimator, is_solution, random_assignment

_EST = EntropyEstimator.CLAUSE_SATISFACTION


@dataclass(frozen=True)
class BaselineConfig:
    max_iterations: int = DEFAULT_MAX_ITERATIONS
    schedule: TemperatureSchedule | None = None
    seed: int = 0
    restarts: int = 10
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
        if self.restarts < 0:
            raise ValueError("restarts must be nonnegative")
        if self.trace_every < 1:
            raise ValueError("trace_every must be >= 1")


def _checked(formula: CnfFormula, tracker: ClauseTracker):
    witness = tracker.assignment()
    if not is_solution(formula, witness):
        raise AssertionError("incremental energy disagrees with full evaluation")
    return witness


def run_sa(
    formula: CnfFormula,
    config: BaselineConfig | None = None,
    *,
    initial: Sequence[bool] | None = None,
    record_decisions: bool = False,
) -> RunResult:
    """Metropolis annealing on raw energy with uniformly random single flips.

    Consumes the RNG exactly like ``run_eda`` in its always-explore, tabu-free
    configuration: initial bits, then per iteration one ``randrange`` and one
    ``random`` draw.
    """
    config = config or BaselineConfig()
    rng = random.Random(config.seed)
    n = formula.num_vars
    state = tuple(initial) if initial is not None else random_assignment(n, rng)
    tracker = ClauseTracker(formula, state)
    trace = _Trace(config.trace_every)
    decisions = [] if record_decisions else None

    e_cur = tracker.energy
    trace.record(0, e_cur, tracker.entropy(_EST), temperature_at(config.schedule, 0), force=True)
    if n == 0:
        solved = e_cur == 0
        return RunResult(solved, state if solved else None, 0, e_cur, tuple(trace.points))

    accepts = rejects = 0
    temps = _temperatures(config.schedule, 1)
    for i in range(1, config.max_iterations + 1):
        temp = next(temps)
        var = rng.randrange(n) + 1
        e_new = e_cur + tracker.delta(var)
        ok = rng.random() < acceptance_probability(e_cur, e_new, temp)
        if ok:
            tracker.flip(var)
            e_cur = e_new
            accepts += 1
        else:
            rejects += 1
        if decisions is not None:
            decisions.append((var, ok))
        if e_cur == 0:
            witness = _checked(formula, tracker)
            trace.record(i, 0, 0.0, temp, force=True)
            return RunResult(True, witness, i, 0, tuple(trace.points), accepts, rejects,
                             None if decisions is None else tuple(decisions))
        trace.record(i, e_cur, tracker.entropy(_EST), temp, force=i == config.max_iterations)

    return RunResult(False, None, config.max_iterations, int(trace.best), tuple(trace.points),
                     accepts, rejects, None if decisions is None else tuple(decisions))


def run_hill_climb(
    formula: CnfFormula,
    config: BaselineConfig | None = None,
    *,
    initial: Sequence[bool] | None = None,
) -> RunResult:
    """Steepest descent on energy, restarting from a fresh random state at each local minimum.

    Every flip costs one iteration; ``reject_count`` counts local minima hit.
    The schedule is unused and trace temperatures are 0.
    """
    config = config or BaselineConfig()
    rng = random.Random(config.seed)
    n = formula.num_vars
    state = tuple(initial) if initial is not None else random_assignment(n, rng)
    tracker = ClauseTracker(formula, state)
    trace = _Trace(config.trace_every)

    e_cur = tracker.energy
    trace.record(0, e_cur, tracker.entropy(_EST), 0.0, force=True)
    best_e = e_cur
    moves = stalls = 0
    restarts_left = config.restarts
    while True:
        if e_cur == 0:
            witness = _checked(formula, tracker)
            trace.record(moves, 0, 0.0, 0.0, force=True)
            return RunResult(True, witness, moves, 0, tuple(trace.points), moves, stalls)
        if moves >= config.max_iterations:
            break
        best_var, best_delta = 0, 0
        for v in range(1, n + 1):
            d = tracker.delta(v)
            if d < best_delta:
                best_var, best_delta = v, d
        if best_var:
            tracker.flip(best_var)
            e_cur += best_delta
            moves += 1
            if e_cur < best_e:
                best_e = e_cur
            trace.record(moves, e_cur, tracker.entropy(_EST), 0.0)
            continue
        stalls += 1
        if restarts_left == 0:
            break
        restarts_left -= 1
        tracker = ClauseTracker(formula, random_assignment(n, rng))
        e_cur = tracker.energy
        if e_cur < best_e:
            best_e = e_cur

    trace.record(moves, e_cur, tracker.entropy(_EST), 0.0, force=True)
    return RunResult(False, None, moves, best_e, tuple(trace.points), moves, stalls)
