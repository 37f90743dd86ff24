"""Energy and entropy over truth assignments of a CNF formula.

An assignment is a tuple of bools; position ``v - 1`` holds variable ``v``.
Entropies are in nats.
"""

from __future__ import annotations

import enum
import math
import random
from typing import Hashable, Iterable, Protocol, Sequence, TypeVar

from .cnf import CnfFormula

Assignment = tuple[bool, ...]

LN2 = math.log(2.0)


class EntropyEstimator(str, enum.Enum):
    CLAUSE_SATISFACTION = "clause"
    BIT_BALANCE = "bits"


def _check_length(formula: CnfFormula, state: Sequence[bool]) -> None:
    if len(state) != formula.num_vars:
        raise ValueError(
            f"assignment has {len(state)} entries, formula has {formula.num_vars} variables"
        )


def literal_true(lit: int, state: Sequence[bool]) -> bool:
    return state[abs(lit) - 1] == (lit > 0)


def satisfied_clauses(formula: CnfFormula, state: Sequence[bool]) -> int:
    _check_length(formula, state)
    return sum(
        1 for clause in formula.clauses if any(literal_true(lit, state) for lit in clause)
    )


def energy(formula: CnfFormula, state: Sequence[bool]) -> int:
    """Number of unsatisfied clauses."""
    return formula.num_clauses - satisfied_clauses(formula, state)


def is_solution(formula: CnfFormula, state: Sequence[bool]) -> bool:
    return energy(formula, state) == 0


def binary_entropy(p: float) -> float:
    """-(p ln p + (1-p) ln(1-p)) with 0 ln 0 = 0."""
    if p <= 0.0 or p >= 1.0:
        return 0.0
    return -(p * math.log(p) + (1.0 - p) * math.log1p(-p))


def entropy_from_counts(
    satisfied: int, num_clauses: int, true_bits: int, num_vars: int, estimator: EntropyEstimator
) -> float:
    if estimator is EntropyEstimator.CLAUSE_SATISFACTION:
        return binary_entropy(satisfied / num_clauses) if num_clauses else 0.0
    if estimator is EntropyEstimator.BIT_BALANCE:
        return binary_entropy(true_bits / num_vars) if num_vars else 0.0
    raise ValueError(f"unknown estimator {estimator!r}")


def state_entropy(
    formula: CnfFormula,
    state: Sequence[bool],
    estimator: EntropyEstimator = EntropyEstimator.CLAUSE_SATISFACTION,
) -> float:
    estimator = EntropyEstimator(estimator)
    _check_length(formula, state)
    return entropy_from_counts(
        satisfied_clauses(formula, state), formula.num_clauses, sum(state), formula.num_vars, estimator
    )


def flip(state: Sequence[bool], var: int) -> Assignment:
    if not 1 <= var <= len(state):
        raise IndexError(f"variable {var} out of range 1..{len(state)}")
    out = list(state)
    out[var - 1] = not out[var - 1]
    return tuple(out)


def entropy_gain_scores(
    formula: CnfFormula,
    state: Sequence[bool],
    estimator: EntropyEstimator = EntropyEstimator.CLAUSE_SATISFACTION,
) -> list[float]:
    """Entropy change from flipping each variable; a discrete stand-in for the entropy gradient."""
    base = state_entropy(formula, state, estimator)
    return [
        state_entropy(formula, flip(state, v), estimator) - base
        for v in range(1, formula.num_vars + 1)
    ]


def random_assignment(n: int, rng: random.Random) -> Assignment:
    return tuple(rng.random() < 0.5 for _ in range(n))


def assignment_to_literals(state: Sequence[bool]) -> list[int]:
    return [v if b else -v for v, b in enumerate(state, start=1)]


def assignment_from_literals(literals: Iterable[int], n: int) -> Assignment:
    state = [False] * n
    for lit in literals:
        state[abs(lit) - 1] = lit > 0
    return tuple(state)


class ClauseTracker:
    """Incremental satisfied-clause bookkeeping for a single mutable assignment.

    Keeps per-clause true-literal counts so a flip's energy change costs
    O(occurrences of the variable). Duplicate and complementary literals
    within a clause are handled by counting per-clause polarity multiplicities.
    """

    def __init__(self, formula: CnfFormula, state: Sequence[bool]):
        _check_length(formula, state)
        self.formula = formula
        self.state = list(state)
        n = formula.num_vars
        occ: list[dict[int, list[int]]] = [dict() for _ in range(n + 1)]
        for ci, clause in enumerate(formula.clauses):
            for lit in clause:
                pn = occ[abs(lit)].setdefault(ci, [0, 0])
                pn[0 if lit > 0 else 1] += 1
        # occurrences[v] = [(clause, positive count, negative count), ...]
        self.occurrences = [[(c, p, q) for c, (p, q) in d.items()] for d in occ]
        self.true_count = [
            sum(1 for lit in clause if literal_true(lit, self.state)) for clause in formula.clauses
        ]
        self.num_satisfied = sum(1 for t in self.true_count if t > 0)
        self.true_bits = sum(self.state)

    @property
    def energy(self) -> int:
        return self.formula.num_clauses - self.num_satisfied

    def assignment(self) -> Assignment:
        return tuple(self.state)

    def delta(self, var: int) -> int:
        """Energy change if ``var`` were flipped."""
        value = self.state[var - 1]
        tc = self.true_count
        d = 0
        for c, pos, neg in self.occurrences[var]:
            before = tc[c]
            after = before - pos + neg if value else before - neg + pos
            if before > 0 and after == 0:
                d += 1
            elif before == 0 and after > 0:
                d -= 1
        return d

    def flip(self, var: int) -> None:
        value = self.state[var - 1]
        tc = self.true_count
        for c, pos, neg in self.occurrences[var]:
            before = tc[c]
            after = before - pos + neg if value else before - neg + pos
            tc[c] = after
            if before > 0 and after == 0:
                self.num_satisfied -= 1
            elif before == 0 and after > 0:
                self.num_satisfied += 1
        self.state[var - 1] = not value
        self.true_bits += -1 if value else 1

    def entropy(self, estimator: EntropyEstimator, after_flip: int | None = None) -> float:
        sat, bits = self.num_satisfied, self.true_bits
        if after_flip is not None:
            sat -= self.delta(after_flip)
            bits += -1 if self.state[after_flip - 1] else 1
        return entropy_from_counts(
            sat, self.formula.num_clauses, bits, self.formula.num_vars, estimator
        )


S = TypeVar("S", bound=Hashable)


class Landscape(Protocol[S]):
    """What a problem must provide to be annealed."""

    def energy(self, state: S) -> float: ...

    def entropy(self, state: S) -> float: ...

    def neighbors(self, state: S) -> Sequence[S]: ...

    def is_solution(self, state: S) -> bool: ...

    def random_state(self, rng: random.Random) -> S: ...


class SatLandscape:
    """CNF formula viewed through the generic landscape contract."""

    def __init__(
        self,
        formula: CnfFormula,
        estimator: EntropyEstimator = EntropyEstimator.CLAUSE_SATISFACTION,
    ):
        self.formula = formula
        self.estimator = EntropyEstimator(estimator)

    def energy(self, state: Assignment) -> float:
        return energy(self.formula, state)

    def entropy(self, state: Assignment) -> float:
        return state_entropy(self.formula, state, self.estimator)

    def neighbors(self, state: Assignment) -> list[Assignment]:
        return [flip(state, v) for v in range(1, len(state) + 1)]

    def is_solution(self, state: Assignment) -> bool:
        return is_solution(self.formula, state)

    def random_state(self, rng: random.Random) -> Assignment:
        return random_assignment(self.formula.num_vars, rng)
