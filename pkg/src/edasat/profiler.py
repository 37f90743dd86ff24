"""Exact landscape analysis by enumerating every assignment of a small formula.

State ``s`` (an integer in ``[0, 2**n)``) encodes variable ``v`` in bit ``v - 1``.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field
from typing import Iterator, Sequence

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .cnf import CnfFormula
from .landscape import Assignment, assignment_to_literals

ENUMERATION_LIMIT = 26
MATERIALIZE_LIMIT = 20
# barrier search builds an n * 2**(n-1) edge graph
LANDSCAPE_LIMIT = 22
_CHUNK_BITS = 20


class EnumerationLimitError(ValueError):
    pass


def _check_limit(formula: CnfFormula, limit: int) -> None:
    if formula.num_vars > limit:
        raise EnumerationLimitError(
            f"formula has {formula.num_vars} variables; exact enumeration is limited to {limit}"
        )


def _energy_dtype(m: int):
    return np.uint8 if m < 2**8 else np.uint16 if m < 2**16 else np.uint32


def _chunk_energies(formula: CnfFormula, start: int, stop: int) -> np.ndarray:
    idx = np.arange(start, stop, dtype=np.int64)
    bits = [None] + [((idx >> (v - 1)) & 1).astype(bool) for v in range(1, formula.num_vars + 1)]
    e = np.zeros(stop - start, dtype=_energy_dtype(formula.num_clauses))
    for clause in formula.clauses:
        sat = np.zeros(stop - start, dtype=bool)
        for lit in clause:
            sat |= bits[lit] if lit > 0 else ~bits[-lit]
        e += ~sat
    return e


def _iter_energy_chunks(formula: CnfFormula) -> Iterator[tuple[int, np.ndarray]]:
    total = 1 << formula.num_vars
    step = 1 << _CHUNK_BITS
    for start in range(0, total, step):
        yield start, _chunk_energies(formula, start, min(start + step, total))


def state_energies(formula: CnfFormula, limit: int = ENUMERATION_LIMIT) -> np.ndarray:
    """Energy of every state, indexed by state code."""
    _check_limit(formula, limit)
    return np.concatenate([e for _, e in _iter_energy_chunks(formula)])


def index_to_assignment(index: int, n: int) -> Assignment:
    return tuple(bool((index >> v) & 1) for v in range(n))


def assignment_to_index(state: Sequence[bool]) -> int:
    return sum(1 << v for v, b in enumerate(state) if b)


def enumerate_solutions(
    formula: CnfFormula,
    limit: int = ENUMERATION_LIMIT,
    materialize_limit: int = MATERIALIZE_LIMIT,
) -> tuple[int, list[Assignment] | None]:
    """Exact model count; the models themselves (in state-code order) when n is small."""
    _check_limit(formula, limit)
    want_list = formula.num_vars <= materialize_limit
    count = 0
    models: list[Assignment] = []
    for start, e in _iter_energy_chunks(formula):
        hits = np.flatnonzero(e == 0)
        count += int(hits.size)
        if want_list:
            models.extend(index_to_assignment(start + int(h), formula.num_vars) for h in hits)
    return count, (models if want_list else None)


def entropy_profile(formula: CnfFormula, limit: int = ENUMERATION_LIMIT) -> float:
    """ln of the model count (uniform weight over models); 0 when there is at most one model."""
    count, _ = enumerate_solutions(formula, limit, materialize_limit=-1)
    return math.log(count) if count > 1 else 0.0


def boltzmann_distribution(
    formula: CnfFormula, temp: float, boltzmann_k: float = 1.0, limit: int = ENUMERATION_LIMIT
) -> np.ndarray:
    if not temp > 0:
        raise ValueError("temperature must be positive")
    e = state_energies(formula, limit).astype(np.float64)
    # shift by the ground energy; the factor cancels in the normalisation
    w = np.exp(-(e - e.min()) / (boltzmann_k * temp))
    return w / w.sum()


def _local_minimum_mask(e: np.ndarray, n: int) -> np.ndarray:
    idx = np.arange(e.size, dtype=np.int64)
    mask = np.ones(e.size, dtype=bool)
    for v in range(n):
        mask &= e[idx ^ (1 << v)] >= e
    return mask


def _canonical_order(codes: np.ndarray, energies: np.ndarray, n: int) -> np.ndarray:
    # lexicographic on (x1, ..., xn) means x1 is the most significant key
    rev = np.zeros(codes.size, dtype=np.int64)
    for v in range(n):
        rev |= ((codes >> v) & 1) << (n - 1 - v)
    return np.lexsort((rev, energies))


def _minima_codes(e: np.ndarray, n: int) -> np.ndarray:
    codes = np.flatnonzero(_local_minimum_mask(e, n)).astype(np.int64)
    return codes[_canonical_order(codes, e[codes], n)]


def count_local_minima(
    formula: CnfFormula, limit: int = ENUMERATION_LIMIT
) -> list[tuple[Assignment, int]]:
    """All states without a strictly lower 1-flip neighbour, ordered by (energy, assignment)."""
    e = state_energies(formula, limit)
    n = formula.num_vars
    return [(index_to_assignment(int(c), n), int(e[c])) for c in _minima_codes(e, n)]


def _connection_peaks(e: np.ndarray, n: int, pairs: np.ndarray) -> np.ndarray:
    """Lowest level t at which each (a, b) pair is joined inside {s : E(s) <= t}.

    That level equals the minimax path energy between a and b on the hypercube.
    """
    pairs = np.asarray(pairs, dtype=np.int64).reshape(-1, 2)
    peaks = np.full(len(pairs), -1, dtype=np.int64)
    if len(pairs) == 0:
        return peaks
    a, b = pairs[:, 0], pairs[:, 1]
    same = a == b
    peaks[same] = e[a[same]]
    floor = np.maximum(e[a], e[b]).astype(np.int64)
    size = e.size
    idx = np.arange(size, dtype=np.int64)
    lows = [idx[(idx >> v) & 1 == 0] for v in range(n)]
    for t in np.unique(e):
        pending = (peaks < 0) & (floor <= t)
        if not pending.any():
            if (peaks >= 0).all():
                break
            continue
        ok = e <= t
        src, dst = [], []
        for v, low in enumerate(lows):
            high = low | (1 << v)
            keep = ok[low] & ok[high]
            src.append(low[keep])
            dst.append(high[keep])
        src, dst = np.concatenate(src), np.concatenate(dst)
        graph = coo_matrix((np.ones(src.size, dtype=np.int8), (src, dst)), shape=(size, size))
        _, labels = connected_components(graph, directed=False)
        joined = pending & (labels[a] == labels[b])
        peaks[joined] = t
        if (peaks >= 0).all():
            break
    return peaks


def barrier_peak(
    formula: CnfFormula, a: Sequence[bool], b: Sequence[bool], limit: int = LANDSCAPE_LIMIT
) -> int:
    """Minimax energy over all 1-flip paths from ``a`` to ``b``; symmetric in its arguments."""
    e = state_energies(formula, limit)
    pair = np.array([[assignment_to_index(a), assignment_to_index(b)]])
    return int(_connection_peaks(e, formula.num_vars, pair)[0])


def barrier_height(
    formula: CnfFormula, a: Sequence[bool], b: Sequence[bool], limit: int = LANDSCAPE_LIMIT
) -> int:
    """Barrier peak between ``a`` and ``b`` measured from the energy of ``a``."""
    e = state_energies(formula, limit)
    ia, ib = assignment_to_index(a), assignment_to_index(b)
    peak = int(_connection_peaks(e, formula.num_vars, np.array([[ia, ib]]))[0])
    return peak - int(e[ia])


@dataclass(frozen=True)
class Barrier:
    pair: tuple[int, int]
    height: int
    peak: int


def _chain_barriers(e: np.ndarray, n: int, codes: np.ndarray) -> list[Barrier]:
    if codes.size < 2:
        return []
    pairs = np.stack([codes[:-1], codes[1:]], axis=1)
    peaks = _connection_peaks(e, n, pairs)
    return [
        Barrier((i, i + 1), int(p) - int(e[codes[i]]), int(p)) for i, p in enumerate(peaks)
    ]


def ruggedness(formula: CnfFormula, limit: int = LANDSCAPE_LIMIT) -> tuple[float, list[Barrier]]:
    """Sum of barrier heights along the canonically ordered chain of local minima."""
    e = state_energies(formula, limit)
    barriers = _chain_barriers(e, formula.num_vars, _minima_codes(e, formula.num_vars))
    return float(sum(b.height for b in barriers)), barriers


def convergence_bound(d0: float, alpha: float, eps: float) -> int:
    """Smallest k with ``d0 * alpha**k <= eps``."""
    if not d0 > 0:
        raise ValueError("d0 must be positive")
    if not 0 < alpha < 1:
        raise ValueError("alpha must lie in (0, 1)")
    if not 0 < eps <= d0:
        raise ValueError("eps must lie in (0, d0]")
    k = max(0, math.ceil(math.log(eps / d0) / math.log(alpha)))
    # log rounding can land one step off either way
    while d0 * alpha**k > eps:
        k += 1
    while k > 0 and d0 * alpha ** (k - 1) <= eps:
        k -= 1
    return k


@dataclass
class LandscapeReport:
    n: int
    m: int
    solution_count: int
    unsatisfiable: bool
    h_prof: float
    energy_histogram: list[int]
    minima: list[tuple[list[int], int]] = field(default_factory=list)
    barriers: list[Barrier] | None = None
    lambda_ruggedness: float | None = None

    @property
    def num_minima(self) -> int:
        return len(self.minima)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["num_minima"] = self.num_minima
        d["minima"] = [{"literals": lits, "energy": en} for lits, en in self.minima]
        if self.barriers is not None:
            d["barriers"] = [
                {"pair": list(b.pair), "height": b.height, "peak": b.peak} for b in self.barriers
            ]
        return d

    def to_json(self) -> str:
        return json.dumps({"landscape": self.to_dict()}, indent=2, sort_keys=True) + "\n"

    @classmethod
    def from_dict(cls, d: dict) -> "LandscapeReport":
        d = d.get("landscape", d)
        barriers = d.get("barriers")
        return cls(
            n=d["n"],
            m=d["m"],
            solution_count=d["solution_count"],
            unsatisfiable=d["unsatisfiable"],
            h_prof=d["h_prof"],
            energy_histogram=list(d["energy_histogram"]),
            minima=[(list(x["literals"]), x["energy"]) for x in d["minima"]],
            barriers=None if barriers is None else [
                Barrier(tuple(b["pair"]), b["height"], b["peak"]) for b in barriers
            ],
            lambda_ruggedness=d.get("lambda_ruggedness"),
        )


def profile(
    formula: CnfFormula,
    limit: int = ENUMERATION_LIMIT,
    landscape_limit: int = LANDSCAPE_LIMIT,
) -> LandscapeReport:
    """Full report. Barriers and ruggedness are left as None above ``landscape_limit`` variables."""
    _check_limit(formula, limit)
    n, m = formula.num_vars, formula.num_clauses
    e = state_energies(formula, limit)
    hist = np.bincount(e, minlength=m + 1)
    count = int(hist[0])
    codes = _minima_codes(e, n)
    minima = [
        (assignment_to_literals(index_to_assignment(int(c), n)), int(e[c])) for c in codes
    ]
    barriers = lam = None
    if n <= landscape_limit:
        barriers = _chain_barriers(e, n, codes)
        lam = float(sum(b.height for b in barriers))
    return LandscapeReport(
        n=n,
        m=m,
        solution_count=count,
        unsatisfiable=count == 0,
        h_prof=math.log(count) if count > 1 else 0.0,
        energy_histogram=[int(x) for x in hist],
        minima=minima,
        barriers=barriers,
        lambda_ruggedness=lam,
    )
