"""DIMACS CNF reading, writing and random k-SAT generation."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from pathlib import Path

Clause = tuple[int, ...]


class DimacsError(ValueError):
    """Malformed DIMACS input. Carries the 1-based line and column of the fault."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


@dataclass(frozen=True)
class CnfFormula:
    num_vars: int
    clauses: tuple[Clause, ...] = field(default_factory=tuple)

    def __post_init__(self):
        if self.num_vars < 0:
            raise ValueError("num_vars must be nonnegative")
        # accept any iterable of iterables, store as nested tuples
        clauses = tuple(tuple(int(lit) for lit in c) for c in self.clauses)
        for ci, clause in enumerate(clauses):
            for lit in clause:
                if lit == 0 or abs(lit) > self.num_vars:
                    raise ValueError(
                        f"clause {ci}: literal {lit} out of range for {self.num_vars} variables"
                    )
        object.__setattr__(self, "clauses", clauses)

    @property
    def num_clauses(self) -> int:
        return len(self.clauses)


def parse_dimacs(text: str) -> CnfFormula:
    """Parse DIMACS CNF text.

    Comment lines start with ``c``. Clauses may span lines and several may
    share a line; each ends with ``0``. A bare ``%`` line (the SATLIB trailer)
    ends the clause section.
    """
    num_vars = num_clauses = None
    header_pos = (1, 1)
    clauses: list[Clause] = []
    current: list[int] = []
    last_pos = (1, 1)

    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("c"):
            continue
        if stripped.startswith("p"):
            col = raw.index("p") + 1
            if num_vars is not None:
                raise DimacsError("duplicate header", lineno, col)
            parts = stripped.split()
            if len(parts) != 4 or parts[0] != "p" or parts[1] != "cnf":
                raise DimacsError("malformed header, expected 'p cnf <vars> <clauses>'", lineno, col)
            try:
                num_vars, num_clauses = int(parts[2]), int(parts[3])
            except ValueError:
                raise DimacsError("header counts must be integers", lineno, col) from None
            if num_vars < 0 or num_clauses < 0:
                raise DimacsError("header counts must be nonnegative", lineno, col)
            header_pos = (lineno, col)
            continue
        if stripped == "%":
            break
        if num_vars is None:
            raise DimacsError("clause data before 'p cnf' header", lineno, 1)

        pos = 0
        for token in raw.split():
            col = raw.index(token, pos) + 1
            pos = col - 1 + len(token)
            try:
                lit = int(token)
            except ValueError:
                raise DimacsError(f"literal {token!r} is not an integer", lineno, col) from None
            if lit == 0:
                clauses.append(tuple(current))
                current = []
            elif abs(lit) > num_vars:
                raise DimacsError(
                    f"literal {lit} out of range (num_vars={num_vars})", lineno, col
                )
            else:
                current.append(lit)
            last_pos = (lineno, col)

    if num_vars is None:
        raise DimacsError("missing 'p cnf' header", 1, 1)
    if current:
        raise DimacsError("clause not terminated by 0", *last_pos)
    if len(clauses) != num_clauses:
        raise DimacsError(
            f"header declares {num_clauses} clauses but {len(clauses)} were read", *header_pos
        )
    return CnfFormula(num_vars, tuple(clauses))


def read_dimacs(path: str | Path) -> CnfFormula:
    return parse_dimacs(Path(path).read_text(encoding="ascii"))


def serialize_dimacs(formula: CnfFormula) -> str:
    lines = [f"p cnf {formula.num_vars} {formula.num_clauses}"]
    for clause in formula.clauses:
        lines.append(" ".join([*map(str, clause), "0"]))
    return "\n".join(lines) + "\n"


def write_dimacs(formula: CnfFormula, path: str | Path) -> None:
    Path(path).write_text(serialize_dimacs(formula), encoding="ascii")


def generate_random_ksat(n: int, m: int, k: int, seed: int | None = None) -> CnfFormula:
    """Uniform random k-SAT: each clause picks k distinct variables and fair-coin signs."""
    if k < 1:
        raise ValueError(f"clause width k must be >= 1, got {k}")
    if k > n:
        raise ValueError(f"clause width k={k} exceeds variable count n={n} (requires k <= n)")
    if m < 0:
        raise ValueError(f"clause count m must be nonnegative, got {m}")
    rng = random.Random(seed)
    clauses = []
    for _ in range(m):
        variables = rng.sample(range(1, n + 1), k)
        clauses.append(tuple(v if rng.random() < 0.5 else -v for v in variables))
    return CnfFormula(n, tuple(clauses))
