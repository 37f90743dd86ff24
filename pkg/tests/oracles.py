"""Slow, definitional reference implementations used only by the tests."""

import heapq
import itertools


def all_states(n):
    return list(itertools.product((False, True), repeat=n))


def clause_sat(clause, state):
    for lit in clause:
        if lit > 0 and state[lit - 1]:
            return True
        if lit < 0 and not state[-lit - 1]:
            return True
    return False


def brute_energy(formula, state):
    return sum(0 if clause_sat(c, state) else 1 for c in formula.clauses)


def brute_models(formula):
    return [s for s in all_states(formula.num_vars) if brute_energy(formula, s) == 0]


def neighbours(state):
    for i in range(len(state)):
        s = list(state)
        s[i] = not s[i]
        yield tuple(s)


def brute_minima(formula):
    out = []
    for s in all_states(formula.num_vars):
        e = brute_energy(formula, s)
        if all(brute_energy(formula, t) >= e for t in neighbours(s)):
            out.append((s, e))
    return out


def minimax_peak(formula, a, b):
    """Bottleneck Dijkstra: smallest achievable max energy on a path a -> b."""
    a, b = tuple(a), tuple(b)
    best = {a: brute_energy(formula, a)}
    heap = [(best[a], a)]
    while heap:
        peak, s = heapq.heappop(heap)
        if s == b:
            return peak
        if peak > best.get(s, float("inf")):
            continue
        for t in neighbours(s):
            p = max(peak, brute_energy(formula, t))
            if p < best.get(t, float("inf")):
                best[t] = p
                heapq.heappush(heap, (p, t))
    raise AssertionError("hypercube is connected")


def simple_paths(a, b, n):
    """Every simple path between a and b on the n-cube (tiny n only)."""
    a, b = tuple(a), tuple(b)
    out = []

    def walk(path):
        s = path[-1]
        if s == b:
            out.append(list(path))
            return
        for t in neighbours(s):
            if t not in path:
                path.append(t)
                walk(path)
                path.pop()

    walk([a])
    return out


def path_enumeration_peak(formula, a, b):
    return min(
        max(brute_energy(formula, s) for s in p) for p in simple_paths(a, b, formula.num_vars)
    )


def iterate_bound(d0, alpha, eps):
    k, d = 0, d0
    while d > eps:
        d *= alpha
        k += 1
    return k
