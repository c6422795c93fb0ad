"""Independent brute-force references.

These enumerate the defining suprema literally (chains and pair families on
the trace, dense shift grids, all cut subsequences) and exist only to validate
the production algorithms; they are deliberately simple and slow.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .errors import BudgetExceeded
from .lqmod import omega_power_max, translation_integral
from .stepfun import Interval, StepFunction, trace_sequence
from .waterman import WatermanSequence, lambda_term
from .young import PhiFunction, phi_eval


@dataclass(frozen=True)
class OracleBudget:
    max_trace: int = 15
    max_partitions: int = 10**6
    h_grid: int = 10**4


def _trace(x: StepFunction, budget: OracleBudget):
    vals = trace_sequence(x).values
    if len(vals) > budget.max_trace:
        raise BudgetExceeded(f"trace length {len(vals)} exceeds {budget.max_trace}")
    return vals


def _chains(L: int):
    """All increasing index chains from 0 to L-1."""
    inner = range(1, L - 1)
    for k in range(L - 1):
        for mid in combinations(inner, k):
            yield (0,) + mid + (L - 1,)


def bf_jordan(x: StepFunction, budget: OracleBudget | None = None) -> float:
    """Max over all partition chains of the summed absolute increments."""
    budget = budget or OracleBudget()
    vals = _trace(x, budget)
    best = 0.0
    for chain in _chains(len(vals)):
        acc = 0.0
        for i, j in zip(chain, chain[1:]):
            acc += abs(vals[j] - vals[i])
        if acc > best:
            best = acc
    return best


def bf_phi(x: StepFunction, phi: PhiFunction, budget: OracleBudget | None = None) -> float:
    """Max over all partition chains of sum phi(|increments|)."""
    budget = budget or OracleBudget()
    vals = _trace(x, budget)
    best = 0.0
    for chain in _chains(len(vals)):
        acc = 0.0
        for i, j in zip(chain, chain[1:]):
            acc += phi_eval(phi, abs(vals[j] - vals[i]))
        if acc > best:
            best = acc
    return best


def bf_lambda(x: StepFunction, seq: WatermanSequence, budget: OracleBudget | None = None) -> float:
    """Max over all families of nonoverlapping trace index pairs, each family
    weighted best-order (increments descending against lambda_1, lambda_2, ...)."""
    budget = budget or OracleBudget()
    vals = _trace(x, budget)
    L = len(vals)
    lam = [lambda_term(seq, k + 1) for k in range(max(1, L - 1))]
    best = 0.0

    def fold(incs_desc: list[float]) -> float:
        acc = 0.0
        for k, d in enumerate(incs_desc):
            acc += d / lam[k]
        return acc

    def rec(start: int, incs: list[float]):
        nonlocal best
        for s in range(start, L - 1):
            for e in range(s + 1, L):
                d = abs(vals[e] - vals[s])
                # keep the increment list sorted descending while recursing
                pos = len(incs)
                incs.append(d)
                while pos > 0 and incs[pos - 1] < d:
                    incs[pos] = incs[pos - 1]
                    pos -= 1
                incs[pos] = d
                val = fold(incs)
                if val > best:
                    best = val
                rec(e, incs)
                incs.pop(pos)

    rec(0, [])
    return best


def bf_omega_q(
    x: StepFunction, q: float, J: Interval | None = None, budget: OracleBudget | None = None
) -> float:
    """Dense h-grid maximum of the translation norm; one-sided (<= exact)."""
    budget = budget or OracleBudget()
    if J is None:
        J = x.domain
    span = J.b - J.a
    best = 0.0
    G = budget.h_grid
    for i in range(1, G + 1):
        h = i * span / (G + 1)
        F = translation_integral(x, q, J, h)
        if F > best:
            best = F
    return best ** (1.0 / q)


def bf_ivar(
    x: StepFunction,
    p: float,
    q: float,
    cuts,
    budget: OracleBudget | None = None,
) -> float:
    """Max of sigma_{p,q} over all increasing cut subsequences (no DP)."""
    budget = budget or OracleBudget()
    n = len(cuts)
    if n >= 2 and 2 ** (n - 2) > budget.max_partitions:
        raise BudgetExceeded(f"{2 ** (n - 2)} chains exceed {budget.max_partitions}")
    e = p / q
    edge = {}

    def cost(i: int, j: int) -> float:
        key = (i, j)
        if key not in edge:
            edge[key] = omega_power_max(x, q, Interval(float(cuts[i]), float(cuts[j]))) ** e
        return edge[key]

    best = 0.0
    for chain in _chains(n):
        acc = 0.0
        for i, j in zip(chain, chain[1:]):
            acc += cost(i, j)
        if acc > best:
            best = acc
    return best ** (1.0 / p) if best > 0.0 else 0.0
