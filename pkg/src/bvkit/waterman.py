"""Waterman sequences, the Lambda-variation and its interval seminorms.

The variation of a step function is a supremum over finite sequences of
nonoverlapping intervals; on a step function every such sequence is value-
equivalent to a family of index pairs on the trace (point and piece values
interleaved), so the supremum is attained on trace index pairs. Exhaustive
enumeration over those families, with descending increments matched to the
nondecreasing weights (rearrangement), gives the exact value up to a trace
budget; past it a greedy construction yields a certified lower bound.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from . import _kernels
from .errors import (
    DomainMismatch,
    IndexZero,
    InvalidSequence,
    OutOfDomain,
    OverlappingIntervals,
    SchemaError,
)
from .stepfun import (
    Interval,
    IntervalCollection,
    StepFunction,
    eval_at,
    restrict,
    trace_positions,
    trace_sequence,
)

_KINDS = ("constant_one", "harmonic", "power", "explicit")


@dataclass(frozen=True)
class WatermanSequence:
    """Nondecreasing positive weights (lambda_n) with divergent sum of 1/lambda_n."""

    kind: str
    s: float | None = None
    prefix: tuple[float, ...] = ()
    tail: "WatermanSequence | None" = None

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise InvalidSequence(f"unknown kind {self.kind!r}")
        if self.kind == "power":
            if self.s is None or not 0.0 <= self.s <= 1.0:
                raise InvalidSequence(f"power kind needs s in [0,1], got {self.s}")
        if self.kind == "explicit":
            if not self.prefix:
                raise InvalidSequence("explicit kind needs a nonempty prefix")
            if self.tail is None or self.tail.kind == "explicit":
                raise InvalidSequence("explicit kind needs a builtin tail rule")
            vals = self.prefix
            if any(v <= 0 or not math.isfinite(v) for v in vals):
                raise InvalidSequence("prefix terms must be positive and finite")
            if any(a > b for a, b in zip(vals, vals[1:])):
                raise InvalidSequence("prefix must be nondecreasing")
            if lambda_term(self.tail, len(vals) + 1) < vals[-1]:
                raise InvalidSequence("tail continuation would decrease the sequence")

    def term(self, n: int) -> float:
        return lambda_term(self, n)


HARMONIC = WatermanSequence("harmonic")
CONSTANT_ONE = WatermanSequence("constant_one")


def lambda_term(seq: WatermanSequence, n: int) -> float:
    """The n-th weight lambda_n (1-based)."""
    if n < 1:
        raise IndexZero(f"Waterman indices start at 1, got {n}")
    if seq.kind == "constant_one":
        return 1.0
    if seq.kind == "harmonic":
        return float(n)
    if seq.kind == "power":
        return float(n) ** seq.s
    if n <= len(seq.prefix):
        return seq.prefix[n - 1]
    return lambda_term(seq.tail, n)


def sequence_to_json(seq: WatermanSequence) -> dict:
    if seq.kind == "power":
        return {"kind": "power", "s": seq.s}
    if seq.kind == "explicit":
        out = {"kind": "explicit", "prefix": list(seq.prefix), "tail": seq.tail.kind}
        if seq.tail.kind == "power":
            out["s"] = seq.tail.s
        return out
    return {"kind": seq.kind}


def sequence_from_json(obj) -> WatermanSequence:
    if not isinstance(obj, dict) or "kind" not in obj:
        raise SchemaError("Waterman sequence document needs a 'kind' field")
    kind = obj["kind"]
    try:
        if kind == "power":
            return WatermanSequence("power", s=float(obj["s"]))
        if kind == "explicit":
            tail_kind = obj["tail"]
            tail = (
                WatermanSequence("power", s=float(obj["s"]))
                if tail_kind == "power"
                else WatermanSequence(tail_kind)
            )
            return WatermanSequence(
                "explicit", prefix=tuple(float(v) for v in obj["prefix"]), tail=tail
            )
        return WatermanSequence(kind)
    except (KeyError, TypeError, ValueError, InvalidSequence) as e:
        raise SchemaError(f"bad Waterman sequence document: {e}") from e


# ---- interval seminorms -----------------------------------------------------

def _increments(x: StepFunction, coll: IntervalCollection) -> list[float]:
    out = []
    for it in coll:
        if not x.domain.contains(it):
            raise OutOfDomain(f"{it} outside domain of x")
        out.append(abs(eval_at(x, it.b) - eval_at(x, it.a)))
    return out


def sigma_lambda_ordered(x: StepFunction, coll: IntervalCollection, seq: WatermanSequence) -> float:
    """sum |x(b_i)-x(a_i)| / lambda_i with weights in the given collection order."""
    acc = 0.0
    for i, d in enumerate(_increments(x, coll)):
        acc += d / lambda_term(seq, i + 1)
    return acc


def sigma_lambda_best_order(x: StepFunction, coll: IntervalCollection, seq: WatermanSequence) -> float:
    """Order-free seminorm: k-th largest increment paired with lambda_k."""
    if not coll.is_nonoverlapping():
        raise OverlappingIntervals("best-order seminorm needs a nonoverlapping collection")
    acc = 0.0
    for i, d in enumerate(sorted(_increments(x, coll), reverse=True)):
        acc += d / lambda_term(seq, i + 1)
    return acc


# ---- exhaustive search over trace pair families -----------------------------

@lru_cache(maxsize=8)
def _pair_family_table(L: int):
    """All families of index pairs (s<e, e <= next s) on 0..L-1, padded arrays."""
    starts: list[list[int]] = []
    ends: list[list[int]] = []
    cur_s: list[int] = []
    cur_e: list[int] = []

    def rec(start: int):
        for s in range(start, L - 1):
            for e in range(s + 1, L):
                cur_s.append(s)
                cur_e.append(e)
                starts.append(cur_s.copy())
                ends.append(cur_e.copy())
                rec(e)
                cur_s.pop()
                cur_e.pop()

    rec(0)
    nfam = len(starts)
    maxp = max(1, L - 1)
    S = np.zeros((nfam, maxp), dtype=np.int16)
    E = np.zeros((nfam, maxp), dtype=np.int16)
    NP = np.zeros(nfam, dtype=np.int64)
    for f, (ss, ee) in enumerate(zip(starts, ends)):
        NP[f] = len(ss)
        S[f, : len(ss)] = ss
        E[f, : len(ee)] = ee
    S.flags.writeable = False
    E.flags.writeable = False
    NP.flags.writeable = False
    return S, E, NP


@dataclass(frozen=True)
class LambdaBudget:
    """Search configuration: traces longer than exact_max fall back to greedy."""

    exact_max: int = 15


@dataclass(frozen=True)
class VariationCertificate:
    """A variation value with its witness family.

    The witness is stored in weight-assignment order (increments descending),
    so recomputing the ordered seminorm on it reproduces ``value``. ``method``
    is one of ``exact_bruteforce``/``greedy`` (``dp`` for the integral
    variation); ``bound`` says whether ``value`` is exact or a lower bound.
    """

    value: float
    witness: IntervalCollection
    method: str
    bound: str


def _pairs_to_witness(x: StepFunction, pairs: list[tuple[int, int]]) -> IntervalCollection:
    pos = trace_positions(x)
    vals = trace_sequence(x).values
    ordered = sorted(pairs, key=lambda p: (-abs(vals[p[1]] - vals[p[0]]), p[0], p[1]))
    items = tuple(Interval(pos[s], pos[e]) for s, e in ordered)
    return IntervalCollection(items, domain=x.domain)


def _greedy_pairs(vals: tuple[float, ...]) -> list[tuple[int, int]]:
    """Repeatedly take the largest increment realizable on free index space."""
    segments = [(0, len(vals) - 1)]
    pairs: list[tuple[int, int]] = []
    while True:
        best_d = 0.0
        best = None
        for seg_i, (lo, hi) in enumerate(segments):
            for s in range(lo, hi):
                for e in range(s + 1, hi + 1):
                    d = abs(vals[e] - vals[s])
                    if d > best_d:
                        best_d = d
                        best = (seg_i, s, e)
        if best is None:
            return pairs
        seg_i, s, e = best
        lo, hi = segments.pop(seg_i)
        pairs.append((s, e))
        if e < hi:
            segments.insert(seg_i, (e, hi))
        if s > lo:
            segments.insert(seg_i, (lo, s))


def lambda_variation(
    x: StepFunction,
    seq: WatermanSequence,
    budget: LambdaBudget | None = None,
) -> VariationCertificate:
    """Lambda-variation of x over its domain, exact within the trace budget."""
    budget = budget or LambdaBudget()
    vals = trace_sequence(x).values
    L = len(vals)
    if L <= budget.exact_max:
        S, E, NP = _pair_family_table(L)
        lam = np.array([lambda_term(seq, k + 1) for k in range(max(1, L - 1))])
        v = np.asarray(vals, dtype=np.float64)
        value, idx = _kernels.lambda_table_max(v, lam, S, E, NP)
        pairs = (
            [(int(S[idx, k]), int(E[idx, k])) for k in range(int(NP[idx]))]
            if idx >= 0
            else []
        )
        return VariationCertificate(value, _pairs_to_witness(x, pairs), "exact_bruteforce", "exact")
    pairs = _greedy_pairs(vals)
    incs = sorted((abs(vals[e] - vals[s]) for s, e in pairs), reverse=True)
    acc = 0.0
    for k, d in enumerate(incs):
        acc += d / lambda_term(seq, k + 1)
    return VariationCertificate(acc, _pairs_to_witness(x, pairs), "greedy", "lower_bound")


def jordan_variation(x: StepFunction, J: Interval | None = None) -> float:
    """Classical total variation over J: telescoped trace of the restriction."""
    if J is None:
        J = x.domain
    if not x.domain.contains(J):
        raise OutOfDomain(f"{J} outside domain of x")
    if J.a == J.b:
        return 0.0
    vals = trace_sequence(restrict(x, J)).values
    acc = 0.0
    for a, b in zip(vals, vals[1:]):
        acc += abs(b - a)
    return acc


def lambda_norm(
    x: StepFunction,
    seq: WatermanSequence,
    budget: LambdaBudget | None = None,
) -> float:
    """|x(0)| + var_Lambda(x); exactness follows the variation's bound flag."""
    if x.domain != Interval(0.0, 1.0):
        raise DomainMismatch("Lambda-norm is defined for functions on [0,1]")
    return abs(eval_at(x, 0.0)) + lambda_variation(x, seq, budget).value
