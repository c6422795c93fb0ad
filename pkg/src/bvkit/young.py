"""Phi-functions, Young phi-variation and the Luxemburg-style seminorms.

For a step function the phi-variation is a maximum over increasing chains on
the trace (every partition sum collapses to such a chain); the chain score is
additive, so an O(L^2) longest-path recursion computes the exact supremum.
The convexity of phi does NOT make the all-local-extrema chain optimal: with
phi(u)=u^2 the trace (0, 1, 0.9, 2) scores 4 on the two-point chain but only
2.22 through all extrema.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import (
    DomainMismatch,
    InvalidPhi,
    NegativeArgument,
    OutOfDomain,
    SchemaError,
    ToleranceNonPositive,
)
from .stepfun import (
    Interval,
    IntervalCollection,
    StepFunction,
    eval_at,
    restrict,
    scale,
    trace_positions,
    trace_sequence,
)

_NEG_MSG = "phi-functions are defined on [0, +inf)"


@dataclass(frozen=True)
class PhiFunction:
    """Continuous, unbounded, nondecreasing, convex gauge with phi(0)=0."""

    kind: str
    p: float | None = None
    knots: tuple[tuple[float, float], ...] = ()

    def __post_init__(self):
        if self.kind == "power":
            if self.p is None or self.p < 1.0 or not math.isfinite(self.p):
                raise InvalidPhi(f"power kind needs p >= 1, got {self.p}")
        elif self.kind == "expm1":
            pass
        elif self.kind == "convex_pwl":
            kn = tuple((float(u), float(v)) for u, v in self.knots)
            object.__setattr__(self, "knots", kn)
            if not kn:
                raise InvalidPhi("convex_pwl needs at least one knot")
            us = [u for u, _ in kn]
            vs = [v for _, v in kn]
            if any(u <= 0 for u in us) or any(a >= b for a, b in zip(us, us[1:])):
                raise InvalidPhi("knot abscissae must be positive and strictly increasing")
            if any(v <= 0 for v in vs):
                raise InvalidPhi("phi must be strictly positive for u > 0")
            slopes = [vs[0] / us[0]]
            slopes += [(v2 - v1) / (u2 - u1) for (u1, v1), (u2, v2) in zip(kn, kn[1:])]
            if any(s2 < s1 for s1, s2 in zip(slopes, slopes[1:])):
                raise InvalidPhi("slopes must be nondecreasing (convexity)")
            if slopes[-1] <= 0:
                raise InvalidPhi("tail slope must be positive (unboundedness)")
        else:
            raise InvalidPhi(f"unknown kind {self.kind!r}")

    def __call__(self, u: float) -> float:
        return phi_eval(self, u)


def phi_eval(phi: PhiFunction, u: float) -> float:
    if u < 0:
        raise NegativeArgument(_NEG_MSG)
    if phi.kind == "power":
        return u ** phi.p
    if phi.kind == "expm1":
        return math.expm1(u)
    kn = phi.knots
    if u == 0.0:
        return 0.0
    prev_u, prev_v = 0.0, 0.0
    for ku, kv in kn:
        if u <= ku:
            return prev_v + (kv - prev_v) * (u - prev_u) / (ku - prev_u)
        prev_u, prev_v = ku, kv
    last_u, last_v = kn[-1]
    if len(kn) >= 2:
        pu, pvv = kn[-2]
    else:
        pu, pvv = 0.0, 0.0
    slope = (last_v - pvv) / (last_u - pu)
    return last_v + slope * (u - last_u)


def phi_to_json(phi: PhiFunction) -> dict:
    if phi.kind == "power":
        return {"kind": "power", "p": phi.p}
    if phi.kind == "expm1":
        return {"kind": "expm1"}
    return {"kind": "convex_pwl", "knots": [[u, v] for u, v in phi.knots]}


def phi_from_json(obj) -> PhiFunction:
    if not isinstance(obj, dict) or "kind" not in obj:
        raise SchemaError("phi document needs a 'kind' field")
    kind = obj["kind"]
    try:
        if kind == "power":
            return PhiFunction("power", p=float(obj["p"]))
        if kind == "expm1":
            return PhiFunction("expm1")
        if kind == "convex_pwl":
            return PhiFunction("convex_pwl", knots=tuple((u, v) for u, v in obj["knots"]))
    except (KeyError, TypeError, ValueError, InvalidPhi) as e:
        raise SchemaError(f"bad phi document: {e}") from e
    raise SchemaError(f"unknown phi kind {kind!r}")


# ---- variation and seminorms -------------------------------------------------

def _chain_dp(vals, cost):
    """Max over chains 0=u_0<...<u_K=L-1 of sum cost(|v_j - v_i|); returns
    (value, predecessor list)."""
    L = len(vals)
    best = [0.0] * L
    pred = [-1] * L
    for j in range(1, L):
        bj = -math.inf
        pj = 0
        for i in range(j):
            cand = best[i] + cost(abs(vals[j] - vals[i]))
            if cand > bj:
                bj = cand
                pj = i
        best[j] = bj
        pred[j] = pj
    return best[L - 1], pred


def phi_variation(x: StepFunction, phi: PhiFunction, J: Interval | None = None) -> float:
    """Exact sup over partitions of sum phi(|increments|)."""
    if J is None:
        J = x.domain
    if not x.domain.contains(J):
        raise OutOfDomain(f"{J} outside domain of x")
    if J.a == J.b:
        return 0.0
    vals = trace_sequence(restrict(x, J)).values
    value, _ = _chain_dp(vals, lambda d: phi_eval(phi, d))
    return value


def phi_variation_witness(x: StepFunction, phi: PhiFunction, lam: float) -> IntervalCollection:
    """Argmax chain of var_phi(x/lam) as a nonoverlapping collection."""
    y = scale(x, 1.0 / lam)
    vals = trace_sequence(y).values
    _, pred = _chain_dp(vals, lambda d: phi_eval(phi, d))
    chain = [len(vals) - 1]
    while chain[-1] != 0:
        chain.append(pred[chain[-1]])
    chain.reverse()
    pos = trace_positions(x)
    items = tuple(
        Interval(pos[i], pos[j])
        for i, j in zip(chain, chain[1:])
        if vals[i] != vals[j]
    )
    return IntervalCollection(items, domain=x.domain)


def sigma_phi(x: StepFunction, coll: IntervalCollection, phi: PhiFunction) -> float:
    """sum phi(|x(b_i) - x(a_i)|) over the collection."""
    acc = 0.0
    for it in coll:
        if not x.domain.contains(it):
            raise OutOfDomain(f"{it} outside domain of x")
        acc += phi_eval(phi, abs(eval_at(x, it.b) - eval_at(x, it.a)))
    return acc


def _luxemburg(g, tol: float) -> float:
    """inf{lam > 0 : g(lam) <= 1} for nonincreasing g with g(0+)=inf, g(inf)=0."""
    if tol <= 0:
        raise ToleranceNonPositive(f"tol={tol}")
    if g(1.0) <= 1.0:
        hi, lo = 1.0, 0.5
        for _ in range(200):
            if g(lo) > 1.0:
                break
            hi, lo = lo, 0.5 * lo
        else:
            return 0.0
    else:
        lo, hi = 1.0, 2.0
        for _ in range(200):
            if g(hi) <= 1.0:
                break
            lo, hi = hi, 2.0 * hi
    for _ in range(200):
        if hi - lo <= tol * lo:
            break
        mid = 0.5 * (lo + hi)
        if g(mid) <= 1.0:
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


def v_phi(x: StepFunction, phi: PhiFunction, tol: float = 1e-10) -> float:
    """Luxemburg-style seminorm inf{lam : var_phi(x/lam) <= 1}."""
    if tol <= 0:
        raise ToleranceNonPositive(f"tol={tol}")
    vals = trace_sequence(x).values
    if all(v == vals[0] for v in vals):
        return 0.0
    return _luxemburg(lambda lam: phi_variation(scale(x, 1.0 / lam), phi), tol)


def s_phi(x: StepFunction, coll: IntervalCollection, phi: PhiFunction, tol: float = 1e-10) -> float:
    """inf{lam : sigma_phi(x/lam, I) <= 1}; never exceeds v_phi(x)."""
    if tol <= 0:
        raise ToleranceNonPositive(f"tol={tol}")
    incs = [abs(eval_at(x, it.b) - eval_at(x, it.a)) for it in coll]
    if all(d == 0.0 for d in incs):
        return 0.0
    return _luxemburg(lambda lam: sigma_phi(scale(x, 1.0 / lam), coll, phi), tol)


def phi_norm(x: StepFunction, phi: PhiFunction, tol: float = 1e-10) -> float:
    """|x(0)| + V_phi(x) for x on [0,1]."""
    if x.domain != Interval(0.0, 1.0):
        raise DomainMismatch("Phi-norm is defined for functions on [0,1]")
    return abs(eval_at(x, 0.0)) + v_phi(x, phi, tol)
