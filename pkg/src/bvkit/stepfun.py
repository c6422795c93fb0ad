"""Regulated step functions on subintervals of [0,1] and interval collections.

A step function is stored as strictly increasing breakpoints t_0 < ... < t_m,
one value per open piece (t_{i-1}, t_i) and one explicit value per breakpoint.
Point values are semantically significant for the pointwise variations, so
adjacent equal pieces are never merged.
"""

from __future__ import annotations

import math
from bisect import bisect_left
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    BadExponent,
    DegenerateInterval,
    DomainMismatch,
    InvalidInterval,
    LengthMismatch,
    NonFiniteScale,
    NonFiniteValue,
    NonMonotoneBreakpoints,
    OutOfDomain,
    SchemaError,
)


@dataclass(frozen=True)
class Interval:
    """Closed subinterval [a, b] of [0,1]."""

    a: float
    b: float

    def __post_init__(self):
        if not (math.isfinite(self.a) and math.isfinite(self.b)):
            raise InvalidInterval(f"non-finite endpoints ({self.a}, {self.b})")
        if not (0.0 <= self.a <= self.b <= 1.0):
            raise InvalidInterval(f"need 0 <= a <= b <= 1, got [{self.a}, {self.b}]")

    @property
    def length(self) -> float:
        return self.b - self.a

    def contains_point(self, t: float) -> bool:
        return self.a <= t <= self.b

    def contains(self, other: "Interval") -> bool:
        return self.a <= other.a and other.b <= self.b

    def overlaps_interior(self, other: "Interval") -> bool:
        # interiors intersect iff max of left endpoints < min of right endpoints
        return max(self.a, other.a) < min(self.b, other.b)

    def as_pair(self) -> list[float]:
        return [self.a, self.b]


UNIT = Interval(0.0, 1.0)


@dataclass(frozen=True)
class IntervalCollection:
    """Ordered finite list of closed subintervals of a common domain.

    Order is significant: position-dependent seminorms weight the i-th
    interval by 1/lambda_i.
    """

    items: tuple[Interval, ...]
    domain: Interval = UNIT

    def __post_init__(self):
        object.__setattr__(self, "items", tuple(self.items))
        for it in self.items:
            if not self.domain.contains(it):
                raise OutOfDomain(f"{it} not contained in domain {self.domain}")

    def __len__(self) -> int:
        return len(self.items)

    def __iter__(self):
        return iter(self.items)

    def is_nonoverlapping(self) -> bool:
        """Pairwise interiors disjoint (sharing an endpoint is allowed)."""
        real = sorted((it for it in self.items if it.a < it.b), key=lambda it: (it.a, it.b))
        return all(p.b <= n.a for p, n in zip(real, real[1:]))


@dataclass(frozen=True)
class StepFunction:
    """Step function with explicit point values at its breakpoints."""

    domain: Interval
    breakpoints: tuple[float, ...]
    piece_values: tuple[float, ...]
    point_values: tuple[float, ...]
    # array mirrors for the numeric kernels; derived, excluded from eq/hash
    bk: np.ndarray = field(compare=False, repr=False, default=None)
    pv: np.ndarray = field(compare=False, repr=False, default=None)

    def __post_init__(self):
        bk = np.asarray(self.breakpoints, dtype=np.float64)
        pv = np.asarray(self.piece_values, dtype=np.float64)
        bk.flags.writeable = False
        pv.flags.writeable = False
        object.__setattr__(self, "bk", bk)
        object.__setattr__(self, "pv", pv)

    @property
    def m(self) -> int:
        return len(self.piece_values)

    def __call__(self, t: float) -> float:
        return eval_at(self, t)


def make_step_function(domain, breakpoints, piece_values, point_values) -> StepFunction:
    """Validate and build a StepFunction; values are stored verbatim."""
    if isinstance(domain, (tuple, list)):
        domain = Interval(float(domain[0]), float(domain[1]))
    bk = [float(t) for t in breakpoints]
    cv = [float(v) for v in piece_values]
    pv = [float(v) for v in point_values]
    if len(bk) < 2:
        raise LengthMismatch("need at least two breakpoints (m >= 1)")
    if len(cv) != len(bk) - 1 or len(pv) != len(bk):
        raise LengthMismatch(
            f"{len(bk)} breakpoints need {len(bk)-1} piece and {len(bk)} point values, "
            f"got {len(cv)}/{len(pv)}"
        )
    if any(not math.isfinite(t) for t in bk):
        raise NonFiniteValue("non-finite breakpoint")
    if any(b >= c for b, c in zip(bk, bk[1:])):
        raise NonMonotoneBreakpoints(f"breakpoints not strictly increasing: {bk}")
    if bk[0] != domain.a or bk[-1] != domain.b:
        raise DomainMismatch(
            f"breakpoints span [{bk[0]}, {bk[-1]}] but domain is [{domain.a}, {domain.b}]"
        )
    if any(not math.isfinite(v) for v in cv) or any(not math.isfinite(v) for v in pv):
        raise NonFiniteValue("non-finite piece or point value")
    return StepFunction(domain, tuple(bk), tuple(cv), tuple(pv))


def eval_at(x: StepFunction, t: float) -> float:
    """Value at t: the explicit point value on a breakpoint, else the piece value."""
    if not (x.domain.a <= t <= x.domain.b):
        raise OutOfDomain(f"t={t} outside domain [{x.domain.a}, {x.domain.b}]")
    i = bisect_left(x.breakpoints, t)
    if i < len(x.breakpoints) and x.breakpoints[i] == t:
        return x.point_values[i]
    # t lies strictly between breakpoints[i-1] and breakpoints[i]
    return x.piece_values[i - 1]


@dataclass(frozen=True)
class TraceSequence:
    """Interleaved (p_0, c_1, p_1, ..., c_m, p_m); all pointwise variations of
    a step function are attained on this finite sequence."""

    values: tuple[float, ...]

    def __post_init__(self):
        if len(self.values) % 2 == 0:
            raise LengthMismatch("trace length must be odd (2m+1)")

    def __len__(self) -> int:
        return len(self.values)


def trace_sequence(x: StepFunction) -> TraceSequence:
    vals = [x.point_values[0]]
    for c, p in zip(x.piece_values, x.point_values[1:]):
        vals.append(c)
        vals.append(p)
    return TraceSequence(tuple(vals))


def trace_positions(x: StepFunction) -> list[float]:
    """Domain positions realizing each trace index (piece -> its midpoint)."""
    pos = [x.breakpoints[0]]
    for a, b in zip(x.breakpoints, x.breakpoints[1:]):
        pos.append(0.5 * (a + b))
        pos.append(b)
    return pos


def _combine(x: StepFunction, y: StepFunction, op) -> StepFunction:
    if x.domain != y.domain:
        raise DomainMismatch(f"domains differ: {x.domain} vs {y.domain}")
    knots = sorted(set(x.breakpoints) | set(y.breakpoints))
    pieces = [
        op(eval_at(x, 0.5 * (a + b)), eval_at(y, 0.5 * (a + b)))
        for a, b in zip(knots, knots[1:])
    ]
    points = [op(eval_at(x, t), eval_at(y, t)) for t in knots]
    return make_step_function(x.domain, knots, pieces, points)


def subtract(x: StepFunction, y: StepFunction) -> StepFunction:
    """Pointwise x - y on the common refinement of breakpoints."""
    return _combine(x, y, lambda u, v: u - v)


def add(x: StepFunction, y: StepFunction) -> StepFunction:
    """Pointwise x + y on the common refinement of breakpoints."""
    return _combine(x, y, lambda u, v: u + v)


def scale(x: StepFunction, lam: float) -> StepFunction:
    """Pointwise lam * x."""
    lam = float(lam)
    if not math.isfinite(lam):
        raise NonFiniteScale(f"scale factor {lam}")
    return StepFunction(
        x.domain,
        x.breakpoints,
        tuple(lam * v for v in x.piece_values),
        tuple(lam * v for v in x.point_values),
    )


def restrict(x: StepFunction, J: Interval) -> StepFunction:
    """Restriction to J; point values at the new endpoints inherit from eval."""
    if not x.domain.contains(J):
        raise OutOfDomain(f"{J} not contained in domain {x.domain}")
    if J.a >= J.b:
        raise DegenerateInterval(f"[{J.a}, {J.b}]")
    knots = [J.a] + [t for t in x.breakpoints if J.a < t < J.b] + [J.b]
    pieces = [eval_at(x, 0.5 * (a + b)) for a, b in zip(knots, knots[1:])]
    points = [eval_at(x, t) for t in knots]
    return make_step_function(Interval(J.a, J.b), knots, pieces, points)


def lq_norm(x: StepFunction, q: float, J: Interval | None = None) -> float:
    """Exact L^q norm over J: (sum |c_i|^q |piece ∩ J|)^(1/q); point values
    carry no measure."""
    if q < 1:
        raise BadExponent(f"q={q} < 1")
    if J is None:
        J = x.domain
    if not x.domain.contains(J):
        raise OutOfDomain(f"{J} not contained in domain {x.domain}")
    if J.a == J.b:
        return 0.0
    acc = 0.0
    for i, c in enumerate(x.piece_values):
        lo = max(x.breakpoints[i], J.a)
        hi = min(x.breakpoints[i + 1], J.b)
        if hi > lo:
            acc += abs(c) ** q * (hi - lo)
    return acc ** (1.0 / q)


# ---- builtin constructors from the worked examples -------------------------

def constant(c: float, domain: Interval = UNIT) -> StepFunction:
    return make_step_function(domain, [domain.a, domain.b], [c], [c, c])


def two_value(u: float, w: float, c: float) -> StepFunction:
    """u on [0, c), w on [c, 1]."""
    if not 0.0 < c < 1.0:
        raise InvalidInterval(f"c={c} must lie strictly inside (0,1)")
    return make_step_function(UNIT, [0.0, c, 1.0], [u, w], [u, w, w])


def spike(n: int, q: float) -> StepFunction:
    """n^(1/q) on [0, 1/n], 0 on (1/n, 1]."""
    if n < 2:
        raise InvalidInterval("spike needs n >= 2")
    h = float(n) ** (1.0 / q)
    return make_step_function(UNIT, [0.0, 1.0 / n, 1.0], [h, 0.0], [h, h, 0.0])


def two_point_pair() -> tuple[StepFunction, StepFunction]:
    """The pair (x_0, x_1): both are 1 on (0,1) and 0 at 1; x_0(0)=2, x_1(0)=0."""
    x0 = make_step_function(UNIT, [0.0, 1.0], [1.0], [2.0, 0.0])
    x1 = make_step_function(UNIT, [0.0, 1.0], [1.0], [0.0, 0.0])
    return x0, x1


# ---- JSON schema ------------------------------------------------------------

def _number_list(obj, key: str, n: int | None = None) -> list[float]:
    if key not in obj:
        raise SchemaError(f"missing field {key!r}")
    val = obj[key]
    if not isinstance(val, list) or any(not isinstance(v, (int, float)) or isinstance(v, bool) for v in val):
        raise SchemaError(f"field {key!r} must be an array of numbers")
    if n is not None and len(val) != n:
        raise SchemaError(f"field {key!r} must have length {n}")
    return [float(v) for v in val]


def step_to_json(x: StepFunction) -> dict:
    return {
        "domain": [x.domain.a, x.domain.b],
        "breakpoints": list(x.breakpoints),
        "piece_values": list(x.piece_values),
        "point_values": list(x.point_values),
    }


def step_from_json(obj) -> StepFunction:
    if not isinstance(obj, dict):
        raise SchemaError("step function document must be a JSON object")
    unknown = set(obj) - {"domain", "breakpoints", "piece_values", "point_values"}
    if unknown:
        raise SchemaError(f"unknown fields: {sorted(unknown)}")
    dom = _number_list(obj, "domain", 2)
    bk = _number_list(obj, "breakpoints")
    cv = _number_list(obj, "piece_values")
    pv = _number_list(obj, "point_values")
    try:
        return make_step_function(Interval(dom[0], dom[1]), bk, cv, pv)
    except (InvalidInterval, LengthMismatch, NonMonotoneBreakpoints, NonFiniteValue, DomainMismatch) as e:
        raise SchemaError(str(e)) from e
