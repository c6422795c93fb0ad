"""Exact L^q modulus of continuity for step functions.

The shift map h -> F(h) = ∫_a^{b-h} |x(t+h)-x(t)|^q dt is piecewise linear
with kinks only at pairwise differences of the breakpoints of x restricted to
[a,b] (endpoints included), and vanishes at both ends of (0, b-a); its
supremum is therefore a finite maximum over those candidate shifts.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import _kernels
from .errors import (
    BadEta,
    BadExponent,
    BadShift,
    DegenerateInterval,
    DomainMismatch,
    OutOfDomain,
)
from .stepfun import Interval, StepFunction, add, lq_norm


def _check_window(x: StepFunction, J: Interval | None) -> Interval:
    if J is None:
        return x.domain
    if not x.domain.contains(J):
        raise OutOfDomain(f"{J} not contained in domain {x.domain}")
    return J


def translation_integral(x: StepFunction, q: float, J: Interval | None, h: float) -> float:
    """The q-th power integral ∫_a^{b-h} |x(t+h)-x(t)|^q dt (not the norm)."""
    if q < 1:
        raise BadExponent(f"q={q} < 1")
    J = _check_window(x, J)
    if not 0.0 < h < J.b - J.a:
        raise BadShift(f"need 0 < h < {J.b - J.a}, got {h}")
    return _kernels.trans_pow(x.bk, x.pv, q, J.a, J.b, h)


def shift_candidates(x: StepFunction, J: Interval) -> list[float]:
    """Kink locations of F: positive pairwise knot differences inside (0, b-a)."""
    knots = [J.a] + [t for t in x.breakpoints if J.a < t < J.b] + [J.b]
    span = J.b - J.a
    out = set()
    for i, u in enumerate(knots):
        for w in knots[i + 1 :]:
            h = w - u
            if 0.0 < h < span:
                out.add(h)
    return sorted(out)


@dataclass(frozen=True)
class ShiftProfile:
    """F(h) at every candidate shift; F is linear between consecutive candidates."""

    candidate_shifts: tuple[float, ...]
    values: tuple[float, ...]
    q: float


def shift_profile(x: StepFunction, q: float, J: Interval | None = None) -> ShiftProfile:
    if q < 1:
        raise BadExponent(f"q={q} < 1")
    J = _check_window(x, J)
    if J.a == J.b:
        raise DegenerateInterval(f"[{J.a}, {J.b}]")
    H = shift_candidates(x, J)
    vals = tuple(_kernels.trans_pow(x.bk, x.pv, q, J.a, J.b, h) for h in H)
    return ShiftProfile(tuple(H), vals, q)


def omega_power_max(x: StepFunction, q: float, J: Interval) -> float:
    """max_h F(h); the shared edge value for the integral-variation search."""
    return _kernels.omega_pow_max(x.bk, x.pv, q, J.a, J.b)


def omega_q(x: StepFunction, q: float, J: Interval | None = None) -> float:
    """Exact L^q modulus of continuity on J."""
    if q < 1:
        raise BadExponent(f"q={q} < 1")
    J = _check_window(x, J)
    if J.a == J.b:
        raise DegenerateInterval(f"[{J.a}, {J.b}]")
    return omega_power_max(x, q, J) ** (1.0 / q)


def omega_q_shift_truncation_gap(
    x: StepFunction, q: float, J: Interval | None, eta: float
) -> tuple[float, float]:
    """(lhs, rhs) of omega_q(x;a,b) <= omega_q(x;a+eta,b) + 2*xi with
    xi = sup_c ||x||_{L^q(c,c+eta)}; both sides exact."""
    J = _check_window(x, J)
    if not 0.0 < eta < J.b - J.a:
        raise BadEta(f"need 0 < eta < {J.b - J.a}, got {eta}")
    lhs = omega_q(x, q, J)
    # window integral c -> ∫_c^{c+eta} |x|^q is piecewise linear; its max over
    # the closed range sits at a kink (a knot enters/leaves) or at the ends
    cands = {J.a, J.b - eta}
    for t in x.breakpoints:
        if J.a < t < J.b - eta:
            cands.add(t)
        s = t - eta
        if J.a < s < J.b - eta:
            cands.add(s)
    xi = max(lq_norm(x, q, Interval(c, c + eta)) for c in cands)
    rhs = omega_q(x, q, Interval(J.a + eta, J.b)) + 2.0 * xi
    return lhs, rhs


def omega_q_subadditivity_gap(
    x: StepFunction, y: StepFunction, q: float, J: Interval | None = None
) -> tuple[float, float]:
    """(omega_q(x+y), omega_q(x) + omega_q(y)) on a common window."""
    if x.domain != y.domain:
        raise DomainMismatch(f"domains differ: {x.domain} vs {y.domain}")
    lhs = omega_q(add(x, y), q, J)
    rhs = omega_q(x, q, J) + omega_q(y, q, J)
    return lhs, rhs
