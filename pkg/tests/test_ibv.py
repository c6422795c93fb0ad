import math

import pytest

from bvkit.errors import BadDelta, BadExponents, BadShift, DomainMismatch, OutOfDomain
from bvkit.ibv import (
    CutConfig,
    build_cuts,
    cuts_from_json,
    cuts_to_json,
    ivar,
    ivar_absolute_continuity_profile,
    ivar_norm,
    l1_embedding_bound,
    sigma_pq,
)
from bvkit.oracle import bf_ivar
from bvkit.stepfun import (
    UNIT,
    Interval,
    IntervalCollection,
    constant,
    make_step_function,
    spike,
    two_value,
)
from bvkit import _kernels
from conftest import random_step


def coll(*pairs):
    return IntervalCollection(tuple(Interval(a, b) for a, b in pairs))


def zigzag():
    """0 / 1 / 0 with jumps at 0.4 and 0.6."""
    return make_step_function(UNIT, [0, 0.4, 0.6, 1], [0, 1, 0], [0, 1, 0, 0])


# -- sigma_pq -------------------------------------------------------------------

def test_sigma_pq_spike(spike4):
    assert sigma_pq(spike4, coll((0, 1)), 1.0, 2.0) == pytest.approx(1.0, abs=1e-12)


def test_sigma_pq_empty(spike4):
    assert sigma_pq(spike4, IntervalCollection(()), 1.0, 2.0) == 0.0


def test_sigma_pq_zigzag_halves():
    val = sigma_pq(zigzag(), coll((0, 0.5), (0.5, 1)), 1.0, 2.0)
    assert val == pytest.approx(2.0 * math.sqrt(0.1), abs=1e-12)


def test_sigma_pq_degenerate_contributes_zero(spike4):
    with_degen = sigma_pq(spike4, coll((0, 1), (0.3, 0.3)), 1.0, 2.0)
    assert with_degen == pytest.approx(1.0, abs=1e-12)


def test_sigma_pq_bad_exponents(spike4):
    with pytest.raises(BadExponents):
        sigma_pq(spike4, coll((0, 1)), 2.0, 2.0)
    with pytest.raises(BadExponents):
        sigma_pq(spike4, coll((0, 1)), 0.5, 2.0)


# -- ivar ------------------------------------------------------------------------

def test_ivar_two_value_formula(rng):
    for _ in range(15):
        u, w = rng.uniform(-2, 2, 2)
        c = rng.uniform(0.05, 0.95)
        q = float(rng.choice([1.5, 2.0, 4.0]))
        p = float(rng.choice([1.0, 1.2]))
        x = two_value(u, w, c)
        expect = abs(u - w) * min(c, 1 - c) ** (1.0 / q)
        cert = ivar(x, p, q)
        assert cert.value == pytest.approx(expect, abs=1e-9)


def test_ivar_spike(spike4):
    cert = ivar(spike4, 1.0, 2.0)
    assert cert.value == pytest.approx(1.0, abs=1e-12)
    assert cert.bound == "exact"
    assert [it.as_pair() for it in cert.witness] == [[0.0, 1.0]]


def test_ivar_constant():
    cert = ivar(constant(4.0), 1.0, 2.0)
    assert cert.value == 0.0
    assert len(cert.witness) == 0


def test_ivar_zigzag_dominates_interior_cut_witness():
    cert = ivar(zigzag(), 1.0, 2.0)
    assert cert.value >= 2.0 * math.sqrt(0.1) - 1e-12


def test_ivar_witness_reproduces_value(rng):
    for _ in range(6):
        x = random_step(rng, 4)
        cert = ivar(x, 1.0, 2.0, cuts=CutConfig(k=16, max_cuts=256))
        resum = sigma_pq(x, cert.witness, 1.0, 2.0)
        assert resum == pytest.approx(cert.value, rel=1e-12, abs=1e-12)


def test_sigma_pq_dominated_by_ivar(rng):
    # the supremum characterization: every nonoverlapping collection built
    # from DP cuts scores at most the DP value
    for _ in range(6):
        x = random_step(rng, 4)
        cert = ivar(x, 1.0, 2.0, cuts=CutConfig(k=16, max_cuts=256))
        C = build_cuts(x, x.domain, 1.0, 2.0, CutConfig(k=16))
        picks = sorted(rng.choice(len(C), size=min(6, len(C)), replace=False))
        items = tuple(
            Interval(float(C[i]), float(C[j])) for i, j in zip(picks[::2], picks[1::2])
        )
        val = sigma_pq(x, IntervalCollection(items), 1.0, 2.0)
        assert val <= cert.value + 1e-9


def test_ivar_monotone_under_refinement(rng):
    for _ in range(6):
        x = random_step(rng, 4)
        lo = ivar(x, 1.0, 2.0, cuts=CutConfig(k=8, refine=False)).value
        hi = ivar(x, 1.0, 2.0, cuts=CutConfig(k=16, refine=False)).value
        assert lo <= hi + 1e-15


def test_ivar_matches_bruteforce_on_same_cuts(rng):
    for _ in range(8):
        x = random_step(rng, int(rng.integers(1, 5)))
        p, q = 1.0, 2.0
        cfg = CutConfig(source="breakpoints_only", enrich=False)
        C = build_cuts(x, x.domain, p, q, cfg)
        best, _ = _kernels.ivar_dp(x.bk, x.pv, C, p, q)
        dp = float(best[-1]) ** (1.0 / p) if best[-1] > 0 else 0.0
        assert dp == pytest.approx(bf_ivar(x, p, q, C), rel=1e-12, abs=1e-12)


def test_ivar_flags(rng):
    x = random_step(rng, 3)
    only = ivar(x, 1.0, 2.0, cuts=CutConfig(source="breakpoints_only"))
    assert only.bound == "lower_bound"
    swept = ivar(two_value(1.0, 0.0, 0.25), 1.0, 2.0)
    assert swept.bound == "exact"


def test_ivar_errors(spike4):
    with pytest.raises(BadExponents):
        ivar(spike4, 2.0, 1.5)
    y = make_step_function(Interval(0.2, 0.8), [0.2, 0.8], [1], [1, 1])
    with pytest.raises(OutOfDomain):
        ivar(y, 1.0, 2.0, J=Interval(0.0, 1.0))


def test_build_cuts_contains_required_points(rng):
    x = random_step(rng, 5)
    C = build_cuts(x, x.domain, 1.0, 2.0, CutConfig())
    for t in x.breakpoints:
        assert t in C


def test_cuts_json_round_trip():
    cfg = CutConfig(k=32, refine=False, max_cuts=512)
    assert cuts_from_json(cuts_to_json(cfg)) == cfg


# -- ivar_norm ---------------------------------------------------------------------

def test_ivar_norm_spike(spike4):
    assert ivar_norm(spike4, 1.0, 2.0) == pytest.approx(2.0, abs=1e-9)


def test_ivar_norm_zero():
    assert ivar_norm(constant(0.0), 1.0, 2.0) == 0.0


def test_ivar_norm_two_value():
    x = two_value(1.0, 0.0, 0.5)
    assert ivar_norm(x, 1.0, 2.0) == pytest.approx(2.0 * math.sqrt(0.5), abs=1e-9)


def test_ivar_norm_needs_unit_domain():
    y = make_step_function(Interval(0.0, 0.5), [0, 0.5], [1], [1, 1])
    with pytest.raises(DomainMismatch):
        ivar_norm(y, 1.0, 2.0)


# -- absolute continuity profile ------------------------------------------------------

def test_profile_constant_all_zero():
    prof = ivar_absolute_continuity_profile(constant(2.0), 1.0, 2.0, [1.0, 0.5, 0.25])
    assert prof == [0.0, 0.0, 0.0]


def test_profile_spike_full_window(spike4):
    prof = ivar_absolute_continuity_profile(spike4, 1.0, 2.0, [1.0, 0.5])
    assert prof[0] == pytest.approx(1.0, abs=1e-9)


def test_profile_monotone(rng):
    lengths = [1.0, 0.5, 0.25, 0.125, 0.0625]
    for _ in range(4):
        x = random_step(rng, 4, min_gap=0.03)
        prof = ivar_absolute_continuity_profile(x, 1.0, 2.0, lengths)
        for a, b in zip(prof, prof[1:]):
            assert b <= a + 1e-12


def test_profile_bad_length(spike4):
    with pytest.raises(BadDelta):
        ivar_absolute_continuity_profile(spike4, 1.0, 2.0, [0.0])
    with pytest.raises(BadDelta):
        ivar_absolute_continuity_profile(spike4, 1.0, 2.0, [1.5])


# -- L1 embedding bound -----------------------------------------------------------------

def test_l1_bound_constant():
    lhs, rhs = l1_embedding_bound(constant(3.0), 1.0, 2.0, 4, 0.05)
    assert lhs == 0.0
    assert rhs >= 0.0


def test_l1_bound_spike(spike4):
    lhs, rhs = l1_embedding_bound(spike4, 1.0, 2.0, 4, 0.1)
    assert lhs <= rhs


def test_l1_bound_random(rng):
    for _ in range(10):
        x = random_step(rng)
        for (p, q) in ((1.0, 2.0), (1.5, 3.0)):
            for N in (2, 4, 8):
                h = 1.0 / (4 * N)
                lhs, rhs = l1_embedding_bound(x, p, q, N, h, cuts=CutConfig(max_cuts=300))
                assert lhs <= rhs + 1e-10


def test_l1_bound_errors(spike4):
    with pytest.raises(BadShift):
        l1_embedding_bound(spike4, 1.0, 2.0, 3, 0.01)  # odd N
    with pytest.raises(BadShift):
        l1_embedding_bound(spike4, 1.0, 2.0, 4, 0.2)  # h >= 1/(2N)
    with pytest.raises(BadExponents):
        l1_embedding_bound(spike4, 2.0, 2.0, 4, 0.01)
