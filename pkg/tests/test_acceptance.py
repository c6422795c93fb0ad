"""Acceptance criteria, one test per numbered criterion.

Each test prints a single ACCEPT-nn PASS line on success (pytest -s shows
them); tolerances are pinned here and nowhere else.
"""

import itertools
import json
import math

import numpy as np
import pytest

from bvkit._jsonfmt import dumps
from bvkit.equivar import (
    Family,
    VariationKind,
    build_certificate,
    certificate_from_json,
    certificate_to_json,
    check_certificate,
    plain_equivariation_check,
    kolmogorov_riesz_scan,
    separated_witness_search,
    variation_for_kind,
)
from bvkit.ibv import (
    CutConfig,
    build_cuts,
    ivar,
    ivar_absolute_continuity_profile,
    l1_embedding_bound,
)
from bvkit import _kernels
from bvkit.lqmod import (
    omega_q,
    omega_q_shift_truncation_gap,
    omega_q_subadditivity_gap,
)
from bvkit.oracle import OracleBudget, bf_ivar, bf_jordan, bf_lambda, bf_omega_q, bf_phi
from bvkit.stepfun import (
    Interval,
    IntervalCollection,
    add,
    lq_norm,
    spike,
    subtract,
    two_point_pair,
    two_value,
)
from bvkit.waterman import HARMONIC, jordan_variation, lambda_variation
from bvkit.young import PhiFunction, phi_variation
from conftest import random_step

SEED = 26081114


def test_accept_01_lambda_counterexample():
    x0, x1 = two_point_pair()
    v0 = lambda_variation(x0, HARMONIC)
    v1 = lambda_variation(x1, HARMONIC)
    assert abs(v0.value - 2.0) <= 1e-12 and v0.bound == "exact"
    assert abs(v1.value - 1.5) <= 1e-12 and v1.bound == "exact"
    print("ACCEPT-01 lambda-counterexample PASS")


def test_accept_02_definition_separation():
    x0, x1 = two_point_pair()
    fam = Family((x0, x1))
    kind = VariationKind.waterman(HARMONIC)
    eps = 0.4
    # candidate interval endpoints: the trace positions of both members
    grid = [0.0, 0.5, 1.0]
    candidates = [Interval(a, b) for a, b in itertools.combinations(grid, 2)]
    tried = 0
    for r in range(0, 4):
        for combo in itertools.combinations(candidates, r):
            master = IntervalCollection(tuple(combo))
            if not master.is_nonoverlapping():
                continue
            tried += 1
            rep = plain_equivariation_check(fam, master, eps, kind)
            assert not rep.all_ok, [it.as_pair() for it in master]
    # the complete enumeration over {0, 1/2, 1}: {}, three singletons, the halves
    assert tried == 5
    cert = build_certificate(fam, eps, kind)
    assert check_certificate(cert, fam).all_ok
    assert all(abs(r) <= 1e-9 for r in cert.residuals)
    print("ACCEPT-02 definition-separation PASS")


def test_accept_03_step_function_ivar_formula():
    rng = np.random.default_rng(SEED)
    cfg = CutConfig(k=16, max_cuts=128)
    worst = 0.0
    for _ in range(200):
        u, w = rng.uniform(-2, 2, 2)
        c = rng.uniform(0.02, 0.98)
        x = two_value(u, w, c)
        for q in (1.5, 2.0, 4.0):
            for p in (1.0, 1.2):
                if not p < q:
                    continue
                expect = abs(u - w) * min(c, 1 - c) ** (1.0 / q)
                got = ivar(x, p, q, cuts=cfg).value
                worst = max(worst, abs(got - expect))
                assert abs(got - expect) <= 1e-9, (u, w, c, p, q)
    print(f"ACCEPT-03 step-function-ivar-formula PASS (worst gap {worst:.2e})")


def test_accept_04_spike_family():
    ns = (2, 4, 8, 16)
    fam = Family.spikes(2.0, ns)
    for x, n in zip(fam, ns):
        assert abs(lq_norm(x, 2.0) - 1.0) <= 1e-9, n
        assert abs(ivar(x, 1.0, 2.0).value - 1.0) <= 1e-9, n
    rows = kolmogorov_riesz_scan(fam, 2.0, [0.5, 0.25, 0.125])
    assert all(v >= 1.0 - 1e-9 for _, v in rows), rows
    print("ACCEPT-04 spike-family PASS")


def test_accept_05_modulus_estimates():
    rng = np.random.default_rng(SEED + 5)
    qs = (1.5, 2.0, 3.0)
    for i in range(500):
        x = random_step(rng, (i % 6) + 1)
        y = random_step(rng, (i % 5) + 1)
        q = qs[i % 3]
        assert 2.0 * lq_norm(x, q) - omega_q(x, q) >= -1e-10
        lhs, rhs = omega_q_subadditivity_gap(x, y, q)
        assert rhs - lhs >= -1e-10
        for eta in (0.1, 0.3):
            lhs, rhs = omega_q_shift_truncation_gap(x, q, None, eta)
            assert rhs - lhs >= -1e-10
    print("ACCEPT-05 modulus-estimates PASS")


def test_accept_06_l1_embedding_bound():
    rng = np.random.default_rng(SEED + 6)
    cfg = CutConfig(k=8, max_cuts=64)
    worst = math.inf
    for i in range(200):
        x = random_step(rng, (i % 6) + 1)
        for (p, q) in ((1.0, 2.0), (1.5, 3.0)):
            for N in (2, 4, 8):
                h = 1.0 / (4 * N)
                lhs, rhs = l1_embedding_bound(x, p, q, N, h, cuts=cfg)
                assert lhs <= rhs + 1e-10, (p, q, N)
                if lhs > 0:
                    worst = min(worst, rhs / lhs)
    print(f"ACCEPT-06 l1-embedding-bound PASS (min rhs/lhs {worst:.2f})")


def test_accept_07_absolute_continuity():
    rng = np.random.default_rng(SEED + 7)
    lengths = [1.0, 0.5, 0.25, 0.125, 0.0625, 0.03125, 0.015625]
    for _ in range(50):
        x = random_step(rng, int(rng.integers(4, 7)), min_gap=0.05, min_jump=0.1)
        prof = ivar_absolute_continuity_profile(x, 1.0, 2.0, lengths)
        for a, b in zip(prof, prof[1:]):
            assert b <= a + 1e-9
        assert prof[0] > 0.0
        assert prof[-1] <= 0.2 * prof[0], (prof[-1], prof[0])
    print("ACCEPT-07 absolute-continuity PASS")


def test_accept_08_oracle_equivalence():
    rng = np.random.default_rng(SEED + 8)
    p2 = PhiFunction("power", p=2.0)
    worst_jordan = 0.0
    for i in range(500):
        x = random_step(rng, (i % 6) + 1)
        # jordan: closed form vs enumerated maximum (float association only)
        main = jordan_variation(x)
        ref = bf_jordan(x)
        assert main <= ref + 1e-12
        assert ref - main <= 1e-12 * max(1.0, ref)
        worst_jordan = max(worst_jordan, abs(ref - main))
        # lambda and phi: bitwise equality by construction
        assert lambda_variation(x, HARMONIC).value == bf_lambda(x, HARMONIC)
        assert phi_variation(x, p2) == bf_phi(x, p2)
        # ivar DP vs enumeration on the identical cut set
        C = build_cuts(x, x.domain, 1.0, 2.0, CutConfig(source="breakpoints_only", enrich=False))
        best, _ = _kernels.ivar_dp(x.bk, x.pv, C, 1.0, 2.0)
        dp = float(best[-1]) ** 1.0 if best[-1] > 0 else 0.0
        assert abs(dp - bf_ivar(x, 1.0, 2.0, C)) <= 1e-12
    # omega against the dense grid reference
    budget = OracleBudget(h_grid=10**4)
    worst_gap = 0.0
    rng2 = np.random.default_rng(SEED + 88)
    for i in range(120):
        x = random_step(rng2, (i % 4) + 1, min_gap=0.06, min_jump=0.6)
        exact = omega_q(x, 2.0)
        ref = bf_omega_q(x, 2.0, budget=budget)
        assert ref <= exact + 1e-12
        assert exact - ref <= 1e-3
        worst_gap = max(worst_gap, exact - ref)
    print(
        f"ACCEPT-08 oracle-equivalence PASS "
        f"(jordan assoc {worst_jordan:.1e}, omega grid gap {worst_gap:.1e})"
    )


def test_accept_09_certificate_round_trip():
    rng = np.random.default_rng(SEED + 9)
    x0, x1 = two_point_pair()
    fam = Family((x0, x1, spike(4, 2.0), random_step(rng, 3)))
    kinds = (
        VariationKind.jordan(),
        VariationKind.waterman(HARMONIC),
        VariationKind.young(PhiFunction("power", p=2.0)),
        VariationKind.integral(1.0, 2.0, CutConfig(k=32, max_cuts=512)),
    )
    for kind in kinds:
        for eps in (0.5, 0.1, 0.01):
            cert = build_certificate(fam, eps, kind)
            rep = check_certificate(cert, fam)
            assert rep.all_ok, (kind.tag, eps)
            blob = dumps(certificate_to_json(cert))
            again = dumps(certificate_to_json(certificate_from_json(json.loads(blob))))
            assert blob == again, (kind.tag, eps)
    print("ACCEPT-09 certificate-round-trip PASS")


def test_accept_10_finite_families_certify():
    rng = np.random.default_rng(SEED + 10)
    kinds = (
        VariationKind.jordan(),
        VariationKind.waterman(HARMONIC),
        VariationKind.young(PhiFunction("power", p=2.0)),
        VariationKind.integral(1.0, 2.0, CutConfig(k=32, max_cuts=512)),
    )
    for size in (2, 3, 4, 6):
        fam = Family(tuple(random_step(rng, int(rng.integers(1, 5))) for _ in range(size)))
        for kind in kinds:
            for eps in (0.5, 0.1, 0.01):
                cert = build_certificate(fam, eps, kind)
                assert check_certificate(cert, fam).all_ok, (size, kind.tag, eps)
    eps0 = 0.5
    spikes = Family.spikes(2.0, [2, 4, 8, 16])
    ipq = VariationKind.integral(1.0, 2.0, CutConfig(k=32, max_cuts=512))
    found = separated_witness_search(spikes, eps0, ipq)
    assert len(found) >= 3
    for i, j in itertools.combinations(found, 2):
        d = subtract(spikes.members[i], spikes.members[j])
        assert variation_for_kind(d, ipq) >= eps0 / 3 - 1e-9
    print("ACCEPT-10 finite-families-certify PASS")
