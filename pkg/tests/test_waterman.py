import numpy as np
import pytest

from bvkit.errors import (
    DomainMismatch,
    IndexZero,
    InvalidSequence,
    OutOfDomain,
    OverlappingIntervals,
    SchemaError,
)
from bvkit.oracle import bf_jordan, bf_lambda
from bvkit.stepfun import (
    UNIT,
    Interval,
    IntervalCollection,
    constant,
    eval_at,
    make_step_function,
    scale,
    subtract,
    trace_positions,
    trace_sequence,
)
from bvkit.waterman import (
    CONSTANT_ONE,
    HARMONIC,
    LambdaBudget,
    WatermanSequence,
    jordan_variation,
    lambda_norm,
    lambda_term,
    lambda_variation,
    sequence_from_json,
    sequence_to_json,
    sigma_lambda_best_order,
    sigma_lambda_ordered,
)
from conftest import random_step


def coll(*pairs):
    return IntervalCollection(tuple(Interval(a, b) for a, b in pairs))


# -- sequences ------------------------------------------------------------------

def test_lambda_term_kinds():
    assert lambda_term(HARMONIC, 3) == 3.0
    assert lambda_term(CONSTANT_ONE, 10) == 1.0
    assert lambda_term(WatermanSequence("power", s=0.5), 4) == pytest.approx(2.0)


def test_lambda_term_index_zero():
    with pytest.raises(IndexZero):
        lambda_term(HARMONIC, 0)


def test_explicit_sequence():
    seq = WatermanSequence("explicit", prefix=(1.0, 2.0), tail=HARMONIC)
    assert lambda_term(seq, 1) == 1.0
    assert lambda_term(seq, 2) == 2.0
    assert lambda_term(seq, 5) == 5.0


@pytest.mark.parametrize(
    "kwargs",
    [
        dict(kind="explicit", prefix=(5.0,), tail=HARMONIC),  # tail drops below prefix
        dict(kind="explicit", prefix=(2.0, 1.0), tail=HARMONIC),  # decreasing prefix
        dict(kind="explicit", prefix=(-1.0,), tail=HARMONIC),
        dict(kind="power", s=2.0),  # sum 1/n^2 converges
        dict(kind="bogus"),
    ],
)
def test_invalid_sequences(kwargs):
    with pytest.raises(InvalidSequence):
        WatermanSequence(**kwargs)


def test_sequence_json_round_trip():
    for seq in (
        HARMONIC,
        CONSTANT_ONE,
        WatermanSequence("power", s=0.5),
        WatermanSequence("explicit", prefix=(1.0, 1.5), tail=WatermanSequence("power", s=0.5)),
    ):
        assert sequence_from_json(sequence_to_json(seq)) == seq
    with pytest.raises(SchemaError):
        sequence_from_json({"kind": "power"})


# -- seminorms -------------------------------------------------------------------

def test_sigma_ordered_x0_two_intervals(x0x1):
    x0, _ = x0x1
    assert sigma_lambda_ordered(x0, coll((0, 0.3), (0.6, 1)), HARMONIC) == pytest.approx(1.5)


def test_sigma_ordered_x1_whole(x0x1):
    _, x1 = x0x1
    assert sigma_lambda_ordered(x1, coll((0, 1)), HARMONIC) == 0.0


def test_sigma_ordered_empty(x0x1):
    assert sigma_lambda_ordered(x0x1[0], IntervalCollection(()), HARMONIC) == 0.0


def test_sigma_ordered_out_of_domain():
    y = make_step_function(Interval(0.0, 0.5), [0, 0.5], [1], [0, 1])
    with pytest.raises(OutOfDomain):
        sigma_lambda_ordered(y, coll((0, 1)), HARMONIC)


def test_sigma_best_order_examples(x0x1):
    x0, x1 = x0x1
    halves = coll((0, 0.5), (0.5, 1))
    assert sigma_lambda_best_order(x1, halves, HARMONIC) == pytest.approx(1.5)
    assert sigma_lambda_best_order(x0, halves, HARMONIC) == pytest.approx(1.5)
    assert sigma_lambda_best_order(constant(3.0), halves, HARMONIC) == 0.0


def test_sigma_best_order_rejects_overlap(x0x1):
    with pytest.raises(OverlappingIntervals):
        sigma_lambda_best_order(x0x1[0], coll((0, 0.6), (0.5, 1)), HARMONIC)


def test_best_order_dominates_orderings(rng):
    for _ in range(20):
        x = random_step(rng, 5)
        pos = trace_positions(x)
        cuts = sorted(rng.choice(len(pos), size=4, replace=False))
        items = [Interval(pos[cuts[0]], pos[cuts[1]]), Interval(pos[cuts[2]], pos[cuts[3]])]
        fwd = IntervalCollection(tuple(items))
        rev = IntervalCollection(tuple(reversed(items)))
        best = sigma_lambda_best_order(x, fwd, HARMONIC)
        assert sigma_lambda_ordered(x, fwd, HARMONIC) <= best + 1e-12
        assert sigma_lambda_ordered(x, rev, HARMONIC) <= best + 1e-12


# -- lambda variation ---------------------------------------------------------------

def test_lambda_variation_counterexample_pair(x0x1):
    x0, x1 = x0x1
    c0 = lambda_variation(x0, HARMONIC)
    c1 = lambda_variation(x1, HARMONIC)
    assert c0.value == pytest.approx(2.0, abs=1e-12)
    assert c1.value == pytest.approx(1.5, abs=1e-12)
    assert c0.bound == c1.bound == "exact"
    assert [it.as_pair() for it in c0.witness] == [[0.0, 1.0]]


def test_lambda_variation_constant():
    cert = lambda_variation(constant(7.0), HARMONIC)
    assert cert.value == 0.0
    assert len(cert.witness) == 0


def test_constant_one_equals_jordan(rng):
    for _ in range(25):
        x = random_step(rng)
        cert = lambda_variation(x, CONSTANT_ONE)
        assert cert.value == pytest.approx(jordan_variation(x), rel=1e-12, abs=1e-12)


def test_exact_matches_bruteforce(rng):
    for _ in range(15):
        x = random_step(rng, int(rng.integers(1, 6)))
        assert lambda_variation(x, HARMONIC).value == bf_lambda(x, HARMONIC)


def test_witness_reproduces_value(rng):
    for _ in range(10):
        x = random_step(rng, 4)
        cert = lambda_variation(x, HARMONIC)
        resum = sigma_lambda_ordered(x, cert.witness, HARMONIC)
        assert resum == pytest.approx(cert.value, rel=1e-12, abs=1e-15)


def test_greedy_lower_bound(rng):
    budget = LambdaBudget(exact_max=5)
    for _ in range(10):
        x = random_step(rng, 4)  # trace length 9 > 5 forces greedy
        greedy = lambda_variation(x, HARMONIC, budget)
        exact = lambda_variation(x, HARMONIC)
        assert greedy.method == "greedy"
        assert greedy.bound == "lower_bound"
        assert greedy.value <= exact.value + 1e-12
        resum = sigma_lambda_ordered(x, greedy.witness, HARMONIC)
        assert resum == pytest.approx(greedy.value, rel=1e-12, abs=1e-15)


def test_real_endpoint_families_never_beat_trace_families(rng):
    # the supremum restriction to trace endpoints, validated against families
    # with arbitrary real endpoints
    for _ in range(15):
        x = random_step(rng, 4)
        var = lambda_variation(x, HARMONIC).value
        pts = np.sort(rng.uniform(0, 1, 6))
        fam = IntervalCollection(
            (Interval(pts[0], pts[1]), Interval(pts[2], pts[3]), Interval(pts[4], pts[5]))
        )
        assert sigma_lambda_best_order(x, fam, HARMONIC) <= var + 1e-12


# -- jordan ----------------------------------------------------------------------------

def test_jordan_examples(x0x1):
    x0, x1 = x0x1
    assert jordan_variation(x1) == bf_jordan(x1) == 2.0
    assert jordan_variation(x0) == pytest.approx(2.0)
    assert jordan_variation(constant(2.0)) == 0.0


def test_jordan_subinterval(spike4):
    assert jordan_variation(spike4, Interval(0.5, 1.0)) == 0.0
    assert jordan_variation(spike4, Interval(0.0, 0.25)) == 0.0
    assert jordan_variation(spike4, Interval(0.3, 0.3)) == 0.0


def test_jordan_out_of_domain():
    y = make_step_function(Interval(0.2, 0.8), [0.2, 0.8], [1], [1, 1])
    with pytest.raises(OutOfDomain):
        jordan_variation(y, Interval(0.0, 1.0))


# -- norm -------------------------------------------------------------------------------

def test_lambda_norm_examples(x0x1):
    x0, x1 = x0x1
    assert lambda_norm(x0, HARMONIC) == pytest.approx(4.0, abs=1e-12)
    assert lambda_norm(x1, HARMONIC) == pytest.approx(1.5, abs=1e-12)
    assert lambda_norm(constant(-3.0), HARMONIC) == pytest.approx(3.0)


def test_lambda_norm_needs_unit_domain():
    y = make_step_function(Interval(0.0, 0.5), [0, 0.5], [1], [1, 1])
    with pytest.raises(DomainMismatch):
        lambda_norm(y, HARMONIC)


# -- structural properties ---------------------------------------------------------------

def test_monotone_in_weights(rng):
    # lambda_n = n >= mu_n = n^0.5 pointwise, so var_harmonic <= var_power(0.5)
    slow = WatermanSequence("power", s=0.5)
    for _ in range(10):
        x = random_step(rng, 4)
        assert lambda_variation(x, HARMONIC).value <= lambda_variation(x, slow).value + 1e-12


def test_triangle_inequality(rng):
    for _ in range(10):
        x, y = random_step(rng, 3), random_step(rng, 3)
        lhs = lambda_variation(subtract(x, y), HARMONIC).value
        rhs = lambda_variation(x, HARMONIC).value + lambda_variation(y, HARMONIC).value
        assert lhs <= rhs + 1e-9


def test_scaling(rng):
    for c in (-2.0, 0.5, 3.0):
        x = random_step(rng, 4)
        assert lambda_variation(scale(x, c), HARMONIC).value == pytest.approx(
            abs(c) * lambda_variation(x, HARMONIC).value, rel=1e-12, abs=1e-12
        )


def test_ordered_le_best_le_var(rng):
    for _ in range(10):
        x = random_step(rng, 4)
        pos = trace_positions(x)
        idx = sorted(rng.choice(len(pos), size=4, replace=False))
        fam = IntervalCollection(
            (Interval(pos[idx[0]], pos[idx[1]]), Interval(pos[idx[2]], pos[idx[3]]))
        )
        ordered = sigma_lambda_ordered(x, fam, HARMONIC)
        best = sigma_lambda_best_order(x, fam, HARMONIC)
        var = lambda_variation(x, HARMONIC).value
        assert ordered <= best + 1e-12 <= var + 2e-12
