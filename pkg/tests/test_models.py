import math

import mpmath
import numpy as np
import pytest

from ppm import (
    DomainError,
    ModelKind,
    ModelSpec,
    RangeError,
    SequenceTooShortError,
    baseline_estimates,
    ceil_half_divisor_sum,
    conjecture_ordering_check,
    divisor_count,
    divisor_counts_up_to,
    epsilon_model2,
    epsilon_model2star,
    estimate_pi,
    landau_pik_approx,
    model1_value,
    model_sequence,
    modeled_gap,
    relative_error_series,
    tenenbaum_semiprime_gap,
)

M1 = ModelSpec(ModelKind.MODEL1)
M2 = ModelSpec(ModelKind.MODEL2)
M2S = ModelSpec(ModelKind.MODEL2_STAR)

FIRST_TEN = [2, 3, 5, 7, 11, 13, 17, 19, 23, 27]


def test_model_spec_validates_gamma():
    with pytest.raises(DomainError):
        ModelSpec(ModelKind.MODEL1, gamma=0.5)


def test_divisor_count():
    assert divisor_count(0) == 0
    assert divisor_count(12) == 6
    assert divisor_count(9) == 3
    assert divisor_count(1) == 1
    with pytest.raises(DomainError):
        divisor_count(-1)


def test_divisor_sieve_matches_single_values():
    d = divisor_counts_up_to(2000)
    for k in range(1, 2001):
        assert d[k] == divisor_count(k)


def test_ceil_half_divisor_sum_examples():
    # 2 * (1 + 1 + 1 + 2) = 10; closed form 1 + 2 + 2 + 3 + isqrt(4)
    assert ceil_half_divisor_sum(4) == 10
    assert ceil_half_divisor_sum(0) == 0
    assert ceil_half_divisor_sum(9) == 26  # 2 * (1+1+1+2+1+2+1+2+2)


@pytest.mark.parametrize("method", ["direct", "floor_sum", "hyperbola", "blocks"])
def test_ceil_half_divisor_sum_methods(method):
    # brute-force oracle over d(k)
    for n in (0, 1, 2, 17, 100, 1234):
        expected = 2 * sum(math.ceil(divisor_count(k) / 2) for k in range(1, n + 1))
        assert ceil_half_divisor_sum(n, method) == expected, (method, n)


def test_ceil_half_divisor_sum_method_agreement():
    rng = np.random.default_rng(3)
    for _ in range(40):
        n = int(rng.integers(1, 10 ** 6))
        h = ceil_half_divisor_sum(n, "hyperbola")
        assert ceil_half_divisor_sum(n, "blocks") == h
        assert ceil_half_divisor_sum(n, "floor_sum") == h
    assert ceil_half_divisor_sum(10 ** 9, "hyperbola") == ceil_half_divisor_sum(10 ** 9, "blocks")


def test_ceil_half_divisor_sum_bad_method():
    with pytest.raises(DomainError):
        ceil_half_divisor_sum(10, "magic")


def test_model1_value():
    assert [model1_value(n) for n in range(1, 11)] == FIRST_TEN
    assert model1_value(2) == 3
    # incremental step: value(26) = value(25) + 2 * ceil(d(25)/2)
    assert model1_value(26) == model1_value(25) + 4


def test_epsilon_model2(table_medium):
    assert epsilon_model2(10, table_medium) == 0  # pi2(23) = 8 < 2*gamma*9
    assert epsilon_model2(2, table_medium) == 0
    assert table_medium.pi_k(2, 23) == 8
    with pytest.raises(DomainError):
        epsilon_model2(1, table_medium)


def test_epsilon_model2star():
    assert epsilon_model2star(3) == 0
    assert epsilon_model2star(10) == 0
    # 27 * (loglog 27 - 2 gamma) = 1.033..., re-checked in high precision
    with mpmath.workdps(40):
        arg = 27 * (mpmath.log(mpmath.log(27)) - 2 * mpmath.mpf("0.57721566490153286"))
        assert 1 < arg < 2
    assert epsilon_model2star(28) == 1
    with pytest.raises(DomainError):
        epsilon_model2star(2)


def test_model_sequences_first_ten(table_medium):
    for spec in (M1, M2, M2S):
        seq = model_sequence(spec, 10, table_medium)
        assert [seq.value(n) for n in range(1, 11)] == FIRST_TEN


def test_sequence_invariants(table_medium):
    seq1 = model_sequence(M1, 5000)
    assert seq1.value(1) == 2
    diffs = np.diff(seq1.values[1:])
    assert np.all(diffs > 0)  # strictly increasing
    assert np.all(diffs[1:] >= 2)  # every step past the pinned start is 2*ceil(d/2)
    seq2s = model_sequence(M2S, 5000)
    assert seq2s.value(2) == 3
    for spec in (M2,):
        seq = model_sequence(spec, 5000, table_medium)
        assert np.all(seq.epsilons[1:] >= 0)


def test_models_coincide_below_crossover(table_medium):
    m1 = model_sequence(M1, 100)
    m2 = model_sequence(M2, 100, table_medium)
    m2s = model_sequence(M2S, 100)
    first2 = next(n for n in range(2, 101) if m2.epsilon(n) > 0)
    first2s = next(n for n in range(3, 101) if m2s.epsilon(n) > 0)
    assert all(m2.value(n) == m1.value(n) for n in range(1, first2))
    assert all(m2s.value(n) == m1.value(n) for n in range(1, first2s))


def test_pi_estimate_table_cells(table_medium):
    assert estimate_pi(M1, 1000) == 184
    assert estimate_pi(M2, 10_000, table_medium) == 1212
    assert estimate_pi(M2S, 1_000_000) == 78_740


def test_pi_estimate_too_short():
    seq = model_sequence(M1, 10)
    with pytest.raises(SequenceTooShortError):
        seq.pi_estimate(1000)


def test_model2_requires_table():
    with pytest.raises(DomainError):
        model_sequence(M2, 100)


def test_model2_requires_enough_primes():
    from ppm import build_prime_table

    tiny = build_prime_table(100)
    with pytest.raises(RangeError, match="sieve"):
        model_sequence(M2, 1000, tiny)


def test_modeled_gap(table_medium):
    assert modeled_gap(M1, 9) == 4
    assert modeled_gap(M1, 24) == 8
    assert modeled_gap(M1, 12) == 6
    assert modeled_gap(M1, 1) == 1  # pinned initial value makes the first gap 1


def test_model1_gap_identity():
    seq = model_sequence(M1, 100_001)
    gaps = np.diff(seq.values[1:])
    d = divisor_counts_up_to(100_000).astype(np.int64)
    steps = d + (d & 1)  # 2 * ceil(d/2)
    assert np.array_equal(gaps[1:], steps[2:100_001])


def test_gap_monotone_in_divisor_count():
    # the modeled gap is a nondecreasing function of d(n)
    seq = model_sequence(M1, 20_001)
    gaps = np.diff(seq.values[1:])[1:]  # gaps at n = 2..20000
    d = divisor_counts_up_to(20_000)[2:]
    order = np.argsort(d, kind="stable")
    assert np.all(np.diff(gaps[order]) >= 0)


def test_minimal_gap_iff_prime_index(table_medium):
    seq = model_sequence(M1, 100_001)
    gaps = np.diff(seq.values[1:])[1:]  # gaps at n = 2..100000
    d = divisor_counts_up_to(100_000)[2:]
    n = np.arange(2, 100_001)
    is_prime = table_medium.pi_prefix[n] > table_medium.pi_prefix[n - 1]
    assert np.array_equal(gaps == 2, d == 2)
    assert np.array_equal(d == 2, is_prime)


def test_parity_floor_variant(table_medium):
    for kind in (ModelKind.MODEL2, ModelKind.MODEL2_STAR):
        spec = ModelSpec(kind, parity_floor=True)
        seq = model_sequence(spec, 3000, table_medium)
        vals = seq.values[2:]
        assert np.all(vals % 2 == 1)
        assert np.all(np.diff(vals) % 2 == 0)


def test_parity_floor_noop_for_model1():
    plain = model_sequence(M1, 500)
    parity = model_sequence(ModelSpec(ModelKind.MODEL1, parity_floor=True), 500)
    assert np.array_equal(plain.values, parity.values)


def test_decreasing_indices_reported(table_medium):
    seq = model_sequence(M2, 2000, table_medium)
    for n in seq.decreasing_indices():
        assert seq.value(n + 1) < seq.value(n)


def test_pnt_ratio_approaches_one():
    seq = model_sequence(M1, 1_000_000)
    devs = []
    for n in (1000, 10_000, 100_000, 1_000_000):
        devs.append(abs(seq.value(n) / (n * math.log(n)) - 1.0))
    assert all(a > b for a, b in zip(devs, devs[1:]))


def test_baseline_estimates():
    b = baseline_estimates(100)
    assert b.pnt == pytest.approx(21.7147, abs=1e-3)
    assert b.li == pytest.approx(30.126, abs=1e-2)
    assert baseline_estimates(10 ** 6).li == pytest.approx(78_627.54, abs=0.02)
    e = math.e
    assert baseline_estimates(e).pnt == pytest.approx(e, rel=1e-12)
    with pytest.raises(DomainError):
        baseline_estimates(1.5)


def test_li_against_independent_evaluation():
    for x in (10, 1000, 10 ** 6):
        expected = float(mpmath.li(x))
        assert baseline_estimates(x).li == pytest.approx(expected, abs=1e-5)


def test_landau_pik_approx(table_medium):
    assert landau_pik_approx(1, 10 ** 6) == pytest.approx(72_382.41, abs=0.01)
    x = 10 ** 6
    k2 = landau_pik_approx(2, x)
    assert k2 == pytest.approx(x * math.log(math.log(x)) / math.log(x), rel=1e-12)
    # sits within 25% of the exact semiprime count at this size
    assert k2 == pytest.approx(table_medium.pi_k(2, x), rel=0.25)
    assert landau_pik_approx(2, x) / landau_pik_approx(3, x) == pytest.approx(
        2 / math.log(math.log(x)), rel=1e-12)
    with pytest.raises(DomainError):
        landau_pik_approx(1, 2.0)
    with pytest.raises(DomainError):
        landau_pik_approx(0, 100.0)


def test_pi_k_unit_count_at_scale(table_medium):
    assert table_medium.pi_k(0, 10 ** 6) == 1


def test_tenenbaum_semiprime_gap(table_medium):
    assert tenenbaum_semiprime_gap(100) == pytest.approx(26.149721)
    assert tenenbaum_semiprime_gap(0) == 0
    n = 10_000
    drift = table_medium.pi_k(2, table_medium.nth_prime(n)) - n * math.log(math.log(n))
    assert drift == pytest.approx(tenenbaum_semiprime_gap(n), rel=0.25)


def test_relative_error_series(table_medium):
    series = relative_error_series(M1, 100_000, table_medium, 10_000)
    assert [n for n, _ in series] == list(range(10_000, 100_001, 10_000))
    final = dict(series)[100_000]
    assert 0.08 <= final <= 0.12
    short = relative_error_series(M1, 50, table_medium, 80)
    assert [n for n, _ in short] == [50]


def test_conjecture_ordering_check(table_medium):
    rep = conjecture_ordering_check(10_000, table_medium)
    assert (rep.model2, rep.pi_exact, rep.model2_star, rep.model1) == (1212, 1229, 1233, 1352)
    assert rep.all_hold
    rep10 = conjecture_ordering_check(10, table_medium)
    assert (rep10.model2, rep10.pi_exact, rep10.model2_star, rep10.model1) == (4, 4, 4, 4)
    assert rep10.all_hold


def test_sequence_csv_rows(table_medium):
    seq = model_sequence(M2S, 12, table_medium)
    rows = seq.csv_rows(table_medium)
    assert rows[0] == (1, 2, 2, 0, 0.0)
    n, p_hat, p_actual, eps, rel = rows[10]
    assert (n, p_actual) == (11, 31)
    assert rel == pytest.approx(abs(p_hat - 31) / 31)
