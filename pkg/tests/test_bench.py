"""Benchmark harness: operation counters and report plumbing."""

import random
from fractions import Fraction

import pytest

from clifford_efb import AlgebraConfig, PairCounter, ScalarMode, mv_product
from clifford_efb.bench import (
    ALGO_DENSE,
    ALGO_EFB,
    ALGO_GAMMA,
    dense_float_multivector,
    dense_matrix_mult_count,
    dense_pair_counts,
    efb_pairs_visited,
    gamma_pairs_visited,
    random_float_multivector,
    run_bench,
)
from clifford_efb.gamma import GammaMultivector, efb_to_gamma, gamma_product


def test_dense_counts_match_instrumented_products():
    for m in (1, 2, 3, 4, 5):
        config = AlgebraConfig(m, ScalarMode.FLOAT64)
        dense = dense_float_multivector(config)
        counter = PairCounter()
        mv_product(dense, dense, counter)
        assert counter.pairs == 1 << (3 * m)
        assert efb_pairs_visited(dense, dense) == counter.pairs
    for m in (1, 2, 3):
        config = AlgebraConfig(m, ScalarMode.FLOAT64)
        n = 1 << (2 * m)
        dense_gamma = GammaMultivector(config, {mask: 1.0 for mask in range(n)})
        counter = PairCounter()
        gamma_product(dense_gamma, dense_gamma, counter)
        assert counter.pairs == 1 << (4 * m)
        assert gamma_pairs_visited(dense_gamma, dense_gamma) == counter.pairs


def test_sparse_counts_match_instrumented_products():
    rng = random.Random(3)
    for m in (2, 3, 4):
        config = AlgebraConfig(m, ScalarMode.FLOAT64)
        for _ in range(5):
            a = random_float_multivector(config, 10, rng)
            b = random_float_multivector(config, 10, rng)
            counter = PairCounter()
            mv_product(a, b, counter)
            assert counter.pairs == efb_pairs_visited(a, b)
            ga, gb = efb_to_gamma(a), efb_to_gamma(b)
            counter = PairCounter()
            gamma_product(ga, gb, counter)
            assert counter.pairs == gamma_pairs_visited(ga, gb)


def test_dense_pair_ratio_is_exactly_two_to_minus_m():
    for m in range(1, 9):
        efb_pairs, gamma_pairs = dense_pair_counts(m)
        assert efb_pairs == 1 << (3 * m)
        assert gamma_pairs == 1 << (4 * m)
        assert Fraction(efb_pairs, gamma_pairs) == Fraction(1, 1 << m)


def test_dense_matrix_count():
    assert dense_matrix_mult_count(3) == 512


def test_run_bench_reports():
    reports = run_bench([1, 2], 1.0, trials=100, seed=9)
    by_key = {(r.m, r.algorithm): r for r in reports}
    assert set(by_key) == {(m, algo) for m in (1, 2) for algo in (ALGO_EFB, ALGO_GAMMA, ALGO_DENSE)}
    for report in reports:
        assert report.mean_ns_per_product > 0
        assert report.pairs_visited > 0
        assert report.seed == 9
        assert report.input_density == 1.0
    assert by_key[(1, ALGO_DENSE)].speedup_vs_baseline == 1.0
    obj = reports[0].json_obj()
    assert set(obj) == {"m", "algo", "density", "ns", "pairs_visited", "seed", "speedup_vs_baseline"}


def test_run_bench_without_baseline():
    reports = run_bench([2], 0.5, trials=100, seed=1, algorithms=(ALGO_EFB,))
    assert len(reports) == 1
    assert reports[0].speedup_vs_baseline is None
    assert 0 < reports[0].input_density <= 0.5 + 1e-9


def test_run_bench_validation():
    with pytest.raises(ValueError):
        run_bench([1], 1.0, trials=50)
    with pytest.raises(ValueError):
        run_bench([1], 0.0)
    with pytest.raises(ValueError):
        run_bench([1], 1.0, algorithms=("Quantum",))
    with pytest.raises(ValueError):
        run_bench([11], 0.001)  # DenseMatrix capped at m=10
    with pytest.raises(ValueError):
        run_bench([13], 0.0001, algorithms=(ALGO_EFB,))  # overall cap m=12
    with pytest.raises(ValueError):
        run_bench([1, 2], [1.0])
    with pytest.raises(ValueError):
        dense_pair_counts(9)


def test_random_float_multivector_density():
    rng = random.Random(7)
    config = AlgebraConfig(3, ScalarMode.FLOAT64)
    mv = random_float_multivector(config, 12, rng)
    assert len(mv.terms) == 12
    assert all(coeff != 0 for coeff in mv.terms.values())
