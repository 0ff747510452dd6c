"""Benchmark harness: the signature-indexed product against two baselines.

Three algorithms multiply the same pair of algebra elements:

* ``EfbSparse``   -- the bucketed EFB product (the engine's fast path),
* ``GammaBlade``  -- term-by-term blade products in the gamma basis,
* ``DenseMatrix`` -- numpy float64 matrix product of the 2^m x 2^m images
  (plain cubic multiplication; no sub-cubic tricks).

The machine-independent claim is an operation count: on dense inputs the EFB
product visits exactly 2^{3m} candidate term pairs while the blade product
visits 2^{4m}, a factor 2^m more.  Wall-clock numbers are reported too but
only coarse trends are asserted anywhere; clocks are machine-dependent.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .algebra import Multivector, mv_product
from .config import AlgebraConfig, ScalarMode
from .gamma import GammaMultivector, efb_to_gamma, gamma_product, gamma_to_efb
from .matrix_rep import RepMatrix, from_matrix, to_matrix

ALGO_EFB = "EfbSparse"
ALGO_GAMMA = "GammaBlade"
ALGO_DENSE = "DenseMatrix"

ALL_ALGORITHMS = (ALGO_EFB, ALGO_GAMMA, ALGO_DENSE)

MAX_M_DENSE = 10
MAX_M = 12

_WARMUP = 3
_MIN_TRIALS = 100


@dataclass(frozen=True)
class BenchReport:
    m: int
    algorithm: str
    input_density: float
    mean_ns_per_product: float
    speedup_vs_baseline: Optional[float]
    pairs_visited: int
    seed: int

    def json_obj(self) -> dict:
        return {
            "m": self.m,
            "algo": self.algorithm,
            "density": self.input_density,
            "ns": self.mean_ns_per_product,
            "pairs_visited": self.pairs_visited,
            "seed": self.seed,
            "speedup_vs_baseline": self.speedup_vs_baseline,
        }


def random_float_multivector(config: AlgebraConfig, nnz: int, rng: random.Random) -> Multivector:
    """Uniform random nonzero coefficients on ``nnz`` distinct signatures."""
    n = 1 << (2 * config.m)
    nnz = max(1, min(nnz, n))
    keys = rng.sample(range(n), nnz)
    half = 1 << config.m
    terms = {}
    for key in keys:
        coeff = 0.0
        while coeff == 0.0:
            coeff = rng.uniform(-1.0, 1.0)
        terms[(key >> config.m, key & (half - 1))] = coeff
    return Multivector._raw(config, terms)


def dense_float_multivector(config: AlgebraConfig) -> Multivector:
    n = 1 << config.m
    return Multivector._raw(
        config, {(h, g): 1.0 for h in range(n) for g in range(n)}
    )


def efb_pairs_visited(a: Multivector, b: Multivector) -> int:
    """Candidate pairs the bucketed product visits; matches the live counter."""
    bucket_sizes: dict[int, int] = {}
    for (h, _g) in b.terms:
        bucket_sizes[h] = bucket_sizes.get(h, 0) + 1
    return sum(bucket_sizes.get(h ^ g, 0) for (h, g) in a.terms)


def gamma_pairs_visited(a: GammaMultivector, b: GammaMultivector) -> int:
    """The blade algorithm visits every ordered pair of stored terms."""
    return len(a.terms) * len(b.terms)


def dense_matrix_mult_count(m: int) -> int:
    """Scalar multiplications of the cubic 2^m x 2^m matrix product."""
    return 1 << (3 * m)


def dense_pair_counts(m: int) -> tuple[int, int]:
    """(EFB, gamma) visited-pair counts for fully dense inputs.

    Materializes the dense operands (m <= 8) so the numbers come from the
    same accounting the product loops use, not from a closed form.
    """
    if m > 8:
        raise ValueError("dense operand materialization is capped at m=8")
    config = AlgebraConfig(m, ScalarMode.FLOAT64)
    dense = dense_float_multivector(config)
    efb_pairs = efb_pairs_visited(dense, dense)
    n_blades = 1 << (2 * m)
    dense_gamma = GammaMultivector._raw(config, {mask: 1.0 for mask in range(n_blades)})
    gamma_pairs = gamma_pairs_visited(dense_gamma, dense_gamma)
    return efb_pairs, gamma_pairs


_interpreter_warm = False


def _warm_interpreter() -> None:
    """One throwaway round so allocator/numpy startup never lands in a timing."""
    global _interpreter_warm
    if _interpreter_warm:
        return
    config = AlgebraConfig(2, ScalarMode.FLOAT64)
    rng = random.Random(0)
    a = random_float_multivector(config, 8, rng)
    for _ in range(50):
        mv_product(a, a)
        gamma_product(efb_to_gamma(a), efb_to_gamma(a))
    block = np.ones((4, 4))
    block @ block
    _interpreter_warm = True


def _time_loop(fn, trials: int) -> float:
    for _ in range(_WARMUP):
        fn()
    start = time.perf_counter_ns()
    for _ in range(trials):
        fn()
    return (time.perf_counter_ns() - start) / trials


def run_bench(
    m_values: Sequence[int],
    density: float | Sequence[float],
    trials: int = 100,
    seed: int = 0,
    algorithms: Sequence[str] = ALL_ALGORITHMS,
    verify: bool = True,
) -> list[BenchReport]:
    """Time the selected algorithms on identical random inputs per m.

    ``density`` is the fraction of nonzero terms (one float, or one per m).
    Timings average ``trials`` >= 100 products after warmup.  When several
    algorithms run, their results are cross-checked within float tolerance
    before any timing is trusted.
    """
    if trials < _MIN_TRIALS:
        raise ValueError(f"reports must average at least {_MIN_TRIALS} products")
    unknown = set(algorithms) - set(ALL_ALGORITHMS)
    if unknown:
        raise ValueError(f"unknown algorithms: {sorted(unknown)}")
    if isinstance(density, (int, float)):
        densities = [float(density)] * len(m_values)
    else:
        densities = [float(d) for d in density]
        if len(densities) != len(m_values):
            raise ValueError("need one density per m value")
    for m in m_values:
        cap = MAX_M_DENSE if ALGO_DENSE in algorithms else MAX_M
        if not 1 <= m <= cap:
            raise ValueError(f"m={m} out of range 1..{cap} for {list(algorithms)}")
    _warm_interpreter()
    reports: list[BenchReport] = []
    for m, dens in zip(m_values, densities):
        if not 0 < dens <= 1:
            raise ValueError(f"density must lie in (0, 1], got {dens}")
        config = AlgebraConfig(m, ScalarMode.FLOAT64)
        rng = random.Random(seed ^ (m << 16))
        n = 1 << (2 * m)
        nnz = max(1, round(dens * n))
        a = random_float_multivector(config, nnz, rng)
        b = random_float_multivector(config, nnz, rng)
        actual_density = len(a.terms) / n

        runners = {}
        results = {}
        pairs = {}
        if ALGO_EFB in algorithms:
            runners[ALGO_EFB] = lambda a=a, b=b: mv_product(a, b)
            pairs[ALGO_EFB] = efb_pairs_visited(a, b)
        if ALGO_GAMMA in algorithms:
            ga = efb_to_gamma(a)
            gb = efb_to_gamma(b)
            runners[ALGO_GAMMA] = lambda ga=ga, gb=gb: gamma_product(ga, gb)
            pairs[ALGO_GAMMA] = gamma_pairs_visited(ga, gb)
        if ALGO_DENSE in algorithms:
            mat_a = np.array(to_matrix(a, allow_large=True).entries, dtype=np.float64)
            mat_b = np.array(to_matrix(b, allow_large=True).entries, dtype=np.float64)
            runners[ALGO_DENSE] = lambda mat_a=mat_a, mat_b=mat_b: mat_a @ mat_b
            pairs[ALGO_DENSE] = dense_matrix_mult_count(m)

        if verify and len(runners) > 1:
            for name, fn in runners.items():
                results[name] = fn()
            _check_agreement(config, results)

        means = {name: _time_loop(fn, trials) for name, fn in runners.items()}
        baseline = means.get(ALGO_DENSE)
        for name in algorithms:
            if name not in means:
                continue
            speedup = (baseline / means[name]) if baseline is not None else None
            reports.append(
                BenchReport(
                    m=m,
                    algorithm=name,
                    input_density=actual_density,
                    mean_ns_per_product=means[name],
                    speedup_vs_baseline=speedup,
                    pairs_visited=pairs[name],
                    seed=seed,
                )
            )
    return reports


def _check_agreement(config: AlgebraConfig, results: dict) -> None:
    """All algorithms must produce the same element of the algebra."""
    as_efb = {}
    for name, value in results.items():
        if name == ALGO_EFB:
            as_efb[name] = value
        elif name == ALGO_GAMMA:
            as_efb[name] = gamma_to_efb(value)
        else:
            mat = RepMatrix(config, value.tolist())
            as_efb[name] = from_matrix(mat)
    names = list(as_efb)
    reference = as_efb[names[0]]
    for name in names[1:]:
        if as_efb[name] != reference:
            raise AssertionError(
                f"algorithm disagreement: {name} vs {names[0]} differ beyond tolerance"
            )
