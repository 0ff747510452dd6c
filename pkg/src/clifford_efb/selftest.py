"""Built-in invariant suites behind the ``selftest`` command.

Each check returns a one-line detail string; a failure carries the first
counterexample found.  These are the fast, always-on versions of the full
test suite: small m, seeded randomness, exact arithmetic throughout.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import product as iter_product

from .algebra import (
    EfbElement,
    Multivector,
    efb_product,
    factor_product,
    gamma_eigen,
    identity_multivector,
    mv_product,
    sign_product,
    volume_element,
)
from .config import AlgebraConfig
from .gamma import efb_to_gamma, gamma_product, gamma_to_efb, witt_p, witt_q
from .matrix_rep import (
    column_ideal_check,
    describe_cell,
    from_matrix,
    gamma_matrix,
    layout,
    row_ideal_check,
    to_matrix,
)
from .spinors import Spinor, SpinorSpace, annihilator, is_simple, two_term_simplicity

# Single-pair product table: rows/cols in factor order (qp, pq, p, q),
# entries the factor code of the product or None for the zero cells.
_QP, _PQ, _P, _Q = (0, 0), (1, 0), (1, 1), (0, 1)
_FACTOR_TABLE = {
    (_QP, _QP): _QP, (_QP, _PQ): None, (_QP, _P): None, (_QP, _Q): _Q,
    (_PQ, _QP): None, (_PQ, _PQ): _PQ, (_PQ, _P): _P, (_PQ, _Q): None,
    (_P, _QP): _P, (_P, _PQ): None, (_P, _P): None, (_P, _Q): _PQ,
    (_Q, _QP): None, (_Q, _PQ): _Q, (_Q, _P): _QP, (_Q, _Q): None,
}

_GOLDEN_A2 = (
    ("q1p1 q2p2", "q1p1 q2", "q1 q2p2", "q1 q2"),
    ("q1p1 p2", "q1p1 p2q2", "-q1 p2", "-q1 p2q2"),
    ("p1 q2p2", "p1 q2", "p1q1 q2p2", "p1q1 q2"),
    ("-p1 p2", "-p1 p2q2", "p1q1 p2", "p1q1 p2q2"),
)


@dataclass(frozen=True)
class CheckResult:
    name: str
    ok: bool
    detail: str


def _random_exact_multivector(config, rng, max_terms=6):
    n = 1 << config.m
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        key = (rng.randrange(n), rng.randrange(n))
        coeff = Fraction(rng.randint(-9, 9) or 1, rng.randint(1, 9))
        terms[key] = terms.get(key, 0) + coeff
    return Multivector(config, terms)


def _check_factor_table():
    for (psi, phi), expected in _FACTOR_TABLE.items():
        if factor_product(psi, phi) != expected:
            return False, f"factor table mismatch at {psi} x {phi}"
    return True, "16/16 single-pair products match"


def _check_product_census(max_m):
    total_checked = 0
    for m in range(1, min(max_m, 3) + 1):
        n = 1 << m
        nonzero = 0
        for ha, ga, hb, gb in iter_product(range(n), repeat=4):
            result = efb_product(EfbElement(ha, ga), EfbElement(hb, gb))
            if result is None:
                continue
            nonzero += 1
            if result.h != ha or result.g != ga ^ gb:
                return False, f"signature law broken at m={m}"
        if nonzero != 1 << (3 * m):
            return False, f"m={m}: {nonzero} nonzero products, expected {1 << (3 * m)}"
        total_checked += n ** 4
    return True, f"{total_checked} ordered pairs enumerated"


def _check_eigenstructure(max_m):
    for m in range(1, max_m + 1):
        config = AlgebraConfig(m)
        vol = volume_element(config)
        n = 1 << m
        for h in range(n):
            for g in range(n):
                psi = Multivector(config, {(h, g): 1})
                if mv_product(vol, psi) != psi.scale(sign_product(h)):
                    return False, f"helicity eigenvalue broken at m={m}, h={h}, g={g}"
                if mv_product(psi, vol) != psi.scale(sign_product(h ^ g)):
                    return False, f"right-action eigenvalue broken at m={m}, h={h}, g={g}"
        eig = gamma_eigen(identity_multivector(config))
        if eig.right is not None or eig.left is not None:
            return False, f"the unit reported as eigenvector at m={m}"
    return True, f"both eigenvalue laws hold on every basis element, m<={max_m}"


def _check_product_oracles(max_m, seed):
    rng = random.Random(seed)
    pairs = 0
    for m in range(1, max_m + 1):
        config = AlgebraConfig(m)
        for _ in range(12):
            a = _random_exact_multivector(config, rng)
            b = _random_exact_multivector(config, rng)
            fast = mv_product(a, b)
            via_gamma = gamma_to_efb(gamma_product(efb_to_gamma(a), efb_to_gamma(b)))
            if fast != via_gamma:
                return False, f"gamma oracle disagreement at m={m}"
            if to_matrix(fast) != to_matrix(a).matmul(to_matrix(b)):
                return False, f"matrix oracle disagreement at m={m}"
            pairs += 1
    return True, f"{pairs} random products agree with both oracles"


def _check_associativity(max_m, seed):
    rng = random.Random(seed + 1)
    for m in range(1, min(max_m, 3) + 1):
        config = AlgebraConfig(m)
        for _ in range(8):
            a = _random_exact_multivector(config, rng)
            b = _random_exact_multivector(config, rng)
            c = _random_exact_multivector(config, rng)
            if mv_product(mv_product(a, b), c) != mv_product(a, mv_product(b, c)):
                return False, f"associativity broken at m={m}"
    return True, "random triples associate"


def _check_unit_law(max_m, seed):
    rng = random.Random(seed + 2)
    for m in range(1, max_m + 1):
        config = AlgebraConfig(m)
        one = identity_multivector(config)
        for _ in range(6):
            a = _random_exact_multivector(config, rng)
            if mv_product(one, a) != a or mv_product(a, one) != a:
                return False, f"unit law broken at m={m}"
        vol = volume_element(config)
        if mv_product(vol, vol) != one:
            return False, f"volume element does not square to 1 at m={m}"
    return True, "two-sided unit and volume square"


def _check_layout_golden():
    lay = layout(2)
    for r in range(4):
        for c in range(4):
            if describe_cell(2, r, c) != _GOLDEN_A2[r][c]:
                return False, f"layout cell ({r}, {c}) = {describe_cell(2, r, c)!r}"
    border = ["++", "+-", "-+", "--"]
    from .algebra import signature_to_string

    for idx, label in enumerate(border):
        if signature_to_string(lay.row_h(idx), 2) != label:
            return False, f"row border {idx} mismatch"
        if signature_to_string(lay.col_hg(idx), 2) != label:
            return False, f"column border {idx} mismatch"
    return True, "m=2 layout matches the reference display cell-for-cell"


def _check_roundtrips(max_m, seed):
    rng = random.Random(seed + 3)
    count = 0
    for m in range(1, max_m + 1):
        config = AlgebraConfig(m)
        for _ in range(8):
            a = _random_exact_multivector(config, rng)
            if gamma_to_efb(efb_to_gamma(a)) != a:
                return False, f"gamma roundtrip broken at m={m}"
            if from_matrix(to_matrix(a)) != a:
                return False, f"matrix roundtrip broken at m={m}"
            count += 1
        if to_matrix(volume_element(config)) != gamma_matrix(config):
            return False, f"volume matrix mismatch at m={m}"
    return True, f"{count} roundtrips are exact"


def _check_annihilator_dims(max_m):
    for m in range(1, max_m + 1):
        config = AlgebraConfig(m)
        n = 1 << m
        for hg in range(n):
            space = SpinorSpace(config, hg)
            for h in range(n):
                if annihilator(Spinor.basis(space, h)).dim != m:
                    return False, f"basis element (h={h}, hg={hg}) at m={m} not simple"
    return True, f"all 2^(2m) basis elements have maximal null planes, m<={max_m}"


def _check_two_term_rule(max_m):
    for m in range(2, min(max_m, 4) + 1):
        config = AlgebraConfig(m)
        space = SpinorSpace.standard_fock(config)
        n = 1 << m
        for ha in range(n):
            for hb in range(ha + 1, n):
                verdict = two_term_simplicity(
                    space.basis_element(ha), space.basis_element(hb), space
                )
                s = Spinor.basis(space, ha) + Spinor.basis(space, hb)
                if is_simple(s) != verdict:
                    return False, f"two-term rule broken at m={m}, pair ({ha}, {hb})"
    return True, "signature rule matches null-plane ranks exhaustively"


def _check_column_ideals(max_m, seed):
    for m in range(1, min(max_m, 3) + 1):
        config = AlgebraConfig(m)
        for col in range(1 << m):
            if not column_ideal_check(config, col, trials=10, rng=random.Random(seed)):
                return False, f"column {col} is not a left ideal at m={m}"
    if row_ideal_check(AlgebraConfig(1), 0, trials=10, rng=random.Random(seed)).ok:
        return False, "row 0 unexpectedly closed under left multiplication"
    return True, "columns are left ideals; rows are not"


def _check_generator_relations(max_m):
    for m in range(1, min(max_m, 3) + 1):
        config = AlgebraConfig(m)
        gens = []
        for i in range(1, m + 1):
            gens.append(gamma_to_efb(witt_p(config, i) + witt_q(config, i)))
            gens.append(gamma_to_efb(witt_p(config, i) - witt_q(config, i)))
        one = identity_multivector(config)
        for k in range(2 * m):
            for l in range(2 * m):
                anti = mv_product(gens[k], gens[l]) + mv_product(gens[l], gens[k])
                if k != l:
                    expected = Multivector.zero(config)
                elif k % 2 == 0:
                    expected = one.scale(2)
                else:
                    expected = one.scale(-2)
                if anti != expected:
                    return False, f"anticommutator broken at m={m}, pair ({k + 1}, {l + 1})"
    return True, "generator anticommutation relations hold"


def run_selftest(max_m: int = 4, seed: int = 0) -> list[CheckResult]:
    if not 1 <= max_m <= 6:
        raise ValueError("selftest supports max_m in 1..6")
    checks = [
        ("factor_table", lambda: _check_factor_table()),
        ("product_census", lambda: _check_product_census(max_m)),
        ("eigenstructure", lambda: _check_eigenstructure(max_m)),
        ("product_oracles", lambda: _check_product_oracles(max_m, seed)),
        ("associativity", lambda: _check_associativity(max_m, seed)),
        ("unit_law", lambda: _check_unit_law(max_m, seed)),
        ("layout_golden", lambda: _check_layout_golden()),
        ("roundtrips", lambda: _check_roundtrips(max_m, seed)),
        ("annihilator_dims", lambda: _check_annihilator_dims(min(max_m, 4))),
        ("two_term_rule", lambda: _check_two_term_rule(max_m)),
        ("column_ideals", lambda: _check_column_ideals(max_m, seed)),
        ("generator_relations", lambda: _check_generator_relations(max_m)),
    ]
    results = []
    for name, fn in checks:
        try:
            ok, detail = fn()
        except Exception as exc:  # a crashed invariant is a failed invariant
            ok, detail = False, f"raised {type(exc).__name__}: {exc}"
        results.append(CheckResult(name, ok, detail))
    return results
