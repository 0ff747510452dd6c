"""Matrix isomorphism: layout recursion, golden display, ideals."""

import random
from fractions import Fraction

import pytest
from conftest import random_exact_multivector

from clifford_efb import (
    AlgebraConfig,
    Multivector,
    column_ideal_check,
    from_matrix,
    gamma_matrix,
    identity_multivector,
    layout,
    mv_product,
    row_ideal_check,
    to_matrix,
    volume_element,
)
from clifford_efb.matrix_rep import RepMatrix, describe_cell

GOLDEN_A1 = (
    ("q1p1", "q1"),
    ("p1", "p1q1"),
)

GOLDEN_A2 = (
    ("q1p1 q2p2", "q1p1 q2", "q1 q2p2", "q1 q2"),
    ("q1p1 p2", "q1p1 p2q2", "-q1 p2", "-q1 p2q2"),
    ("p1 q2p2", "p1 q2", "p1q1 q2p2", "p1q1 q2"),
    ("-p1 p2", "-p1 p2q2", "p1q1 p2", "p1q1 p2q2"),
)

BORDER_2 = ("++", "+-", "-+", "--")


def closed_form_sign(r: int, c: int, m: int) -> int:
    """Independent formula: count below-bits of r at every differing pair."""
    exponent = 0
    for t in range(m):
        if ((r ^ c) >> t) & 1:
            exponent += (r & ((1 << t) - 1)).bit_count()
    return -1 if exponent & 1 else 1


def test_layout_m1_golden():
    for r in range(2):
        for c in range(2):
            assert describe_cell(1, r, c) == GOLDEN_A1[r][c]


def test_layout_m2_golden_display():
    from clifford_efb import signature_to_string

    lay = layout(2)
    for r in range(4):
        for c in range(4):
            assert describe_cell(2, r, c) == GOLDEN_A2[r][c]
        assert signature_to_string(lay.row_h(r), 2) == BORDER_2[r]
        assert signature_to_string(lay.col_hg(r), 2) == BORDER_2[r]
    minus_cells = [(r, c) for r in range(4) for c in range(4) if lay.cell_sign(r, c) < 0]
    assert minus_cells == [(1, 2), (1, 3), (3, 0), (3, 1)]


def test_layout_signs_match_closed_form():
    for m in (1, 2, 3, 4, 5):
        lay = layout(m)
        size = 1 << m
        for r in range(size):
            for c in range(size):
                assert lay.cell_sign(r, c) == closed_form_sign(r, c, m)


def test_every_element_in_exactly_one_cell():
    for m in (1, 2, 3):
        lay = layout(m)
        size = 1 << m
        seen = set()
        for r in range(size):
            for c in range(size):
                element = lay.cell(r, c)
                assert element.h == r
                assert element.h ^ element.g == c
                seen.add((element.h, element.g))
                assert lay.position(element.h, element.g) == (r, c)
        assert len(seen) == size * size


def test_column_h_census():
    # each column contains every h-signature exactly once
    for m in (1, 2, 3):
        lay = layout(m)
        size = 1 << m
        for c in range(size):
            assert sorted(lay.cell(r, c).h for r in range(size)) == list(range(size))


def test_rightmost_column_is_standard_fock_basis():
    from clifford_efb import SpinorSpace

    for m in (1, 2, 3):
        config = AlgebraConfig(m)
        lay = layout(m)
        space = SpinorSpace.standard_fock(config)
        last = (1 << m) - 1
        assert lay.col_hg(last) == space.hg
        for r in range(1 << m):
            cell = lay.cell(r, last)
            expected = space.basis_element(r)
            assert (cell.h, cell.g) == (expected.h, expected.g)
            assert cell.coeff in (1, -1)


def test_to_matrix_basics():
    config = AlgebraConfig(2)
    assert to_matrix(identity_multivector(config)) == RepMatrix.identity(config)
    assert to_matrix(volume_element(config)) == gamma_matrix(config)


def test_gamma_matrix_values():
    config = AlgebraConfig(1)
    assert gamma_matrix(config).entries == [[1, 0], [0, -1]]
    config = AlgebraConfig(2)
    diag = [gamma_matrix(config).entries[i][i] for i in range(4)]
    assert diag == [1, -1, -1, 1]
    for m in (1, 2, 3):
        config = AlgebraConfig(m)
        gm = gamma_matrix(config)
        assert gm.matmul(gm) == RepMatrix.identity(config)


def test_isomorphism_multiplicative():
    rng = random.Random(61)
    for m in range(1, 5):
        config = AlgebraConfig(m)
        for _ in range(10):
            a = random_exact_multivector(config, rng)
            b = random_exact_multivector(config, rng)
            assert to_matrix(mv_product(a, b)) == to_matrix(a).matmul(to_matrix(b))


def test_isomorphism_linear_and_injective():
    rng = random.Random(67)
    config = AlgebraConfig(3)
    for _ in range(10):
        a = random_exact_multivector(config, rng)
        b = random_exact_multivector(config, rng)
        s = Fraction(rng.randint(-5, 5) or 1, rng.randint(1, 5))
        left = to_matrix(a + b.scale(s))
        right = to_matrix(a)
        expected = [
            [x + s * y for x, y in zip(rx, ry)]
            for rx, ry in zip(right.entries, to_matrix(b).entries)
        ]
        assert left.entries == expected
        if not a.is_zero():
            assert to_matrix(a) != RepMatrix.zeros(config)


def test_roundtrip_from_to():
    rng = random.Random(71)
    for m in range(1, 5):
        config = AlgebraConfig(m)
        assert from_matrix(RepMatrix.identity(config)) == identity_multivector(config)
        for _ in range(10):
            a = random_exact_multivector(config, rng)
            assert from_matrix(to_matrix(a)) == a


def test_top_right_cell_is_all_q():
    for m in (1, 2, 3, 4):
        config = AlgebraConfig(m)
        size = 1 << m
        mat = RepMatrix.zeros(config)
        mat.entries[0][size - 1] = Fraction(1)
        result = from_matrix(mat)
        # q_1 q_2 ... q_m: h all plus, g all minus, coefficient +1
        assert result.terms == {(0, size - 1): 1}


def test_column_ideal_checks_pass():
    for m in (1, 2, 3):
        config = AlgebraConfig(m)
        for col in range(1 << m):
            result = column_ideal_check(config, col, trials=10, rng=random.Random(5))
            assert result.ok, result.witness


def test_row_ideal_check_fails_with_witness():
    config = AlgebraConfig(1)
    failures = [
        row_ideal_check(config, row, trials=10, rng=random.Random(5))
        for row in range(2)
    ]
    assert any(not result.ok for result in failures)
    witness = next(result.witness for result in failures if not result.ok)
    assert "escaped_term" in witness


def test_index_errors():
    config = AlgebraConfig(2)
    with pytest.raises(ValueError):
        column_ideal_check(config, 4)
    with pytest.raises(ValueError):
        row_ideal_check(config, -1)
    with pytest.raises(IndexError):
        layout(2).cell(4, 0)


def test_dense_size_guard():
    config = AlgebraConfig(9)
    a = Multivector(config, {(0, 0): 1})
    with pytest.raises(ValueError):
        to_matrix(a)
    assert to_matrix(a, allow_large=True).entries[0][0] == 1


def test_rep_matrix_validation():
    config = AlgebraConfig(1)
    with pytest.raises(ValueError):
        RepMatrix(config, [[1, 0]])
    mat = RepMatrix(config, [[Fraction(1, 2), 0], [0, 1]])
    assert mat.to_strings() == [["1/2", "0"], ["0", "1"]]
