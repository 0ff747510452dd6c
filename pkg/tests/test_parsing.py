"""Grammar round-trips and parse error reporting."""

import random
from fractions import Fraction

import pytest
from conftest import random_exact_multivector

from clifford_efb import (
    AlgebraConfig,
    Multivector,
    ScalarMode,
    Spinor,
    SpinorSpace,
    WittVector,
)
from clifford_efb.parsing import (
    ExpressionError,
    format_efb,
    format_gamma,
    format_spinor,
    format_witt_vector,
    null_plane_json,
    parse_efb,
    parse_gamma,
    parse_spinor,
    witt_vector_json,
)
from clifford_efb.gamma import GammaMultivector
from clifford_efb.spinors import NullPlane
from test_gamma import random_gamma_multivector


def test_parse_efb_example():
    config = AlgebraConfig(2)
    mv = parse_efb("3/2 * q1p1 p2 - q1 q2", config)
    assert mv.terms == {
        (0b01, 0b01): Fraction(3, 2),  # q1p1 p2
        (0b00, 0b11): Fraction(-1),    # q1 q2
    }


def test_parse_efb_single_term():
    config = AlgebraConfig(2)
    mv = parse_efb("q1p1 p2q2", config)
    assert mv.terms == {(0b01, 0b00): 1}
    assert parse_efb("0", config).is_zero()
    assert parse_efb("-q1 q2", config).terms == {(0, 0b11): -1}
    assert parse_efb("1.5 * q1 q2", config).terms == {(0, 0b11): Fraction(3, 2)}


def test_parse_efb_accumulates_duplicate_terms():
    config = AlgebraConfig(1)
    assert parse_efb("q1 + q1", config).terms == {(0, 1): 2}
    assert parse_efb("q1 - q1", config).is_zero()


def test_parse_efb_errors():
    config = AlgebraConfig(2)
    cases = [
        "q1 q1p1",        # duplicate pair index
        "q1",             # missing pair 2
        "q2 q1",          # out of order
        "q1 q2 q3",       # hmm: index beyond m
        "q1 p3",          # index beyond m
        "3/2 q1 q2",      # missing '*'
        "q1 & q2",        # stray character
        "",               # empty
        "q1p2 q2",        # mismatched indices inside a factor
        "g1 g2",          # wrong basis
        "3/2",            # bare scalar is not a basis element
        "q1 q2 +",        # dangling separator
    ]
    for text in cases:
        with pytest.raises(ExpressionError):
            parse_efb(text, config)


def test_parse_error_position():
    config = AlgebraConfig(2)
    with pytest.raises(ExpressionError) as info:
        parse_efb("q1 q1p1", config)
    assert info.value.line == 1
    assert info.value.column == 4


def test_parse_gamma_example():
    config = AlgebraConfig(2)
    gmv = parse_gamma("2 * g1 g4 - 1/2 * g2", config)
    assert gmv.terms == {0b1001: 2, 0b0010: Fraction(-1, 2)}
    assert parse_gamma("1", config).terms == {0: 1}
    assert parse_gamma("0", config).is_zero()


def test_parse_gamma_errors():
    config = AlgebraConfig(2)
    for text in ("g5", "g2 g1", "g1 g1", "q1p1 q2p2", "2 g1", "2 *", "- - g1"):
        with pytest.raises(ExpressionError):
            parse_gamma(text, config)


def test_format_parse_roundtrip_efb():
    rng = random.Random(43)
    for m in (1, 2, 3, 4):
        config = AlgebraConfig(m)
        for _ in range(20):
            mv = random_exact_multivector(config, rng)
            assert parse_efb(format_efb(mv), config) == mv
    assert format_efb(Multivector.zero(AlgebraConfig(2))) == "0"


def test_format_parse_roundtrip_gamma():
    rng = random.Random(47)
    for m in (1, 2, 3):
        config = AlgebraConfig(m)
        for _ in range(20):
            gmv = random_gamma_multivector(config, rng)
            assert parse_gamma(format_gamma(gmv), config) == gmv
    assert format_gamma(GammaMultivector.zero(AlgebraConfig(2))) == "0"


def test_format_is_deterministic_and_sorted():
    config = AlgebraConfig(2)
    mv = Multivector(config, {(0b11, 0b00): 1, (0b00, 0b11): -1})
    text = format_efb(mv)
    assert text == "-q1 q2 + p1q1 p2q2"
    assert format_efb(parse_efb(text, config)) == text


def test_parse_multidigit_pair_indices():
    config = AlgebraConfig(10)
    text = " ".join(f"q{i}p{i}" for i in range(1, 10)) + " q10"
    mv = parse_efb(text, config)
    assert mv.terms == {(0, 1): 1}  # only pair 10 is odd
    assert format_efb(mv) == text


def test_float_mode_parsing():
    config = AlgebraConfig(1, ScalarMode.FLOAT64)
    mv = parse_efb("0.5 * q1", config)
    assert mv.terms == {(0, 1): 0.5}
    assert parse_efb(format_efb(mv), config) == mv


def test_spinor_roundtrip_and_fallback():
    config = AlgebraConfig(2)
    space = SpinorSpace.standard_fock(config)
    s = Spinor(space, [Fraction(1), 0, Fraction(-3, 2), 0])
    text = format_spinor(s)
    assert text == "space=--; 1*++ - 3/2*-+"
    assert parse_spinor(text, config) == s
    # plain EFB expressions are accepted when they stay in one column
    assert parse_spinor("q1 q2", config) == Spinor.basis(space, 0)
    with pytest.raises(ExpressionError):
        parse_spinor("q1p1 q2p2 + q1 q2", config)  # spans two columns
    with pytest.raises(ExpressionError):
        parse_spinor("space=---; 1*+++", config)  # label length mismatch
    with pytest.raises(ExpressionError):
        parse_spinor("space=--; ++", config)  # missing coefficient
    zero = parse_spinor("space=--; 0", config)
    assert zero.is_zero() and zero.space == space


def test_spinor_negative_leading_term():
    config = AlgebraConfig(2)
    space = SpinorSpace.standard_fock(config)
    s = Spinor(space, [Fraction(-1), 0, 0, Fraction(2)])
    text = format_spinor(s)
    assert parse_spinor(text, config) == s


def test_witt_vector_rendering():
    config = AlgebraConfig(3)
    v = WittVector.q(config, 1) - WittVector.p(config, 2) - WittVector.p(config, 3)
    assert format_witt_vector(v) == "q1 - p2 - p3"
    assert witt_vector_json(v) == {"p": ["0", "-1", "-1"], "q": ["1", "0", "0"]}
    plane = NullPlane(config, [WittVector.q(config, 1), WittVector.q(config, 2)])
    assert null_plane_json(plane) == [
        {"p": ["0", "0", "0"], "q": ["1", "0", "0"]},
        {"p": ["0", "0", "0"], "q": ["0", "1", "0"]},
    ]
    assert format_witt_vector(WittVector.zero(config)) == "0"
    half = WittVector.p(config, 1).scale(Fraction(1, 2))
    assert format_witt_vector(half) == "1/2 p1"
