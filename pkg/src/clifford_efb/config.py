"""Algebra configuration and scalar handling.

The engine works over Cl(m,m): 2m generators, neutral signature
(odd-index generators square to +1, even-index to -1).  Every value in the
package carries an :class:`AlgebraConfig` fixing ``m`` and the scalar mode.

Scalars are exact rationals (:class:`fractions.Fraction`) by default so that
all algebraic identities can be checked with zero tolerance; float64 mode
exists for benchmarking only.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

MAX_M = 16

FLOAT_EQ_TOL = 1e-9


class ScalarMode(enum.Enum):
    EXACT_RATIONAL = "exact"
    FLOAT64 = "float"


@dataclass(frozen=True)
class AlgebraConfig:
    """Number of Witt pairs ``m`` (vector space dimension 2m) plus scalar mode."""

    m: int
    scalar_mode: ScalarMode = ScalarMode.EXACT_RATIONAL

    def __post_init__(self):
        if not isinstance(self.m, int) or not 1 <= self.m <= MAX_M:
            raise ValueError(f"m must be an integer in 1..{MAX_M}, got {self.m!r}")

    @property
    def is_exact(self) -> bool:
        return self.scalar_mode is ScalarMode.EXACT_RATIONAL

    def scalar(self, value):
        """Coerce ``value`` into this config's scalar type."""
        if self.is_exact:
            if isinstance(value, float):
                raise TypeError("float scalar in exact-rational mode; pass int, Fraction or string")
            return Fraction(value)
        return float(value)

    def scalars_equal(self, x, y) -> bool:
        if self.is_exact:
            return x == y
        return abs(x - y) <= FLOAT_EQ_TOL * max(1.0, abs(x), abs(y))


def format_scalar(value) -> str:
    """Render a scalar the way the textual grammars expect (``a/b`` or decimal)."""
    if isinstance(value, Fraction):
        return str(value)
    return repr(value)


def check_same_config(a: AlgebraConfig, b: AlgebraConfig) -> None:
    if a != b:
        raise ValueError(f"algebra config mismatch: {a} vs {b}")
