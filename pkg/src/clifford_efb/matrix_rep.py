"""The isomorphism between Cl(m,m) in EFB coordinates and 2^m x 2^m matrices.

Every EFB element owns exactly one matrix cell: the row is its h-signature,
the column its h*g (Hadamard) signature, both read as big-endian masks with
pair 1 selecting the top/left half.  The cell layout is built by a twisted
tensor recursion: the m=1 seed is

    [[q1 p1, q1], [p1, p1 q1]]

and each further pair wraps the previous layout in 2x2 blocks whose
off-diagonal blocks pick up the diagonal volume-element signs of the inner
layout.  Placing coefficients into cells (times the cell sign) turns the
Clifford product into ordinary matrix multiplication.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

from .algebra import EfbElement, Multivector, factor_name, mv_product
from .config import AlgebraConfig, format_scalar

# Dense 2^m x 2^m storage: refuse silly sizes unless the caller insists.
DENSE_MAX_M = 8


@lru_cache(maxsize=None)
def _cell_signs(m: int) -> tuple[tuple[int, ...], ...]:
    if m == 1:
        return ((1, 1), (1, 1))
    inner = _cell_signs(m - 1)
    half = 1 << (m - 1)
    rows = []
    for r in range(half):
        flip = -1 if r.bit_count() & 1 else 1
        top = inner[r] + tuple(flip * s for s in inner[r])
        rows.append(top)
    for r in range(half):
        flip = -1 if r.bit_count() & 1 else 1
        bottom = tuple(flip * s for s in inner[r]) + inner[r]
        rows.append(bottom)
    return tuple(rows)


@dataclass(frozen=True)
class EfbMatrixLayout:
    """Cell assignment for the matrix picture of Cl(m,m)."""

    m: int

    @property
    def size(self) -> int:
        return 1 << self.m

    def row_h(self, row: int) -> int:
        """h-signature mask shared by every element in ``row``."""
        self._check(row)
        return row

    def col_hg(self, col: int) -> int:
        """h*g-signature mask shared by every element in ``col``."""
        self._check(col)
        return col

    def cell_sign(self, row: int, col: int) -> int:
        self._check(row)
        self._check(col)
        return _cell_signs(self.m)[row][col]

    def cell(self, row: int, col: int) -> EfbElement:
        """The basis element living at (row, col), coefficient +-1."""
        return EfbElement(row, row ^ col, self.cell_sign(row, col))

    def position(self, h: int, g: int) -> tuple[int, int]:
        """Inverse map: the unique cell of the element with signatures (h, g)."""
        return h, h ^ g

    def _check(self, index: int) -> None:
        if not 0 <= index < self.size:
            raise IndexError(f"index {index} out of range for a {self.size}x{self.size} layout")


def layout(config: AlgebraConfig | int) -> EfbMatrixLayout:
    m = config if isinstance(config, int) else config.m
    return EfbMatrixLayout(m)


class RepMatrix:
    """Dense 2^m x 2^m matrix over the config's scalars."""

    __slots__ = ("config", "entries")

    def __init__(self, config: AlgebraConfig, entries):
        size = 1 << config.m
        entries = [list(row) for row in entries]
        if len(entries) != size or any(len(row) != size for row in entries):
            raise ValueError(f"expected a {size}x{size} matrix")
        self.config = config
        self.entries = [[config.scalar(x) for x in row] for row in entries]

    @classmethod
    def zeros(cls, config: AlgebraConfig) -> "RepMatrix":
        size = 1 << config.m
        zero = config.scalar(0)
        mat = object.__new__(cls)
        mat.config = config
        mat.entries = [[zero] * size for _ in range(size)]
        return mat

    @classmethod
    def identity(cls, config: AlgebraConfig) -> "RepMatrix":
        mat = cls.zeros(config)
        one = config.scalar(1)
        for i in range(1 << config.m):
            mat.entries[i][i] = one
        return mat

    def matmul(self, other: "RepMatrix") -> "RepMatrix":
        """Plain cubic matrix product (exact in rational mode)."""
        if self.config != other.config:
            raise ValueError("config mismatch")
        size = 1 << self.config.m
        out = RepMatrix.zeros(self.config)
        for i in range(size):
            row = self.entries[i]
            out_row = out.entries[i]
            for k in range(size):
                a = row[k]
                if a == 0:
                    continue
                b_row = other.entries[k]
                for j in range(size):
                    if b_row[j] != 0:
                        out_row[j] = out_row[j] + a * b_row[j]
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, RepMatrix):
            return NotImplemented
        if self.config != other.config:
            return False
        size = 1 << self.config.m
        return all(
            self.config.scalars_equal(self.entries[i][j], other.entries[i][j])
            for i in range(size)
            for j in range(size)
        )

    __hash__ = None

    def to_strings(self) -> list[list[str]]:
        """Row-major scalar strings for the JSON export."""
        return [[format_scalar(x) for x in row] for row in self.entries]

    def __repr__(self) -> str:
        return f"RepMatrix(m={self.config.m}, {self.entries!r})"


def to_matrix(a: Multivector, allow_large: bool = False) -> RepMatrix:
    """Place every term's coefficient (times the cell sign) into its cell."""
    m = a.config.m
    if m > DENSE_MAX_M and not allow_large:
        raise ValueError(
            f"dense matrices for m={m} > {DENSE_MAX_M} need allow_large=True"
        )
    signs = _cell_signs(m)
    out = RepMatrix.zeros(a.config)
    for (h, g), coeff in a.terms.items():
        col = h ^ g
        out.entries[h][col] = coeff if signs[h][col] > 0 else -coeff
    return out


def from_matrix(mat: RepMatrix) -> Multivector:
    """Inverse of :func:`to_matrix`: divide out the cell signs."""
    m = mat.config.m
    signs = _cell_signs(m)
    terms = {}
    for row in range(1 << m):
        sign_row = signs[row]
        for col, value in enumerate(mat.entries[row]):
            if value != 0:
                terms[(row, row ^ col)] = value if sign_row[col] > 0 else -value
    return Multivector(mat.config, terms)


def gamma_matrix(config: AlgebraConfig) -> RepMatrix:
    """Matrix of the volume element: diagonal +-1 per row helicity."""
    out = RepMatrix.zeros(config)
    one = config.scalar(1)
    for r in range(1 << config.m):
        out.entries[r][r] = -one if r.bit_count() & 1 else one
    return out


@dataclass
class IdealCheckResult:
    ok: bool
    witness: Optional[dict] = None

    def __bool__(self) -> bool:
        return self.ok


def _random_multivector(config: AlgebraConfig, rng: random.Random, max_terms: int) -> Multivector:
    n = 1 << config.m
    count = rng.randint(1, max_terms)
    terms = {}
    for _ in range(count):
        h = rng.randrange(n)
        g = rng.randrange(n)
        num = rng.randint(-9, 9) or 1
        den = rng.randint(1, 9)
        terms[(h, g)] = terms.get((h, g), 0) + config.scalar(num) / den
    return Multivector(config, terms)


def column_ideal_check(
    config: AlgebraConfig, col: int, trials: int = 50, rng: random.Random | None = None
) -> IdealCheckResult:
    """Left-multiply each basis element of a column by random multivectors.

    The column span is exactly the set of multivectors all of whose terms
    share the column's h*g-signature, so membership is a per-term check.
    Returns a witness (multiplier, basis element, escaping term) on failure.
    """
    size = 1 << config.m
    if not 0 <= col < size:
        raise ValueError(f"column {col} out of range 0..{size - 1}")
    rng = rng or random.Random(0)
    lay = layout(config)
    hg = lay.col_hg(col)
    for _ in range(trials):
        omega = _random_multivector(config, rng, max_terms=size)
        for row in range(size):
            phi = Multivector.from_element(config, lay.cell(row, col))
            product = mv_product(omega, phi)
            for (h, g) in product.terms:
                if h ^ g != hg:
                    return IdealCheckResult(
                        False,
                        {
                            "column": col,
                            "multiplier": omega,
                            "basis_element": phi,
                            "escaped_term": (h, g),
                        },
                    )
    return IdealCheckResult(True)


def row_ideal_check(
    config: AlgebraConfig, row: int, trials: int = 50, rng: random.Random | None = None
) -> IdealCheckResult:
    """Same test transposed: rows are not left ideals in general."""
    size = 1 << config.m
    if not 0 <= row < size:
        raise ValueError(f"row {row} out of range 0..{size - 1}")
    rng = rng or random.Random(0)
    lay = layout(config)
    h_row = lay.row_h(row)
    for _ in range(trials):
        omega = _random_multivector(config, rng, max_terms=size)
        for col in range(size):
            phi = Multivector.from_element(config, lay.cell(row, col))
            product = mv_product(omega, phi)
            for (h, g) in product.terms:
                if h != h_row:
                    return IdealCheckResult(
                        False,
                        {
                            "row": row,
                            "multiplier": omega,
                            "basis_element": phi,
                            "escaped_term": (h, g),
                        },
                    )
    return IdealCheckResult(True)


def describe_cell(m: int, row: int, col: int) -> str:
    """Human-readable cell content, e.g. '-q1 p2q2' (testing/debug aid)."""
    element = layout(m).cell(row, col)
    names = [factor_name(hb, gb, i + 1) for i, (hb, gb) in enumerate(element.factors(m))]
    body = " ".join(names)
    return f"-{body}" if element.coeff < 0 else body
