"""Standard gamma-blade representation and exact conversion to/from EFB.

Blades are bitmasks over the 2m generators (bit k-1 set means gamma_k is a
factor, factors in ascending index order; any reordering sign is absorbed
into the coefficient).  This module is deliberately independent of the EFB
product: it is the oracle the fast path is checked against.

Generator conventions: gamma_{2i-1}^2 = +1, gamma_{2i}^2 = -1, and the Witt
basis of pair i is p_i = (gamma_{2i-1} + gamma_{2i})/2,
q_i = (gamma_{2i-1} - gamma_{2i})/2.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product as iter_product
from typing import NamedTuple

from .algebra import FACTOR_P, FACTOR_PQ, FACTOR_Q, FACTOR_QP, Multivector, PairCounter
from .config import AlgebraConfig, check_same_config


class GammaBlade(NamedTuple):
    """Canonical blade: generator mask (ascending factors) and coefficient."""

    mask: int
    coeff: object = 1


def neg_square_mask(m: int) -> int:
    """Mask of generators squaring to -1 (the even 1-based indices)."""
    mask = 0
    for i in range(m):
        mask |= 1 << (2 * i + 1)
    return mask


def blade_swap_parity(mask_a: int, mask_b: int) -> int:
    """Parity of transpositions merging two ascending generator lists."""
    count = 0
    a = mask_a >> 1
    while a:
        count += (a & mask_b).bit_count()
        a >>= 1
    return count & 1


def blade_product_mask(mask_a: int, mask_b: int, m: int) -> tuple[int, int]:
    """Product of two canonical blades: (sign, result mask).

    Sign combines the anticommutation transpositions with the squares of
    repeated generators.
    """
    sign = -1 if blade_swap_parity(mask_a, mask_b) else 1
    common = mask_a & mask_b
    if (common & neg_square_mask(m)).bit_count() & 1:
        sign = -sign
    return sign, mask_a ^ mask_b


class GammaMultivector:
    """Sparse element in the gamma-blade basis: map from blade mask to scalar."""

    __slots__ = ("config", "terms")

    def __init__(self, config: AlgebraConfig, terms=None):
        limit = 1 << (2 * config.m)
        clean = {}
        if terms:
            for mask, coeff in (terms.items() if isinstance(terms, dict) else terms):
                if not 0 <= mask < limit:
                    raise ValueError(f"blade mask {mask} out of range for m={config.m}")
                coeff = config.scalar(coeff)
                if coeff != 0:
                    total = clean.get(mask, 0) + coeff
                    if total == 0:
                        clean.pop(mask, None)
                    else:
                        clean[mask] = total
        object.__setattr__(self, "config", config)
        object.__setattr__(self, "terms", clean)

    @classmethod
    def _raw(cls, config: AlgebraConfig, terms: dict) -> "GammaMultivector":
        gmv = object.__new__(cls)
        object.__setattr__(gmv, "config", config)
        object.__setattr__(gmv, "terms", terms)
        return gmv

    def __setattr__(self, name, value):
        raise AttributeError("GammaMultivector is immutable")

    @classmethod
    def zero(cls, config: AlgebraConfig) -> "GammaMultivector":
        return cls._raw(config, {})

    @classmethod
    def generator(cls, config: AlgebraConfig, k: int) -> "GammaMultivector":
        """The single generator gamma_k, 1 <= k <= 2m."""
        if not 1 <= k <= 2 * config.m:
            raise ValueError(f"generator index {k} out of range 1..{2 * config.m}")
        return cls(config, {1 << (k - 1): 1})

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "GammaMultivector") -> "GammaMultivector":
        if not isinstance(other, GammaMultivector):
            return NotImplemented
        check_same_config(self.config, other.config)
        terms = dict(self.terms)
        for mask, coeff in other.terms.items():
            total = terms.get(mask, 0) + coeff
            if total == 0:
                terms.pop(mask, None)
            else:
                terms[mask] = total
        return GammaMultivector._raw(self.config, terms)

    def __neg__(self) -> "GammaMultivector":
        return GammaMultivector._raw(self.config, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other: "GammaMultivector") -> "GammaMultivector":
        if not isinstance(other, GammaMultivector):
            return NotImplemented
        return self + (-other)

    def scale(self, scalar) -> "GammaMultivector":
        scalar = self.config.scalar(scalar)
        if scalar == 0:
            return GammaMultivector.zero(self.config)
        return GammaMultivector._raw(self.config, {k: v * scalar for k, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, GammaMultivector):
            return gamma_product(self, other)
        return self.scale(other)

    def __rmul__(self, scalar):
        return self.scale(scalar)

    def __eq__(self, other) -> bool:
        if not isinstance(other, GammaMultivector):
            return NotImplemented
        if self.config != other.config:
            return False
        if self.config.is_exact:
            return self.terms == other.terms
        keys = self.terms.keys() | other.terms.keys()
        return all(
            self.config.scalars_equal(self.terms.get(k, 0.0), other.terms.get(k, 0.0))
            for k in keys
        )

    __hash__ = None

    def __repr__(self) -> str:
        parts = []
        for mask in sorted(self.terms):
            gens = "".join(f"g{k + 1}" for k in range(2 * self.config.m) if (mask >> k) & 1)
            parts.append(f"{self.terms[mask]!r}*{gens or '1'}")
        return f"GammaMultivector(m={self.config.m}, {' + '.join(parts) or '0'})"


def gamma_unit(config: AlgebraConfig) -> GammaMultivector:
    return GammaMultivector(config, {0: 1})


def gamma_product(
    a: GammaMultivector, b: GammaMultivector, counter: PairCounter | None = None
) -> GammaMultivector:
    """Blade-by-blade product; visits every ordered pair of stored terms."""
    check_same_config(a.config, b.config)
    m = a.config.m
    neg_mask = neg_square_mask(m)
    acc: dict[int, object] = {}
    get = acc.get
    b_terms = list(b.terms.items())
    for mask_a, ca in a.terms.items():
        if counter is not None:
            counter.pairs += len(b_terms)
        for mask_b, cb in b_terms:
            value = ca * cb
            if blade_swap_parity(mask_a, mask_b):
                value = -value
            if ((mask_a & mask_b) & neg_mask).bit_count() & 1:
                value = -value
            key = mask_a ^ mask_b
            acc[key] = get(key, 0) + value
    return GammaMultivector._raw(a.config, {k: v for k, v in acc.items() if v != 0})


# Per-pair substitution tables.  Keys describe which of the pair's two
# generators a blade contains; values list (factor_code, sign) choices whose
# sum replaces them, e.g. gamma_{2l-1} = p_l + q_l and an absent pair
# contributes the unit {q_l, p_l} = q_l p_l + p_l q_l.
_PAIR_TO_EFB = {
    (0, 0): ((FACTOR_QP, 1), (FACTOR_PQ, 1)),
    (1, 0): ((FACTOR_P, 1), (FACTOR_Q, 1)),       # gamma_{2l-1} = p + q
    (0, 1): ((FACTOR_P, 1), (FACTOR_Q, -1)),      # gamma_{2l}   = p - q
    (1, 1): ((FACTOR_QP, 1), (FACTOR_PQ, -1)),    # gamma_{2l-1} gamma_{2l} = [q, p]
}

# Inverse direction: each factor as half-sum of blades over the pair's two
# generators, encoded as (local blade bits, numerator sign); every choice
# carries a global 1/2 per pair.
_EFB_TO_PAIR = {
    FACTOR_QP: (((0, 0), 1), ((1, 1), 1)),    # q p = (1 + gamma gamma')/2
    FACTOR_PQ: (((0, 0), 1), ((1, 1), -1)),   # p q = (1 - gamma gamma')/2
    FACTOR_Q: (((1, 0), 1), ((0, 1), -1)),    # q = (gamma - gamma')/2
    FACTOR_P: (((1, 0), 1), ((0, 1), 1)),     # p = (gamma + gamma')/2
}


def gamma_to_efb(a: GammaMultivector) -> Multivector:
    """Expand every blade into its 2^m EFB terms.

    Ascending generator order is already grouped by pair, so the expansion
    is a straight per-pair substitution with no extra reordering sign.
    """
    config = a.config
    m = config.m
    acc: dict[tuple[int, int], object] = {}
    get = acc.get
    for mask, coeff in a.terms.items():
        choices = []
        for i in range(1, m + 1):
            lo = (mask >> (2 * i - 2)) & 1
            hi = (mask >> (2 * i - 1)) & 1
            choices.append(_PAIR_TO_EFB[(lo, hi)])
        for combo in iter_product(*choices):
            h = 0
            g = 0
            value = coeff
            for (h_bit, g_bit), sign in combo:
                h = (h << 1) | h_bit
                g = (g << 1) | g_bit
                if sign < 0:
                    value = -value
            key = (h, g)
            acc[key] = get(key, 0) + value
    return Multivector._raw(config, {k: v for k, v in acc.items() if v != 0})


def efb_to_gamma(a: Multivector) -> GammaMultivector:
    """Expand every EFB element into its 2^m blades (exact inverse map)."""
    config = a.config
    m = config.m
    half = Fraction(1, 2) if config.is_exact else 0.5
    scale = half ** m
    acc: dict[int, object] = {}
    get = acc.get
    for (h, g), coeff in a.terms.items():
        base = coeff * scale
        choices = []
        for i in range(1, m + 1):
            code = ((h >> (m - i)) & 1, (g >> (m - i)) & 1)
            choices.append(tuple(
                ((lo << (2 * i - 2)) | (hi << (2 * i - 1)), sign)
                for (lo, hi), sign in _EFB_TO_PAIR[code]
            ))
        for combo in iter_product(*choices):
            mask = 0
            value = base
            for bits, sign in combo:
                mask |= bits
                if sign < 0:
                    value = -value
            acc[mask] = get(mask, 0) + value
    return GammaMultivector._raw(config, {k: v for k, v in acc.items() if v != 0})


def blade_product(config: AlgebraConfig, a: GammaBlade, b: GammaBlade) -> GammaBlade:
    """Product of two single blades, canonicalized."""
    sign, mask = blade_product_mask(a.mask, b.mask, config.m)
    return GammaBlade(mask, config.scalar(a.coeff) * config.scalar(b.coeff) * sign)


def gamma_volume(config: AlgebraConfig) -> GammaMultivector:
    """The full blade gamma_1 ... gamma_2m."""
    return GammaMultivector(config, {(1 << (2 * config.m)) - 1: 1})


def witt_p(config: AlgebraConfig, i: int) -> GammaMultivector:
    """p_i = (gamma_{2i-1} + gamma_{2i})/2 in the blade basis."""
    half = Fraction(1, 2) if config.is_exact else 0.5
    return GammaMultivector(config, {1 << (2 * i - 2): half, 1 << (2 * i - 1): half})


def witt_q(config: AlgebraConfig, i: int) -> GammaMultivector:
    """q_i = (gamma_{2i-1} - gamma_{2i})/2 in the blade basis."""
    half = Fraction(1, 2) if config.is_exact else 0.5
    return GammaMultivector(config, {1 << (2 * i - 2): half, 1 << (2 * i - 1): -half})
