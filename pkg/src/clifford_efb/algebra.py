"""Core algebra of Cl(m,m) in the extended Fock basis (EFB).

A basis element is a product psi_1 psi_2 ... psi_m with each per-pair factor
psi_i drawn from {q_i p_i, p_i q_i, q_i, p_i}, where p_i, q_i is the Witt
(null) basis of the i-th generator pair.  Each factor is encoded by two bits:

* ``h`` bit -- the eigenvalue of the commutator [q_i, p_i] acting from the
  left (0 means +1, 1 means -1); it names the first null vector of the factor.
* ``g`` bit -- the parity of the factor under the grade automorphism
  gamma -> -gamma (0 = even, 1 = odd).

The bit pair identifies the factor: (0,0)=q_i p_i, (1,0)=p_i q_i,
(0,1)=q_i, (1,1)=p_i.  Whole-element signatures pack the per-pair bits into
an int, pair 1 in the most significant position; the Hadamard (entrywise)
product of two signatures is then plain XOR.

The payoff of this encoding is the product rule: Psi * Phi is nonzero if and
only if ``h(Psi) XOR g(Psi) == h(Phi)``, in which case the result has
``h = h(Psi)`` and ``g = g(Psi) XOR g(Phi)`` and a sign that only counts the
odd/odd factor crossings of the interleaving.  Of the 2^{4m} ordered pairs of
basis elements only 2^{3m} have nonzero product, which is what makes the
sparse product below fast: the right factor is indexed by h-signature and
only matching buckets are ever visited.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, NamedTuple, Optional

from .config import AlgebraConfig, check_same_config

FACTOR_QP = (0, 0)  # q_i p_i
FACTOR_PQ = (1, 0)  # p_i q_i
FACTOR_Q = (0, 1)   # q_i
FACTOR_P = (1, 1)   # p_i

_FACTOR_NAMES = {FACTOR_QP: "q{i}p{i}", FACTOR_PQ: "p{i}q{i}", FACTOR_Q: "q{i}", FACTOR_P: "p{i}"}

# reorder-sign lookup tables get large past this point; fall back to bit loops
_SIGN_TABLE_MAX_M = 8


def signature_to_string(bits: int, m: int) -> str:
    """Render a signature mask as '+-...' with pair 1 first (bit set = '-')."""
    return "".join("-" if (bits >> (m - i)) & 1 else "+" for i in range(1, m + 1))


def signature_from_string(text: str) -> int:
    bits = 0
    for ch in text:
        bits <<= 1
        if ch == "-":
            bits |= 1
        elif ch != "+":
            raise ValueError(f"signature strings use only '+' and '-', got {text!r}")
    return bits


def sign_product(bits: int) -> int:
    """Product of the +-1 entries of a signature mask."""
    return -1 if bits.bit_count() & 1 else 1


def factor_name(h_bit: int, g_bit: int, i: int) -> str:
    return _FACTOR_NAMES[(h_bit, g_bit)].format(i=i)


def factor_product(psi: tuple[int, int], phi: tuple[int, int]) -> Optional[tuple[int, int]]:
    """Single-pair product psi_i * phi_i; None for the eight vanishing cells.

    Nonzero iff the product of psi's h and g entries equals phi's h entry,
    i.e. bitwise ``h ^ g == h'``; then the result keeps psi's h and XORs
    the parities.
    """
    h_a, g_a = psi
    h_b, g_b = phi
    if h_a ^ g_a != h_b:
        return None
    return (h_a, g_a ^ g_b)


def reorder_parity(g_a: int, g_b: int) -> int:
    """Parity of odd/odd crossings when interleaving two factor sequences.

    Collapsing psi_1..psi_m phi_1..phi_m into psi_1 phi_1 ... psi_m phi_m
    moves phi_j leftwards past every psi_i with i > j; factors of distinct
    pairs commute up to the product of their parities, so each crossing of
    two odd factors contributes a -1.
    """
    count = 0
    a = g_a
    while a:
        t = (a & -a).bit_length() - 1
        count += (g_b >> (t + 1)).bit_count()
        a &= a - 1
    return count & 1


def reorder_sign(g_a: int, g_b: int) -> int:
    return -1 if reorder_parity(g_a, g_b) else 1


def _build_sign_table(m: int) -> list[int]:
    size = 1 << m
    table = [1] * (size * size)
    for ga in range(size):
        row = ga << m
        for gb in range(size):
            if reorder_parity(ga, gb):
                table[row | gb] = -1
    return table


_sign_tables: dict[int, list[int]] = {}


def sign_table(m: int) -> list[int]:
    """Cached flat table of reorder signs indexed by ``(g_a << m) | g_b``."""
    table = _sign_tables.get(m)
    if table is None:
        table = _build_sign_table(m)
        _sign_tables[m] = table
    return table


@dataclass(frozen=True)
class EfbElement:
    """One basis element: packed h/g signature masks plus a coefficient."""

    h: int
    g: int
    coeff: object = 1

    def helicity(self) -> int:
        """Eigenvalue of the volume element acting from the left."""
        return sign_product(self.h)

    def parity(self) -> int:
        """Global parity under the grade automorphism."""
        return sign_product(self.g)

    def factors(self, m: int) -> list[tuple[int, int]]:
        """Per-pair (h_bit, g_bit) codes, pair 1 first."""
        return [((self.h >> (m - i)) & 1, (self.g >> (m - i)) & 1) for i in range(1, m + 1)]


def efb_product(a: EfbElement, b: EfbElement) -> Optional[EfbElement]:
    """Product of two basis elements; None when the signature match fails."""
    if a.h ^ a.g != b.h:
        return None
    coeff = a.coeff * b.coeff
    if reorder_parity(a.g, b.g):
        coeff = -coeff
    return EfbElement(a.h, a.g ^ b.g, coeff)


class PairCounter:
    """Counts candidate term pairs visited by a product evaluation."""

    __slots__ = ("pairs",)

    def __init__(self):
        self.pairs = 0


class Multivector:
    """Sparse element of Cl(m,m): map from (h, g) signature pairs to scalars.

    Immutable by convention: operations always return new values and never
    store zero coefficients.
    """

    __slots__ = ("config", "terms")

    def __init__(self, config: AlgebraConfig, terms=None):
        clean = {}
        if terms:
            for (h, g), coeff in (terms.items() if isinstance(terms, dict) else terms):
                if h >> config.m or g >> config.m or h < 0 or g < 0:
                    raise ValueError(f"signature masks ({h}, {g}) out of range for m={config.m}")
                coeff = config.scalar(coeff)
                if coeff != 0:
                    key = (h, g)
                    prev = clean.get(key)
                    if prev is None:
                        clean[key] = coeff
                    else:
                        total = prev + coeff
                        if total == 0:
                            del clean[key]
                        else:
                            clean[key] = total
        object.__setattr__(self, "config", config)
        object.__setattr__(self, "terms", clean)

    @classmethod
    def _raw(cls, config: AlgebraConfig, terms: dict) -> "Multivector":
        """Internal fast path: terms already canonical (no zeros, valid masks)."""
        mv = object.__new__(cls)
        object.__setattr__(mv, "config", config)
        object.__setattr__(mv, "terms", terms)
        return mv

    def __setattr__(self, name, value):
        raise AttributeError("Multivector is immutable")

    @classmethod
    def zero(cls, config: AlgebraConfig) -> "Multivector":
        return cls._raw(config, {})

    @classmethod
    def from_element(cls, config: AlgebraConfig, element: EfbElement) -> "Multivector":
        return cls(config, {(element.h, element.g): element.coeff})

    def is_zero(self) -> bool:
        return not self.terms

    def elements(self) -> Iterator[EfbElement]:
        for (h, g), coeff in self.terms.items():
            yield EfbElement(h, g, coeff)

    def __add__(self, other: "Multivector") -> "Multivector":
        if not isinstance(other, Multivector):
            return NotImplemented
        check_same_config(self.config, other.config)
        terms = dict(self.terms)
        for key, coeff in other.terms.items():
            total = terms.get(key, 0) + coeff
            if total == 0:
                terms.pop(key, None)
            else:
                terms[key] = total
        return Multivector._raw(self.config, terms)

    def __sub__(self, other: "Multivector") -> "Multivector":
        if not isinstance(other, Multivector):
            return NotImplemented
        return self + (-other)

    def __neg__(self) -> "Multivector":
        return Multivector._raw(self.config, {k: -v for k, v in self.terms.items()})

    def scale(self, scalar) -> "Multivector":
        scalar = self.config.scalar(scalar)
        if scalar == 0:
            return Multivector.zero(self.config)
        return Multivector._raw(self.config, {k: v * scalar for k, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, Multivector):
            return mv_product(self, other)
        return self.scale(other)

    def __rmul__(self, scalar):
        return self.scale(scalar)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Multivector):
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
        m = self.config.m
        parts = [
            f"{coeff!r}*(h={signature_to_string(h, m)},g={signature_to_string(g, m)})"
            for (h, g), coeff in sorted(self.terms.items())
        ]
        return f"Multivector(m={m}, {' + '.join(parts) or '0'})"


def identity_multivector(config: AlgebraConfig) -> Multivector:
    """The unit 1 = prod_i (q_i p_i + p_i q_i): all 2^m even terms, coeff +1."""
    one = config.scalar(1)
    return Multivector._raw(config, {(h, 0): one for h in range(1 << config.m)})


def volume_element(config: AlgebraConfig) -> Multivector:
    """gamma_1 gamma_2 ... gamma_2m = prod_i (q_i p_i - p_i q_i)."""
    one = config.scalar(1)
    return Multivector._raw(
        config,
        {(h, 0): (-one if h.bit_count() & 1 else one) for h in range(1 << config.m)},
    )


def mv_product(a: Multivector, b: Multivector, counter: PairCounter | None = None) -> Multivector:
    """Signature-indexed Clifford product.

    The right operand's terms are bucketed by h-signature; a term of ``a``
    can only hit the bucket keyed by ``h_a ^ g_a``, so at most 2^{3m} of the
    2^{4m} conceivable term pairs are visited even on dense inputs.
    """
    check_same_config(a.config, b.config)
    m = a.config.m
    buckets: dict[int, list] = {}
    for (h, g), coeff in b.terms.items():
        buckets.setdefault(h, []).append((g, coeff))
    acc: dict[tuple[int, int], object] = {}
    get = acc.get
    if m <= _SIGN_TABLE_MAX_M:
        table = sign_table(m)
        for (ha, ga), ca in a.terms.items():
            bucket = buckets.get(ha ^ ga)
            if not bucket:
                continue
            if counter is not None:
                counter.pairs += len(bucket)
            row = ga << m
            for gb, cb in bucket:
                value = ca * cb
                if table[row | gb] < 0:
                    value = -value
                key = (ha, ga ^ gb)
                acc[key] = get(key, 0) + value
    else:
        for (ha, ga), ca in a.terms.items():
            bucket = buckets.get(ha ^ ga)
            if not bucket:
                continue
            if counter is not None:
                counter.pairs += len(bucket)
            for gb, cb in bucket:
                value = ca * cb
                if reorder_parity(ga, gb):
                    value = -value
                key = (ha, ga ^ gb)
                acc[key] = get(key, 0) + value
    return Multivector._raw(a.config, {k: v for k, v in acc.items() if v != 0})


class GammaEigen(NamedTuple):
    right: Optional[int]
    left: Optional[int]


def gamma_eigen(a: Multivector) -> GammaEigen:
    """Eigenvalues of the volume element acting on ``a`` from left and right.

    ``right`` is s when volume * a == s * a (the Weyl condition), ``left``
    when a * volume == s * a; None when ``a`` is not an eigenvector.  For a
    single basis element right is the product of its h entries and left the
    product of its h*g entries.
    """
    if a.is_zero():
        raise ValueError("gamma_eigen of the zero multivector is undefined")
    volume = volume_element(a.config)
    right = None
    left = None
    from_left = mv_product(volume, a)
    if from_left == a:
        right = 1
    elif from_left == -a:
        right = -1
    from_right = mv_product(a, volume)
    if from_right == a:
        left = 1
    elif from_right == -a:
        left = -1
    return GammaEigen(right, left)
