"""Spinor spaces, totally null planes and simplicity analysis.

A spinor space is a column of the matrix picture: the span of the 2^m basis
elements sharing one h*g-signature (a minimal left ideal).  A spinor is
stored as its 2^m column coordinates indexed by h-signature, so the Clifford
action of a vector is a signed permutation of coordinates rather than a
dense product.

Everything rank-related (annihilating planes, simplicity) is exact-rational
only: simplicity is a nullspace-dimension question and tolerance-based rank
decisions are not trustworthy.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .algebra import (
    EfbElement,
    Multivector,
    signature_to_string,
)
from .config import AlgebraConfig, check_same_config
from .linalg import nullspace, rank, rref


def _require_exact(config: AlgebraConfig, what: str) -> None:
    if not config.is_exact:
        raise ValueError(f"{what} requires exact-rational scalars")


@dataclass(frozen=True)
class WittVector:
    """Grade-1 vector in Witt coordinates: a over p_1..p_m, b over q_1..q_m."""

    config: AlgebraConfig
    a: tuple
    b: tuple

    def __post_init__(self):
        m = self.config.m
        if len(self.a) != m or len(self.b) != m:
            raise ValueError(f"expected {m} coefficients per null family")
        object.__setattr__(self, "a", tuple(self.config.scalar(x) for x in self.a))
        object.__setattr__(self, "b", tuple(self.config.scalar(x) for x in self.b))

    @classmethod
    def zero(cls, config: AlgebraConfig) -> "WittVector":
        return cls(config, (0,) * config.m, (0,) * config.m)

    @classmethod
    def p(cls, config: AlgebraConfig, i: int, coeff=1) -> "WittVector":
        a = [0] * config.m
        a[i - 1] = coeff
        return cls(config, tuple(a), (0,) * config.m)

    @classmethod
    def q(cls, config: AlgebraConfig, i: int, coeff=1) -> "WittVector":
        b = [0] * config.m
        b[i - 1] = coeff
        return cls(config, (0,) * config.m, tuple(b))

    def is_zero(self) -> bool:
        return all(x == 0 for x in self.a) and all(x == 0 for x in self.b)

    def __add__(self, other: "WittVector") -> "WittVector":
        check_same_config(self.config, other.config)
        return WittVector(
            self.config,
            tuple(x + y for x, y in zip(self.a, other.a)),
            tuple(x + y for x, y in zip(self.b, other.b)),
        )

    def __sub__(self, other: "WittVector") -> "WittVector":
        return self + other.scale(-1)

    def __neg__(self) -> "WittVector":
        return self.scale(-1)

    def scale(self, scalar) -> "WittVector":
        scalar = self.config.scalar(scalar)
        return WittVector(
            self.config,
            tuple(x * scalar for x in self.a),
            tuple(x * scalar for x in self.b),
        )

    def pairing(self, other: "WittVector"):
        """Symmetric bilinear form: v w + w v = pairing(v, w) * 1."""
        check_same_config(self.config, other.config)
        total = self.config.scalar(0)
        for x, y in zip(self.a, other.b):
            total += x * y
        for x, y in zip(self.b, other.a):
            total += x * y
        return total

    def is_null(self) -> bool:
        return self.pairing(self) == 0

    def coordinates(self) -> list:
        """Flat (a_1..a_m, b_1..b_m) row, p-columns first."""
        return list(self.a) + list(self.b)

    def to_multivector(self) -> Multivector:
        """Embed as a grade-1 algebra element (2^{m-1} EFB terms per null vector)."""
        config = self.config
        m = config.m
        terms: dict[tuple[int, int], object] = {}
        for i in range(1, m + 1):
            t = m - i
            bit = 1 << t
            ai = self.a[i - 1]
            bi = self.b[i - 1]
            if ai == 0 and bi == 0:
                continue
            for h in range(1 << m):
                if h & bit:
                    if ai != 0:
                        key = (h, bit)
                        terms[key] = terms.get(key, 0) + ai
                else:
                    if bi != 0:
                        key = (h, bit)
                        terms[key] = terms.get(key, 0) + bi
        return Multivector(config, terms)

    def __repr__(self) -> str:
        parts = []
        for i, x in enumerate(self.a, start=1):
            if x != 0:
                parts.append(f"{x}*p{i}")
        for i, x in enumerate(self.b, start=1):
            if x != 0:
                parts.append(f"{x}*q{i}")
        return f"WittVector({' + '.join(parts) or '0'})"


class NullPlane:
    """Totally null subspace given by a reduced-row-echelon Witt basis."""

    __slots__ = ("config", "basis")

    def __init__(self, config: AlgebraConfig, basis: Sequence[WittVector]):
        _require_exact(config, "NullPlane")
        rows = [v.coordinates() for v in basis]
        reduced, _ = rref(rows)
        vectors = tuple(
            WittVector(config, tuple(row[: config.m]), tuple(row[config.m :]))
            for row in reduced
        )
        for i, v in enumerate(vectors):
            for w in vectors[i:]:
                if v.pairing(w) != 0:
                    raise ValueError(f"not totally null: <{v!r}, {w!r}> != 0")
        if len(vectors) > config.m:
            raise ValueError("a totally null plane has dimension at most m")
        object.__setattr__(self, "config", config)
        object.__setattr__(self, "basis", vectors)

    def __setattr__(self, name, value):
        raise AttributeError("NullPlane is immutable")

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains(self, v: WittVector) -> bool:
        rows = [w.coordinates() for w in self.basis]
        return rank(rows + [v.coordinates()]) == len(rows)

    def intersection_dim(self, other: "NullPlane") -> int:
        check_same_config(self.config, other.config)
        stacked = [v.coordinates() for v in self.basis] + [
            v.coordinates() for v in other.basis
        ]
        return self.dim + other.dim - rank(stacked)

    def __eq__(self, other) -> bool:
        if not isinstance(other, NullPlane):
            return NotImplemented
        return self.config == other.config and [
            v.coordinates() for v in self.basis
        ] == [v.coordinates() for v in other.basis]

    __hash__ = None

    def __repr__(self) -> str:
        return f"NullPlane(dim={self.dim}, basis={list(self.basis)!r})"


@dataclass(frozen=True)
class SpinorSpace:
    """Minimal left ideal labelled by its h*g-signature."""

    config: AlgebraConfig
    hg: int

    def __post_init__(self):
        if not 0 <= self.hg < (1 << self.config.m):
            raise ValueError(f"h*g mask {self.hg} out of range for m={self.config.m}")

    @classmethod
    def standard_fock(cls, config: AlgebraConfig) -> "SpinorSpace":
        """The all-minus column (the conventional default space)."""
        return cls(config, (1 << config.m) - 1)

    @property
    def size(self) -> int:
        return 1 << self.config.m

    def basis_element(self, h: int, coeff=1) -> EfbElement:
        """The unique basis element of this space with h-signature ``h``."""
        if not 0 <= h < self.size:
            raise ValueError(f"h mask {h} out of range")
        return EfbElement(h, h ^ self.hg, coeff)

    def label(self) -> str:
        return signature_to_string(self.hg, self.config.m)


class Spinor:
    """Element of one spinor space: 2^m coordinates indexed by h-signature."""

    __slots__ = ("space", "coords")

    def __init__(self, space: SpinorSpace, coords: Iterable):
        coords = tuple(space.config.scalar(x) for x in coords)
        if len(coords) != space.size:
            raise ValueError(f"expected {space.size} coordinates")
        object.__setattr__(self, "space", space)
        object.__setattr__(self, "coords", coords)

    def __setattr__(self, name, value):
        raise AttributeError("Spinor is immutable")

    @property
    def config(self) -> AlgebraConfig:
        return self.space.config

    @classmethod
    def zero(cls, space: SpinorSpace) -> "Spinor":
        return cls(space, (0,) * space.size)

    @classmethod
    def basis(cls, space: SpinorSpace, h: int, coeff=1) -> "Spinor":
        coords = [0] * space.size
        coords[h] = coeff
        return cls(space, coords)

    @classmethod
    def from_element(cls, space: SpinorSpace, element: EfbElement) -> "Spinor":
        if element.h ^ element.g != space.hg:
            raise ValueError("element does not belong to this spinor space")
        return cls.basis(space, element.h, element.coeff)

    @classmethod
    def from_multivector(cls, mv: Multivector) -> "Spinor":
        """Reinterpret a one-column multivector; error when terms mix columns."""
        labels = {h ^ g for (h, g) in mv.terms}
        if not labels:
            raise ValueError("cannot infer the spinor space of the zero multivector")
        if len(labels) > 1:
            raise ValueError("terms span several spinor spaces")
        space = SpinorSpace(mv.config, labels.pop())
        coords = [0] * space.size
        for (h, _g), coeff in mv.terms.items():
            coords[h] = coeff
        return cls(space, coords)

    def to_multivector(self) -> Multivector:
        hg = self.space.hg
        return Multivector(
            self.config,
            {(h, h ^ hg): c for h, c in enumerate(self.coords) if c != 0},
        )

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    def __add__(self, other: "Spinor") -> "Spinor":
        if self.space != other.space:
            raise ValueError("spinor space mismatch")
        return Spinor(self.space, tuple(x + y for x, y in zip(self.coords, other.coords)))

    def __sub__(self, other: "Spinor") -> "Spinor":
        return self + other.scale(-1)

    def __neg__(self) -> "Spinor":
        return self.scale(-1)

    def scale(self, scalar) -> "Spinor":
        scalar = self.config.scalar(scalar)
        return Spinor(self.space, tuple(x * scalar for x in self.coords))

    def __mul__(self, scalar):
        return self.scale(scalar)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, Spinor):
            return NotImplemented
        return self.space == other.space and all(
            self.config.scalars_equal(x, y) for x, y in zip(self.coords, other.coords)
        )

    __hash__ = None

    def __repr__(self) -> str:
        m = self.config.m
        parts = [
            f"{c}*{signature_to_string(h, m)}"
            for h, c in enumerate(self.coords)
            if c != 0
        ]
        return f"Spinor(space={self.space.label()}, {' + '.join(parts) or '0'})"


def vector_action(v: WittVector, s: Spinor) -> Spinor:
    """Left Clifford multiplication of a vector on a spinor.

    p_i sends the coordinate at h to h with pair i flipped to minus (and
    vanishes when it already is); q_i goes the other way.  The sign counts
    the odd factors of the source element in pairs before i.
    """
    check_same_config(v.config, s.config)
    m = v.config.m
    hg = s.space.hg
    out = [v.config.scalar(0)] * s.space.size
    for h, c in enumerate(s.coords):
        if c == 0:
            continue
        g = h ^ hg
        for i in range(1, m + 1):
            t = m - i
            bit = 1 << t
            if h & bit:
                coeff = v.b[i - 1]
                target = h & ~bit
            else:
                coeff = v.a[i - 1]
                target = h | bit
            if coeff == 0:
                continue
            if (g >> (t + 1)).bit_count() & 1:
                out[target] -= coeff * c
            else:
                out[target] += coeff * c
    return Spinor(s.space, out)


def annihilator(s: Spinor) -> NullPlane:
    """The totally null plane {v : v s = 0}, solved as an exact linear system.

    Unknowns are the 2m Witt coordinates of v; one equation per output
    coordinate.  Total nullity of the solution space is automatic: if
    v s = w s = 0 then (v w + w v) s = pairing(v, w) s = 0 with s nonzero.
    """
    _require_exact(s.config, "annihilator")
    if s.is_zero():
        raise ValueError("the zero spinor has no annihilating plane")
    m = s.config.m
    size = s.space.size
    hg = s.space.hg
    rows = [[Fraction(0)] * (2 * m) for _ in range(size)]
    for h, c in enumerate(s.coords):
        if c == 0:
            continue
        g = h ^ hg
        for i in range(1, m + 1):
            t = m - i
            bit = 1 << t
            sign = -1 if (g >> (t + 1)).bit_count() & 1 else 1
            if h & bit:
                rows[h & ~bit][m + i - 1] += sign * c
            else:
                rows[h | bit][i - 1] += sign * c
    basis = [
        WittVector(s.config, tuple(row[:m]), tuple(row[m:]))
        for row in nullspace(rows)
    ]
    return NullPlane(s.config, basis)


def is_simple(s: Spinor) -> bool:
    """A spinor is simple (pure) iff its null plane has the maximal dimension m."""
    if s.is_zero():
        raise ValueError("simplicity of the zero spinor is undefined")
    return annihilator(s).dim == s.config.m


def two_term_simplicity(omega: EfbElement, phi: EfbElement, space: SpinorSpace) -> bool:
    """Signature test: a*omega + b*phi is simple iff h differs in exactly 2 pairs.

    Within one space the g-signature differs exactly where h does, so the
    one popcount covers the whole "equal in m-2 components, opposite in the
    remaining 2" condition; coefficients never matter.
    """
    for element in (omega, phi):
        if element.h ^ element.g != space.hg:
            raise ValueError("element does not belong to the given spinor space")
        if element.coeff == 0:
            raise ValueError("elements must have nonzero coefficients")
    if omega.h == phi.h:
        raise ValueError("elements must be distinct basis directions")
    return (omega.h ^ phi.h).bit_count() == 2


def max_family_size(m: int) -> int:
    """Largest mutually-(m-2)-intersecting family of simple spinors."""
    return 4 if m == 3 else m


def mutual_intersection_family_check(spinors: Sequence[Spinor]) -> bool:
    """True iff every pair of annihilating planes meets in dimension m-2.

    A passing family spans a totally simple plane: all nonzero linear
    combinations are simple.  Families beyond the size bound are rejected
    outright (no such family exists).
    """
    if not spinors:
        raise ValueError("empty family")
    space = spinors[0].space
    m = space.config.m
    for s in spinors:
        if s.space != space:
            raise ValueError("family members live in different spinor spaces")
        if s.is_zero() or not is_simple(s):
            raise ValueError("family members must be nonzero simple spinors")
    coord_rows = [list(s.coords) for s in spinors]
    for i in range(len(spinors)):
        for j in range(i + 1, len(spinors)):
            if rank([coord_rows[i], coord_rows[j]]) < 2:
                raise ValueError("family members must be pairwise linearly independent")
    bound = max_family_size(m)
    if len(spinors) > bound:
        raise ValueError(
            f"no family of {len(spinors)} mutually intersecting simple spinors exists "
            f"for m={m} (maximum {bound})"
        )
    planes = [annihilator(s) for s in spinors]
    target = m - 2
    for i in range(len(planes)):
        for j in range(i + 1, len(planes)):
            if planes[i].intersection_dim(planes[j]) != target:
                return False
    return True


@dataclass(frozen=True)
class FamilyBoundCertificate:
    """Rank argument ruling families of size k in or out.

    Pairwise null-plane intersections of dimension m-2 force the +-1
    h-signature vectors to have pairwise dot product m-4, hence the Gram
    matrix 4I + (m-4)J.  When its rank exceeds m no such vectors fit in an
    m-dimensional space, so the family cannot exist.
    """

    m: int
    k: int
    gram_rank: int
    possible: bool


def family_bound_certificate(m: int, k: int) -> FamilyBoundCertificate:
    if k < 1:
        raise ValueError("family size must be positive")
    gram = [
        [Fraction(m) if i == j else Fraction(m - 4) for j in range(k)]
        for i in range(k)
    ]
    gram_rank = rank(gram)
    return FamilyBoundCertificate(m=m, k=k, gram_rank=gram_rank, possible=gram_rank <= m)


@dataclass(frozen=True)
class TotallySimplePlane:
    spinors: tuple
    witness_tnp: NullPlane
    alternating_sum: Spinor


def totally_simple_plane(config: AlgebraConfig, k: int) -> TotallySimplePlane:
    """A k-member family of basis elements spanning a totally simple plane.

    For 2 <= k <= m this is the succession q_1..q_m, then for j = 2..k the
    element with pairs 1 and j flipped to p q; the witness plane annihilates
    the alternating sum (1 + p_1 (p_2 + ... + p_k)) q_1..q_m and is spanned
    by q_1 - (p_2+..+p_k), q_j + p_1 (j <= k) and the remaining q_j.

    m = 3 additionally admits k = 4 (the exceptional family whose
    h-signatures are the four odd-weight sign vectors); there the witness is
    computed as the annihilator of the alternating sum.
    """
    _require_exact(config, "totally_simple_plane")
    m = config.m
    if not (2 <= k <= m or (m == 3 and k == 4)):
        raise ValueError(f"k={k} out of range for m={m}")
    space = SpinorSpace.standard_fock(config)
    full = (1 << m) - 1
    if m == 3 and k == 4:
        h_masks = [0b000, 0b011, 0b101, 0b110]
        elements = tuple(space.basis_element(h) for h in h_masks)
    else:
        h_masks = [0]
        for j in range(2, k + 1):
            h_masks.append((1 << (m - 1)) | (1 << (m - j)))
        elements = tuple(space.basis_element(h) for h in h_masks)
    alternating = Spinor.zero(space)
    for idx, element in enumerate(elements):
        term = Spinor.from_element(space, element)
        alternating = alternating - term if idx & 1 else alternating + term
    if m == 3 and k == 4:
        witness = annihilator(alternating)
    else:
        vectors = [
            WittVector(
                config,
                tuple(-1 if 2 <= i <= k else 0 for i in range(1, m + 1)),
                tuple(1 if i == 1 else 0 for i in range(1, m + 1)),
            )
        ]
        for j in range(2, m + 1):
            a = [0] * m
            b = [0] * m
            b[j - 1] = 1
            if j <= k:
                a[0] = 1
            vectors.append(WittVector(config, tuple(a), tuple(b)))
        witness = NullPlane(config, vectors)
    return TotallySimplePlane(elements, witness, alternating)


def g_flip(s: Spinor, i: int) -> Spinor:
    """Right multiplication by the unit vector p_i + q_i.

    Flips the i-th entry of the h*g label, so the result lives in a
    different spinor space; on basis elements only g_i flips.
    """
    m = s.config.m
    if not 1 <= i <= m:
        raise ValueError(f"pair index {i} out of range 1..{m}")
    t = m - i
    bit = 1 << t
    new_space = SpinorSpace(s.config, s.space.hg ^ bit)
    below = bit - 1
    out = [s.config.scalar(0)] * s.space.size
    for h, c in enumerate(s.coords):
        if c == 0:
            continue
        g = h ^ s.space.hg
        out[h] = -c if (g & below).bit_count() & 1 else c
    return Spinor(new_space, out)


def weyl_subspace_basis(config: AlgebraConfig, sign: int) -> list[Spinor]:
    """Standard-Fock basis elements of one helicity (2^{m-1} of them)."""
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    space = SpinorSpace.standard_fock(config)
    out = []
    for h in range(space.size):
        helicity = -1 if h.bit_count() & 1 else 1
        if helicity == sign:
            out.append(Spinor.basis(space, h))
    return out
