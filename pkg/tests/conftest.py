"""Shared helpers: random exact multivectors and an independent matrix oracle.

The Kronecker-built generator matrices below satisfy the Cl(m,m) relations
by construction (X/Y blocks on a Z chain) and share nothing with the
package's own layout code, so they make a genuinely independent oracle for
the blade product.
"""

from __future__ import annotations

import random
from fractions import Fraction

from clifford_efb import AlgebraConfig, Multivector

_X = ((Fraction(0), Fraction(1)), (Fraction(1), Fraction(0)))
_Y = ((Fraction(0), Fraction(-1)), (Fraction(1), Fraction(0)))
_Z = ((Fraction(1), Fraction(0)), (Fraction(0), Fraction(-1)))
_I = ((Fraction(1), Fraction(0)), (Fraction(0), Fraction(1)))


def random_exact_multivector(
    config: AlgebraConfig, rng: random.Random, max_terms: int = 6
) -> Multivector:
    n = 1 << config.m
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        key = (rng.randrange(n), rng.randrange(n))
        coeff = Fraction(rng.randint(-9, 9) or 1, rng.randint(1, 9))
        terms[key] = terms.get(key, 0) + coeff
    return Multivector(config, terms)


def mat_kron(a, b):
    rows = []
    for ra in a:
        for rb in b:
            rows.append(tuple(x * y for x in ra for y in rb))
    return tuple(rows)


def mat_mult(a, b):
    n = len(a)
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n))
        for i in range(n)
    )


def mat_add(a, b):
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_scale(a, s):
    return tuple(tuple(x * s for x in row) for row in a)


def mat_identity(n):
    return tuple(
        tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)
    )


def kron_generators(m: int):
    """Matrices for gamma_1..gamma_2m with the neutral-signature relations."""
    gens = []
    for i in range(1, m + 1):
        for block in (_X, _Y):
            mat = ((Fraction(1),),)
            for slot in range(1, m + 1):
                if slot < i:
                    piece = _Z
                elif slot == i:
                    piece = block
                else:
                    piece = _I
                mat = mat_kron(mat, piece)
            gens.append(mat)
    return gens


def kron_blade(m: int, mask: int):
    """Matrix of the ascending-ordered blade with the given generator mask."""
    gens = kron_generators(m)
    mat = mat_identity(1 << m)
    for k in range(2 * m):
        if (mask >> k) & 1:
            mat = mat_mult(mat, gens[k])
    return mat
