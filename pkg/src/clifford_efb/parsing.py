"""Textual grammars: EFB terms, gamma blades, spinors, and their formatters.

EFB multivector:  ``3/2 * q1p1 p2 - q1 q2`` -- each term lists one factor per
pair in increasing pair order, the coefficient (decimal or ``a/b``) is
optional and separated by ``*``.

Gamma multivector: ``2 * g1 g4 - 1/2 * g2`` -- strictly increasing generator
indices; a bare number is the scalar blade.

Spinor: ``space=--; 1*++ - 1*--`` -- the space's h*g label, then coordinates
as coefficient * h-signature string.

Formatters order terms by ascending signature masks so output is
deterministic and reparses to an equal value.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .algebra import (
    FACTOR_P,
    FACTOR_PQ,
    FACTOR_Q,
    FACTOR_QP,
    Multivector,
    factor_name,
    signature_from_string,
    signature_to_string,
)
from .config import AlgebraConfig, format_scalar
from .gamma import GammaMultivector
from .spinors import NullPlane, Spinor, SpinorSpace, WittVector


class ExpressionError(ValueError):
    """Parse failure with the offending position (0-based offset)."""

    def __init__(self, message: str, source: str, position: int):
        line = source.count("\n", 0, position) + 1
        column = position - (source.rfind("\n", 0, position) + 1) + 1
        super().__init__(f"{message} (line {line}, column {column})")
        self.position = position
        self.line = line
        self.column = column


_TOKEN_RE = re.compile(
    r"(?P<ws>\s+)"
    r"|(?P<number>\d+/\d+|\d+\.\d*|\.\d+|\d+)"
    r"|(?P<star>\*)"
    r"|(?P<sign>[+-])"
    r"|(?P<factor>[pq]\d+[pq]\d+|[pq]\d+|g\d+)"
)

_EFB_FACTOR_RE = re.compile(r"^(?:q(\d+)p(\d+)|p(\d+)q(\d+)|p(\d+)|q(\d+))$")


def _tokenize(src: str):
    tokens = []
    pos = 0
    while pos < len(src):
        match = _TOKEN_RE.match(src, pos)
        if match is None:
            raise ExpressionError(f"unexpected character {src[pos]!r}", src, pos)
        if match.lastgroup != "ws":
            tokens.append((match.lastgroup, match.group(), match.start()))
        pos = match.end()
    return tokens


def _parse_number(text: str, config: AlgebraConfig):
    value = Fraction(text)
    return value if config.is_exact else float(value)


def _split_terms(tokens, src):
    """Group a token stream into (sign, term_tokens) runs."""
    terms = []
    sign = 1
    signed = False  # the pending term already carries a sign
    current = []
    for kind, text, pos in tokens:
        if kind == "sign":
            if current:
                terms.append((sign, current, pos))
                current = []
                sign = -1 if text == "-" else 1
                signed = True
            elif not signed:
                sign = -1 if text == "-" else 1
                signed = True
            else:
                raise ExpressionError("unexpected sign", src, pos)
        else:
            current.append((kind, text, pos))
    if not current:
        where = tokens[-1][2] if tokens else 0
        raise ExpressionError("expected a term", src, where)
    terms.append((sign, current, len(src)))
    return terms


def _term_coeff_and_factors(term_tokens, src, config):
    """Split one term into (coefficient, factor tokens)."""
    coeff = None
    idx = 0
    starred = False
    if term_tokens[0][0] == "number":
        coeff = _parse_number(term_tokens[0][1], config)
        idx = 1
        if idx < len(term_tokens) and term_tokens[idx][0] == "star":
            starred = True
            idx += 1
        elif idx < len(term_tokens):
            kind, _text, pos = term_tokens[idx]
            raise ExpressionError("expected '*' between coefficient and factors", src, pos)
    factors = []
    for kind, text, pos in term_tokens[idx:]:
        if kind != "factor":
            raise ExpressionError(f"unexpected token {text!r} in term", src, pos)
        factors.append((text, pos))
    if starred and not factors:
        raise ExpressionError("expected factors after '*'", src, term_tokens[-1][2])
    return coeff, factors


_EFB_CODE_BY_SHAPE = {"qp": FACTOR_QP, "pq": FACTOR_PQ, "p": FACTOR_P, "q": FACTOR_Q}


def _efb_factor(text: str, pos: int, src: str) -> tuple[int, tuple[int, int]]:
    match = _EFB_FACTOR_RE.match(text)
    if match is None:
        raise ExpressionError(f"malformed factor {text!r}", src, pos)
    qp_q, qp_p, pq_p, pq_q, lone_p, lone_q = match.groups()
    if qp_q is not None:
        if qp_q != qp_p:
            raise ExpressionError(f"mismatched pair indices in {text!r}", src, pos)
        return int(qp_q), FACTOR_QP
    if pq_p is not None:
        if pq_p != pq_q:
            raise ExpressionError(f"mismatched pair indices in {text!r}", src, pos)
        return int(pq_p), FACTOR_PQ
    if lone_p is not None:
        return int(lone_p), FACTOR_P
    return int(lone_q), FACTOR_Q


def parse_efb(src: str, config: AlgebraConfig) -> Multivector:
    """Parse the EFB term grammar into a canonical multivector."""
    m = config.m
    tokens = _tokenize(src)
    if not tokens:
        raise ExpressionError("empty expression", src, 0)
    if len(tokens) == 1 and tokens[0][0] == "number" and Fraction(tokens[0][1]) == 0:
        return Multivector.zero(config)
    terms = {}
    for sign, term_tokens, term_end in _split_terms(tokens, src):
        coeff, factor_tokens = _term_coeff_and_factors(term_tokens, src, config)
        if not factor_tokens:
            where = term_tokens[-1][2] if term_tokens else term_end
            raise ExpressionError("an EFB term needs one factor per pair", src, where)
        h = 0
        g = 0
        expected = 1
        for text, pos in factor_tokens:
            if text.startswith("g"):
                raise ExpressionError("gamma factors are not valid in the EFB basis", src, pos)
            index, (h_bit, g_bit) = _efb_factor(text, pos, src)
            if index > m:
                raise ExpressionError(f"pair index {index} exceeds m={m}", src, pos)
            if index < expected:
                raise ExpressionError(f"pair index {index} appears twice or out of order", src, pos)
            if index > expected:
                raise ExpressionError(f"missing factor for pair {expected}", src, pos)
            h = (h << 1) | h_bit
            g = (g << 1) | g_bit
            expected += 1
        if expected != m + 1:
            raise ExpressionError(f"missing factor for pair {expected}", src, term_end - 1 if term_end else 0)
        value = config.scalar(1) if coeff is None else coeff
        if sign < 0:
            value = -value
        key = (h, g)
        terms[key] = terms.get(key, 0) + value
    return Multivector(config, terms)


def parse_gamma(src: str, config: AlgebraConfig) -> GammaMultivector:
    """Parse the gamma-blade grammar."""
    limit = 2 * config.m
    tokens = _tokenize(src)
    if not tokens:
        raise ExpressionError("empty expression", src, 0)
    terms = {}
    for sign, term_tokens, term_end in _split_terms(tokens, src):
        coeff, factor_tokens = _term_coeff_and_factors(term_tokens, src, config)
        mask = 0
        last = 0
        for text, pos in factor_tokens:
            if not text.startswith("g"):
                raise ExpressionError(
                    "EFB factors are not valid in the gamma basis", src, pos
                )
            index = int(text[1:])
            if not 1 <= index <= limit:
                raise ExpressionError(f"generator index {index} out of range 1..{limit}", src, pos)
            if index <= last:
                raise ExpressionError("generator indices must be strictly increasing", src, pos)
            mask |= 1 << (index - 1)
            last = index
        value = config.scalar(1) if coeff is None else coeff
        if sign < 0:
            value = -value
        terms[mask] = terms.get(mask, 0) + value
    return GammaMultivector(config, terms)


def format_efb(mv: Multivector) -> str:
    m = mv.config.m
    if not mv.terms:
        return "0"
    parts = []
    for (h, g) in sorted(mv.terms):
        coeff = mv.terms[(h, g)]
        names = " ".join(
            factor_name((h >> (m - i)) & 1, (g >> (m - i)) & 1, i) for i in range(1, m + 1)
        )
        parts.append((coeff, names))
    return _join_terms(parts)


def format_gamma(gmv: GammaMultivector) -> str:
    if not gmv.terms:
        return "0"
    parts = []
    for mask in sorted(gmv.terms):
        names = " ".join(
            f"g{k + 1}" for k in range(2 * gmv.config.m) if (mask >> k) & 1
        )
        parts.append((gmv.terms[mask], names))
    return _join_terms(parts)


def _join_terms(parts) -> str:
    chunks = []
    for index, (coeff, body) in enumerate(parts):
        negative = coeff < 0
        magnitude = -coeff if negative else coeff
        if body and magnitude == 1:
            rendered = body
        elif body:
            rendered = f"{format_scalar(magnitude)} * {body}"
        else:
            rendered = format_scalar(magnitude)
        if index == 0:
            chunks.append(f"-{rendered}" if negative else rendered)
        else:
            chunks.append(f"- {rendered}" if negative else f"+ {rendered}")
    return " ".join(chunks)


_SPINOR_HEAD_RE = re.compile(r"^\s*space\s*=\s*([+-]+)\s*;")


def parse_spinor(src: str, config: AlgebraConfig) -> Spinor:
    """Parse the spinor form, or fall back to a one-column EFB expression."""
    head = _SPINOR_HEAD_RE.match(src)
    if head is None:
        mv = parse_efb(src, config)
        if mv.is_zero():
            raise ExpressionError(
                "cannot infer the spinor space of 0; use the space=...; form", src, 0
            )
        try:
            return Spinor.from_multivector(mv)
        except ValueError as exc:
            raise ExpressionError(str(exc), src, 0) from None
    m = config.m
    label = head.group(1)
    if len(label) != m:
        raise ExpressionError(
            f"space label must have {m} entries, got {len(label)}", src, head.start(1)
        )
    space = SpinorSpace(config, signature_from_string(label))
    coords = [config.scalar(0)] * space.size
    pos = head.end()
    body = src[pos:]
    if body.strip() == "0":
        return Spinor(space, coords)
    sign = 1
    expect_sign = False
    index = pos
    length = len(src)
    while index < length:
        while index < length and src[index].isspace():
            index += 1
        if index >= length:
            break
        if expect_sign:
            if src[index] == "+":
                sign = 1
            elif src[index] == "-":
                sign = -1
            else:
                raise ExpressionError("expected '+' or '-' between spinor terms", src, index)
            index += 1
            while index < length and src[index].isspace():
                index += 1
        elif src[index] in "+-":
            sign = -1 if src[index] == "-" else 1
            index += 1
            while index < length and src[index].isspace():
                index += 1
        number = re.compile(r"\d+/\d+|\d+\.\d*|\.\d+|\d+").match(src, index)
        if number is None:
            raise ExpressionError("expected a coefficient", src, index)
        coeff = _parse_number(number.group(), config)
        index = number.end()
        if index >= length or src[index] != "*":
            raise ExpressionError("expected '*' after the coefficient", src, index if index < length else length - 1)
        index += 1
        h_text = src[index : index + m]
        if len(h_text) < m or any(ch not in "+-" for ch in h_text):
            raise ExpressionError(f"expected {m} signature characters", src, index)
        h = signature_from_string(h_text)
        index += m
        coords[h] = coords[h] + (coeff if sign > 0 else -coeff)
        expect_sign = True
    if not expect_sign:
        raise ExpressionError("expected at least one spinor term", src, pos)
    return Spinor(space, coords)


def format_spinor(s: Spinor) -> str:
    m = s.config.m
    head = f"space={s.space.label()};"
    parts = [
        (coeff, signature_to_string(h, m))
        for h, coeff in enumerate(s.coords)
        if coeff != 0
    ]
    if not parts:
        return f"{head} 0"
    chunks = []
    for index, (coeff, label) in enumerate(parts):
        negative = coeff < 0
        magnitude = -coeff if negative else coeff
        rendered = f"{format_scalar(magnitude)}*{label}"
        if index == 0:
            chunks.append(f"-{rendered}" if negative else rendered)
        else:
            chunks.append(f"- {rendered}" if negative else f"+ {rendered}")
    return f"{head} " + " ".join(chunks)


def format_witt_vector(v: WittVector) -> str:
    parts = []
    for name, coeffs in (("p", v.a), ("q", v.b)):
        for i, coeff in enumerate(coeffs, start=1):
            if coeff != 0:
                parts.append((coeff, f"{name}{i}"))
    if not parts:
        return "0"
    parts.sort(key=lambda item: int(item[1][1:]))
    chunks = []
    for index, (coeff, body) in enumerate(parts):
        negative = coeff < 0
        magnitude = -coeff if negative else coeff
        rendered = body if magnitude == 1 else f"{format_scalar(magnitude)} {body}"
        if index == 0:
            chunks.append(f"-{rendered}" if negative else rendered)
        else:
            chunks.append(f"- {rendered}" if negative else f"+ {rendered}")
    return " ".join(chunks)


def witt_vector_json(v: WittVector) -> dict:
    return {
        "p": [format_scalar(x) for x in v.a],
        "q": [format_scalar(x) for x in v.b],
    }


def null_plane_json(plane: NullPlane) -> list[dict]:
    return [witt_vector_json(v) for v in plane.basis]
