from __future__ import annotations

from typing import Union

import sympy
from lark import LarkError

from ..core import word_parser
from ..core.words import UDWord, WordPolynomial, word_to_normal_form
from .exceptions import InputError, ParseError

_EXPECTED_TOKEN_LABELS = {
    "LETTER": "U or D",
    "INT": "an integer coefficient or exponent",
    "PLUS": "+",
    "STAR": "*",
    "CARET": "^",
    "LPAR": "(",
    "RPAR": ")",
}

_EXPECTED_TOKEN_ORDER = ["LETTER", "LPAR", "RPAR", "CARET", "INT", "STAR", "PLUS"]


def _friendly_expected_tokens(expected: object) -> str:
    if not expected:
        return ""

    expected_set = {str(token) for token in expected}
    ordered = [token for token in _EXPECTED_TOKEN_ORDER if token in expected_set]
    ordered.extend(sorted(expected_set - set(ordered)))
    return ", ".join(_EXPECTED_TOKEN_LABELS.get(token, token.lower()) for token in ordered)


def _friendly_parse_message(exc: LarkError) -> str:
    line = getattr(exc, "line", None)
    column = getattr(exc, "column", None)
    expected = _friendly_expected_tokens(getattr(exc, "expected", None) or getattr(exc, "allowed", None))
    token = getattr(exc, "token", None)
    char = getattr(exc, "char", None)

    if token is not None or char is not None:
        value = getattr(token, "value", str(token)) if token is not None else char
        if value == "":
            message = "Expression ended early."
        elif line is not None and column is not None:
            message = f'Unexpected "{value}" at line {line}, column {column}.'
        else:
            message = f'Unexpected "{value}".'
        if expected:
            message += f" Expected one of: {expected}."
        return message

    return str(exc).strip()


def _format_parse_error(expression: str, exc: LarkError) -> ParseError:
    context = None
    if hasattr(exc, "get_context"):
        try:
            context = exc.get_context(expression)  # type: ignore[arg-type]
        except Exception:  # pragma: no cover - fallback only
            context = None
    return ParseError(
        message=_friendly_parse_message(exc),
        expression=expression,
        line=getattr(exc, "line", None),
        column=getattr(exc, "column", None),
        context=context,
    )


def _terms(expression: str):
    try:
        return word_parser.parse(expression)
    except LarkError as exc:
        raise _format_parse_error(expression, exc) from exc


def parse_word(expression: str) -> UDWord:
    """A single word, powers expanded: "(UD)^2" becomes UDUD."""

    terms = _terms(expression)
    if len(terms) != 1 or terms[0][0] != 1:
        raise InputError(f"{expression!r} is a sum of words, expected a single word")
    return UDWord(terms[0][1])


def parse_operator(expression: str, r: Union[int, sympy.Symbol]) -> WordPolynomial:
    """Normal form of a nonnegative sum of balanced words."""

    total = WordPolynomial()
    for coefficient, letters in _terms(expression):
        word = UDWord(letters)
        if not word.is_balanced:
            raise InputError(f"Word {word} in {expression!r} is not balanced")
        total = total + word_to_normal_form(word, r).scale(coefficient)
    return total


def parse_coefficient_spec(spec: str) -> WordPolynomial:
    """Read "i:c_i" pairs, e.g. "2:1,1:3" for U^2D^2 + 3UD."""

    coefficients = {}
    for piece in filter(None, (chunk.strip() for chunk in spec.split(","))):
        index, sep, value = piece.partition(":")
        if not sep:
            raise InputError(f"Coefficient entry {piece!r} must look like i:c")
        try:
            i, c = int(index), int(value)
        except ValueError as exc:
            raise InputError(f"Coefficient entry {piece!r} is not numeric") from exc
        if i < 0:
            raise InputError(f"Coefficient index must be nonnegative in {piece!r}")
        coefficients[i] = coefficients.get(i, 0) + c
    return WordPolynomial(coefficients)
