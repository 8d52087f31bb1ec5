"""Words in the up/down operators and their normal forms over Y^r."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import lru_cache
from math import comb, factorial
from typing import Dict, List, Mapping, Optional, Union

import sympy
from sympy import Poly
from sympy.functions.combinatorial.numbers import stirling

from ..services.exceptions import InputError
from .exact_linalg import IntMatrix
from .posets import down_matrix, rank_size, up_matrix

logger = logging.getLogger(__name__)

R = sympy.Symbol("r")

Coefficient = Union[int, sympy.Expr]


@dataclass(frozen=True)
class UDWord:
    """Letters read as operator composition: the rightmost letter acts first."""

    letters: str = ""

    def __post_init__(self) -> None:
        bad = set(self.letters) - {"U", "D"}
        if bad:
            raise InputError(f"Words use only U and D, found {''.join(sorted(bad))!r}")

    @property
    def is_balanced(self) -> bool:
        return self.letters.count("U") == self.letters.count("D")

    @property
    def half_length(self) -> int:
        return self.letters.count("U")

    def __str__(self) -> str:
        return self.letters or "1"


@dataclass
class WordPolynomial:
    """Σ c_i U^iD^i; ``betas`` holds the (UD)^j coefficients when the polynomial was built from them."""

    coefficients: Dict[int, Coefficient] = field(default_factory=dict)
    betas: Optional[Dict[int, int]] = None

    def __post_init__(self) -> None:
        self.coefficients = {i: c for i, c in self.coefficients.items() if c != 0}

    @classmethod
    def monomial(cls, i: int, coefficient: int = 1) -> "WordPolynomial":
        return cls({i: coefficient})

    @classmethod
    def from_betas(cls, betas: Mapping[int, int], r: int) -> "WordPolynomial":
        coefficients: Dict[int, int] = {}
        for j, beta in betas.items():
            for i in range(j + 1):
                term = beta * int(stirling(j, i, kind=2)) * r ** (j - i)
                if term:
                    coefficients[i] = coefficients.get(i, 0) + term
        return cls(coefficients, betas={j: b for j, b in betas.items() if b})

    @property
    def degree(self) -> int:
        return max(self.coefficients, default=0)

    @property
    def ell(self) -> Optional[int]:
        """Smallest i with c_i != 0."""

        return min(self.coefficients, default=None)

    def is_zero(self) -> bool:
        return not self.coefficients

    def is_nonnegative(self) -> bool:
        return all(int(c) >= 0 for c in self.coefficients.values())

    def specialize(self, r: int) -> "WordPolynomial":
        values: Dict[int, int] = {}
        for i, c in self.coefficients.items():
            values[i] = int(c.subs(R, r)) if isinstance(c, sympy.Basic) else int(c)
        return WordPolynomial(values, betas=self.betas)

    def beta_values(self, r: int) -> Dict[int, int]:
        """Coefficients in the (UD)^j basis, using U^iD^i = ∏_{t<i}(UD - t·r)."""

        if self.betas is not None:
            return dict(self.betas)
        betas: Dict[int, int] = {}
        for i, c in self.specialize(r).coefficients.items():
            for j in range(i + 1):
                term = c * int(stirling(i, j, kind=1, signed=True)) * r ** (i - j)
                if term:
                    betas[j] = betas.get(j, 0) + term
        return {j: b for j, b in betas.items() if b}

    def __add__(self, other: "WordPolynomial") -> "WordPolynomial":
        merged = dict(self.coefficients)
        for i, c in other.coefficients.items():
            merged[i] = merged.get(i, 0) + c
        return WordPolynomial(merged)

    def scale(self, factor: int) -> "WordPolynomial":
        return WordPolynomial({i: factor * c for i, c in self.coefficients.items()})

    def __str__(self) -> str:
        if not self.coefficients:
            return "0"
        pieces: List[str] = []
        for i in sorted(self.coefficients, reverse=True):
            c = self.coefficients[i]
            body = "" if i == 0 else ("UD" if i == 1 else f"U^{i}D^{i}")
            if not body:
                pieces.append(str(c))
            elif c == 1:
                pieces.append(body)
            else:
                text = str(c)
                pieces.append(f"({text}){body}" if isinstance(c, sympy.Basic) and not c.is_Atom else f"{text}{body}")
        return " + ".join(pieces)


def word_to_normal_form(word: UDWord, r: Coefficient) -> WordPolynomial:
    """Rewrite every DU as UD + r, left to right, collecting U^aD^b monomials."""

    if not word.is_balanced:
        raise InputError(f"Word {word} is not balanced")
    terms: Dict[tuple, Coefficient] = {(0, 0): 1}
    for letter in word.letters:
        updated: Dict[tuple, Coefficient] = {}
        for (a, b), c in terms.items():
            if letter == "D":
                key = (a, b + 1)
                updated[key] = updated.get(key, 0) + c
                continue
            # D^b U = U D^b + b r D^{b-1}
            key = (a + 1, b)
            updated[key] = updated.get(key, 0) + c
            if b:
                key = (a, b - 1)
                updated[key] = updated.get(key, 0) + b * r * c
        terms = updated
    coefficients: Dict[int, Coefficient] = {}
    for (a, b), c in terms.items():
        if isinstance(c, sympy.Basic):
            c = sympy.expand(c)
        coefficients[a] = c
    return WordPolynomial(coefficients)


def symbolic_normal_form(word: UDWord) -> Dict[int, Poly]:
    """Normal form with coefficients kept as integer polynomials in r."""

    normal = word_to_normal_form(word, R)
    return {i: Poly(c, R, domain="ZZ") for i, c in normal.coefficients.items()}


def down_up_closed_form(k: int, r: int) -> WordPolynomial:
    """D^kU^k = Σ_i C(k,i)^2 (k-i)! r^(k-i) U^iD^i."""

    return WordPolynomial({i: comb(k, i) ** 2 * factorial(k - i) * r ** (k - i) for i in range(k + 1)})


@lru_cache(maxsize=None)
def _monomial_matrix(r: int, n: int, i: int) -> IntMatrix:
    size = rank_size(r, n)
    if i > n:
        return IntMatrix.zeros(size, size)
    result = IntMatrix.identity(size)
    for step in range(i):
        result = down_matrix(r, n - step) @ result
    for step in range(i):
        result = up_matrix(r, n - i + step) @ result
    return result


def _word_matrix(word: UDWord, r: int, n: int) -> IntMatrix:
    size = rank_size(r, n)
    result = IntMatrix.identity(size)
    rank = n
    for letter in reversed(word.letters):
        if letter == "U":
            result = up_matrix(r, rank) @ result
            rank += 1
        else:
            if rank == 0:
                return IntMatrix.zeros(size, size)
            result = down_matrix(r, rank) @ result
            rank -= 1
    return result


def word_operator_matrix(f: Union[WordPolynomial, UDWord], r: int, n: int) -> IntMatrix:
    if isinstance(f, UDWord):
        if not f.is_balanced:
            raise InputError(f"Word {f} is not balanced")
        return _word_matrix(f, r, n)
    size = rank_size(r, n)
    result = IntMatrix.zeros(size, size)
    for i, c in f.specialize(r).coefficients.items():
        result = result + _monomial_matrix(r, n, i).scale(c)
    return result


def alpha_values(f: WordPolynomial, r: int, n: int) -> List[int]:
    betas = f.beta_values(r)
    return [sum(beta * (r * i) ** j for j, beta in betas.items()) for i in range(n + 1)]


def clear_caches() -> None:
    _monomial_matrix.cache_clear()
