from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from fractions import Fraction
from math import gcd
from typing import Dict, List, Mapping, Sequence, Tuple, Union

from sympy import cyclotomic_poly, totient

from ..services.exceptions import InputError

Number = Union[int, "CyclotomicInt"]


@lru_cache(maxsize=None)
def _phi_coeffs(m: int) -> Tuple[int, ...]:
    """Coefficients of the m-th cyclotomic polynomial, constant term first."""

    poly = cyclotomic_poly(m, polys=True)
    return tuple(int(c) for c in reversed(poly.all_coeffs()))


def _reduce(m: int, coeffs: Sequence[int]) -> Tuple[int, ...]:
    """Fold exponents modulo m, then divide out the monic m-th cyclotomic polynomial."""

    folded = [0] * m
    for exponent, value in enumerate(coeffs):
        if value:
            folded[exponent % m] += value
    phi = _phi_coeffs(m)
    degree = len(phi) - 1
    for top in range(m - 1, degree - 1, -1):
        lead = folded[top]
        if not lead:
            continue
        shift = top - degree
        for k, c in enumerate(phi):
            folded[shift + k] -= lead * c
    return tuple(folded[:degree])


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


@dataclass(frozen=True, eq=False)
class CyclotomicInt:
    """Element of Z[ζ_m] in the power basis 1, ζ, ..., ζ^{φ(m)-1}."""

    conductor: int
    coeffs: Tuple[int, ...]

    def __post_init__(self) -> None:
        if self.conductor < 1:
            raise InputError(f"Conductor must be positive, got {self.conductor}")
        if len(self.coeffs) != int(totient(self.conductor)):
            raise InputError(
                f"Conductor {self.conductor} needs {int(totient(self.conductor))} coefficients, got {len(self.coeffs)}"
            )

    # -- constructors -------------------------------------------------------------

    @classmethod
    def from_exponents(cls, conductor: int, terms: Mapping[int, int]) -> "CyclotomicInt":
        raw = [0] * conductor
        for exponent, value in terms.items():
            raw[exponent % conductor] += int(value)
        return cls(conductor, _reduce(conductor, raw))

    @classmethod
    def from_coefficients(cls, conductor: int, coeffs: Sequence[int]) -> "CyclotomicInt":
        """Accepts any coefficient list indexed by exponent; reduction is applied."""

        if conductor < 1:
            raise InputError(f"Conductor must be positive, got {conductor}")
        return cls(conductor, _reduce(conductor, [int(c) for c in coeffs]))

    @classmethod
    def from_int(cls, value: int, conductor: int = 1) -> "CyclotomicInt":
        return cls.from_exponents(conductor, {0: value})

    @classmethod
    def root(cls, conductor: int, exponent: int = 1) -> "CyclotomicInt":
        return cls.from_exponents(conductor, {exponent: 1})

    @staticmethod
    def coerce(value: Number, conductor: int = 1) -> "CyclotomicInt":
        if isinstance(value, CyclotomicInt):
            return value
        return CyclotomicInt.from_int(int(value), conductor)

    # -- structure --------------------------------------------------------------------

    def lift(self, conductor: int) -> "CyclotomicInt":
        if conductor % self.conductor:
            raise InputError(f"Cannot lift conductor {self.conductor} to {conductor}")
        step = conductor // self.conductor
        return CyclotomicInt.from_exponents(
            conductor, {e * step: c for e, c in enumerate(self.coeffs) if c}
        )

    def _align(self, other: Number) -> Tuple["CyclotomicInt", "CyclotomicInt"]:
        other = CyclotomicInt.coerce(other, self.conductor)
        if other.conductor == self.conductor:
            return self, other
        common = _lcm(self.conductor, other.conductor)
        return self.lift(common), other.lift(common)

    @property
    def is_rational_integer(self) -> bool:
        return not any(self.coeffs[1:])

    def to_int(self) -> int:
        if not self.is_rational_integer:
            raise ValueError(f"{self!r} is not a rational integer")
        return self.coeffs[0] if self.coeffs else 0

    def galois(self, a: int) -> "CyclotomicInt":
        """The automorphism ζ -> ζ^a; ``a`` must be a unit modulo the conductor."""

        m = self.conductor
        if gcd(a, m) != 1:
            raise InputError(f"{a} is not a unit modulo {m}")
        return CyclotomicInt.from_exponents(m, {(a * e) % m: c for e, c in enumerate(self.coeffs) if c})

    def trace(self) -> int:
        m = self.conductor
        total = sum((self.galois(a) for a in range(1, m + 1) if gcd(a, m) == 1), CyclotomicInt.from_int(0, m))
        return total.to_int()

    def conjugate(self) -> "CyclotomicInt":
        m = self.conductor
        return CyclotomicInt.from_exponents(m, {(-e) % m: c for e, c in enumerate(self.coeffs) if c})

    def exact_div(self, divisor: int) -> "CyclotomicInt":
        if any(c % divisor for c in self.coeffs):
            raise ValueError(f"{self!r} is not divisible by {divisor}")
        return CyclotomicInt(self.conductor, tuple(c // divisor for c in self.coeffs))

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    # -- arithmetic -------------------------------------------------------------------

    def __add__(self, other: Number) -> "CyclotomicInt":
        left, right = self._align(other)
        return CyclotomicInt(left.conductor, tuple(a + b for a, b in zip(left.coeffs, right.coeffs)))

    __radd__ = __add__

    def __neg__(self) -> "CyclotomicInt":
        return CyclotomicInt(self.conductor, tuple(-c for c in self.coeffs))

    def __sub__(self, other: Number) -> "CyclotomicInt":
        left, right = self._align(other)
        return left + (-right)

    def __rsub__(self, other: Number) -> "CyclotomicInt":
        return (-self) + other

    def __mul__(self, other: Number) -> "CyclotomicInt":
        if isinstance(other, int):
            return CyclotomicInt(self.conductor, tuple(other * c for c in self.coeffs))
        left, right = self._align(other)
        m = left.conductor
        product = [0] * m
        for i, a in enumerate(left.coeffs):
            if not a:
                continue
            for j, b in enumerate(right.coeffs):
                if b:
                    product[(i + j) % m] += a * b
        return CyclotomicInt(m, _reduce(m, product))

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "CyclotomicInt":
        if exponent < 0:
            raise ValueError("Negative powers are not supported")
        result = CyclotomicInt.from_int(1, self.conductor)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, (int, CyclotomicInt)):
            return NotImplemented
        left, right = self._align(other)
        return left.coeffs == right.coeffs

    def __hash__(self) -> int:
        if self.is_rational_integer:
            return hash(self.to_int())
        # trace divided by the degree does not change under lift
        return hash(Fraction(self.trace(), len(self.coeffs)))

    def __repr__(self) -> str:
        return f"CyclotomicInt({self.conductor}, {list(self.coeffs)})"

    def __str__(self) -> str:
        if self.is_rational_integer:
            return str(self.to_int())
        terms: List[str] = []
        for e, c in enumerate(self.coeffs):
            if not c:
                continue
            if e == 0:
                terms.append(str(c))
                continue
            power = "ζ" if e == 1 else f"ζ^{e}"
            terms.append(power if c == 1 else f"-{power}" if c == -1 else f"{c}{power}")
        return " + ".join(terms).replace("+ -", "- ")

    def to_json(self) -> Union[int, Dict[str, object]]:
        if self.is_rational_integer:
            return self.to_int()
        return {"conductor": self.conductor, "coeffs": list(self.coeffs)}
