"""Representations V(f)_n of the wreath-product towers and their critical groups.

Level n of the tower A≀S_n (|A| = r) is identified with rank n of Y^r; the
operator f(U,D)_n is the matrix of multiplication by [V(f)_n] in that basis.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import reduce
from math import factorial, gcd
from typing import Dict, List, Optional, Tuple, Union

from sympy import Poly

from ..services.exceptions import InputError, InternalConsistencyError, NotFaithfulError
from .exact_linalg import X, AbelianGroup, IntMatrix, SmithDecomposition, smith_normal_form
from .posets import MultiPartition, Partition, delta_p, m0, partition_count, path_count, rank_basis, rank_size
from .words import (
    UDWord,
    WordPolynomial,
    alpha_values,
    down_up_closed_form,
    symbolic_normal_form,
    word_operator_matrix,
    word_to_normal_form,
)

logger = logging.getLogger(__name__)

Operator = Union[WordPolynomial, UDWord]


@dataclass(frozen=True)
class TowerRep:
    r: int
    n: int
    f: WordPolynomial
    dimension: int
    operator: IntMatrix

    def c_tilde(self) -> IntMatrix:
        return IntMatrix.identity(self.operator.rows).scale(self.dimension) - self.operator

    def smith(self) -> SmithDecomposition:
        return smith_normal_form(self.c_tilde())


@dataclass(frozen=True)
class UnitriangularWitness:
    """Row set S_k and column set T_k (0-based, r-lex order) of the U^kD^k matrix."""

    r: int
    n: int
    k: int
    rows: Tuple[int, ...]
    cols: Tuple[int, ...]
    verified: bool

    def to_dict(self) -> Dict[str, object]:
        return {
            "r": self.r,
            "n": self.n,
            "k": self.k,
            "rows": list(self.rows),
            "cols": list(self.cols),
            "verified": self.verified,
        }


@dataclass
class OnesReport:
    word: str
    r: int
    n: int
    k: int
    ones_count: int
    ell: int
    exact: Optional[int] = None
    lower: Optional[int] = None
    upper: Optional[int] = None
    gcd_condition: Optional[bool] = None
    unitriangular_witness: Optional[UnitriangularWitness] = None

    @property
    def within_prediction(self) -> bool:
        if self.exact is not None:
            return self.ones_count == self.exact
        return self.lower <= self.ones_count <= self.upper

    def to_dict(self) -> Dict[str, object]:
        predicted: Union[int, List[int]] = self.exact if self.exact is not None else [self.lower, self.upper]
        return {
            "word": self.word,
            "r": self.r,
            "n": self.n,
            "k": self.k,
            "ones": self.ones_count,
            "ell": self.ell,
            "predicted": predicted,
            "gcd_condition": self.gcd_condition,
            "within_prediction": self.within_prediction,
            "unitriangular_witness": self.unitriangular_witness.to_dict() if self.unitriangular_witness else None,
        }


@dataclass
class ConjectureReport:
    r: int
    n: int
    k: int
    predicted: List[int]
    computed: List[int]
    match: bool
    asserted: bool
    literal_exponent: int = 0
    used_exponent: int = 0
    inner: List[int] = field(default_factory=list)

    @property
    def multiplicity_discrepancy(self) -> bool:
        return self.literal_exponent != self.used_exponent

    def to_dict(self) -> Dict[str, object]:
        return {
            "r": self.r,
            "n": self.n,
            "k": self.k,
            "predicted": self.predicted,
            "computed": self.computed,
            "match": self.match,
            "asserted": self.asserted,
            "inner": self.inner,
            "literal_exponent": self.literal_exponent,
            "used_exponent": self.used_exponent,
            "multiplicity_discrepancy": self.multiplicity_discrepancy,
        }


def _check_rank(r: int, n: int) -> None:
    if r < 1:
        raise InputError(f"r must be at least 1, got {r}")
    if n < 0:
        raise InputError(f"Rank must be nonnegative, got {n}")


def as_polynomial(f: Operator, r: int) -> WordPolynomial:
    if isinstance(f, UDWord):
        return word_to_normal_form(f, r)
    return f.specialize(r)


def trivial_element(r: int, n: int) -> MultiPartition:
    """The multipartition ((n), ∅, ..., ∅) labelling the trivial representation of level n."""

    first = Partition((n,)) if n else Partition()
    return MultiPartition((first,) + (Partition(),) * (r - 1))


def tower_rep(r: int, f: Operator, n: int) -> TowerRep:
    _check_rank(r, n)
    poly = as_polynomial(f, r)
    if not poly.is_nonnegative():
        raise InputError(f"{poly} has a negative coefficient; expected a nonnegative sum of words")
    constant = poly.coefficients.get(0, 0)
    if constant:
        # multiples of the identity shift dim(V) and f(U,D)_n equally and leave the critical group alone
        logger.debug("Dropping the identity term %s of %s", constant, poly)
        poly = WordPolynomial({i: c for i, c in poly.coefficients.items() if i != 0})
    if poly.is_zero():
        raise InputError("f must contain a word of positive length")

    operator = word_operator_matrix(poly, r, n)
    dimension = alpha_values(poly, r, n)[n]
    if dimension == 0 and rank_size(r, n) > 1:
        raise NotFaithfulError(f"V({poly})_{n} is the zero representation")

    basis = rank_basis(r, n)
    trivial = basis.index_of(trivial_element(r, n))
    from_paths = sum(operator[i, trivial] * path_count(element) for i, element in enumerate(basis))
    if from_paths != dimension:
        raise InternalConsistencyError(
            f"dim V({poly})_{n}: alpha_n = {dimension} but the operator column gives {from_paths}"
        )
    return TowerRep(r=r, n=n, f=poly, dimension=dimension, operator=operator)


def tower_critical_group(r: int, f: Operator, n: int) -> AbelianGroup:
    rep = tower_rep(r, f, n)
    smith = rep.smith()
    zeros = smith.source.rows - smith.rank
    if zeros != 1:
        raise InternalConsistencyError(
            f"C~ for V({rep.f})_{n} over Y^{r} has {zeros} zero invariant factors, expected exactly one"
        )
    return smith.cokernel().torsion()


def gen_perm_rep_critical_group(r: int, n: int) -> AbelianGroup:
    """Closed form for the representation V(UD)_n: factors q_i = r^(n-m0+1)·n!/(m0-1)! for i >= 2."""

    _check_rank(r, n)
    if n < 1:
        raise InputError("The closed form needs n >= 1")
    orders = []
    for i in range(2, rank_size(r, n) + 1):
        start = m0(r, i, n)
        if start is None:
            continue
        orders.append(r ** (n - start + 1) * factorial(n) // factorial(start - 1))
    return AbelianGroup.from_orders(orders)


def tower_spectrum(r: int, f: Operator, n: int) -> List[Tuple[int, int]]:
    """Eigenvalues of C~ as (α_n - α_i, Δp_{n-i}), zero eigenvalue included."""

    alphas = alpha_values(as_polynomial(f, r), r, n)
    return [(alphas[n] - alphas[i], delta_p(r, n - i)) for i in range(n + 1) if delta_p(r, n - i) > 0]


def predicted_char_poly(r: int, f: Operator, n: int) -> Poly:
    """∏_i (x - α_i)^{Δp_{n-i}}, the characteristic polynomial of f(U,D)_n."""

    alphas = alpha_values(as_polynomial(f, r), r, n)
    result = Poly(1, X, domain="ZZ")
    for i in range(n + 1):
        multiplicity = delta_p(r, n - i)
        if multiplicity:
            result = result * Poly(X - alphas[i], X, domain="ZZ") ** multiplicity
    return result


def structure_bounds(r: int, f: Operator, n: int) -> Tuple[int, List[Tuple[int, int]]]:
    """Order from the spectrum, plus the subgroups (Z/(α_n-α_i))^{Δp_{n-i}-1} it must contain."""

    rep = tower_rep(r, f, n)
    alphas = alpha_values(rep.f, r, n)
    numerator = 1
    subgroups = []
    for i in range(n):
        gap, multiplicity = alphas[n] - alphas[i], delta_p(r, n - i)
        numerator *= gap**multiplicity
        if multiplicity >= 2 and gap > 1:
            subgroups.append((gap, multiplicity - 1))
    level_order = r**n * factorial(n)
    if numerator % level_order:
        raise InternalConsistencyError(f"Order {numerator}/{level_order} for V({rep.f})_{n} is not an integer")
    return numerator // level_order, subgroups


def unitriangular_submatrix(r: int, n: int, k: int) -> UnitriangularWitness:
    _check_rank(r, n)
    if not 0 <= k <= n:
        raise InputError(f"Need 0 <= k <= n, got k={k}, n={n}")
    basis = rank_basis(r, n)
    rows = tuple(i for i, lam in enumerate(basis) if lam.components[-1].count(1) >= k)
    cols = tuple(
        i for i, lam in enumerate(basis) if lam.components[0].part(0) - lam.components[0].part(1) >= k
    )
    sub = word_operator_matrix(WordPolynomial.monomial(k), r, n).submatrix(rows, cols)
    verified = sub.is_square and all(
        sub[i, j] == (1 if i == j else 0) for i in range(sub.rows) for j in range(i, sub.cols)
    )
    return UnitriangularWitness(r=r, n=n, k=k, rows=rows, cols=cols, verified=verified)


def _ell(word: UDWord) -> int:
    normal = symbolic_normal_form(word)
    return min(i for i, poly in normal.items() if not poly.is_zero)


def ones_count(r: int, word: UDWord, n: int) -> OnesReport:
    if not word.is_balanced:
        raise InputError(f"Word {word} is not balanced")
    k = word.half_length
    if k > n:
        raise InputError(f"Word {word} has length {2 * k} > 2n = {2 * n}")
    rep = tower_rep(r, word, n)
    ones = rep.smith().ones_count
    report = OnesReport(word=str(word), r=r, n=n, k=k, ones_count=ones, ell=_ell(word))

    is_power = word.letters == "U" * k + "D" * k
    if r >= 2 or is_power:
        report.exact = rank_size(r, n - k)
    else:
        report.lower = partition_count(n - k)
        report.upper = partition_count(n - report.ell)
        full = word_to_normal_form(word, r)
        coefficients = [int(full.coefficients.get(i, 0)) for i in range(1, k + 1)]
        report.gcd_condition = reduce(gcd, coefficients, rep.dimension) > 1
        if report.gcd_condition:
            report.exact = report.lower
    report.unitriangular_witness = unitriangular_submatrix(r, n, k)
    logger.debug("ones(%s) at r=%d n=%d: %d", word, r, n, ones)
    return report


def _smith_list(matrix: IntMatrix) -> List[int]:
    return smith_normal_form(matrix).coordinate_factors()


def check_conjecture(r: int, n: int, k: int) -> ConjectureReport:
    """Compare the predicted Smith diagonal of C~ for V(U^kD^k)_n with the computed one."""

    _check_rank(r, n)
    if not 0 <= k <= n:
        raise InputError(f"Need 0 <= k <= n, got k={k}, n={n}")
    asserted = r == 1
    if k == 0:
        return ConjectureReport(r=r, n=n, k=0, predicted=[], computed=[], match=True, asserted=asserted)

    c = r**k * factorial(n) // factorial(n - k)
    outer = tower_rep(r, WordPolynomial.monomial(k), n)
    computed = _smith_list(outer.c_tilde())

    inner_rank = n - k
    inner_operator = word_operator_matrix(down_up_closed_form(k, r), r, inner_rank)
    inner = _smith_list(IntMatrix.identity(inner_operator.rows).scale(c) - inner_operator)
    inner_ones = sum(1 for e in inner if e == 1)

    p_n, p_nk = rank_size(r, n), rank_size(r, n - k)
    literal = p_n - 2 * p_nk + rank_size(r, n - 2 * k)
    used = p_n - 2 * p_nk + inner_ones
    predicted = [1] * p_nk + [c] * max(used, 0) + [c * e for e in inner if e != 1]

    # a negative multiplicity only makes sense when c itself is a unit
    match = (used >= 0 or c == 1) and AbelianGroup.from_orders(predicted) == AbelianGroup.from_orders(computed)
    report = ConjectureReport(
        r=r,
        n=n,
        k=k,
        predicted=predicted,
        computed=computed,
        match=match,
        asserted=asserted,
        literal_exponent=literal,
        used_exponent=used,
        inner=inner,
    )
    if not match:
        logger.info("Conjecture mismatch at r=%d n=%d k=%d: %s vs %s", r, n, k, predicted, computed)
    if report.multiplicity_discrepancy:
        logger.info("Multiplicity of c at r=%d n=%d k=%d taken from the inner group: %d vs %d", r, n, k, used, literal)
    return report


def hook_closed_form(n: int) -> AbelianGroup:
    """K(V(U^{n-2}D^{n-2})_n) for symmetric groups, n >= 4."""

    if n < 4:
        raise InputError(f"The closed form needs n >= 4, got {n}")
    top = factorial(n) * factorial(n - 2) * (n - 2) * (n + 1)
    if top % 8:
        raise InternalConsistencyError(f"Largest factor {top}/8 is not an integer")
    return AbelianGroup.from_orders([factorial(n) // 2] * (partition_count(n) - 4) + [top // 8])
