from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import reduce
from itertools import combinations
from math import gcd
from typing import Iterable, List, Optional, Sequence, Tuple

import sympy
from sympy import Poly, factorint
from sympy.polys.domains import ZZ
from sympy.polys.matrices import DomainMatrix

from ..services.exceptions import IncompatibleMapError, InputError, InternalConsistencyError

logger = logging.getLogger(__name__)

X = sympy.Symbol("x")

_Rows = List[List[int]]


@dataclass(frozen=True)
class IntMatrix:
    """Dense integer matrix stored row-major; shapes with zero rows or columns are allowed."""

    rows: int
    cols: int
    entries: Tuple[int, ...]

    def __post_init__(self) -> None:
        if self.rows < 0 or self.cols < 0:
            raise InputError(f"Matrix shape must be nonnegative, got {self.rows}x{self.cols}")
        if len(self.entries) != self.rows * self.cols:
            raise InputError(
                f"Matrix {self.rows}x{self.cols} needs {self.rows * self.cols} entries, got {len(self.entries)}"
            )

    # -- constructors -----------------------------------------------------

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: Optional[int] = None) -> "IntMatrix":
        height = len(rows)
        width = len(rows[0]) if height else (cols or 0)
        flat: List[int] = []
        for index, row in enumerate(rows):
            if len(row) != width:
                raise InputError(f"Row {index} has {len(row)} entries, expected {width}")
            flat.extend(int(value) for value in row)
        return cls(height, width, tuple(flat))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, (0,) * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls.diagonal([1] * n)

    @classmethod
    def diagonal(cls, values: Sequence[int], rows: Optional[int] = None, cols: Optional[int] = None) -> "IntMatrix":
        rows = len(values) if rows is None else rows
        cols = len(values) if cols is None else cols
        data = [[0] * cols for _ in range(rows)]
        for i, value in enumerate(values):
            data[i][i] = int(value)
        return cls.from_rows(data, cols=cols)

    # -- access -------------------------------------------------------------

    def __getitem__(self, index: Tuple[int, int]) -> int:
        i, j = index
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> List[int]:
        return list(self.entries[i * self.cols:(i + 1) * self.cols])

    def column(self, j: int) -> List[int]:
        return [self.entries[i * self.cols + j] for i in range(self.rows)]

    def to_rows(self) -> _Rows:
        return [self.row(i) for i in range(self.rows)]

    @property
    def shape(self) -> Tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_zero(self) -> bool:
        return not any(self.entries)

    # -- arithmetic -----------------------------------------------------------

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise InputError(f"Cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        right_cols = [other.column(j) for j in range(other.cols)]
        data = [
            [sum(a * b for a, b in zip(self.row(i), col)) for col in right_cols]
            for i in range(self.rows)
        ]
        return IntMatrix.from_rows(data, cols=other.cols)

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        self._require_same_shape(other)
        return IntMatrix(self.rows, self.cols, tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        self._require_same_shape(other)
        return IntMatrix(self.rows, self.cols, tuple(a - b for a, b in zip(self.entries, other.entries)))

    def __neg__(self) -> "IntMatrix":
        return self.scale(-1)

    def scale(self, factor: int) -> "IntMatrix":
        return IntMatrix(self.rows, self.cols, tuple(factor * a for a in self.entries))

    def transpose(self) -> "IntMatrix":
        return IntMatrix.from_rows([self.column(j) for j in range(self.cols)], cols=self.rows)

    def hstack(self, other: "IntMatrix") -> "IntMatrix":
        if self.rows != other.rows:
            raise InputError("hstack needs matching row counts")
        return IntMatrix.from_rows(
            [self.row(i) + other.row(i) for i in range(self.rows)], cols=self.cols + other.cols
        )

    def vstack(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.cols:
            raise InputError("vstack needs matching column counts")
        return IntMatrix(self.rows + other.rows, self.cols, self.entries + other.entries)

    def submatrix(self, row_indices: Sequence[int], col_indices: Sequence[int]) -> "IntMatrix":
        return IntMatrix.from_rows(
            [[self[i, j] for j in col_indices] for i in row_indices], cols=len(col_indices)
        )

    def _require_same_shape(self, other: "IntMatrix") -> None:
        if self.shape != other.shape:
            raise InputError(f"Shape mismatch: {self.shape} vs {other.shape}")

    def _to_domain(self) -> DomainMatrix:
        return DomainMatrix([[ZZ(v) for v in row] for row in self.to_rows()], self.shape, ZZ)


@dataclass(frozen=True)
class AbelianGroup:
    """Finitely generated abelian group in invariant-factor form (free summands as trailing zeros)."""

    invariant_factors: Tuple[int, ...] = ()

    def __post_init__(self) -> None:
        factors = self.invariant_factors
        for value in factors:
            if value == 1 or value < 0:
                raise InputError(f"Invariant factors must be 0 or > 1, got {value}")
        seen_zero = False
        for previous, current in zip(factors, factors[1:]):
            if previous == 0:
                seen_zero = True
            if seen_zero and current != 0:
                raise InputError("Free summands must come last")
            if current != 0 and current % previous:
                raise InputError(f"Invariant factors {factors} do not form a divisibility chain")

    @classmethod
    def trivial(cls) -> "AbelianGroup":
        return cls(())

    @classmethod
    def from_orders(cls, orders: Iterable[int]) -> "AbelianGroup":
        """Canonicalize a direct sum of cyclic groups Z/o (o = 0 meaning Z) into invariant factors."""

        free = 0
        by_prime: dict = {}
        for order in orders:
            order = abs(int(order))
            if order == 0:
                free += 1
                continue
            for prime, exponent in factorint(order).items():
                by_prime.setdefault(prime, []).append(prime**exponent)
        length = max((len(powers) for powers in by_prime.values()), default=0)
        factors = [1] * length
        for powers in by_prime.values():
            powers.sort(reverse=True)
            for slot, power in enumerate(powers):
                factors[length - 1 - slot] *= power
        return cls(tuple(factors) + (0,) * free)

    @property
    def free_rank(self) -> int:
        return sum(1 for value in self.invariant_factors if value == 0)

    @property
    def is_finite(self) -> bool:
        return self.free_rank == 0

    @property
    def order(self) -> Optional[int]:
        """Group order, or ``None`` when the group has a free summand."""

        if not self.is_finite:
            return None
        result = 1
        for value in self.invariant_factors:
            result *= value
        return result

    def torsion(self) -> "AbelianGroup":
        return AbelianGroup(tuple(v for v in self.invariant_factors if v != 0))

    def elementary_divisors(self) -> List[int]:
        divisors: List[int] = []
        for value in self.invariant_factors:
            if value == 0:
                continue
            divisors.extend(p**e for p, e in factorint(value).items())
        return sorted(divisors) + [0] * self.free_rank

    def contains_subgroup(self, modulus: int, exponent: int) -> bool:
        """Whether (Z/modulus)^exponent embeds in this group."""

        if exponent <= 0 or modulus == 1:
            return True
        if modulus == 0:
            return self.free_rank >= exponent
        hits = sum(1 for v in self.invariant_factors if v != 0 and v % modulus == 0)
        return hits >= exponent

    def pretty(self) -> str:
        torsion = [f"Z/{v}" for v in self.invariant_factors if v != 0]
        free = self.free_rank
        if free == 1:
            torsion.append("Z")
        elif free > 1:
            torsion.append(f"Z^{free}")
        return " ⊕ ".join(torsion) if torsion else "trivial"

    def __str__(self) -> str:  # pragma: no cover - formatting helper
        return self.pretty()


@dataclass(frozen=True)
class SmithDecomposition:
    """P·M·Q = diag(diagonal) with P, Q unimodular; ``P_inverse`` is tracked alongside P."""

    P: IntMatrix
    Q: IntMatrix
    diagonal: Tuple[int, ...]
    P_inverse: IntMatrix
    source: IntMatrix

    @property
    def rank(self) -> int:
        return sum(1 for value in self.diagonal if value != 0)

    @property
    def ones_count(self) -> int:
        return sum(1 for value in self.diagonal if value == 1)

    def diagonal_matrix(self) -> IntMatrix:
        return IntMatrix.diagonal(self.diagonal, rows=self.source.rows, cols=self.source.cols)

    def coordinate_factors(self) -> List[int]:
        """Cyclic order of each Smith coordinate of the ambient lattice Z^rows."""

        return list(self.diagonal) + [0] * (self.source.rows - len(self.diagonal))

    def cokernel(self) -> AbelianGroup:
        return AbelianGroup(tuple(v for v in self.coordinate_factors() if v != 1))


@dataclass(frozen=True)
class CokernelMap:
    """Homomorphism coker(M) -> coker(N) written in Smith coordinates of both sides."""

    source: AbelianGroup
    target: AbelianGroup
    matrix_in_smith_coordinates: IntMatrix
    surjective: bool
    injective: bool

    @property
    def is_isomorphism(self) -> bool:
        return self.surjective and self.injective

    def is_identity(self) -> bool:
        size = len(self.source.invariant_factors)
        return self.source == self.target and self.matrix_in_smith_coordinates == IntMatrix.identity(size)


# -- Smith normal form ----------------------------------------------------------


class _Elimination:
    """Mutable working state for unimodular row/column reduction."""

    def __init__(self, matrix: IntMatrix) -> None:
        self.m, self.n = matrix.rows, matrix.cols
        self.A: _Rows = matrix.to_rows()
        self.P: _Rows = IntMatrix.identity(self.m).to_rows()
        self.P_inv: _Rows = IntMatrix.identity(self.m).to_rows()
        self.Q: _Rows = IntMatrix.identity(self.n).to_rows()

    def swap_rows(self, i: int, k: int) -> None:
        if i == k:
            return
        self.A[i], self.A[k] = self.A[k], self.A[i]
        self.P[i], self.P[k] = self.P[k], self.P[i]
        for row in self.P_inv:
            row[i], row[k] = row[k], row[i]

    def swap_cols(self, j: int, k: int) -> None:
        if j == k:
            return
        for row in self.A:
            row[j], row[k] = row[k], row[j]
        for row in self.Q:
            row[j], row[k] = row[k], row[j]

    def add_row(self, target: int, source: int, factor: int) -> None:
        """row[target] += factor * row[source]."""

        for mat in (self.A, self.P):
            src, dst = mat[source], mat[target]
            for j in range(len(dst)):
                dst[j] += factor * src[j]
        for row in self.P_inv:
            row[source] -= factor * row[target]

    def add_col(self, target: int, source: int, factor: int) -> None:
        """col[target] += factor * col[source]."""

        for mat in (self.A, self.Q):
            for row in mat:
                row[target] += factor * row[source]

    def negate_row(self, i: int) -> None:
        self.A[i] = [-v for v in self.A[i]]
        self.P[i] = [-v for v in self.P[i]]
        for row in self.P_inv:
            row[i] = -row[i]

    def mix_rows(self, i: int, k: int, a: int, b: int, c: int, d: int) -> None:
        """Replace rows (i, k) by [[a, b], [c, d]] applied to them; ad - bc must be 1."""

        for mat in (self.A, self.P):
            top, bottom = mat[i], mat[k]
            mat[i] = [a * x + b * y for x, y in zip(top, bottom)]
            mat[k] = [c * x + d * y for x, y in zip(top, bottom)]
        for row in self.P_inv:
            x, y = row[i], row[k]
            row[i], row[k] = d * x - c * y, -b * x + a * y

    def _min_pivot(self, t: int) -> Optional[Tuple[int, int]]:
        best: Optional[Tuple[int, int]] = None
        best_abs = 0
        for i in range(t, self.m):
            row = self.A[i]
            for j in range(t, self.n):
                value = row[j]
                if value and (best is None or abs(value) < best_abs):
                    best, best_abs = (i, j), abs(value)
        return best

    def _clear_cross(self, t: int) -> None:
        A = self.A
        while True:
            pivot = A[t][t]
            for i in range(t + 1, self.m):
                q = A[i][t] // pivot
                if q:
                    self.add_row(i, t, -q)
            for j in range(t + 1, self.n):
                q = A[t][j] // pivot
                if q:
                    self.add_col(j, t, -q)
            leftovers = [(abs(A[i][t]), i, t) for i in range(t + 1, self.m) if A[i][t]]
            leftovers += [(abs(A[t][j]), t, j) for j in range(t + 1, self.n) if A[t][j]]
            if not leftovers:
                return
            _, i, j = min(leftovers)
            self.swap_rows(t, i)
            self.swap_cols(t, j)

    def diagonalize(self) -> None:
        for t in range(min(self.m, self.n)):
            pivot = self._min_pivot(t)
            if pivot is None:
                break
            self.swap_rows(t, pivot[0])
            self.swap_cols(t, pivot[1])
            self._clear_cross(t)

    def repair_chain(self) -> None:
        size = min(self.m, self.n)
        for i in range(size):
            if self.A[i][i] < 0:
                self.negate_row(i)
        changed = True
        while changed:
            changed = False
            for i in range(size - 1):
                a, b = self.A[i][i], self.A[i + 1][i + 1]
                if a == 0 or b == 0 or b % a == 0:
                    continue
                g, s, t = _extended_gcd(a, b)
                j = i + 1
                self.add_col(i, j, 1)
                self.mix_rows(i, j, s, t, -b // g, a // g)
                self.add_col(j, i, -(t * b // g))
                changed = True


def _extended_gcd(a: int, b: int) -> Tuple[int, int, int]:
    """Return (g, s, t) with g = s*a + t*b and g >= 0."""

    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        return -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def smith_normal_form(M: IntMatrix) -> SmithDecomposition:
    work = _Elimination(M)
    work.diagonalize()
    work.repair_chain()
    diagonal = tuple(work.A[i][i] for i in range(min(M.rows, M.cols)))
    logger.debug("SNF of %dx%d matrix: %s", M.rows, M.cols, diagonal)
    return SmithDecomposition(
        P=IntMatrix.from_rows(work.P, cols=M.rows),
        Q=IntMatrix.from_rows(work.Q, cols=M.cols),
        diagonal=diagonal,
        P_inverse=IntMatrix.from_rows(work.P_inv, cols=M.rows),
        source=M,
    )


def cokernel(M: IntMatrix) -> AbelianGroup:
    return smith_normal_form(M).cokernel()


# -- determinants, minors, polynomials ------------------------------------------


def determinant(M: IntMatrix) -> int:
    if not M.is_square:
        raise InputError("Determinant needs a square matrix")
    if M.rows == 0:
        return 1
    return int(M._to_domain().det())


def minors_gcd(M: IntMatrix, k: int) -> int:
    if k <= 0:
        raise InputError("Minor size k must be positive")
    if k > min(M.rows, M.cols):
        raise InputError(f"Minor size {k} exceeds matrix shape {M.shape}")
    result = 0
    for row_idx in combinations(range(M.rows), k):
        for col_idx in combinations(range(M.cols), k):
            result = gcd(result, determinant(M.submatrix(row_idx, col_idx)))
            if result == 1:
                return 1
    return result


def char_poly(M: IntMatrix) -> Poly:
    """Monic characteristic polynomial det(xI - M) in the symbol ``x``."""

    if not M.is_square:
        raise InputError("Characteristic polynomial needs a square matrix")
    if M.rows == 0:
        return Poly(1, X, domain=ZZ)
    coeffs = [int(c) for c in M._to_domain().charpoly()]
    return Poly(coeffs, X, domain=ZZ)


def evaluate_polynomial_at(poly: Poly, M: IntMatrix) -> IntMatrix:
    """Horner evaluation of an integer polynomial at a square matrix."""

    result = IntMatrix.zeros(M.rows, M.cols)
    identity = IntMatrix.identity(M.rows)
    for coeff in poly.all_coeffs():
        result = result @ M + identity.scale(int(coeff))
    return result


def snf_from_eigenvalues(spectrum: Iterable[Tuple[int, int]]) -> List[int]:
    multiplicity: dict = {}
    for eigenvalue, count in spectrum:
        if count <= 0:
            raise InputError(f"Eigenvalue {eigenvalue} has non-positive multiplicity {count}")
        multiplicity[int(eigenvalue)] = multiplicity.get(int(eigenvalue), 0) + int(count)
    n = sum(multiplicity.values())
    if n == 0:
        raise InputError("Spectrum is empty")
    diagonal = [1] * n
    for i in range(1, n + 1):
        product = 1
        for eigenvalue, count in multiplicity.items():
            if count >= i:
                product *= eigenvalue
        diagonal[n - i] = abs(product)
    return diagonal


# -- integer solving and lattices ---------------------------------------------------


def solve_integer(A: IntMatrix, B: IntMatrix) -> Optional[IntMatrix]:
    if A.rows != B.rows:
        raise InputError(f"solve_integer needs A.rows == B.rows, got {A.rows} and {B.rows}")
    snf = smith_normal_form(A)
    rhs = snf.P @ B
    diagonal = snf.diagonal
    solution = [[0] * B.cols for _ in range(A.cols)]
    for j in range(B.cols):
        for i in range(A.rows):
            value = rhs[i, j]
            d = diagonal[i] if i < len(diagonal) else 0
            if d == 0:
                if value:
                    return None
                continue
            if value % d:
                return None
            solution[i][j] = value // d
    return snf.Q @ IntMatrix.from_rows(solution, cols=B.cols)


def kernel_basis(M: IntMatrix) -> IntMatrix:
    """Columns form a basis of the (saturated) integer kernel of M."""

    snf = smith_normal_form(M)
    return snf.Q.submatrix(range(M.cols), range(snf.rank, M.cols))


def hermite_normal_form(M: IntMatrix) -> IntMatrix:
    """Canonical basis (as columns) of the lattice spanned by the columns of M."""

    A = M.transpose().to_rows()
    width = M.rows
    pivot_row = 0
    for col in range(width):
        if pivot_row >= len(A):
            break
        while True:
            nonzero = [i for i in range(pivot_row, len(A)) if A[i][col]]
            if not nonzero:
                break
            best = min(nonzero, key=lambda i: (abs(A[i][col]), i))
            A[pivot_row], A[best] = A[best], A[pivot_row]
            pivot = A[pivot_row][col]
            for i in range(pivot_row + 1, len(A)):
                q = A[i][col] // pivot
                if q:
                    A[i] = [x - q * y for x, y in zip(A[i], A[pivot_row])]
            if all(A[i][col] == 0 for i in range(pivot_row + 1, len(A))):
                break
        if A[pivot_row][col] == 0:
            continue
        if A[pivot_row][col] < 0:
            A[pivot_row] = [-x for x in A[pivot_row]]
        pivot = A[pivot_row][col]
        for i in range(pivot_row):
            q = A[i][col] // pivot
            if q:
                A[i] = [x - q * y for x, y in zip(A[i], A[pivot_row])]
        pivot_row += 1
    basis = A[:pivot_row]
    if not basis:
        return IntMatrix.zeros(width, 0)
    return IntMatrix.from_rows(basis, cols=width).transpose()


def same_lattice(A: IntMatrix, B: IntMatrix) -> bool:
    if A.rows != B.rows:
        return False
    return hermite_normal_form(A) == hermite_normal_form(B)


# -- induced maps ---------------------------------------------------------------------


def induced_cokernel_map(F: IntMatrix, M: IntMatrix, N: IntMatrix) -> CokernelMap:
    if F.cols != M.rows or F.rows != N.rows:
        raise IncompatibleMapError(
            f"F is {F.rows}x{F.cols} but needs to be {N.rows}x{M.rows}",
            shapes=(F.shape, M.shape, N.shape),
        )
    if solve_integer(N, F @ M) is None:
        raise IncompatibleMapError(
            "F does not carry im(M) into im(N): F·M = N·X has no integer solution",
            shapes=(F.shape, M.shape, N.shape),
        )

    snf_m = smith_normal_form(M)
    snf_n = smith_normal_form(N)
    source_factors = snf_m.coordinate_factors()
    target_factors = snf_n.coordinate_factors()
    source_idx = [i for i, v in enumerate(source_factors) if v != 1]
    target_idx = [j for j, v in enumerate(target_factors) if v != 1]

    full = snf_n.P @ F @ snf_m.P_inverse
    data: _Rows = []
    for j in target_idx:
        modulus = target_factors[j]
        row = []
        for i in source_idx:
            value = full[j, i]
            row.append(value % modulus if modulus else value)
            # a free target coordinate must receive torsion as exactly zero
            image_of_relation = source_factors[i] * value
            if (image_of_relation % modulus) if modulus else image_of_relation:
                raise InternalConsistencyError(
                    f"Induced map is not well defined at Smith coordinates ({j}, {i})"
                )
        data.append(row)
    matrix = IntMatrix.from_rows(data, cols=len(source_idx))

    surjective = not cokernel(F.hstack(N)).invariant_factors
    preimage = kernel_basis(F.hstack(-N))
    top = preimage.submatrix(range(M.rows), range(preimage.cols))
    injective = same_lattice(top.hstack(M), M)

    logger.debug(
        "Induced map %s -> %s (surjective=%s, injective=%s)",
        snf_m.cokernel().pretty(),
        snf_n.cokernel().pretty(),
        surjective,
        injective,
    )
    return CokernelMap(
        source=snf_m.cokernel(),
        target=snf_n.cokernel(),
        matrix_in_smith_coordinates=matrix,
        surjective=surjective,
        injective=injective,
    )
