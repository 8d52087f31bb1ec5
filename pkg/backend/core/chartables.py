"""Character tables over cyclotomic integers and critical groups of representations."""

from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache, reduce
from itertools import product
from math import factorial, gcd
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from ..services.exceptions import (
    InputError,
    InternalConsistencyError,
    NotFaithfulError,
    TableIntegrityError,
)
from ..services.schemas import CharacterTableDocument, CyclotomicEntry, parse_document
from .cyclotomic import CyclotomicInt
from .exact_linalg import AbelianGroup, CokernelMap, IntMatrix, cokernel, induced_cokernel_map
from .posets import Partition, partitions_of

logger = logging.getLogger(__name__)

# The outer automorphism of S6 exchanges these irreducibles; the other five are fixed.
S6_OUTER_SWAPS: Tuple[Tuple[str, str], ...] = (
    ("(5,1)", "(2,2,2)"),
    ("(2,1,1,1,1)", "(3,3)"),
    ("(4,1,1)", "(3,1,1,1)"),
)


@dataclass(frozen=True)
class ConjugacyClass:
    name: str
    size: int


@dataclass(frozen=True)
class CharacterTable:
    group_name: str
    order: int
    exponent: int
    classes: Tuple[ConjugacyClass, ...]
    characters: Tuple[Tuple[CyclotomicInt, ...], ...]
    irrep_names: Tuple[str, ...]
    identity_class: int = 0

    @property
    def num_irreps(self) -> int:
        return len(self.characters)

    @property
    def dimensions(self) -> List[int]:
        return [row[self.identity_class].to_int() for row in self.characters]

    @property
    def is_abelian(self) -> bool:
        return all(d == 1 for d in self.dimensions)

    @property
    def trivial_index(self) -> int:
        for i, row in enumerate(self.characters):
            if all(value == 1 for value in row):
                return i
        raise TableIntegrityError(f"Table {self.group_name} has no trivial character")

    def value(self, irrep: int, cls: int) -> CyclotomicInt:
        return self.characters[irrep][cls]

    def class_index(self, name: str) -> int:
        for i, cls in enumerate(self.classes):
            if cls.name == name:
                return i
        raise InputError(f"Table {self.group_name} has no class named {name!r}")

    def irrep_index(self, name: str) -> int:
        try:
            return self.irrep_names.index(name)
        except ValueError:
            raise InputError(f"Table {self.group_name} has no irreducible named {name!r}") from None

    def column(self, cls: int) -> List[CyclotomicInt]:
        return [row[cls] for row in self.characters]

    def inner_product(self, f: Sequence[CyclotomicInt], g: Sequence[CyclotomicInt]) -> CyclotomicInt:
        """(1/|G|) Σ_c |c| f(c) conj(g(c)), exactly."""

        total = CyclotomicInt.from_int(0, self.exponent)
        for cls, a, b in zip(self.classes, f, g):
            total = total + a * b.conjugate() * cls.size
        try:
            return total.exact_div(self.order)
        except ValueError:
            raise TableIntegrityError(
                f"Inner product is not an algebraic integer in table {self.group_name}"
            ) from None

    def integer_inner_product(self, f, g, pair: Tuple[object, object]) -> int:
        value = self.inner_product(f, g)
        if not value.is_rational_integer:
            raise TableIntegrityError(f"Inner product {value} is not a rational integer", pair=pair)
        return value.to_int()

    def validate(self) -> "CharacterTable":
        sizes = sum(cls.size for cls in self.classes)
        if sizes != self.order:
            raise TableIntegrityError(f"Class sizes sum to {sizes}, group order is {self.order}")
        if self.classes[self.identity_class].size != 1:
            raise TableIntegrityError("Identity class must have size 1")
        if self.num_irreps != len(self.classes):
            raise TableIntegrityError(
                f"{self.num_irreps} characters but {len(self.classes)} classes"
            )
        for i, row in enumerate(self.characters):
            dim = row[self.identity_class]
            if not dim.is_rational_integer or dim.to_int() <= 0:
                raise TableIntegrityError("Degree must be a positive integer", pair=(self.irrep_names[i], self.classes[self.identity_class].name))
        if sum(d * d for d in self.dimensions) != self.order:
            raise TableIntegrityError("Sum of squared degrees differs from the group order")
        for i in range(self.num_irreps):
            for j in range(i, self.num_irreps):
                pair = (self.irrep_names[i], self.irrep_names[j])
                try:
                    value = self.inner_product(self.characters[i], self.characters[j])
                except TableIntegrityError as exc:
                    raise TableIntegrityError(exc.message, pair=pair) from None
                if value != (1 if i == j else 0):
                    raise TableIntegrityError(f"Orthogonality fails: <χ_i, χ_j> = {value}", pair=pair)
        return self

    def to_json(self) -> Dict[str, object]:
        return {
            "name": self.group_name,
            "order": self.order,
            "exponent": self.exponent,
            "classes": [{"name": c.name, "size": c.size} for c in self.classes],
            "characters": [[value.to_json() for value in row] for row in self.characters],
            "irreps": list(self.irrep_names),
        }


@dataclass(frozen=True)
class RepVector:
    """Multiplicities over the irreducibles of a table; negative entries give virtual representations."""

    multiplicities: Tuple[int, ...]

    @classmethod
    def from_string(cls, text: str) -> "RepVector":
        try:
            return cls(tuple(int(piece) for piece in text.split(",") if piece.strip()))
        except ValueError as exc:
            raise InputError(f"Cannot read multiplicities {text!r}") from exc

    @classmethod
    def from_named(cls, table: CharacterTable, named: Mapping[str, int]) -> "RepVector":
        values = [0] * table.num_irreps
        for name, count in named.items():
            values[table.irrep_index(name)] += count
        return cls(tuple(values))

    @classmethod
    def regular(cls, table: CharacterTable) -> "RepVector":
        return cls(tuple(table.dimensions))

    @property
    def is_genuine(self) -> bool:
        return all(m >= 0 for m in self.multiplicities)

    def check(self, table: CharacterTable) -> "RepVector":
        if len(self.multiplicities) != table.num_irreps:
            raise InputError(
                f"Representation has {len(self.multiplicities)} multiplicities, table {table.group_name} has {table.num_irreps} irreducibles"
            )
        return self

    def dimension(self, table: CharacterTable) -> int:
        self.check(table)
        return sum(m * d for m, d in zip(self.multiplicities, table.dimensions))

    def character(self, table: CharacterTable) -> List[CyclotomicInt]:
        self.check(table)
        values = []
        for cls in range(len(table.classes)):
            total = CyclotomicInt.from_int(0, table.exponent)
            for m, row in zip(self.multiplicities, table.characters):
                if m:
                    total = total + row[cls] * m
            values.append(total)
        return values

    def __str__(self) -> str:
        return ",".join(str(m) for m in self.multiplicities)


@dataclass(frozen=True)
class ClassFusion:
    """Sends each class of a subgroup table to the class of the group containing it."""

    mapping: Tuple[int, ...]
    index: int

    def check(self, group: CharacterTable, subgroup: CharacterTable) -> "ClassFusion":
        if len(self.mapping) != len(subgroup.classes):
            raise InputError("Fusion must map every class of the subgroup")
        if any(not 0 <= c < len(group.classes) for c in self.mapping):
            raise InputError("Fusion refers to a class outside the group table")
        if self.mapping[subgroup.identity_class] != group.identity_class:
            raise InputError("Fusion must send the identity class to the identity class")
        if group.order % subgroup.order or group.order // subgroup.order != self.index:
            raise InputError(f"Index {self.index} does not match |G|/|H| = {group.order}/{subgroup.order}")
        return self


# -- builders -----------------------------------------------------------------------


def _cycle_type_name(parts: Sequence[int]) -> str:
    return "(" + ",".join(str(p) for p in parts) + ")"


@lru_cache(maxsize=None)
def murnaghan_nakayama(shape: Tuple[int, ...], cycle_type: Tuple[int, ...]) -> int:
    """χ^shape on the class of the given cycle type, by removing rim hooks on the beta-set."""

    if not cycle_type:
        return 1 if not shape else 0
    k, rest = cycle_type[0], cycle_type[1:]
    length = len(shape)
    beta = [shape[i] + length - 1 - i for i in range(length)]
    occupied = set(beta)
    total = 0
    for bead in beta:
        target = bead - k
        if target < 0 or target in occupied:
            continue
        sign = -1 if sum(1 for x in beta if target < x < bead) % 2 else 1
        moved = sorted((target if x == bead else x for x in beta), reverse=True)
        new_shape = tuple(p for p in (moved[i] - (length - 1 - i) for i in range(length)) if p > 0)
        total += sign * murnaghan_nakayama(new_shape, rest)
    return total


def _centralizer_order(parts: Sequence[int]) -> int:
    result = 1
    for part, multiplicity in Counter(parts).items():
        result *= part**multiplicity * factorial(multiplicity)
    return result


@lru_cache(maxsize=None)
def build_symmetric_table(n: int) -> CharacterTable:
    """Rows: partitions of n in descending lexicographic order (trivial first).
    Columns: cycle types in ascending lexicographic order (identity first)."""

    if not 1 <= n <= 8:
        raise InputError(f"Symmetric tables are built for 1 <= n <= 8, got {n}")
    cycle_types = partitions_of(n)
    shapes = list(reversed(cycle_types))
    classes = tuple(
        ConjugacyClass(_cycle_type_name(mu.parts), factorial(n) // _centralizer_order(mu.parts))
        for mu in cycle_types
    )
    characters = tuple(
        tuple(CyclotomicInt.from_int(murnaghan_nakayama(lam.parts, mu.parts)) for mu in cycle_types)
        for lam in shapes
    )
    logger.info("Built character table of S%d (%d classes)", n, len(classes))
    return CharacterTable(
        group_name=f"S{n}",
        order=factorial(n),
        exponent=1,
        classes=classes,
        characters=characters,
        irrep_names=tuple(_cycle_type_name(lam.parts) for lam in shapes),
    )


@lru_cache(maxsize=None)
def build_abelian_table(invariant_factors: Tuple[int, ...]) -> CharacterTable:
    factors = tuple(int(d) for d in invariant_factors)
    if any(d < 2 for d in factors):
        raise InputError(f"Cyclic factors must be at least 2, got {factors}")
    exponent = reduce(lambda a, b: a * b // gcd(a, b), factors, 1)
    elements = list(product(*(range(d) for d in factors)))
    order = len(elements)

    def label(vector: Tuple[int, ...]) -> str:
        return ",".join(str(v) for v in vector)

    characters = []
    for b in elements:
        row = []
        for a in elements:
            exponent_sum = sum(ai * bi * (exponent // d) for ai, bi, d in zip(a, b, factors))
            row.append(CyclotomicInt.root(exponent, exponent_sum))
        characters.append(tuple(row))
    name = "x".join(f"Z{d}" for d in factors) or "trivial"
    return CharacterTable(
        group_name=name,
        order=order,
        exponent=exponent,
        classes=tuple(ConjugacyClass(f"({label(a)})", 1) for a in elements),
        characters=tuple(characters),
        irrep_names=tuple(f"chi{label(b)}" if factors else "trivial" for b in elements),
    )


@lru_cache(maxsize=None)
def build_dihedral_table(n: int) -> CharacterTable:
    """Dihedral group of order 2n over conductor-n cyclotomics."""

    if n < 3:
        raise InputError(f"Dihedral tables need n >= 3, got {n}")
    one = CyclotomicInt.from_int(1, n)
    rotations = list(range(1, n // 2 + 1))
    classes = [ConjugacyClass("e", 1)]
    classes += [ConjugacyClass("r" if j == 1 else f"r^{j}", 1 if 2 * j == n else 2) for j in rotations]
    if n % 2:
        classes.append(ConjugacyClass("s", n))
    else:
        classes += [ConjugacyClass("s", n // 2), ConjugacyClass("sr", n // 2)]

    def linear(rotation_sign: int, reflection_values: Sequence[int]) -> Tuple[CyclotomicInt, ...]:
        values = [one] + [one * (rotation_sign**j) for j in rotations]
        return tuple(values + [one * v for v in reflection_values])

    characters = [linear(1, [1] if n % 2 else [1, 1]), linear(1, [-1] if n % 2 else [-1, -1])]
    names = ["trivial", "sign"]
    if n % 2 == 0:
        characters += [linear(-1, [1, -1]), linear(-1, [-1, 1])]
        names += ["eps_s", "eps_sr"]
    for h in range(1, (n - 1) // 2 + 1):
        values = [one * 2]
        values += [CyclotomicInt.from_exponents(n, {h * j: 1, -h * j: 1}) for j in rotations]
        values += [one * 0] * (1 if n % 2 else 2)
        characters.append(tuple(values))
        names.append(f"psi{h}")
    return CharacterTable(
        group_name=f"D{n}",
        order=2 * n,
        exponent=n,
        classes=tuple(classes),
        characters=tuple(characters),
        irrep_names=tuple(names),
    )


def _entry(value, conductor: int) -> CyclotomicInt:
    if isinstance(value, CyclotomicEntry):
        return CyclotomicInt.from_coefficients(value.conductor, value.coeffs)
    return CyclotomicInt.from_int(int(value), conductor)


def load_table(payload: object) -> CharacterTable:
    """Build a table from its JSON document and enforce every table invariant."""

    document: CharacterTableDocument = parse_document(CharacterTableDocument, payload, "character table")
    characters = []
    for row in document.characters:
        values = []
        for value in row:
            entry = _entry(value, document.exponent)
            if document.exponent % entry.conductor:
                raise TableIntegrityError(
                    f"Entry conductor {entry.conductor} does not divide exponent {document.exponent}"
                )
            values.append(entry.lift(document.exponent))
        characters.append(tuple(values))
    names = document.irreps or [f"chi{i}" for i in range(len(characters))]
    table = CharacterTable(
        group_name=document.name,
        order=document.order,
        exponent=document.exponent,
        classes=tuple(ConjugacyClass(c.name, c.size) for c in document.classes),
        characters=tuple(characters),
        irrep_names=tuple(names),
    )
    return table.validate()


# -- fusions ------------------------------------------------------------------------


def symmetric_fusion(n: int) -> ClassFusion:
    """S_{n-1} < S_n: append a fixed point to each cycle type."""

    group, subgroup = build_symmetric_table(n), build_symmetric_table(n - 1)
    mapping = []
    for cls in subgroup.classes:
        parts = Partition.from_string(cls.name.strip("()")).parts
        mapping.append(group.class_index(_cycle_type_name(parts + (1,))))
    return ClassFusion(tuple(mapping), index=n)


def cyclic_in_dihedral_fusion(n: int) -> ClassFusion:
    group, subgroup = build_dihedral_table(n), build_abelian_table((n,))
    mapping = []
    for j in range(n):
        j = min(j, n - j)
        mapping.append(group.class_index("e" if j == 0 else "r" if j == 1 else f"r^{j}"))
    return ClassFusion(tuple(mapping), index=2)


def abelian_fusion(
    group_factors: Sequence[int],
    subgroup_factors: Sequence[int],
    generator_images: Sequence[Sequence[int]],
) -> ClassFusion:
    """Subgroup of an abelian group given by the images of its standard generators."""

    group_factors, subgroup_factors = tuple(group_factors), tuple(subgroup_factors)
    if len(generator_images) != len(subgroup_factors):
        raise InputError("Need one image per subgroup generator")
    for d, image in zip(subgroup_factors, generator_images):
        if len(image) != len(group_factors):
            raise InputError(f"Image {list(image)} has the wrong length")
        if any((d * x) % g for x, g in zip(image, group_factors)):
            raise InputError(f"Image {list(image)} does not have order dividing {d}")
    elements = list(product(*(range(d) for d in group_factors)))
    position = {element: i for i, element in enumerate(elements)}
    mapping = []
    for a in product(*(range(d) for d in subgroup_factors)):
        image = tuple(
            sum(ai * img[k] for ai, img in zip(a, generator_images)) % g
            for k, g in enumerate(group_factors)
        )
        mapping.append(position[image])
    if len(set(mapping)) != len(mapping):
        raise InputError("Generator images do not define an injective map")
    group_order = len(elements)
    return ClassFusion(tuple(mapping), index=group_order // len(mapping))


# -- representation ring ------------------------------------------------------------


def decompose(table: CharacterTable, values: Sequence[CyclotomicInt]) -> RepVector:
    return RepVector(
        tuple(
            table.integer_inner_product(values, row, pair=("class function", table.irrep_names[i]))
            for i, row in enumerate(table.characters)
        )
    )


def tensor_product(table: CharacterTable, V: RepVector, W: RepVector) -> RepVector:
    return decompose(table, [a * b for a, b in zip(V.character(table), W.character(table))])


def tensor_action_matrix(table: CharacterTable, V: RepVector) -> IntMatrix:
    """Entry (i, j) = <χ_V χ_i, χ_j>: row i decomposes V ⊗ V_i."""

    chi_v = V.character(table)
    rows = []
    for i, row_i in enumerate(table.characters):
        product_values = [a * b for a, b in zip(chi_v, row_i)]
        rows.append(
            [
                table.integer_inner_product(product_values, row_j, pair=(table.irrep_names[i], table.irrep_names[j]))
                for j, row_j in enumerate(table.characters)
            ]
        )
    return IntMatrix.from_rows(rows, cols=table.num_irreps)


def is_faithful(table: CharacterTable, V: RepVector) -> bool:
    if not V.is_genuine:
        raise InputError("Faithfulness is defined for genuine representations")
    dim = V.dimension(table)
    chi_v = V.character(table)
    return all(value != dim for c, value in enumerate(chi_v) if c != table.identity_class)


def c_tilde(table: CharacterTable, V: RepVector) -> IntMatrix:
    """dim(V)·I minus the tensor action, rows indexed like the table."""

    dim = V.dimension(table)
    return IntMatrix.identity(table.num_irreps).scale(dim) - tensor_action_matrix(table, V)


def reduced_basis_matrix(operator: IntMatrix, dims: Sequence[int], source_trivial: int, target_trivial: int) -> IntMatrix:
    """Matrix of a column operator R(G) -> R(H) on the bases [V_i] - dim(V_i)[1] of the dimension-zero parts."""

    cols = [i for i in range(operator.cols) if i != source_trivial]
    rows = [k for k in range(operator.rows) if k != target_trivial]
    data = [
        [operator[k, i] - dims[i] * operator[k, source_trivial] for i in cols]
        for k in rows
    ]
    return IntMatrix.from_rows(data, cols=len(cols))


def reduced_operator(table: CharacterTable, V: RepVector) -> IntMatrix:
    """C_V on the dimension-zero part R_0(G), acting on column vectors."""

    column_operator = c_tilde(table, V).transpose()
    trivial = table.trivial_index
    return reduced_basis_matrix(column_operator, table.dimensions, trivial, trivial)


def _require_faithful(table: CharacterTable, V: RepVector) -> None:
    if not is_faithful(table, V):
        raise NotFaithfulError(f"Representation {V} is not faithful on {table.group_name}")


def critical_group(table: CharacterTable, V: RepVector) -> AbelianGroup:
    _require_faithful(table, V)
    reduced = cokernel(reduced_operator(table, V))
    full = cokernel(c_tilde(table, V))
    if full.free_rank != 1:
        raise InternalConsistencyError(
            f"coker(C~_V) has free rank {full.free_rank} for faithful V on {table.group_name}"
        )
    if full.torsion() != reduced:
        raise InternalConsistencyError(
            f"K(V) disagrees: {reduced.pretty()} on R_0 vs {full.torsion().pretty()} from C~_V"
        )
    logger.debug("K(%s) on %s = %s", V, table.group_name, reduced.pretty())
    return reduced


def critical_group_order(table: CharacterTable, V: RepVector) -> int:
    """(1/|G|) ∏ over non-identity classes of (dim V - χ_V(c))."""

    _require_faithful(table, V)
    dim = V.dimension(table)
    total = CyclotomicInt.from_int(1, table.exponent)
    for c, value in enumerate(V.character(table)):
        if c != table.identity_class:
            total = total * (dim - value)
    if not total.is_rational_integer:
        raise TableIntegrityError(f"Order product {total} is not a rational integer")
    numerator = total.to_int()
    if numerator % table.order or numerator <= 0:
        raise TableIntegrityError(f"Order product {numerator} is not a positive multiple of {table.order}")
    return numerator // table.order


def repeated_value_subgroups(table: CharacterTable, V: RepVector) -> List[Tuple[int, int]]:
    """(dim V - a, m - 1) for each integer value a taken on m >= 2 classes."""

    _require_faithful(table, V)
    dim = V.dimension(table)
    counts = Counter(value.to_int() for value in V.character(table) if value.is_rational_integer)
    return sorted((dim - a, m - 1) for a, m in counts.items() if m >= 2)


def eigenvector_identity_holds(table: CharacterTable, V: RepVector, cls: int) -> bool:
    """C~_V applied to the class column equals (dim V - χ_V(c)) times that column."""

    matrix = c_tilde(table, V)
    column = table.column(cls)
    eigenvalue = V.dimension(table) - V.character(table)[cls]
    for i in range(matrix.rows):
        lhs = CyclotomicInt.from_int(0, table.exponent)
        for j in range(matrix.cols):
            if matrix[i, j]:
                lhs = lhs + column[j] * matrix[i, j]
        if lhs != eigenvalue * column[i]:
            return False
    return True


# -- automorphism twists --------------------------------------------------------------


def twist(table: CharacterTable, V: RepVector, sigma: Sequence[int]) -> RepVector:
    """Permute multiplicities: the copy of V_i becomes a copy of V_sigma(i)."""

    V.check(table)
    if sorted(sigma) != list(range(table.num_irreps)):
        raise InputError(f"{list(sigma)} is not a permutation of the irreducibles")
    dims = table.dimensions
    for i, image in enumerate(sigma):
        if dims[i] != dims[image]:
            raise InputError(
                f"Twist sends {table.irrep_names[i]} (dim {dims[i]}) to {table.irrep_names[image]} (dim {dims[image]})"
            )
    twisted = [0] * table.num_irreps
    for i, image in enumerate(sigma):
        twisted[image] = V.multiplicities[i]
    return RepVector(tuple(twisted))


def permutation_from_swaps(table: CharacterTable, swaps: Sequence[Tuple[str, str]]) -> List[int]:
    sigma = list(range(table.num_irreps))
    for left, right in swaps:
        i, j = table.irrep_index(left), table.irrep_index(right)
        sigma[i], sigma[j] = j, i
    return sigma


def s6_outer_automorphism() -> List[int]:
    return permutation_from_swaps(build_symmetric_table(6), S6_OUTER_SWAPS)


def class_permutation(table: CharacterTable, sigma: Sequence[int]) -> Optional[List[int]]:
    """Class permutation pi with χ_sigma(i)(c) = χ_i(pi(c)), or None when sigma comes from no automorphism."""

    columns = {tuple(table.column(c)): c for c in range(len(table.classes))}
    pi = []
    for c in range(len(table.classes)):
        twisted = tuple(table.characters[sigma[i]][c] for i in range(table.num_irreps))
        target = columns.get(twisted)
        if target is None or table.classes[target].size != table.classes[c].size:
            return None
        pi.append(target)
    return pi if len(set(pi)) == len(pi) else None


# -- restriction and induction -------------------------------------------------------


def restriction_matrix(group: CharacterTable, subgroup: CharacterTable, fusion: ClassFusion) -> IntMatrix:
    """Column g holds the multiplicities of Res V_g over Irr(H)."""

    fusion.check(group, subgroup)
    data = [[0] * group.num_irreps for _ in range(subgroup.num_irreps)]
    for g, row in enumerate(group.characters):
        restricted = [row[fusion.mapping[c]] for c in range(len(subgroup.classes))]
        for h, psi in enumerate(subgroup.characters):
            try:
                value = subgroup.inner_product(restricted, psi)
            except TableIntegrityError:
                value = None
            if value is None or not value.is_rational_integer or value.to_int() < 0:
                raise InputError(
                    f"Invalid fusion: Res {group.irrep_names[g]} has multiplicity {value} on {subgroup.irrep_names[h]}"
                )
            data[h][g] = value.to_int()
    return IntMatrix.from_rows(data, cols=group.num_irreps)


def restrict(group: CharacterTable, subgroup: CharacterTable, fusion: ClassFusion, V: RepVector) -> RepVector:
    matrix = restriction_matrix(group, subgroup, fusion)
    V.check(group)
    return RepVector(tuple(sum(matrix[h, g] * V.multiplicities[g] for g in range(group.num_irreps)) for h in range(subgroup.num_irreps)))


def res_map_on_critical_groups(
    group: CharacterTable, subgroup: CharacterTable, fusion: ClassFusion, V: RepVector
) -> CokernelMap:
    _require_faithful(group, V)
    R = restriction_matrix(group, subgroup, fusion)
    res_v = restrict(group, subgroup, fusion, V)
    F = reduced_basis_matrix(R, group.dimensions, group.trivial_index, subgroup.trivial_index)
    return induced_cokernel_map(F, reduced_operator(group, V), reduced_operator(subgroup, res_v))


def ind_map_on_critical_groups(
    group: CharacterTable, subgroup: CharacterTable, fusion: ClassFusion, V: RepVector
) -> CokernelMap:
    """K(Res V) -> K(V), induced by the transpose of the restriction matrix."""

    _require_faithful(group, V)
    induction = restriction_matrix(group, subgroup, fusion).transpose()
    res_v = restrict(group, subgroup, fusion, V)
    F = reduced_basis_matrix(induction, subgroup.dimensions, subgroup.trivial_index, group.trivial_index)
    return induced_cokernel_map(F, reduced_operator(subgroup, res_v), reduced_operator(group, V))


def builtin_table(name: str) -> CharacterTable:
    """Names like S4, D5, Z6, Z2xZ2 or 'trivial'."""

    key = name.strip()
    try:
        if key.lower() == "trivial":
            return build_abelian_table(())
        if key[0] in "Ss":
            return build_symmetric_table(int(key[1:]))
        if key[0] in "Dd":
            return build_dihedral_table(int(key[1:]))
        if key[0] in "Zz":
            return build_abelian_table(tuple(int(piece.lstrip("Zz")) for piece in key.lower().split("x")))
    except (ValueError, IndexError):
        pass
    raise InputError(f"Unknown built-in table {name!r}")


def clear_caches() -> None:
    for cached in (murnaghan_nakayama, build_symmetric_table, build_abelian_table, build_dihedral_table):
        cached.cache_clear()
