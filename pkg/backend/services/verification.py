"""Verification suites: worked examples ("paper") and randomized identities ("properties")."""

from __future__ import annotations

import logging
import os
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from math import factorial, prod
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import pandas as pd

from ..core import chartables as ct
from ..core import sandpile as sp
from ..core import towers
from ..core.exact_linalg import (
    AbelianGroup,
    IntMatrix,
    char_poly,
    kernel_basis,
    minors_gcd,
    same_lattice,
    smith_normal_form,
    snf_from_eigenvalues,
)
from ..core.posets import delta_p, down_matrix, partition_count, path_count, rank_basis, rank_size, up_matrix
from ..core.words import UDWord, WordPolynomial, down_up_closed_form, word_operator_matrix, word_to_normal_form
from .exceptions import InputError, InternalConsistencyError, ServiceError

logger = logging.getLogger(__name__)

SUITES = ("paper", "properties")

EXAMPLE_C_TILDE = (
    (3, -1, 0, 0, 0),
    (-1, 2, -1, -1, 0),
    (0, -1, 3, -1, 0),
    (0, -1, -1, 2, -1),
    (0, 0, 0, -1, 3),
)

UNITRIANGULAR_M2 = (
    (1, 2, 1, 2, 2, 1, 1, 0, 0, 0),
    (2, 4, 2, 4, 4, 2, 2, 0, 0, 0),
    (1, 2, 1, 2, 2, 1, 1, 0, 0, 0),
    (2, 4, 2, 5, 5, 4, 4, 1, 2, 1),
    (2, 4, 2, 5, 5, 4, 4, 1, 2, 1),
    (1, 2, 1, 4, 4, 5, 5, 2, 4, 2),
    (1, 2, 1, 4, 4, 5, 5, 2, 4, 2),
    (0, 0, 0, 1, 1, 2, 2, 1, 2, 1),
    (0, 0, 0, 2, 2, 4, 4, 2, 4, 2),
    (0, 0, 0, 1, 1, 2, 2, 1, 2, 1),
)

UNITRIANGULAR_M1 = (
    (1, 1, 0, 1, 0, 0, 0, 0, 0, 0),
    (1, 2, 1, 1, 1, 0, 0, 0, 0, 0),
    (0, 1, 1, 0, 1, 0, 0, 0, 0, 0),
    (1, 1, 0, 2, 1, 1, 1, 0, 0, 0),
    (0, 1, 1, 1, 2, 1, 1, 0, 0, 0),
    (0, 0, 0, 1, 1, 2, 1, 1, 1, 0),
    (0, 0, 0, 1, 1, 1, 2, 0, 1, 1),
    (0, 0, 0, 0, 0, 1, 0, 1, 1, 0),
    (0, 0, 0, 0, 0, 1, 1, 1, 2, 1),
    (0, 0, 0, 0, 0, 0, 1, 0, 1, 1),
)

Y2_RANK3 = ("|1,1,1", "|2,1", "|3", "1|1,1", "1|2", "1,1|1", "2|1", "1,1,1|", "2,1|", "3|")

S6_PAIRS = (
    ("(5,1)", "(2,2,2)", (6, 6, 120)),
    ("(2,1,1,1,1)", "(3,3)", (24, 480)),
    ("(4,1,1)", "(3,1,1,1)", (3, 90, 47520)),
)


def default_seed() -> int:
    return int(os.getenv("CRITGROUP_SEED", "0"))


def verify_workers() -> int:
    return max(1, int(os.getenv("CRITGROUP_VERIFY_WORKERS", "4")))


@dataclass
class Outcome:
    expected: object
    computed: object
    passed: Optional[bool] = None
    asserted: bool = True


@dataclass
class VerificationResult:
    name: str
    anchor: str
    expected: object
    computed: object
    passed: bool
    asserted: bool = True
    error: Optional[str] = None
    error_kind: Optional[str] = None

    def to_dict(self) -> Dict[str, object]:
        return {
            "name": self.name,
            "anchor": self.anchor,
            "expected": self.expected,
            "computed": self.computed,
            "passed": self.passed,
            "asserted": self.asserted,
            "error": self.error,
        }


@dataclass(frozen=True)
class CheckSpec:
    name: str
    anchor: str
    run: Callable[[], Outcome]


def table(name: str) -> ct.CharacterTable:
    """Table lookup used by every check; tests swap it for corrupted fixtures."""

    return ct.builtin_table(name)


def _pretty(group: AbelianGroup) -> str:
    return group.pretty()


def _rows(matrix: IntMatrix) -> List[List[int]]:
    return [list(row) for row in matrix.to_rows()]


# -- worked examples ----------------------------------------------------------------


def _s4_permutation() -> Outcome:
    s4 = table("S4")
    V = ct.RepVector.from_named(s4, {"(4)": 1, "(3,1)": 1})
    matrix = ct.c_tilde(s4, V)
    return Outcome(
        expected={"c_tilde": [list(r) for r in EXAMPLE_C_TILDE], "snf": [0, 1, 1, 1, 4], "group": "Z/4", "order": 4},
        computed={
            "c_tilde": _rows(matrix),
            "snf": sorted(smith_normal_form(matrix).coordinate_factors()),
            "group": _pretty(ct.critical_group(s4, V)),
            "order": ct.critical_group_order(s4, V),
        },
    )


def _s4_tower_matches_example() -> Outcome:
    rep = towers.tower_rep(1, UDWord("UD"), 4)
    reversed_order = list(range(rep.operator.rows - 1, -1, -1))
    return Outcome(
        expected=[list(r) for r in EXAMPLE_C_TILDE],
        computed=_rows(rep.c_tilde().submatrix(reversed_order, reversed_order)),
    )


def _d5_restriction() -> Outcome:
    d5, c5 = table("D5"), table("Z5")
    V = ct.RepVector.from_named(d5, {"sign": 1, "psi1": 1})
    induced = ct.res_map_on_critical_groups(d5, c5, ct.cyclic_in_dihedral_fusion(5), V)
    return Outcome(
        expected={"K(V)": "Z/2", "K(Res V)": "Z/5", "surjective": False},
        computed={
            "K(V)": _pretty(ct.critical_group(d5, V)),
            "K(Res V)": _pretty(induced.target),
            "surjective": induced.surjective,
        },
    )


def _s6_twist(left: str, right: str, orders: Tuple[int, ...]) -> Callable[[], Outcome]:
    def run() -> Outcome:
        s6 = table("S6")
        sigma = ct.permutation_from_swaps(s6, ct.S6_OUTER_SWAPS)
        V = ct.RepVector.from_named(s6, {left: 1})
        twisted = ct.twist(s6, V, sigma)
        expected = _pretty(AbelianGroup.from_orders(orders))
        return Outcome(
            expected={left: expected, right: expected, "automorphism": True},
            computed={
                left: _pretty(ct.critical_group(s6, V)),
                right: _pretty(ct.critical_group(s6, twisted)),
                "automorphism": ct.class_permutation(s6, sigma) is not None,
            },
        )

    return run


def _cayley_z6() -> Outcome:
    z6, z2 = table("Z6"), table("Z2")
    V = ct.RepVector.from_named(z6, {"chi1": 1, "chi3": 1})
    fusion = ct.abelian_fusion((6,), (2,), [[3]])
    covering, induced = sp.cayley_covering(z6, z2, fusion, V)
    graph = sp.cayley_graph(z6, V)
    return Outcome(
        expected={
            "graph_group": _pretty(ct.critical_group(z6, V)),
            "fibers": [3, 3],
            "surjective": True,
            "matches_restriction": True,
        },
        computed={
            "graph_group": _pretty(sp.graph_critical_group(graph)),
            "fibers": sorted(covering.fiber_sizes().values()),
            "surjective": induced.surjective,
            "matches_restriction": sp.covering_matches_restriction(z6, z2, fusion, V),
        },
    )


def _closed_form_ud(r: int, n: int) -> Callable[[], Outcome]:
    def run() -> Outcome:
        return Outcome(
            expected=_pretty(towers.gen_perm_rep_critical_group(r, n)),
            computed=_pretty(towers.tower_critical_group(r, UDWord("UD"), n)),
        )

    return run


def _random_word(rng: random.Random, n: int) -> UDWord:
    k = rng.randint(1, n)
    letters = ["U"] * k + ["D"] * k
    rng.shuffle(letters)
    return UDWord("".join(letters))


def _ones_random_words(r: int, n: int, seed: int, count: int = 25) -> Callable[[], Outcome]:
    def run() -> Outcome:
        rng = random.Random(f"{seed}-ones-{r}-{n}")
        words = [_random_word(rng, n) for _ in range(count)]
        expected = {str(w): rank_size(r, n - w.half_length) for w in words}
        computed = {str(w): towers.ones_count(r, w, n).ones_count for w in words}
        return Outcome(expected=expected, computed=computed)

    return run


def _ones_powers_r1(n: int) -> Callable[[], Outcome]:
    def run() -> Outcome:
        words = [UDWord("U" * k + "D" * k) for k in range(1, n + 1)]
        return Outcome(
            expected=[partition_count(n - w.half_length) for w in words],
            computed=[towers.ones_count(1, w, n).ones_count for w in words],
        )

    return run


def _unitriangular_y2_rank3() -> Outcome:
    report = towers.ones_count(2, UDWord("UDUD"), 3)
    witness = towers.unitriangular_submatrix(2, 3, 2)
    return Outcome(
        expected={
            "basis": list(Y2_RANK3),
            "ones": 2,
            "M2": [list(r) for r in UNITRIANGULAR_M2],
            "M1": [list(r) for r in UNITRIANGULAR_M1],
            "witness": {"rows": [0, 3], "cols": [6, 9], "verified": True},
        },
        computed={
            "basis": [str(element) for element in rank_basis(2, 3)],
            "ones": report.ones_count,
            "M2": _rows(word_operator_matrix(WordPolynomial.monomial(2), 2, 3)),
            "M1": _rows(word_operator_matrix(WordPolynomial.monomial(1), 2, 3)),
            "witness": {"rows": list(witness.rows), "cols": list(witness.cols), "verified": witness.verified},
        },
    )


def _ones_r1_boundary() -> Outcome:
    report = towers.ones_count(1, UDWord("UDUD"), 7)
    return Outcome(
        expected={"ones": 9, "bounds": [7, 11]},
        computed={"ones": report.ones_count, "bounds": [report.lower, report.upper]},
    )


def _conjecture(r: int, n: int, k: int) -> Callable[[], Outcome]:
    def run() -> Outcome:
        report = towers.check_conjecture(r, n, k)
        return Outcome(
            expected=report.predicted,
            computed=report.computed,
            passed=report.match,
            asserted=report.asserted,
        )

    return run


def _hook_closed_form(n: int) -> Callable[[], Outcome]:
    def run() -> Outcome:
        direct = towers.tower_critical_group(1, WordPolynomial.monomial(n - 2), n)
        return Outcome(expected=_pretty(towers.hook_closed_form(n)), computed=_pretty(direct))

    return run


def _hook_order_n5() -> Outcome:
    order, _ = towers.structure_bounds(1, WordPolynomial.monomial(3), 5)
    return Outcome(
        expected={"group": "Z/60 ⊕ Z/60 ⊕ Z/60 ⊕ Z/1620", "order": 349_920_000},
        computed={"group": _pretty(towers.hook_closed_form(5)), "order": order},
    )


def worked_example_checks(seed: int) -> List[CheckSpec]:
    checks = [
        CheckSpec("s4_permutation_representation", "S4 acting on four points", _s4_permutation),
        CheckSpec("s4_tower_matches_permutation_example", "S4 acting on four points, tower basis", _s4_tower_matches_example),
        CheckSpec("d5_restriction_not_surjective", "D5 restricted to its rotations", _d5_restriction),
        CheckSpec("z6_cayley_covering", "Cayley graph of the dual of Z6 covering Z2", _cayley_z6),
        CheckSpec("ones_unitriangular_y2_rank3", "U^2D^2 and UD matrices over Y^2 at rank 3", _unitriangular_y2_rank3),
        CheckSpec("ones_r1_ud_squared_n7", "(UD)^2 in the symmetric-group tower at n = 7", _ones_r1_boundary),
        CheckSpec("hook_order_n5", "Ind from S2 to S5 of the trivial representation", _hook_order_n5),
    ]
    for left, right, orders in S6_PAIRS:
        checks.append(
            CheckSpec(f"s6_outer_twist_{left}", "S6 outer automorphism twist", _s6_twist(left, right, orders))
        )
    for r, top in ((1, 7), (2, 5), (3, 4)):
        for n in range(1, top + 1):
            checks.append(
                CheckSpec(f"closed_form_ud_r{r}_n{n}", "critical group of V(UD)_n in closed form", _closed_form_ud(r, n))
            )
    for r in (2, 3):
        for n in (2, 3, 4):
            checks.append(
                CheckSpec(f"ones_random_words_r{r}_n{n}", "ones(w) = |(Y^r)_(n-k)| for r >= 2", _ones_random_words(r, n, seed))
            )
    for n in range(1, 8):
        checks.append(CheckSpec(f"ones_powers_r1_n{n}", "ones(U^kD^k) = p(n-k)", _ones_powers_r1(n)))
    for r, top in ((1, 6), (2, 4)):
        for n in range(1, top + 1):
            for k in range(n + 1):
                checks.append(
                    CheckSpec(f"conjecture_r{r}_n{n}_k{k}", "smallest factors of K(V(U^kD^k)_n)", _conjecture(r, n, k))
                )
    for n in (4, 5, 6):
        checks.append(CheckSpec(f"hook_closed_form_n{n}", "K(V(U^(n-2)D^(n-2))_n) in closed form", _hook_closed_form(n)))
    return checks


# -- randomized identities ----------------------------------------------------------


def _columns(M: IntMatrix) -> List[Dict[int, int]]:
    columns: List[Dict[int, int]] = [{} for _ in range(M.cols)]
    for i, row in enumerate(M.to_rows()):
        for j, value in enumerate(row):
            if value:
                columns[j][i] = value
    return columns


def _sparse_product(A: IntMatrix, B: IntMatrix) -> List[Dict[int, int]]:
    left = _columns(A)
    result = []
    for column in _columns(B):
        out: Dict[int, int] = {}
        for k, b in column.items():
            for i, a in left[k].items():
                out[i] = out.get(i, 0) + a * b
        result.append(out)
    return result


def _commutation(r: int, n: int) -> Callable[[], Outcome]:
    def run() -> Outcome:
        du = _sparse_product(down_matrix(r, n + 1), up_matrix(r, n))
        if n > 0:
            for j, column in enumerate(_sparse_product(up_matrix(r, n - 1), down_matrix(r, n))):
                for i, value in column.items():
                    du[j][i] = du[j].get(i, 0) - value
        diagonal = sorted({column.get(j, 0) for j, column in enumerate(du)})
        off_diagonal = sum(1 for j, column in enumerate(du) for i, value in column.items() if i != j and value)
        return Outcome(
            expected={"diagonal": [r], "off_diagonal_nonzero": 0},
            computed={"diagonal": diagonal, "off_diagonal_nonzero": off_diagonal},
        )

    return run


def _kernel_of_down(r: int, n: int) -> Callable[[], Outcome]:
    def run() -> Outcome:
        D = down_matrix(r, n)
        kernel = kernel_basis(D)
        zero_eigenspace = kernel_basis(up_matrix(r, n - 1) @ D)
        return Outcome(
            expected={"rank": delta_p(r, n), "equals_zero_eigenspace": True},
            computed={"rank": kernel.cols, "equals_zero_eigenspace": same_lattice(kernel, zero_eigenspace)},
        )

    return run


def _word_paths(r: int, n: int, seed: int, count: int = 8) -> Callable[[], Outcome]:
    def run() -> Outcome:
        rng = random.Random(f"{seed}-paths-{r}-{n}")
        expected, computed = {}, {}
        for _ in range(count):
            word = _random_word(rng, 3)
            expected[str(word)] = _rows(word_operator_matrix(word, r, n))
            computed[str(word)] = _rows(word_operator_matrix(word_to_normal_form(word, r), r, n))
        return Outcome(expected=expected, computed=computed)

    return run


def _char_poly_factorization(r: int, n: int, seed: int) -> Callable[[], Outcome]:
    def run() -> Outcome:
        rng = random.Random(f"{seed}-charpoly-{r}-{n}")
        coefficients = {i: rng.randint(0, 2) for i in range(1, 4)}
        coefficients[rng.randint(1, 3)] += 1
        expected, computed = {}, {}
        for f in (WordPolynomial.monomial(1), WordPolynomial(coefficients)):
            operator = word_operator_matrix(f, r, n)
            expected[str(f)] = str(towers.predicted_char_poly(r, f, n).as_expr())
            computed[str(f)] = str(char_poly(operator).as_expr())
        return Outcome(expected=expected, computed=computed)

    return run


def _dimension_squares(r: int, n: int) -> Callable[[], Outcome]:
    def run() -> Outcome:
        return Outcome(
            expected=r**n * factorial(n),
            computed=sum(path_count(element) ** 2 for element in rank_basis(r, n)),
        )

    return run


def _down_surjective(r: int, n: int) -> Callable[[], Outcome]:
    def run() -> Outcome:
        diagonal = smith_normal_form(down_matrix(r, n)).diagonal
        return Outcome(expected=[1] * rank_size(r, n - 1), computed=list(diagonal))

    return run


def _random_rep(rng: random.Random, t: ct.CharacterTable) -> ct.RepVector:
    for _ in range(50):
        V = ct.RepVector(tuple(rng.randint(0, 2) for _ in range(t.num_irreps)))
        if V.dimension(t) and ct.is_faithful(t, V):
            return V
    return ct.RepVector.regular(t)


def _representation_identities(name: str, seed: int) -> Callable[[], Outcome]:
    def run() -> Outcome:
        t = table(name)
        rng = random.Random(f"{seed}-rep-{name}")
        expected, computed = {}, {}
        for _ in range(3):
            V = _random_rep(rng, t)
            group = ct.critical_group(t, V)
            key = str(V)
            embeds = all(group.contains_subgroup(m, e) for m, e in ct.repeated_value_subgroups(t, V))
            eigen = all(ct.eigenvector_identity_holds(t, V, c) for c in range(len(t.classes)))
            expected[key] = {"order": ct.critical_group_order(t, V), "subgroups_embed": True, "eigenvectors": True}
            computed[key] = {"order": group.order, "subgroups_embed": embeds, "eigenvectors": eigen}
        return Outcome(expected=expected, computed=computed)

    return run


def _tower_bounds(r: int, n: int, seed: int) -> Callable[[], Outcome]:
    def run() -> Outcome:
        rng = random.Random(f"{seed}-bounds-{r}-{n}")
        f = WordPolynomial({i: rng.randint(0, 2) for i in range(1, 4)}) + WordPolynomial.monomial(1)
        group = towers.tower_critical_group(r, f, n)
        order, subgroups = towers.structure_bounds(r, f, n)
        spectrum = towers.tower_spectrum(r, UDWord("UD"), n)
        ud = towers.tower_rep(r, UDWord("UD"), n).smith()
        return Outcome(
            expected={"order": order, "subgroups_embed": True, "ud_from_eigenvalues": snf_from_eigenvalues(spectrum)},
            computed={
                "order": group.order,
                "subgroups_embed": all(group.contains_subgroup(m, e) for m, e in subgroups),
                "ud_from_eigenvalues": sorted(ud.diagonal, key=lambda v: (v == 0, v)),
            },
        )

    return run


def _cayley_identification(group_name: str, V: Dict[str, int], sub_name: str, images: Sequence[Sequence[int]]) -> Callable[[], Outcome]:
    def run() -> Outcome:
        g, h = table(group_name), table(sub_name)
        rep = ct.RepVector.from_named(g, V)
        graph = sp.cayley_graph(g, rep)
        fusion = ct.abelian_fusion(_factors(group_name), _factors(sub_name), images)
        _, induced = sp.cayley_covering(g, h, fusion, rep)
        return Outcome(
            expected={"laplacian": _rows(ct.c_tilde(g, rep)), "surjective": True, "matches_restriction": True},
            computed={
                "laplacian": _rows(sp.laplacian(graph)),
                "surjective": induced.surjective,
                "matches_restriction": sp.covering_matches_restriction(g, h, fusion, rep),
            },
        )

    return run


def _factors(name: str) -> Tuple[int, ...]:
    return tuple(int(piece.lstrip("Zz")) for piece in name.lower().split("x"))


def _spanning_trees(seed: int) -> Outcome:
    rng = random.Random(f"{seed}-graphs")
    expected, computed = [], []
    for _ in range(8):
        size = rng.randint(2, 6)
        names = [f"v{i}" for i in range(size)]
        edges = [(names[i], names[(i + 1) % size], 1) for i in range(size)]
        for _ in range(rng.randint(0, 2 * size)):
            edges.append((rng.choice(names), rng.choice(names), rng.randint(1, 2)))
        graph = sp.Digraph.from_edges(names, edges, sink="v0")
        expected.append(sp.spanning_tree_count(graph))
        computed.append(sp.graph_critical_group(graph).order)
    return Outcome(expected=expected, computed=computed)


def _minors(seed: int) -> Outcome:
    rng = random.Random(f"{seed}-minors")
    expected, computed = [], []
    for _ in range(20):
        rows, cols = rng.randint(1, 6), rng.randint(1, 6)
        M = IntMatrix.from_rows([[rng.randint(-9, 9) for _ in range(cols)] for _ in range(rows)], cols=cols)
        diagonal = smith_normal_form(M).diagonal
        for k in range(1, min(rows, cols) + 1):
            expected.append(abs(prod(diagonal[:k])))
            computed.append(minors_gcd(M, k))
    return Outcome(expected=expected, computed=computed)


def _planted_spectrum(seed: int) -> Outcome:
    rng = random.Random(f"{seed}-planted")
    expected, computed = [], []
    for _ in range(6):
        primes = rng.sample([2, 3, 5, 7, 11, 13], rng.randint(1, 3))
        spectrum = [(p, rng.randint(1, 2)) for p in primes]
        values = [p for p, m in spectrum for _ in range(m)]
        size = len(values)
        P, P_inv = IntMatrix.identity(size), IntMatrix.identity(size)
        for _ in range(3 * size if size > 1 else 0):
            i, j = rng.sample(range(size), 2)
            factor = rng.choice([-2, -1, 1, 2])
            step = [[int(a == b) + (factor if (a, b) == (i, j) else 0) for b in range(size)] for a in range(size)]
            undo = [[int(a == b) - (factor if (a, b) == (i, j) else 0) for b in range(size)] for a in range(size)]
            P = P @ IntMatrix.from_rows(step, cols=size)
            P_inv = IntMatrix.from_rows(undo, cols=size) @ P_inv
        M = P @ IntMatrix.diagonal(values) @ P_inv
        expected.append(snf_from_eigenvalues(spectrum))
        computed.append(list(smith_normal_form(M).diagonal))
    return Outcome(expected=expected, computed=computed)


def _down_up_closed_form(r: int) -> Callable[[], Outcome]:
    def run() -> Outcome:
        expected, computed = {}, {}
        for k in range(1, 5):
            expected[k] = down_up_closed_form(k, r).coefficients
            computed[k] = word_to_normal_form(UDWord("D" * k + "U" * k), r).coefficients
        return Outcome(expected=expected, computed=computed)

    return run


def _r1_word_bounds(n: int, seed: int) -> Callable[[], Outcome]:
    """The upper bound p(n - ell(w)) is asserted; the lower bound is reported."""

    def run() -> Outcome:
        rng = random.Random(f"{seed}-r1-{n}")
        reports = [towers.ones_count(1, _random_word(rng, n), n) for _ in range(10)]
        return Outcome(
            expected={r.word: {"at_most": r.upper} for r in reports},
            computed={r.word: {"ones": r.ones_count, "at_least_lower": r.ones_count >= r.lower} for r in reports},
            passed=all(r.ones_count <= r.upper for r in reports),
        )

    return run


def property_checks(seed: int) -> List[CheckSpec]:
    checks = [
        CheckSpec("spanning_trees_match_group_order", "|K(Γ)| counts spanning trees towards the sink", lambda: _spanning_trees(seed)),
        CheckSpec("minors_gcd_prefix_products", "gcd of k-minors is the product of the first k invariant factors", lambda: _minors(seed)),
        CheckSpec("snf_from_planted_spectrum", "Smith form read off coprime eigenvalues", lambda: _planted_spectrum(seed)),
        CheckSpec(
            "cayley_laplacian_z6",
            "Laplacian of a dual Cayley graph equals C~_V",
            _cayley_identification("Z6", {"chi1": 1, "chi3": 1}, "Z3", [[2]]),
        ),
        CheckSpec(
            "cayley_laplacian_z2xz2",
            "Laplacian of a dual Cayley graph equals C~_V",
            _cayley_identification("Z2xZ2", {"chi0,1": 1, "chi1,0": 1, "chi1,1": 1}, "Z2", [[1, 0]]),
        ),
    ]
    for r in (1, 2, 3):
        checks.append(CheckSpec(f"down_up_closed_form_r{r}", "D^kU^k expanded in U^iD^i", _down_up_closed_form(r)))
        for n in range(0, 8):
            checks.append(CheckSpec(f"commutation_r{r}_n{n}", "DU - UD = rI", _commutation(r, n)))
        for n in range(0, 5):
            checks.append(CheckSpec(f"dimension_squares_r{r}_n{n}", "Σ e(λ)^2 = r^n n!", _dimension_squares(r, n)))
        for n in range(1, 5):
            checks.append(CheckSpec(f"down_surjective_r{r}_n{n}", "D has all-ones Smith form on Y^r", _down_surjective(r, n)))
            checks.append(CheckSpec(f"kernel_of_down_r{r}_n{n}", "ker D_n is the 0-eigenspace of UD_n", _kernel_of_down(r, n)))
            checks.append(CheckSpec(f"word_paths_r{r}_n{n}", "word matrix equals its normal form matrix", _word_paths(r, n, seed)))
            checks.append(
                CheckSpec(f"char_poly_r{r}_n{n}", "characteristic polynomial of f(U,D)_n", _char_poly_factorization(r, n, seed))
            )
        for n in range(1, 5 if r == 1 else 4):
            checks.append(CheckSpec(f"tower_bounds_r{r}_n{n}", "order and subgroups of K(V(f)_n)", _tower_bounds(r, n, seed)))
    for name in ("S4", "S5", "D5", "D4", "Z6"):
        checks.append(
            CheckSpec(f"representation_identities_{name}", "order formula, repeated values, class eigenvectors", _representation_identities(name, seed))
        )
    for n in (3, 4, 5):
        checks.append(CheckSpec(f"ones_r1_upper_bound_n{n}", "ones(w) <= p(n - ell(w)) for r = 1", _r1_word_bounds(n, seed)))
    return checks


# -- running ------------------------------------------------------------------------


def _execute(spec: CheckSpec) -> VerificationResult:
    try:
        outcome = spec.run()
    except InternalConsistencyError as exc:
        logger.info("Check %s hit an internal inconsistency: %s", spec.name, exc)
        return VerificationResult(spec.name, spec.anchor, None, None, False, error=str(exc), error_kind="internal")
    except ServiceError as exc:
        logger.info("Check %s failed on input: %s", spec.name, exc)
        return VerificationResult(spec.name, spec.anchor, None, None, False, error=str(exc), error_kind="input")
    passed = outcome.passed if outcome.passed is not None else outcome.expected == outcome.computed
    logger.debug("Check %s: %s", spec.name, "pass" if passed else "FAIL")
    return VerificationResult(
        name=spec.name,
        anchor=spec.anchor,
        expected=outcome.expected,
        computed=outcome.computed,
        passed=passed,
        asserted=outcome.asserted,
    )


def run_checks(checks: Sequence[CheckSpec], workers: Optional[int] = None) -> List[VerificationResult]:
    workers = workers or verify_workers()
    with ThreadPoolExecutor(max_workers=workers) as pool:
        results = list(pool.map(_execute, checks))
    return sorted(results, key=lambda result: result.name)


def run_suite(suite: str, seed: Optional[int] = None, workers: Optional[int] = None) -> List[VerificationResult]:
    if suite not in SUITES:
        raise InputError(f"Unknown suite {suite!r}; choose one of {', '.join(SUITES)}")
    seed = default_seed() if seed is None else seed
    checks = worked_example_checks(seed) if suite == "paper" else property_checks(seed)
    logger.info("Running %s suite: %d checks, seed %d", suite, len(checks), seed)
    results = run_checks(checks, workers)
    failed = [r.name for r in results if r.asserted and not r.passed]
    logger.info("%s suite finished: %d passed, %d failed", suite, len(results) - len(failed), len(failed))
    return results


def suite_exit_code(results: Sequence[VerificationResult]) -> int:
    if any(r.error_kind == "internal" for r in results):
        return 3
    if any(r.asserted and not r.passed for r in results):
        return 1
    return 0


def results_frame(results: Sequence[VerificationResult]) -> pd.DataFrame:
    frame = pd.DataFrame([result.to_dict() for result in results])
    if frame.empty:
        return pd.DataFrame(columns=["name", "anchor", "expected", "computed", "passed", "asserted", "error"])
    return frame


def conjecture_grid(r_max: int, n_max: int, workers: Optional[int] = None) -> pd.DataFrame:
    """Check every (r, n, k) with r <= r_max, k <= n <= n_max; one row per cell."""

    if r_max < 1 or n_max < 0:
        raise InputError("Grid bounds must satisfy r_max >= 1 and n_max >= 0")
    cells = [(r, n, k) for r in range(1, r_max + 1) for n in range(n_max + 1) for k in range(n + 1)]
    with ThreadPoolExecutor(max_workers=workers or verify_workers()) as pool:
        reports = list(pool.map(lambda cell: towers.check_conjecture(*cell), cells))
    frame = pd.DataFrame([report.to_dict() for report in reports])
    return frame.sort_values(["r", "n", "k"]).reset_index(drop=True)
