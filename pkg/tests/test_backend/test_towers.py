import pytest

from backend.core import towers
from backend.core.exact_linalg import AbelianGroup, IntMatrix, char_poly, smith_normal_form, snf_from_eigenvalues
from backend.core.posets import rank_size
from backend.core.words import UDWord, WordPolynomial, word_operator_matrix
from backend.services.exceptions import InputError, NotFaithfulError
from backend.services.verification import EXAMPLE_C_TILDE

UD = UDWord("UD")


def test_tower_rep_of_symmetric_group_permutation_representation():
    rep = towers.tower_rep(1, UD, 4)
    assert rep.dimension == 4
    assert rep.operator.shape == (5, 5)

    reversed_order = list(range(4, -1, -1))
    assert rep.c_tilde().submatrix(reversed_order, reversed_order) == IntMatrix.from_rows(EXAMPLE_C_TILDE)


@pytest.mark.parametrize("r", [1, 2, 3])
def test_tower_rep_at_rank_one(r):
    rep = towers.tower_rep(r, UD, 1)
    assert rep.dimension == r
    assert all(sum(rep.operator.row(i)) == r for i in range(rep.operator.rows))


@pytest.mark.parametrize("r, n, k", [(1, 4, 2), (2, 3, 2), (3, 2, 1), (2, 3, 3)])
def test_power_word_dimension(r, n, k):
    from math import factorial

    rep = towers.tower_rep(r, WordPolynomial.monomial(k), n)
    assert rep.dimension == r**k * factorial(n) // factorial(n - k)


@pytest.mark.parametrize(
    "r, n, factors",
    [(1, 4, (4,)), (1, 5, (20,)), (2, 2, (4, 4)), (1, 1, ())],
)
def test_ud_critical_group_direct_and_closed_form(r, n, factors):
    assert towers.tower_critical_group(r, UD, n).invariant_factors == factors
    assert towers.gen_perm_rep_critical_group(r, n).invariant_factors == factors


@pytest.mark.parametrize("r, n", [(1, 6), (1, 7), (2, 4), (3, 3)])
def test_closed_form_agrees_with_smith_form(r, n):
    assert towers.tower_critical_group(r, UD, n) == towers.gen_perm_rep_critical_group(r, n)


def test_identity_term_is_dropped():
    plain = towers.tower_critical_group(1, WordPolynomial({1: 1}), 4)
    shifted = towers.tower_critical_group(1, WordPolynomial({1: 1, 0: 3}), 4)
    assert plain == shifted


def test_tower_rep_rejects_bad_operators():
    with pytest.raises(InputError):
        towers.tower_rep(1, WordPolynomial({1: 1, 2: -1}), 3)
    with pytest.raises(InputError):
        towers.tower_rep(1, WordPolynomial({0: 2}), 3)
    with pytest.raises(InputError):
        towers.tower_rep(1, UDWord("UUD"), 3)
    with pytest.raises(InputError):
        towers.tower_rep(0, UD, 3)


def test_zero_representation_is_not_faithful():
    with pytest.raises(NotFaithfulError):
        towers.tower_rep(2, WordPolynomial.monomial(2), 1)


def test_structure_bounds():
    assert towers.structure_bounds(1, UD, 4) == (4, [(4, 1)])
    assert towers.structure_bounds(1, UD, 1) == (1, [])

    order, _ = towers.structure_bounds(1, WordPolynomial.monomial(2), 5)
    assert order == 336000
    assert towers.tower_critical_group(1, WordPolynomial.monomial(2), 5).order == order


@pytest.mark.parametrize("r, f, n", [(1, WordPolynomial({2: 1, 1: 2}), 5), (2, WordPolynomial({2: 1, 1: 1}), 3)])
def test_structure_bounds_subgroups_embed(r, f, n):
    order, subgroups = towers.structure_bounds(r, f, n)
    group = towers.tower_critical_group(r, f, n)
    assert group.order == order
    for modulus, exponent in subgroups:
        assert group.contains_subgroup(modulus, exponent)


def test_spectrum_predicts_smith_form_and_char_poly():
    f = WordPolynomial({2: 1, 1: 1})
    rep = towers.tower_rep(2, f, 3)
    assert sorted(snf_from_eigenvalues(towers.tower_spectrum(2, f, 3))) == sorted(rep.smith().coordinate_factors())
    assert char_poly(word_operator_matrix(f, 2, 3)) == towers.predicted_char_poly(2, f, 3)


def test_unitriangular_witness_over_y2():
    witness = towers.unitriangular_submatrix(2, 3, 2)
    assert witness.rows == (0, 3)
    assert witness.cols == (6, 9)
    assert witness.verified


def test_unitriangular_witness_sizes():
    witness = towers.unitriangular_submatrix(1, 5, 2)
    assert len(witness.rows) == len(witness.cols) == 3
    assert witness.verified

    full = towers.unitriangular_submatrix(2, 2, 0)
    assert len(full.rows) == len(full.cols) == rank_size(2, 2)
    assert full.verified


def test_ones_count_for_r_at_least_two():
    report = towers.ones_count(2, UDWord("UDUD"), 3)
    assert report.ones_count == 2
    assert report.exact == 2
    assert report.within_prediction


def test_ones_count_strictly_between_bounds_for_symmetric_groups():
    report = towers.ones_count(1, UDWord("UDUD"), 7)
    assert report.ones_count == 9
    assert (report.lower, report.upper) == (7, 11)
    assert report.exact is None
    assert report.within_prediction
    assert report.to_dict()["predicted"] == [7, 11]


def test_ones_count_for_power_words():
    report = towers.ones_count(1, UDWord("UUDD"), 7)
    assert report.ones_count == 7
    assert report.exact == 7
    assert report.ell == 2


def test_ones_count_rejects_long_words():
    with pytest.raises(InputError):
        towers.ones_count(1, UDWord("UUUDDD"), 2)


def test_conjecture_small_case():
    report = towers.check_conjecture(1, 4, 2)
    assert report.match
    assert report.asserted
    assert towers.tower_critical_group(1, WordPolynomial.monomial(2), 4) == AbelianGroup.from_orders([12, 60])


def test_conjecture_k_three_at_n_five():
    report = towers.check_conjecture(1, 5, 3)
    group = towers.tower_critical_group(1, WordPolynomial.monomial(3), 5)

    assert report.match
    assert group == AbelianGroup.from_orders([60, 60, 60, 1620])
    assert group.order == 349_920_000


def test_conjecture_degenerate_and_reported_cases():
    assert towers.check_conjecture(2, 3, 0).match
    report = towers.check_conjecture(2, 3, 1)
    assert not report.asserted
    assert report.to_dict()["r"] == 2


def test_conjecture_rejects_k_above_n():
    with pytest.raises(InputError):
        towers.check_conjecture(1, 2, 3)


@pytest.mark.parametrize("n", [4, 5, 6])
def test_hook_closed_form(n):
    assert towers.hook_closed_form(n) == towers.tower_critical_group(1, WordPolynomial.monomial(n - 2), n)


def test_hook_closed_form_needs_n_at_least_four():
    with pytest.raises(InputError):
        towers.hook_closed_form(3)


def test_ones_lower_bound_fails_for_down_before_up():
    down_up = towers.ones_count(1, UDWord("DDUU"), 2)
    assert down_up.ones_count == 0
    assert down_up.ones_count < towers.partition_count(0)

    assert towers.ones_count(1, UDWord("UUDD"), 2).ones_count == 1
