import random

import pytest

from backend.core.exact_linalg import IntMatrix
from backend.core.words import (
    R,
    UDWord,
    WordPolynomial,
    alpha_values,
    down_up_closed_form,
    symbolic_normal_form,
    word_operator_matrix,
    word_to_normal_form,
)
from backend.services.exceptions import InputError, ParseError
from backend.services.operators import parse_coefficient_spec, parse_operator, parse_word
from backend.services.verification import UNITRIANGULAR_M1, UNITRIANGULAR_M2


def test_normal_form_of_udud():
    assert word_to_normal_form(UDWord("UDUD"), 2).coefficients == {2: 1, 1: 2}

    symbolic = symbolic_normal_form(UDWord("UDUD"))
    assert symbolic[2].as_expr() == 1
    assert symbolic[1].as_expr() == R


def test_normal_form_single_letters():
    assert word_to_normal_form(UDWord("UD"), 3).coefficients == {1: 1}
    assert word_to_normal_form(UDWord("DU"), 3).coefficients == {1: 1, 0: 3}
    assert symbolic_normal_form(UDWord("DU"))[0].as_expr() == R


def test_words_reject_other_letters_and_unbalanced_normal_forms():
    with pytest.raises(InputError):
        UDWord("UXD")
    with pytest.raises(InputError):
        word_to_normal_form(UDWord("UUD"), 1)


@pytest.mark.parametrize("r", [1, 2, 3])
def test_down_up_closed_form_matches_rewriting(r):
    for k in range(4):
        expected = word_to_normal_form(UDWord("D" * k + "U" * k), r).coefficients
        assert down_up_closed_form(k, r).coefficients == expected


def test_operator_matrices_over_y2_at_rank_three():
    assert word_operator_matrix(WordPolynomial.monomial(2), 2, 3) == IntMatrix.from_rows(UNITRIANGULAR_M2)
    assert word_operator_matrix(WordPolynomial.monomial(1), 2, 3) == IntMatrix.from_rows(UNITRIANGULAR_M1)


def test_operator_matrix_of_ud_and_the_empty_word():
    assert word_operator_matrix(UDWord("UD"), 1, 2) == IntMatrix.from_rows([[1, 1], [1, 1]])
    assert word_operator_matrix(UDWord(""), 2, 2) == IntMatrix.identity(5)


def test_word_and_normal_form_give_the_same_matrix():
    word = UDWord("DUUDDU")
    for r in (1, 2):
        direct = word_operator_matrix(word, r, 3)
        assert direct == word_operator_matrix(word_to_normal_form(word, r), r, 3)


@pytest.mark.parametrize("r, n", [(1, 4), (2, 3), (3, 2)])
def test_random_words_give_the_same_matrix_both_ways(r, n):
    rng = random.Random(f"words-{r}-{n}")
    for _ in range(10):
        k = rng.randint(1, 3)
        letters = ["U"] * k + ["D"] * k
        rng.shuffle(letters)
        word = UDWord("".join(letters))
        assert word_operator_matrix(word, r, n) == word_operator_matrix(word_to_normal_form(word, r), r, n), word


def test_alpha_values():
    assert alpha_values(WordPolynomial.monomial(2), 1, 4) == [0, 0, 2, 6, 12]
    assert alpha_values(WordPolynomial.monomial(1), 3, 3) == [0, 3, 6, 9]
    assert alpha_values(word_to_normal_form(UDWord("UDUD"), 2), 2, 3) == [0, 4, 16, 36]


def test_betas_round_trip_through_coefficients():
    f = WordPolynomial.from_betas({2: 1, 1: 3}, 2)
    assert f.coefficients == {2: 1, 1: 5}
    assert WordPolynomial(dict(f.coefficients)).beta_values(2) == {2: 1, 1: 3}


def test_word_polynomial_text():
    assert str(WordPolynomial({2: 1, 1: 2})) == "U^2D^2 + 2UD"
    assert str(WordPolynomial()) == "0"


@pytest.mark.parametrize("expression", ["UDUD", "(UD)^2", "U D U D", "ud ud"])
def test_parse_operator_accepts_equivalent_spellings(expression):
    assert parse_operator(expression, 2).coefficients == {2: 1, 1: 2}


def test_parse_operator_sums_and_coefficients():
    assert parse_operator("U^2D^2 + 2UD", 1).coefficients == {2: 1, 1: 2}
    assert parse_operator("3*UD + DU", 2).coefficients == {1: 4, 0: 2}


def test_parse_word_expands_powers():
    assert parse_word("(UD)^2").letters == "UDUD"
    assert parse_word("U^2D^2").letters == "UUDD"


def test_parse_word_rejects_sums():
    with pytest.raises(InputError):
        parse_word("UD + DU")


def test_parse_operator_rejects_unbalanced_words():
    with pytest.raises(InputError) as exc_info:
        parse_operator("UUD", 1)
    assert "not balanced" in str(exc_info.value)


def test_parse_error_reports_end_of_input():
    with pytest.raises(ParseError) as exc_info:
        parse_operator("UD +", 1)

    message = exc_info.value.message
    assert "Expression ended early." in message
    assert "U or D" in message


def test_parse_error_reports_bad_character_position():
    with pytest.raises(ParseError) as exc_info:
        parse_operator("UX", 1)

    error = exc_info.value
    assert 'Unexpected "X"' in error.message
    assert error.line == 1
    assert error.column == 2
    assert error.context


def test_parse_coefficient_spec():
    assert parse_coefficient_spec("2:1,1:3").coefficients == {2: 1, 1: 3}
    with pytest.raises(InputError):
        parse_coefficient_spec("2")
    with pytest.raises(InputError):
        parse_coefficient_spec("a:1")
