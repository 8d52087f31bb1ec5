import pytest

from backend.core.cyclotomic import CyclotomicInt
from backend.services.exceptions import InputError


def test_golden_ratio_pair_sums_to_minus_one():
    zeta = CyclotomicInt.root(5)
    first = zeta + zeta**4
    second = zeta**2 + zeta**3

    assert not first.is_rational_integer
    assert first + second == -1
    assert (first * second).to_int() == -1


def test_conjugation_inverts_roots():
    zeta = CyclotomicInt.root(6)
    assert zeta * zeta.conjugate() == 1
    assert zeta.conjugate() == zeta**5


def test_from_coefficients_reduces_long_lists():
    value = CyclotomicInt.from_coefficients(5, [0, 1, 0, 0, 1])
    assert value == CyclotomicInt.root(5) + CyclotomicInt.root(5, 4)
    assert len(value.coeffs) == 4


def test_mixed_conductors_align():
    i = CyclotomicInt.root(4)
    minus_one = CyclotomicInt.root(2)
    assert i * i == minus_one
    assert minus_one == -1


def test_json_form():
    assert CyclotomicInt.from_int(3, 6).to_json() == 3
    assert CyclotomicInt.root(3).to_json() == {"conductor": 3, "coeffs": [0, 1]}


def test_rejects_wrong_coefficient_count():
    with pytest.raises(InputError):
        CyclotomicInt(5, (1, 2))


def test_equal_values_at_different_conductors_hash_alike():
    omega = CyclotomicInt.root(3)
    lifted = omega.lift(12)

    assert omega == lifted
    assert hash(omega) == hash(lifted) == hash(omega.lift(6))
    assert len({omega, lifted, CyclotomicInt.root(12, 4)}) == 1


def test_galois_action_and_trace():
    zeta = CyclotomicInt.root(5)
    assert zeta.galois(2) == zeta**2
    assert zeta.trace() == -1
    assert CyclotomicInt.from_int(3, 5).trace() == 12
    with pytest.raises(InputError):
        zeta.galois(5)
