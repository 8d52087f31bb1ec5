import pytest

from backend.core import chartables as ct
from backend.core.exact_linalg import AbelianGroup, IntMatrix
from backend.core.posets import down_matrix
from backend.services.exceptions import InputError, NotFaithfulError, TableIntegrityError
from backend.services.verification import EXAMPLE_C_TILDE, S6_PAIRS


def _perm_rep(s4):
    return ct.RepVector.from_named(s4, {"(4)": 1, "(3,1)": 1})


def _values(table, irrep):
    return [value.to_int() for value in table.characters[table.irrep_index(irrep)]]


def test_s4_table_rows_and_columns():
    s4 = ct.build_symmetric_table(4)

    assert [c.name for c in s4.classes] == ["(1,1,1,1)", "(2,1,1)", "(2,2)", "(3,1)", "(4)"]
    assert s4.irrep_names[0] == "(4)"
    assert _values(s4, "(3,1)") == [3, 1, -1, 0, -1]
    assert _values(s4, "(1,1,1,1)") == [1, -1, 1, 1, -1]
    assert s4.trivial_index == 0


def test_symmetric_tables_satisfy_orthogonality():
    s6 = ct.build_symmetric_table(6)
    assert s6.num_irreps == 11
    assert sum(d * d for d in s6.dimensions) == 720
    assert s6.validate() is s6


def test_symmetric_builder_range():
    with pytest.raises(InputError):
        ct.build_symmetric_table(9)


def test_abelian_tables():
    z6 = ct.build_abelian_table((6,))
    assert z6.num_irreps == 6
    assert z6.is_abelian

    klein = ct.build_abelian_table((2, 2))
    assert all(value in (1, -1) for row in klein.characters for value in row)

    trivial = ct.build_abelian_table(())
    assert trivial.num_irreps == 1
    assert len(trivial.classes) == 1


def test_dihedral_table():
    d5 = ct.build_dihedral_table(5)
    assert d5.dimensions == [1, 1, 2, 2]
    assert not d5.value(d5.irrep_index("psi1"), d5.class_index("r")).is_rational_integer
    assert ct.build_dihedral_table(4).dimensions == [1, 1, 1, 1, 2]


def test_builtin_names():
    assert ct.builtin_table("s4").group_name == "S4"
    assert ct.builtin_table("Z2xZ2").group_name == "Z2xZ2"
    assert ct.builtin_table("trivial").order == 1
    with pytest.raises(InputError):
        ct.builtin_table("Q8")


def test_load_table_round_trip():
    s4 = ct.build_symmetric_table(4)
    loaded = ct.load_table(s4.to_json())
    assert loaded.characters == s4.characters
    assert loaded.irrep_names == s4.irrep_names


def test_load_table_rejects_corrupted_entry_with_pair():
    payload = ct.build_symmetric_table(4).to_json()
    payload["characters"][1][1] = 2

    with pytest.raises(TableIntegrityError) as exc_info:
        ct.load_table(payload)
    assert exc_info.value.pair is not None


def test_load_table_rejects_wrong_class_sizes():
    payload = ct.build_symmetric_table(3).to_json()
    payload["classes"][1]["size"] = 4

    with pytest.raises(TableIntegrityError):
        ct.load_table(payload)


def test_c_tilde_of_s4_permutation_representation():
    s4 = ct.build_symmetric_table(4)
    assert ct.c_tilde(s4, _perm_rep(s4)) == IntMatrix.from_rows(EXAMPLE_C_TILDE)


def test_c_tilde_of_trivial_representation_is_zero():
    s4 = ct.build_symmetric_table(4)
    trivial = ct.RepVector.from_named(s4, {"(4)": 1})
    assert ct.tensor_action_matrix(s4, trivial) == IntMatrix.identity(5)
    assert ct.c_tilde(s4, trivial).is_zero()


def test_critical_group_of_s4_permutation_representation():
    s4 = ct.build_symmetric_table(4)
    V = _perm_rep(s4)

    assert ct.critical_group(s4, V).invariant_factors == (4,)
    assert ct.critical_group_order(s4, V) == 4
    assert ct.repeated_value_subgroups(s4, V) == [(4, 1)]


def test_critical_group_of_d5_and_its_restriction():
    d5, c5 = ct.build_dihedral_table(5), ct.build_abelian_table((5,))
    V = ct.RepVector.from_named(d5, {"sign": 1, "psi1": 1})
    fusion = ct.cyclic_in_dihedral_fusion(5)

    assert ct.critical_group(d5, V).invariant_factors == (2,)
    assert ct.critical_group_order(d5, V) == 2

    res = ct.res_map_on_critical_groups(d5, c5, fusion, V)
    assert res.target.invariant_factors == (5,)
    assert not res.surjective


def test_two_dimensional_dihedral_irrep_restricts_to_conjugate_pair():
    d5, c5 = ct.build_dihedral_table(5), ct.build_abelian_table((5,))
    psi1 = ct.RepVector.from_named(d5, {"psi1": 1})
    restricted = ct.restrict(d5, c5, ct.cyclic_in_dihedral_fusion(5), psi1)
    assert restricted == ct.RepVector((0, 1, 0, 0, 1))


def test_z2_order_formula():
    z2 = ct.build_abelian_table((2,))
    assert ct.critical_group_order(z2, ct.RepVector((0, 2))) == 2
    assert ct.critical_group_order(z2, ct.RepVector.regular(z2)) == 1


def test_faithfulness():
    s4 = ct.build_symmetric_table(4)
    assert not ct.is_faithful(s4, ct.RepVector.from_named(s4, {"(4)": 1}))
    assert ct.is_faithful(s4, ct.RepVector.regular(s4))
    with pytest.raises(NotFaithfulError):
        ct.critical_group(s4, ct.RepVector.from_named(s4, {"(2,2)": 1}))


def test_tensor_action_is_multiplicative():
    s4 = ct.build_symmetric_table(4)
    V = ct.RepVector((0, 1, 1, 0, 0))
    W = ct.RepVector((1, 0, 0, 1, 0))
    product = ct.tensor_product(s4, V, W)

    assert ct.tensor_action_matrix(s4, V) @ ct.tensor_action_matrix(s4, W) == ct.tensor_action_matrix(s4, product)


def test_class_columns_are_eigenvectors():
    d5 = ct.build_dihedral_table(5)
    V = ct.RepVector.from_named(d5, {"sign": 1, "psi1": 1})
    assert all(ct.eigenvector_identity_holds(d5, V, c) for c in range(len(d5.classes)))


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_restriction_to_smaller_symmetric_group_is_young_down_map(n):
    group, subgroup = ct.build_symmetric_table(n), ct.build_symmetric_table(n - 1)
    R = ct.restriction_matrix(group, subgroup, ct.symmetric_fusion(n))
    rows = list(reversed(range(R.rows)))
    cols = list(reversed(range(R.cols)))
    assert R.submatrix(rows, cols) == down_matrix(1, n)


def test_invalid_fusion_is_rejected():
    d5, c5 = ct.build_dihedral_table(5), ct.build_abelian_table((5,))
    fusion = ct.ClassFusion((0, 1, 1, 1, 1), index=2)
    with pytest.raises(InputError):
        ct.restriction_matrix(d5, c5, fusion)


@pytest.mark.parametrize("left, right, orders", S6_PAIRS)
def test_s6_outer_twist_preserves_critical_group(left, right, orders):
    s6 = ct.build_symmetric_table(6)
    sigma = ct.s6_outer_automorphism()
    V = ct.RepVector.from_named(s6, {left: 1})
    twisted = ct.twist(s6, V, sigma)

    assert twisted == ct.RepVector.from_named(s6, {right: 1})
    assert ct.critical_group(s6, V) == AbelianGroup.from_orders(orders)
    assert ct.critical_group(s6, twisted) == ct.critical_group(s6, V)
    assert ct.class_permutation(s6, sigma) is not None


def test_twist_rejects_dimension_changes():
    s4 = ct.build_symmetric_table(4)
    with pytest.raises(InputError):
        ct.twist(s4, ct.RepVector.regular(s4), [1, 0, 2, 3, 4])


def test_identity_restriction_is_identity_on_critical_groups():
    s4 = ct.build_symmetric_table(4)
    fusion = ct.ClassFusion(tuple(range(5)), index=1)
    res = ct.res_map_on_critical_groups(s4, s4, fusion, _perm_rep(s4))
    assert res.is_identity()


def test_virtual_representation_dimension():
    s4 = ct.build_symmetric_table(4)
    V = ct.RepVector((1, -1, 0, 0, 0))
    assert V.dimension(s4) == -2
    assert not V.is_genuine
