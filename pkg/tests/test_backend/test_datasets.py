import json

import pytest

from backend.core import chartables as ct
from backend.services import datasets
from backend.services.exceptions import DatasetNotFound, InputError


@pytest.fixture
def dataset_root(tmp_path, monkeypatch):
    for kind in datasets.DATASET_KINDS:
        (tmp_path / kind).mkdir()
    monkeypatch.setenv("CRITGROUP_DATASETS_ROOT", str(tmp_path))
    datasets.clear_dataset_cache()
    yield tmp_path
    datasets.clear_dataset_cache()


def _write(root, kind, name, payload):
    path = root / kind / f"{name}.json"
    path.write_text(json.dumps(payload), encoding="utf-8")
    return path


def test_bundled_matrix_loads():
    matrix = datasets.load_matrix("example")
    assert matrix.shape == (5, 5)
    assert matrix[0, 0] == 3


def test_matrix_from_configured_root(dataset_root):
    _write(dataset_root, "matrices", "tiny", {"rows": 1, "cols": 2, "entries": [[2, "123456789012345678901234567890"]]})

    matrix = datasets.load_matrix("tiny")

    assert matrix[0, 1] == 123456789012345678901234567890
    assert datasets.list_datasets("matrices") == ["tiny"]


def test_matrix_from_explicit_path(tmp_path):
    path = tmp_path / "elsewhere.json"
    path.write_text(json.dumps({"rows": 1, "cols": 1, "entries": [[7]]}), encoding="utf-8")
    assert datasets.load_matrix(str(path))[0, 0] == 7


def test_matrix_shape_mismatch_is_input_error(dataset_root):
    _write(dataset_root, "matrices", "ragged", {"rows": 2, "cols": 2, "entries": [[1, 2]]})
    with pytest.raises(InputError) as exc_info:
        datasets.load_matrix("ragged")
    assert "expected 2 rows" in str(exc_info.value)


def test_invalid_json_is_input_error(dataset_root):
    (dataset_root / "graphs" / "broken.json").write_text("{not json", encoding="utf-8")
    with pytest.raises(InputError):
        datasets.load_graph("broken")


def test_missing_dataset_is_not_found(dataset_root):
    with pytest.raises(DatasetNotFound):
        datasets.load_graph("nowhere")
    with pytest.raises(DatasetNotFound):
        datasets.load_graph("../nowhere")


def test_dataset_names_are_restricted(dataset_root):
    with pytest.raises(InputError):
        datasets.resolve_path("graphs", "bad name!")
    with pytest.raises(InputError):
        datasets.list_datasets("pictures")


def test_graph_with_unknown_vertex_is_rejected():
    payload = {"vertices": ["a"], "edges": [["a", "b"]]}
    with pytest.raises(InputError):
        datasets.load_graph(payload)


def test_tables_prefer_builtins_then_files(dataset_root):
    _write(dataset_root, "tables", "S3_copy", ct.build_symmetric_table(3).to_json())

    assert datasets.load_table("S4").group_name == "S4"
    assert datasets.load_table("S3_copy").characters == ct.build_symmetric_table(3).characters
    assert "S3_copy" in datasets.list_tables()
    assert "D5" in datasets.list_tables()


def test_bundled_dihedral_table_matches_builtin():
    assert datasets.load_table("D5_cyclotomic").characters == ct.build_dihedral_table(5).characters
    assert datasets.load_table("S4_table").characters == ct.build_symmetric_table(4).characters


def test_bundled_fusion_matches_builder():
    d5, c5 = ct.build_dihedral_table(5), ct.build_abelian_table((5,))
    fusion = datasets.load_fusion("c5_in_d5", d5, c5)
    assert fusion.mapping == ct.cyclic_in_dihedral_fusion(5).mapping


def test_fusion_must_cover_every_class():
    d5, c5 = ct.build_dihedral_table(5), ct.build_abelian_table((5,))
    with pytest.raises(InputError):
        datasets.load_fusion({"fusion": [0, 1, 2]}, d5, c5)


def test_group_json_encodes_large_orders_as_strings():
    from backend.core.exact_linalg import AbelianGroup

    payload = datasets.group_to_json(AbelianGroup((2**70,)))
    assert payload["order"] == str(2**70)
    assert payload["pretty"] == f"Z/{2**70}"
