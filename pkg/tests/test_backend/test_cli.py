import json

from backend.services import verification
from scripts import run_cli


def test_snf_of_bundled_example(capsys):
    assert run_cli.main(["snf", "example"]) == run_cli.EXIT_OK
    out = capsys.readouterr().out
    assert "Z/4 ⊕ Z" in out


def test_graph_json_output(capsys):
    assert run_cli.main(["--format", "json", "graph", "cycle5"]) == run_cli.EXIT_OK
    payload = json.loads(capsys.readouterr().out)
    assert payload["group"]["invariant_factors"] == [5]
    assert payload["spanning_trees"] == 5


def test_rep_with_restriction(capsys):
    code = run_cli.main(
        ["--format", "json", "rep", "--builtin", "D5", "--rep", "sign=1,psi1=1", "--restrict-to", "Z5", "--fusion", "c5_in_d5"]
    )
    payload = json.loads(capsys.readouterr().out)

    assert code == run_cli.EXIT_OK
    assert payload["group"]["invariant_factors"] == [2]
    assert payload["restriction"]["group"]["invariant_factors"] == [5]
    assert payload["restriction"]["res_surjective"] is False


def test_tower_by_word_and_by_coefficients(capsys):
    assert run_cli.main(["--format", "json", "tower", "--r", "1", "--n", "4", "--word", "UD"]) == 0
    by_word = json.loads(capsys.readouterr().out)
    assert by_word["group"]["invariant_factors"] == [4]
    assert by_word["ones_report"]["ones"] == by_word["ones"] == 3

    assert run_cli.main(["--format", "json", "tower", "--r", "1", "--n", "4", "--f", "1:1"]) == 0
    by_coefficients = json.loads(capsys.readouterr().out)
    assert by_coefficients["group"] == by_word["group"]


def test_parse_error_exits_with_input_code(capsys):
    code = run_cli.main(["tower", "--r", "1", "--n", "4", "--word", "UD +"])
    err = capsys.readouterr().err
    assert code == run_cli.EXIT_INPUT
    assert "Parse error: Expression ended early." in err


def test_missing_dataset_exits_with_input_code(capsys):
    assert run_cli.main(["graph", "no_such_graph"]) == run_cli.EXIT_INPUT
    assert "Input error" in capsys.readouterr().err


def test_not_faithful_exits_with_input_code():
    assert run_cli.main(["rep", "--builtin", "S4", "--rep", "1,0,0,0,0"]) == run_cli.EXIT_INPUT


def test_cayley_with_generator_images(capsys):
    code = run_cli.main(
        ["--format", "json", "cayley", "--group", "Z6", "--subgroup", "Z2", "--rep", "chi1=1,chi3=1", "--images", "3"]
    )
    payload = json.loads(capsys.readouterr().out)
    assert code == 0
    assert payload["surjective"] is True
    assert sorted(payload["fibers"].values()) == [3, 3]


def test_conjecture_single_cell_and_output_files(tmp_path, capsys):
    code = run_cli.main(["--format", "json", "--output", str(tmp_path), "conjecture", "--r", "1", "--n", "4", "--k", "2"])
    payload = json.loads(capsys.readouterr().out)

    assert code == run_cli.EXIT_OK
    assert payload["match"] is True
    assert (tmp_path / "conjecture.json").exists()


def test_conjecture_grid_writes_csv(tmp_path, capsys):
    assert run_cli.main(["--output", str(tmp_path), "conjecture", "--grid", "1", "3"]) == run_cli.EXIT_OK
    capsys.readouterr()
    assert (tmp_path / "conjecture.csv").exists()


def test_conjecture_needs_all_parameters():
    assert run_cli.main(["conjecture", "--r", "1"]) == run_cli.EXIT_INPUT


def test_verify_exit_codes(monkeypatch, capsys):
    passing = verification.CheckSpec("ok", "anchor", lambda: verification.Outcome(expected=1, computed=1))
    failing = verification.CheckSpec("bad", "anchor", lambda: verification.Outcome(expected=1, computed=2))

    monkeypatch.setattr(verification, "worked_example_checks", lambda seed: [passing])
    assert run_cli.main(["verify", "--suite", "paper"]) == 0
    assert "1/1 checks passed" in capsys.readouterr().out

    monkeypatch.setattr(verification, "worked_example_checks", lambda seed: [passing, failing])
    assert run_cli.main(["verify", "--suite", "paper"]) == 1
    out = capsys.readouterr().out
    assert "FAIL" in out
    assert "expected: 1" in out
