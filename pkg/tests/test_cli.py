import json

from baokit.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_example_command(capsys):
    code, out = run_cli(capsys, "example", "--u", "3")
    assert code == 0
    assert "verdict: pass" in out


def test_example_json_deterministic(capsys):
    code, first = run_cli(capsys, "--json", "example", "--u", "2")
    assert code == 0
    code, second = run_cli(capsys, "--json", "example", "--u", "2")
    assert first == second
    payload = json.loads(first)
    assert payload["verdict"] == "pass"
    assert "elapsed" not in payload and "timing" not in payload


def test_seeded_sweep_json_deterministic(capsys):
    argv = ["--json", "tau-sigma-delta", "--u", "3", "--samples", "40", "--seed", "7"]
    code, first = run_cli(capsys, *argv)
    assert code == 0
    _, second = run_cli(capsys, *argv)
    assert first == second


def test_atoms_command_with_dump(tmp_path, capsys):
    dump = tmp_path / "algebra.txt"
    code, out = run_cli(
        capsys, "atoms", "--u", "2", "--n", "2", "--gens", "diag:0,1", "--dump", str(dump)
    )
    assert code == 0
    text = dump.read_text()
    assert text.startswith("baokit-algebra 1")
    from baokit import FiniteAlgebra

    assert len(FiniteAlgebra.deserialize(text).carrier) == 4


def test_check_identity_pass_and_fail(capsys):
    code, _ = run_cli(
        capsys,
        "check-identity",
        "--kind",
        "CA",
        "--u",
        "2",
        "--n",
        "2",
        "--lhs",
        "(cyl 0 (var 0))",
        "--rhs",
        "(cyl 0 (cyl 0 (var 0)))",
    )
    assert code == 0
    code, out = run_cli(
        capsys,
        "check-identity",
        "--kind",
        "CA",
        "--u",
        "2",
        "--n",
        "2",
        "--lhs",
        "(var 0)",
        "--rhs",
        "(not (var 0))",
    )
    assert code == 1
    assert "fail" in out


def test_window_surrogate_verdict(capsys):
    code, out = run_cli(capsys, "window", "--formula", "eta", "--fixed", "0", "--w", "16")
    assert code == 0
    assert "surrogate-pass" in out


def test_window_capacity_exit_code(capsys):
    code = main(["window", "--formula", "eta", "--fixed", "0", "--w", "200"])
    assert code == 2


def test_unknown_formula_usage_error(capsys):
    code = main(["window", "--formula", "nonsense"])
    assert code == 2


def test_translate_and_pairing_and_arith(capsys):
    for argv in (
        ["translate", "--rank", "2"],
        ["pairing", "--rank", "3"],
        ["free-ba", "--k", "2"],
        ["hereditary", "--u", "2", "--n", "2", "--trials", "4"],
        ["tau-sigma-delta", "--u", "2"],
        ["arith", "--max", "6"],
    ):
        code, out = run_cli(capsys, *argv)
        assert code == 0, argv
        assert "verdict: pass" in out


def test_corpus_check_shipped(capsys):
    code, out = run_cli(capsys, "corpus-check")
    assert code == 0
    assert "verdict: pass" in out


def test_corpus_check_empty_and_unrestricted(tmp_path, capsys):
    empty = tmp_path / "empty.txt"
    empty.write_text("# nothing here\n")
    code, out = run_cli(capsys, "corpus-check", str(empty))
    assert code == 0
    assert "warning" in out
    unrestricted = tmp_path / "swapped.txt"
    unrestricted.write_text("swapped: E(v1,v0)\n")
    code, out = run_cli(capsys, "corpus-check", str(unrestricted), "--require-restricted")
    assert code == 1
    assert "not restricted: swapped" in out


def test_corpus_check_parse_failure_lists_line(tmp_path, capsys):
    bad = tmp_path / "bad.txt"
    bad.write_text("fine: E(v0,v1)\nbroken: E(v0,\n")
    code, out = run_cli(capsys, "corpus-check", str(bad))
    assert code == 1
    assert "line 2" in out
