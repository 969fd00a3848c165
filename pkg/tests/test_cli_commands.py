"""
Tests for the skeinlab command line: outputs and exit codes
"""
import json
import pathlib
import subprocess
import sys

import pytest

from skeinlab.cli.commands import (
    EXIT_FAILED,
    EXIT_GROUP,
    EXIT_GUARD,
    EXIT_INPUT,
    EXIT_OK,
    exit_code_for,
    main,
)
from skeinlab.errors import ArityMismatchError, BindingError, GroupFormatError, TermBudgetExceededError
from skeinlab.io.load import write_json
from skeinlab.petersen.identities import b1_tensor
from skeinlab.petersen.kneser import two_box_basis


def _run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


class TestEval:
    """Test suite for skeinlab eval"""

    @pytest.mark.parametrize("name,expected", [
        ("loop.skein", "10"),
        ("capped_s.skein", "120"),
        ("y_uncap.skein", "0"),
    ])
    def test_petersen_scalars(self, capsys, corpus_dir, name, expected):
        code, out, _ = _run(capsys, "eval", str(corpus_dir / name), "--group", "petersen")
        assert code == EXIT_OK
        assert out.strip() == expected

    def test_dense_matches_symbolic(self, capsys, corpus_dir):
        path = str(corpus_dir / "theta.skein")
        _, symbolic, _ = _run(capsys, "eval", path, "--group", "cyclic:4", "--symbolic")
        _, dense, _ = _run(capsys, "eval", path, "--group", "cyclic:4", "--dense")
        assert symbolic.strip() == dense.strip() == "4"

    def test_symbolic_json(self, capsys, corpus_dir):
        code, out, _ = _run(capsys, "eval", str(corpus_dir / "loop.skein"), "--group", "sym:3", "--json")
        assert code == EXIT_OK
        payload = json.loads(out)
        assert payload["value"] == "3"
        assert payload["s_boxes"] == 0

    def test_open_diagram_with_binding(self, capsys, tmp_path, corpus_dir, petersen):
        a_file = tmp_path / "a.json"
        write_json(two_box_basis(petersen).a_gamma.to_dict(), a_file)
        capsys.readouterr()
        code, out, err = _run(capsys, "eval", str(corpus_dir / "square.skein"), "--group", "petersen",
                              "--bind", f"A={a_file}", "--plan")
        assert code == EXIT_OK
        assert "t0" in err
        got = {}
        for line in out.strip().splitlines():
            *key, value = line.split()
            got[tuple(int(i) for i in key)] = int(value)
        expected = {k: int(v) for k, v in b1_tensor(petersen).items()}
        assert got == expected

    def test_missing_binding(self, capsys, corpus_dir):
        code, _, err = _run(capsys, "eval", str(corpus_dir / "square.skein"), "--group", "petersen")
        assert code == EXIT_INPUT
        assert "not bound" in err

    def test_bad_binding_spec(self, capsys, corpus_dir):
        code, _, _ = _run(capsys, "eval", str(corpus_dir / "square.skein"), "--group", "petersen",
                          "--bind", "A")
        assert code == EXIT_INPUT

    def test_guard(self, capsys, corpus_dir):
        code, _, err = _run(capsys, "eval", str(corpus_dir / "petersen_molecule.skein"),
                            "--group", "petersen", "--guard", "1")
        assert code == EXIT_GUARD
        assert "guard" in err

    def test_malformed_program(self, capsys, corpus_dir):
        code, _, err = _run(capsys, "eval", str(corpus_dir / "malformed" / "dangling.skein"), "--group", "sym:3")
        assert code == EXIT_INPUT
        assert "neither wired nor open" in err

    def test_missing_file(self, capsys, tmp_path):
        code, _, _ = _run(capsys, "eval", str(tmp_path / "nope.skein"), "--group", "sym:3")
        assert code == EXIT_INPUT

    def test_program_not_utf8(self, capsys, tmp_path):
        path = tmp_path / "latin1.skein"
        path.write_bytes(b"box a = ghz:2; wire a.1 a.2; # caf\xe9\n")
        code, _, err = _run(capsys, "eval", str(path), "--group", "sym:3")
        assert code == EXIT_INPUT
        assert "not valid UTF-8" in err
        assert "Traceback" not in err

    def test_unknown_group(self, capsys, corpus_dir):
        code, _, err = _run(capsys, "eval", str(corpus_dir / "loop.skein"), "--group", "dihedral:5")
        assert code == EXIT_GROUP
        assert "unknown group" in err


class TestDim:
    @pytest.mark.parametrize("group,n,expected", [
        ("petersen", 2, "3"),
        ("petersen", 4, "107"),
        ("trivial:5", 3, "125"),
        ("sym:3", 3, "5"),
    ])
    def test_dimensions(self, capsys, group, n, expected):
        code, out, _ = _run(capsys, "dim", group, str(n))
        assert code == EXIT_OK
        assert out.strip() == expected

    def test_forms(self, capsys):
        code, out, err = _run(capsys, "dim", "cyclic:3", "3", "--forms")
        assert code == EXIT_OK
        assert out.strip() == "9"
        assert "standard forms examined" in err

    def test_dim_does_not_load_pandas(self):
        """Test that dim runs without importing the report stack"""
        script = (
            "import sys\n"
            "from skeinlab.cli.commands import main\n"
            "code = main(['dim', 'petersen', '4'])\n"
            "print(code, 'pandas' in sys.modules, 'numpy' in sys.modules)\n"
        )
        root = pathlib.Path(__file__).resolve().parents[1]
        done = subprocess.run([sys.executable, "-c", script], cwd=root, capture_output=True, text=True, timeout=120)
        assert done.returncode == 0, done.stderr
        assert done.stdout.split() == ["107", "0", "False", "False"]

    def test_negative_rank(self, capsys):
        code, _, _ = _run(capsys, "dim", "sym:3", "-1")
        assert code == EXIT_INPUT


class TestCheck:
    def test_check_passes(self, capsys):
        code, out, _ = _run(capsys, "check", "sym:3", "--trials", "10", "--oracle", "5")
        print(out)
        assert code == EXIT_OK
        assert "❌" not in out
        assert "checks passed" in out

    def test_check_json(self, capsys):
        code, out, _ = _run(capsys, "check", "cyclic:3", "--trials", "5", "--json")
        assert code == EXIT_OK
        rows = json.loads(out)
        assert all(row["passed"] for row in rows)


class TestExport:
    def test_ghz(self, capsys):
        code, out, _ = _run(capsys, "export", "ghz:3", "--group", "sym:3")
        assert code == EXIT_OK
        payload = json.loads(out)
        assert payload["rank"] == 3
        assert payload["dim"] == 3
        assert sorted(map(tuple, (k for k, _ in payload["entries"]))) == [(0, 0, 0), (1, 1, 1), (2, 2, 2)]

    def test_basis_to_file(self, capsys, tmp_path):
        out_file = tmp_path / "basis.json"
        code, _, err = _run(capsys, "export", "basis", "--group", "petersen", "--rank", "2",
                            "--out", str(out_file))
        assert code == EXIT_OK
        assert "wrote" in err
        payload = json.loads(out_file.read_text(encoding="utf-8"))
        assert payload["group"] == "petersen"
        assert [b["orbit_size"] for b in payload["basis"]] == [10, 60, 30]

    def test_unknown_export(self, capsys):
        code, _, _ = _run(capsys, "export", "Q", "--group", "sym:3")
        assert code == EXIT_INPUT


class TestExitCodes:
    def test_mapping(self):
        assert exit_code_for(GroupFormatError("x")) == EXIT_GROUP
        assert exit_code_for(TermBudgetExceededError("x", 2, 1)) == EXIT_GUARD
        assert exit_code_for(ArityMismatchError("x")) == EXIT_INPUT
        assert exit_code_for(BindingError("x")) == EXIT_INPUT
        assert EXIT_FAILED == 1


class TestPetersenCommand:
    def test_verify_passes(self, capsys):
        code, out, err = _run(capsys, "petersen", "verify", "--budget", "50")
        print(out)
        assert code == EXIT_OK
        assert "❌" not in out
        assert "[PETERSEN]" in err
