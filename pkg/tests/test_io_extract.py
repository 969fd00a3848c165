"""
Tests for group sources and program loading
"""
import pytest

from skeinlab.algebra.permgroup import Permutation
from skeinlab.errors import DegreeMismatchError, GroupError, GroupFormatError
from skeinlab.io.extract import load_context, load_group, parse_group_text, read_program


class TestBuiltins:
    @pytest.mark.parametrize("source,degree,order", [
        ("trivial:4", 4, 1),
        ("sym:4", 4, 24),
        ("cyclic:5", 5, 5),
        ("petersen", 10, 120),
        ("  sym:3  ", 3, 6),
    ])
    def test_builtin(self, source, degree, order):
        action = load_group(source)
        assert action.degree == degree
        assert action.order == order

    def test_zero_degree(self):
        with pytest.raises(GroupFormatError):
            load_group("sym:0")

    def test_unknown(self):
        with pytest.raises(GroupFormatError, match="unknown group"):
            load_group("klein")


class TestGroupText:
    """Test suite for group files"""

    def test_images(self):
        action = parse_group_text("4\n1 2 3 0\n")
        assert action.order == 4

    def test_cycles_and_comments(self):
        text = "# Klein four-group\n4\n(0 1)(2 3)\n(0 2)(1 3)  # second generator\n"
        action = parse_group_text(text)
        assert action.order == 4
        assert Permutation((1, 0, 3, 2)) in action

    def test_no_generators_is_trivial(self):
        assert parse_group_text("3\n").order == 1

    def test_inline_text_source(self):
        ctx = load_context("3\n(0 1 2)\n")
        assert ctx.order == 3
        assert ctx.name == "inline"

    def test_file_source(self, tmp_path):
        path = tmp_path / "d4.group"
        path.write_text("4\n(0 1 2 3)\n(1 3)\n", encoding="utf-8")
        assert load_group(str(path)).order == 8

    def test_file_not_utf8(self, tmp_path):
        path = tmp_path / "bad.group"
        path.write_bytes(b"3\n# \xe9\xff\n(0 1)\n")
        with pytest.raises(GroupFormatError, match="not valid UTF-8"):
            load_group(str(path))

    @pytest.mark.parametrize("text,fragment", [
        ("", "empty"),
        ("x\n", "positive degree"),
        ("3\n1 2\n", "line 2"),
        ("3\n0 0 1\n", "line 2"),
        ("3\n(0 1) junk\n", "stray text"),
        ("3\n(0 5)\n", "line 2"),
    ])
    def test_malformed(self, text, fragment):
        with pytest.raises(GroupFormatError, match=fragment):
            parse_group_text(text)


class TestPrograms:
    def test_read_program_uses_degree(self, corpus_dir):
        ctx = load_context("petersen")
        diag = read_program(corpus_dir / "capped_s.skein", ctx)
        assert diag.is_closed
        assert diag.boxes[0].arity == 10

    def test_degree_mismatch_is_a_group_error(self):
        assert issubclass(DegreeMismatchError, GroupError)
