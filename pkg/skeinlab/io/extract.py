"""
Reading groups and programs.

A group source is a builtin name (`trivial:d`, `sym:d`, `cyclic:d`,
`petersen`), a path to a group file, or the text of one. Group files hold a
degree line and then one generator per line, either as images
(`1 2 0`) or in cycle notation (`(0 1)(2 3)`); `#` starts a comment.
"""
import re
from pathlib import Path
from typing import List, Union

from skeinlab.algebra.model import ModelContext
from skeinlab.algebra.permgroup import (
    GroupAction,
    Permutation,
    closure,
    cyclic_group,
    symmetric_group,
    trivial_group,
)
from skeinlab.dsl.parser import parse_file
from skeinlab.errors import GroupError, GroupFormatError
from skeinlab.petersen.kneser import build_kneser
from skeinlab.skein.diagram import DiagramIR

_BUILTIN = re.compile(r"^(trivial|sym|cyclic):(\d+)$")
_CYCLE = re.compile(r"\(([^()]*)\)")
_FACTORIES = {"trivial": trivial_group, "sym": symmetric_group, "cyclic": cyclic_group}


def _parse_generator(line: str, degree: int, lineno: int) -> Permutation:
    if "(" in line and _CYCLE.sub("", line).strip():
        raise GroupFormatError(f"line {lineno}: stray text outside cycles")
    try:
        if "(" in line:
            cycles = [tuple(int(p) for p in body.split()) for body in _CYCLE.findall(line)]
            return Permutation.from_cycles(degree, [c for c in cycles if c])
        images = [int(p) for p in line.split()]
        if len(images) != degree:
            raise GroupFormatError(f"{len(images)} images for degree {degree}")
        return Permutation(tuple(images))
    except (ValueError, GroupError) as e:
        raise GroupFormatError(f"line {lineno}: {e}") from None


def parse_group_text(text: str) -> GroupAction:
    lines = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append((lineno, line))
    if not lines:
        raise GroupFormatError("group text is empty")
    lineno, first = lines[0]
    if not first.isdigit() or int(first) < 1:
        raise GroupFormatError(f"line {lineno}: expected a positive degree, got {first!r}")
    degree = int(first)
    generators: List[Permutation] = [_parse_generator(line, degree, n) for n, line in lines[1:]]
    return closure(generators, degree=degree)


def load_group(source: str) -> GroupAction:
    source = source.strip()
    if source == "petersen":
        return build_kneser().action
    match = _BUILTIN.match(source)
    if match:
        d = int(match.group(2))
        if d < 1:
            raise GroupFormatError(f"builtin group needs d >= 1, got {source!r}")
        return _FACTORIES[match.group(1)](d)
    if "\n" in source:
        return parse_group_text(source)
    path = Path(source)
    if path.is_file():
        try:
            text = path.read_text(encoding="utf-8")
        except UnicodeDecodeError as e:
            raise GroupFormatError(f"{path}: not valid UTF-8 at byte {e.start}") from None
        return parse_group_text(text)
    raise GroupFormatError(
        f"unknown group {source!r}: use trivial:d, sym:d, cyclic:d, petersen or a group file")


def load_context(source: str) -> ModelContext:
    return ModelContext(load_group(source), name=source if "\n" not in source else "inline")


def read_program(path: Union[str, Path], ctx: ModelContext) -> DiagramIR:
    return parse_file(path, ctx.d)
