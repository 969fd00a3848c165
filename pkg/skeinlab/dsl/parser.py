"""
Parser for .skein diagram programs.

    box a = ghz:3;      box r = R;      box s = S;      box x = tensor A:2;
    wire a.1 r.2;       open a.2;       cap s.*;        unit a.3;

`cap p` and `unit p` both attach a generated ghz:1 box to p. `p.*` expands
over every leg of the box (open/cap/unit only). Errors carry line:column.
"""
from pathlib import Path
from typing import Dict, List, Optional, Set, Tuple

from lark import Lark, Transformer, v_args
from lark.exceptions import UnexpectedCharacters, UnexpectedEOF, UnexpectedInput, UnexpectedToken

from skeinlab.errors import (
    ArityMismatchError,
    DanglingPortError,
    DSLSyntaxError,
    DuplicateBoxError,
    DuplicateWireError,
    SourceLocation,
    UnknownBoxError,
    UnknownBoxKindError,
)
from skeinlab.skein.diagram import Box, BoxKind, DiagramIR, Port

DEFAULT_TENSOR_ARITY = 2

_GRAMMAR = Path(__file__).with_name("grammar.lark").read_text(encoding="utf-8")
_parser = Lark(_GRAMMAR, start="start", parser="lalr", propagate_positions=True)


def _loc(meta) -> Optional[SourceLocation]:
    if meta is None or getattr(meta, "empty", True):
        return None
    return SourceLocation(meta.line, meta.column)


@v_args(meta=True)
class _ToStatements(Transformer):
    """Parse tree -> flat list of (statement, payload, location)."""

    def start(self, meta, stmts):
        return list(stmts)

    def box_stmt(self, meta, children):
        name, kind = children
        return ("box", (str(name), kind), _loc(meta))

    def wire_stmt(self, meta, children):
        return ("wire", (children[0], children[1]), _loc(meta))

    def open_stmt(self, meta, children):
        return ("open", children[0], _loc(meta))

    def cap_stmt(self, meta, children):
        return ("cap", children[0], _loc(meta))

    def unit_stmt(self, meta, children):
        return ("unit", children[0], _loc(meta))

    def tensor_kind(self, meta, children):
        arity = int(children[1]) if len(children) > 1 else None
        return ("tensor", str(children[0]), arity, _loc(meta))

    def named_kind(self, meta, children):
        arity = int(children[1]) if len(children) > 1 else None
        return ("named", str(children[0]), arity, _loc(meta))

    def leg_port(self, meta, children):
        return (str(children[0]), int(children[1]), _loc(meta))

    def all_port(self, meta, children):
        return (str(children[0]), "*", _loc(meta))


def _syntax_error(source: str, e: UnexpectedInput) -> DSLSyntaxError:
    line = getattr(e, "line", None) or 1
    column = getattr(e, "column", None) or 1
    if isinstance(e, UnexpectedEOF):
        lines = source.splitlines() or [""]
        line, column = len(lines), len(lines[-1]) + 1
        message = "unexpected end of program (missing ';'?)"
    elif isinstance(e, UnexpectedToken) and e.token.type == "$END":
        lines = source.splitlines() or [""]
        if line < 1 or column < 1:
            line, column = len(lines), len(lines[-1]) + 1
        message = "unexpected end of program (missing ';'?)"
    elif isinstance(e, UnexpectedToken):
        expected = ", ".join(sorted(e.expected))
        message = f"unexpected token {e.token!r}, expected one of: {expected}"
    elif isinstance(e, UnexpectedCharacters):
        message = f"unexpected character {source[e.pos_in_stream]!r}"
    else:
        message = "syntax error"
    return DSLSyntaxError(message, SourceLocation(line, column))


class _Builder:
    def __init__(self, degree: Optional[int]):
        self.degree = degree
        self.boxes: List[Box] = []
        self.index: Dict[str, Box] = {}
        self.wires: List[Tuple[Port, Port]] = []
        self.boundary: List[Port] = []
        self.used: Set[Port] = set()
        self.generated = 0

    # --- declarations ---

    def declare(self, box_id: str, kind, loc) -> None:
        if box_id in self.index:
            raise DuplicateBoxError(f"box '{box_id}' declared twice", loc)
        tag, name, arity, kind_loc = kind
        if tag == "tensor":
            if arity is not None and arity < 1:
                raise ArityMismatchError(f"tensor box '{box_id}' needs at least one leg", kind_loc)
            box = Box(box_id, BoxKind.CUSTOM, arity or DEFAULT_TENSOR_ARITY, name, loc)
        elif name == "ghz":
            if arity is None or arity < 1:
                raise ArityMismatchError("ghz needs an arity of at least 1, as in ghz:3", kind_loc)
            box = Box(box_id, BoxKind.GHZ, arity, None, loc)
        elif name in ("R", "S"):
            if name == "R":
                expected = 4
            elif self.degree is not None:
                expected = self.degree
            else:
                raise ArityMismatchError("S has d legs; parse with the model degree", kind_loc)
            if arity is not None and arity != expected:
                raise ArityMismatchError(f"{name} has {expected} legs, not {arity}", kind_loc)
            box = Box(box_id, BoxKind(name), expected, None, loc)
        else:
            raise UnknownBoxKindError(f"unknown box kind '{name}'", kind_loc)
        self.boxes.append(box)
        self.index[box_id] = box

    def _fresh_id(self, prefix: str) -> str:
        while True:
            candidate = f"_{prefix}{self.generated}"
            self.generated += 1
            if candidate not in self.index:
                return candidate

    # --- ports ---

    def expand(self, port, allow_all: bool) -> List[Port]:
        box_id, leg, loc = port
        if box_id not in self.index:
            raise UnknownBoxError(f"unknown box '{box_id}'", loc)
        box = self.index[box_id]
        if leg == "*":
            if not allow_all:
                raise DSLSyntaxError("'.*' cannot be used in a wire", loc)
            legs = range(1, box.arity + 1)
        else:
            if not 1 <= leg <= box.arity:
                raise ArityMismatchError(f"box '{box_id}' has {box.arity} legs, leg {leg} does not exist", loc)
            legs = [leg]
        return [(box_id, k) for k in legs]

    def claim(self, port: Port, loc) -> None:
        if port in self.used:
            raise DuplicateWireError(f"port {port[0]}.{port[1]} is already connected", loc)
        self.used.add(port)

    # --- statements ---

    def apply(self, stmt, payload, loc) -> None:
        if stmt == "box":
            self.declare(payload[0], payload[1], loc)
        elif stmt == "wire":
            (p,) = self.expand(payload[0], allow_all=False)
            (q,) = self.expand(payload[1], allow_all=False)
            if p == q:
                raise DuplicateWireError(f"wire joins port {p[0]}.{p[1]} to itself", loc)
            self.claim(p, loc)
            self.claim(q, loc)
            self.wires.append((p, q))
        elif stmt == "open":
            for p in self.expand(payload, allow_all=True):
                self.claim(p, loc)
                self.boundary.append(p)
        else:  # cap / unit
            for p in self.expand(payload, allow_all=True):
                self.claim(p, loc)
                cap_id = self._fresh_id("u")
                self.declare(cap_id, ("named", "ghz", 1, loc), loc)
                self.claim((cap_id, 1), loc)
                self.wires.append((p, (cap_id, 1)))

    def finish(self) -> DiagramIR:
        for box in self.boxes:
            for port in box.ports():
                if port not in self.used:
                    raise DanglingPortError(f"port {port[0]}.{port[1]} is neither wired nor open", box.location)
        return DiagramIR(tuple(self.boxes), tuple(self.wires), tuple(self.boundary))


def parse(source: str, degree: Optional[int] = None) -> DiagramIR:
    """Parses a .skein program. `degree` fixes the leg count of S boxes."""
    try:
        tree = _parser.parse(source)
    except UnexpectedInput as e:
        raise _syntax_error(source, e) from None
    statements = _ToStatements().transform(tree)
    builder = _Builder(degree)
    for stmt, payload, loc in statements:
        builder.apply(stmt, payload, loc)
    return builder.finish()


def _decode_error(path, data: bytes, e: UnicodeDecodeError) -> DSLSyntaxError:
    line = data.count(b"\n", 0, e.start) + 1
    column = e.start - data.rfind(b"\n", 0, e.start)
    return DSLSyntaxError(f"{path}: not valid UTF-8 (byte 0x{data[e.start]:02x})", SourceLocation(line, column))


def parse_file(path, degree: Optional[int] = None) -> DiagramIR:
    data = Path(path).read_bytes()
    try:
        source = data.decode("utf-8")
    except UnicodeDecodeError as e:
        raise _decode_error(path, data, e) from None
    return parse(source, degree)
