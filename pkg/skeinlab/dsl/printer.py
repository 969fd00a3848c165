from skeinlab.skein.diagram import Box, BoxKind, DiagramIR


def format_kind(box: Box) -> str:
    if box.kind == BoxKind.GHZ:
        return f"ghz:{box.arity}"
    if box.kind == BoxKind.CUSTOM:
        return f"tensor {box.name}:{box.arity}"
    return box.kind.value


def print_program(diag: DiagramIR) -> str:
    """Canonical text of a diagram: boxes, then wires, then open ports; parse(print_program(ir)) == ir."""
    lines = [f"box {b.id} = {format_kind(b)};" for b in diag.boxes]
    lines += [f"wire {p[0]}.{p[1]} {q[0]}.{q[1]};" for p, q in diag.wires]
    lines += [f"open {p[0]}.{p[1]};" for p in diag.boundary]
    return "\n".join(lines) + ("\n" if lines else "")
