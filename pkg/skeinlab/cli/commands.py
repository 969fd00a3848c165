"""
Command-line front end.

    skeinlab eval FILE --group G [--symbolic | --dense] [--bind NAME=tensor.json]
    skeinlab dim G N
    skeinlab check G [--seed S] [--oracle N]
    skeinlab petersen verify [--json]
    skeinlab export ghz:3 | R | S | unit | cap | basis --group G [--rank N] [--out FILE]

Exit codes: 0 ok, 1 failed checks, 2 bad input, 3 guard or budget, 4 group error.
"""
import argparse
import re
import sys
from dataclasses import dataclass
from typing import Dict, Optional, Sequence

from skeinlab.algebra.model import ModelContext, cap, ghz, molecule, transposition, unit
from skeinlab.algebra.permgroup import orbit_count
from skeinlab.algebra.tensor import SparseTensor
from skeinlab.dsl.compiler import compile_plan, run
from skeinlab.errors import (
    BindingError,
    DiagramError,
    EnumerationGuardError,
    GroupError,
    GuardExceededError,
    IndexRangeError,
    RepresentativeError,
    ShapeMismatchError,
    SkeinlabError,
    TermBudgetExceededError,
)
from skeinlab.io.extract import load_context, read_program
from skeinlab.io.load import basis_payload, read_tensor, write_json
from skeinlab.settings import get_guard, get_seed, load_settings
from skeinlab.skein.diagram import BoxKind
from skeinlab.skein.evaluate import evaluate_closed
from skeinlab.skein.standard_forms import standard_form_count
from .report import render_frame, render_tensor

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_INPUT = 2
EXIT_GUARD = 3
EXIT_GROUP = 4

_EXIT_CODES = (
    (GroupError, EXIT_GROUP),
    ((GuardExceededError, TermBudgetExceededError, EnumerationGuardError), EXIT_GUARD),
    ((DiagramError, BindingError, IndexRangeError, ShapeMismatchError, RepresentativeError), EXIT_INPUT),
)

_GHZ = re.compile(r"^ghz:(\d+)$")


@dataclass(frozen=True)
class CommandConfig:
    subcommand: str
    group: Optional[str]
    guard: int
    json: bool
    seed: int

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> "CommandConfig":
        return cls(
            subcommand=args.command,
            group=getattr(args, "group", None),
            guard=args.guard if getattr(args, "guard", None) is not None else get_guard(),
            json=bool(getattr(args, "json", False)),
            seed=args.seed if getattr(args, "seed", None) is not None else get_seed(),
        )

    def context(self) -> ModelContext:
        return load_context(self.group)


def _bindings(specs: Sequence[str]) -> Dict:
    out = {}
    for spec in specs or ():
        name, sep, path = spec.partition("=")
        if not sep or not name:
            raise BindingError(f"--bind expects NAME=tensor.json, got {spec!r}")
        try:
            out[name] = read_tensor(path)
        except OSError as e:
            raise BindingError(f"cannot read binding {name}: {e}") from None
        except (ValueError, KeyError) as e:
            raise BindingError(f"binding {name} is not a tensor file: {e}") from None
    return out


# --- handlers ---

def cmd_eval(args: argparse.Namespace, config: CommandConfig) -> int:
    ctx = config.context()
    diag = read_program(args.file, ctx)
    symbolic = args.symbolic or (not args.dense and diag.is_closed
                                 and not diag.boxes_of(BoxKind.CUSTOM))
    if symbolic:
        result = evaluate_closed(ctx, diag)
        if config.json:
            write_json(result.to_dict())
        else:
            render_tensor(_scalar(result.value, ctx))
        return EXIT_OK

    plan = compile_plan(diag, guard=config.guard)
    if args.plan:
        print(plan.to_frame().to_string(index=False), file=sys.stderr)
    render_tensor(run(ctx, plan, _bindings(args.bind)), config.json)
    return EXIT_OK


def _scalar(value, ctx: ModelContext) -> SparseTensor:
    return SparseTensor.scalar(value, ctx.d)


def cmd_dim(args: argparse.Namespace, config: CommandConfig) -> int:
    if args.n < 0:
        raise IndexRangeError(f"rank must be nonnegative, got {args.n}")
    ctx = config.context()
    if args.forms:
        count = standard_form_count(ctx, args.n)
        print(count.rank)
        print(f"{count.examined} standard forms examined, dimension {count.dimension}", file=sys.stderr)
    else:
        print(orbit_count(ctx.action, args.n))
    return EXIT_OK


def cmd_check(args: argparse.Namespace, config: CommandConfig) -> int:
    from skeinlab.skein.relations import verify_relations

    ctx = config.context()
    frame = verify_relations(ctx, seed=config.seed, random_trials=args.trials,
                             oracle=args.oracle, guard=max(config.guard, 16))
    render_frame(frame, config.json)
    return EXIT_OK if bool(frame["passed"].all()) else EXIT_FAILED


def cmd_petersen(args: argparse.Namespace, config: CommandConfig) -> int:
    from skeinlab.petersen.verify import verify_petersen

    frame = verify_petersen(budget=args.budget)
    render_frame(frame, config.json)
    return EXIT_OK if bool(frame["passed"].all()) else EXIT_FAILED


def cmd_export(args: argparse.Namespace, config: CommandConfig) -> int:
    ctx = config.context()
    what = args.what
    if what == "basis":
        write_json(basis_payload(ctx, args.rank), args.out)
        return EXIT_OK
    match = _GHZ.match(what)
    if match:
        tensor = ghz(ctx, int(match.group(1)))
    elif what in _EXPORTS:
        tensor = _EXPORTS[what](ctx)
    else:
        raise ShapeMismatchError(f"cannot export {what!r}: use ghz:k, R, S, unit, cap or basis")
    write_json(tensor.to_dict(), args.out)
    return EXIT_OK


_EXPORTS = {"R": transposition, "S": molecule, "unit": unit, "cap": cap}


# --- wiring ---

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="skeinlab", description="Exact skein theory for group-action models")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="Evaluate a .skein program.")
    p.add_argument("file")
    p.add_argument("--group", "-g", required=True, help="trivial:d, sym:d, cyclic:d, petersen or a group file")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--symbolic", action="store_true", help="Skein evaluation of a closed diagram.")
    mode.add_argument("--dense", action="store_true", help="Compile and run a contraction plan.")
    p.add_argument("--guard", type=int, default=None, help="Maximum bond legs of an intermediate.")
    p.add_argument("--bind", action="append", default=[], metavar="NAME=FILE", help="Tensor for a custom box.")
    p.add_argument("--plan", action="store_true", help="Print the contraction plan to stderr.")
    p.add_argument("--json", action="store_true")
    p.set_defaults(handler=cmd_eval)

    p = sub.add_parser("dim", help="Dimension of the rank-n invariant space.")
    p.add_argument("group")
    p.add_argument("n", type=int)
    p.add_argument("--forms", action="store_true", help="Count by spanning standard forms instead of Burnside.")
    p.set_defaults(handler=cmd_dim)

    p = sub.add_parser("check", help="Run the skein relation suite.")
    p.add_argument("group")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--oracle", type=int, default=0, metavar="N",
                   help="Also compare symbolic and dense evaluation on N random closed diagrams.")
    p.add_argument("--trials", type=int, default=100, help="Random samples for the uncappable relation.")
    p.add_argument("--guard", type=int, default=None)
    p.add_argument("--json", action="store_true")
    p.set_defaults(handler=cmd_check)

    p = sub.add_parser("petersen", help="Petersen graph model checks.")
    p.add_argument("action", choices=["verify"])
    p.add_argument("--budget", type=int, default=None, help="Candidate budget of the generation search.")
    p.add_argument("--json", action="store_true")
    p.set_defaults(handler=cmd_petersen)

    p = sub.add_parser("export", help="Write a generator or an orbit basis as JSON.")
    p.add_argument("what", help="ghz:k, R, S, unit, cap or basis")
    p.add_argument("--group", "-g", required=True)
    p.add_argument("--rank", type=int, default=2, help="Rank of the exported basis.")
    p.add_argument("--out", default=None, help="Output file (default stdout).")
    p.set_defaults(handler=cmd_export)
    return parser


def exit_code_for(error: SkeinlabError) -> int:
    for kinds, code in _EXIT_CODES:
        if isinstance(error, kinds):
            return code
    return EXIT_INPUT


def main(argv: Optional[Sequence[str]] = None) -> int:
    load_settings()
    parser = build_parser()
    args = parser.parse_args(argv)
    config = CommandConfig.from_args(args)
    try:
        return args.handler(args, config)
    except SkeinlabError as e:
        print(f"error: {e}", file=sys.stderr)
        return exit_code_for(e)
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
