"""Command-line front end over the built-in model registry.

Exit codes: 0 ok; 2 unknown model (argparse usage errors also exit 2);
3 render, narrative or I/O failure; 4 evaluation failure; 5 infeasible
balance; 6 reaction/formula parse error or unknown element.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Callable, Mapping, Sequence

from .core import Animate, ShowGraph, format_value, invoke
from .errors import (
    AllPointsInvalid,
    Infeasible,
    MissingNarrativeTemplate,
    ModelError,
    ParseError,
    RenderError,
    UnknownElement,
)
from .packs import chem_pack, eng_pack
from .registry import MODEL_IDS, UnknownModel, load_model
from .render import AnimationSpec, PlotSpec, animate, instance_diagram, narrative, plot, to_svg, type_diagram, write_frames

EXIT_OK = 0
EXIT_UNKNOWN_MODEL = 2
EXIT_RENDER = 3
EXIT_EVAL = 4
EXIT_INFEASIBLE = 5
EXIT_PARSE = 6


class CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _range(text: str) -> tuple[float, float]:
    try:
        a, b = text.split(":")
        lo, hi = float(a), float(b)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a:b with decimal numbers, got {text!r}") from None
    if not lo < hi:
        raise argparse.ArgumentTypeError(f"range needs a < b, got {text!r}")
    return lo, hi


def _number(text: str) -> int | float:
    try:
        return int(text)
    except ValueError:
        pass
    try:
        return float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None


def _at_least_2(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if n < 2:
        raise argparse.ArgumentTypeError("must be at least 2")
    return n


def _elements(args: argparse.Namespace) -> Mapping[str, float] | None:
    if not args.elements:
        return None
    try:
        return chem_pack.load_element_table(args.elements)
    except ParseError as e:
        raise CliError(EXIT_PARSE, str(e)) from e
    except OSError as e:
        raise CliError(EXIT_RENDER, f"cannot read element table: {e}") from e


def _model(args: argparse.Namespace):
    try:
        return load_model(args.model, _elements(args))
    except UnknownModel as e:
        raise CliError(EXIT_UNKNOWN_MODEL, str(e)) from e


def _write(path: str, text: str) -> None:
    if path == "-":
        sys.stdout.write(text)
        return
    try:
        Path(path).write_text(text, encoding="utf-8")
    except OSError as e:
        raise CliError(EXIT_RENDER, f"cannot write {path}: {e}") from e


def _directive(model, kind, instance_id):
    return next((d for d in model.directives if isinstance(d, kind) and d.instance_id == instance_id), None)


# ------------------------------------------------------------------ commands


def cmd_render(args: argparse.Namespace) -> int:
    m = _model(args)
    try:
        if args.level == "types":
            doc = type_diagram(m)
        elif args.level == "instances":
            doc = instance_diagram(m)
        else:
            rovs = m.instances_of("ROV") if m.has_type("ROV") else []
            if not rovs:
                raise CliError(EXIT_RENDER, f"model {args.model!r} has no ROV to draw as a wireframe")
            doc = eng_pack.project_wireframe(m.view(rovs[0].id))
        svg = to_svg(doc)
    except (RenderError, ModelError, ValueError) as e:
        raise CliError(EXIT_RENDER, f"render failed: {e}") from e
    _write(args.output, svg)
    return EXIT_OK


def cmd_eval(args: argparse.Namespace) -> int:
    m = _model(args)
    try:
        result = invoke(m, args.instance, args.function, list(args.args))
    except (ModelError, ArithmeticError, TypeError, ValueError) as e:
        raise CliError(EXIT_EVAL, f"{type(e).__name__}: {e}") from e
    shown = ", ".join(format_value(a) for a in args.args)
    print(f"{args.instance}.{args.function}({shown}) = {format_value(result, m)}")
    return EXIT_OK


def cmd_balance(args: argparse.Namespace) -> int:
    table = {**chem_pack.DEFAULT_MASSES, **(_elements(args) or {})}
    try:
        r = chem_pack.parse_reaction(args.reaction, table)
    except (ParseError, UnknownElement) as e:
        pointer = ""
        if isinstance(e, ParseError):
            pointer = f"\n  {args.reaction}\n  {' ' * e.position}^"
        raise CliError(EXIT_PARSE, f"{type(e).__name__}: {e}{pointer}") from e
    try:
        c = chem_pack.balance(r.ins, r.outs)
    except Infeasible as e:
        raise CliError(EXIT_INFEASIBLE, f"Infeasible: {e}") from e
    print(chem_pack.format_balanced(r.ins, r.outs, c))
    return EXIT_OK


def _bound(m, instance: str, fn: str) -> Callable[[float], float]:
    return lambda x: invoke(m, instance, fn, [x])


def cmd_plot(args: argparse.Namespace) -> int:
    m = _model(args)
    graph = _directive(m, ShowGraph, args.instance)
    names = list(args.functions) or (list(graph.function_names) if graph else [])
    rng = args.range or (graph.range if graph else None)
    if not names or rng is None:
        raise CliError(EXIT_EVAL, f"no functions or range given and no showGraph directive for {args.instance!r}")
    try:
        inst = m.instance(args.instance)
        for n in names:
            m.function(inst.type_name, n)
        spec = PlotSpec(tuple((n, _bound(m, args.instance, n)) for n in names), rng, args.samples,
                        x_label=args.x_label, title=f"{args.model}: {args.instance}")
        doc = plot(spec)
    except (ModelError, ValueError) as e:
        if isinstance(e, RenderError) and not isinstance(e, AllPointsInvalid):
            raise CliError(EXIT_RENDER, f"plot failed: {e}") from e
        raise CliError(EXIT_EVAL, f"{type(e).__name__}: {e}") from e
    _write(args.output, to_svg(doc))
    return EXIT_OK


def cmd_animate(args: argparse.Namespace) -> int:
    m = _model(args)
    try:
        subject = m.view(args.instance)
    except ModelError as e:
        raise CliError(EXIT_EVAL, str(e)) from e
    directive = _directive(m, Animate, args.instance)
    if directive is None:
        raise CliError(EXIT_EVAL, f"no animation templates registered for {args.instance!r}")
    rng = args.range or directive.range
    try:
        docs = animate(AnimationSpec(subject, rng, args.frames, directive.templates))
    except (RenderError, ValueError) as e:
        raise CliError(EXIT_EVAL, f"animation failed: {e}") from e
    try:
        paths = write_frames(docs, args.output)
    except OSError as e:
        raise CliError(EXIT_RENDER, f"cannot write frames to {args.output}: {e}") from e
    print(f"wrote {len(paths)} frames to {args.output}")
    return EXIT_OK


def cmd_narrate(args: argparse.Namespace) -> int:
    m = _model(args)
    try:
        text = narrative(m)
    except (MissingNarrativeTemplate, ModelError) as e:
        raise CliError(EXIT_RENDER, f"{type(e).__name__}: {e}") from e
    sys.stdout.write(text)
    return EXIT_OK


# ------------------------------------------------------------------ parser


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="stemmodel", description=__doc__.split("\n\n")[0])
    p.add_argument("--elements", metavar="FILE", help="element table overriding the built-in masses ('Symbol Mass' per line)")
    sub = p.add_subparsers(dest="command", required=True, metavar="COMMAND")
    models = f"model id ({', '.join(MODEL_IDS)})"

    r = sub.add_parser("render", help="write a type, instance or wireframe diagram as SVG")
    r.add_argument("model", help=models)
    r.add_argument("--level", choices=("types", "instances", "wireframe"), default="types")
    r.add_argument("-o", "--output", default="-", help="output file ('-' for stdout)")
    r.set_defaults(func=cmd_render)

    e = sub.add_parser("eval", help="invoke a function on an instance")
    e.add_argument("model", help=models)
    e.add_argument("instance")
    e.add_argument("function")
    e.add_argument("args", nargs="*", type=_number)
    e.set_defaults(func=cmd_eval)

    b = sub.add_parser(
        "balance",
        help="balance a reaction",
        description="Reaction grammar: Side '->' Side, Side := Formula ('+' Formula)*, "
        "Formula := (Symbol Count?)+ where Symbol is [A-Z][a-z]?. A leading integer on a term is ignored.",
    )
    b.add_argument("reaction", help='e.g. "H2 + O2 -> H2O"')
    b.set_defaults(func=cmd_balance)

    g = sub.add_parser("plot", help="plot functions of one variable as SVG")
    g.add_argument("model", help=models)
    g.add_argument("instance")
    g.add_argument("functions", nargs="*", help="defaults to the instance's showGraph directive")
    g.add_argument("--range", type=_range, help="a:b (use --range=-2:10 for a negative start)")
    g.add_argument("--samples", type=_at_least_2, default=100)
    g.add_argument("--x-label", default="x")
    g.add_argument("-o", "--output", default="-")
    g.set_defaults(func=cmd_plot)

    a = sub.add_parser("animate", help="write animation frames frame_0000.svg ...")
    a.add_argument("model", help=models)
    a.add_argument("instance")
    a.add_argument("--range", type=_range)
    a.add_argument("--frames", type=_at_least_2, default=60)
    a.add_argument("-o", "--output", required=True, help="output directory")
    a.set_defaults(func=cmd_animate)

    n = sub.add_parser("narrate", help="print one English sentence per instance")
    n.add_argument("model", help=models)
    n.set_defaults(func=cmd_narrate)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as e:
        print(f"error: {e}", file=sys.stderr)
        return e.code


if __name__ == "__main__":
    sys.exit(main())
