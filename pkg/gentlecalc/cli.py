"""
Command-line interface for gentle-calculus.

Results go to stdout, logs to stderr. Exit codes: 0 success, 1 usage,
2 unreadable input, 3 violated precondition, 4 oracle mismatch.

Usage:
    gentlecalc validate
    gentlecalc resolve --string "a5 a7^- a6"
    gentlecalc --algebra my_algebra.txt ext --from e1 --to e2 --max-weight 3
    gentlecalc heart --max-len 2
    gentlecalc oracle resolve --string e1
"""

import argparse
import logging
import sys
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence, Union

from gentlecalc.algebra_core import (
    GentleAlgebra,
    isomorphic,
    parse_algebra,
    to_dot,
    validate_gentle,
)
from gentlecalc.config import Settings
from gentlecalc.exceptions import GentleCalcError, InvalidWalkError, UnsupportedProductError
from gentlecalc.ext_yoneda import (
    IntersectionDatum,
    euler_defect,
    ext_table,
    format_ext_table,
    intersections,
    yoneda_extension,
    yoneda_product,
)
from gentlecalc.hearts import (
    enumerate_heart_indecomposables,
    format_gradings,
    heart_algebra,
    parse_dissection,
    validate_simple_minded_dissection,
)
from gentlecalc.linalg_oracle import (
    verify_ext,
    verify_finitistic,
    verify_many,
    verify_resolution,
)
from gentlecalc.logger import Level, Logger
from gentlecalc.logging_bridge import configure_stdlib_logging, reset_stdlib_logging
from gentlecalc.resolutions import (
    cohomology_completion,
    endpoint_co_weights,
    endpoint_weights,
    finitistic_dimension,
    format_complex,
    global_dimension,
    homology_completion,
    injective_dimension,
    minimal_injective_resolution,
    minimal_projective_resolution,
    projective_dimension,
    structured_complex,
)
from gentlecalc.strings_bands import (
    BandDatum,
    Walk,
    checked_band,
    enumerate_bands,
    enumerate_strings,
    is_string,
    parse_walk,
    string_dimension_vector,
)
from gentlecalc.surface_model import (
    Curve,
    PolygonComplex,
    algebra_of_coordinate,
    build_coordinate_complex,
    curve_to_string,
    serialize_surface,
    string_to_curve,
    surface_of_algebra,
)

logger = logging.getLogger(__name__)

Module = Union[Walk, BandDatum]


class UsageError(Exception):
    """Bad command-line usage (exit code 1)."""

    exit_code = 1


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        raise UsageError(message)


# ========== WORKSPACE ==========


def _bundled(name: str) -> str:
    return resources.files("gentlecalc").joinpath("data", name).read_text(encoding="utf-8")


@dataclass
class Workspace:
    """Loaded inputs and output settings shared by every command."""

    algebra: GentleAlgebra
    settings: Settings
    surface: Optional[PolygonComplex] = None

    def require_surface(self, from_algebra: bool = False) -> PolygonComplex:
        """
        The loaded coordinate complex, or the algebra's own when asked for.

        Raises:
            GentleCalcError: If no surface is loaded and from_algebra is not set
        """
        if self.surface is not None:
            return self.surface
        if from_algebra:
            return surface_of_algebra(self.algebra)
        raise GentleCalcError("no surface loaded: pass --surface FILE or use --from-algebra")

    def emit(self, human: Sequence[str], structured: Optional[Sequence[str]] = None) -> None:
        lines = structured if (self.settings.structured and structured is not None) else human
        for line in lines:
            print(line)


def load_workspace(args: argparse.Namespace, settings: Settings) -> Workspace:
    if args.algebra:
        path = Path(args.algebra)
        text, source = path.read_text(encoding="utf-8"), str(path)
    else:
        text, source = _bundled("worked_example.txt"), "worked_example.txt"
    validate = args.command != "validate"
    algebra = parse_algebra(text, source=source, validate=validate)
    surface = None
    if args.surface:
        path = Path(args.surface)
        surface = build_coordinate_complex(path.read_text(encoding="utf-8"), str(path))
    return Workspace(algebra, settings, surface)


def _module(ws: Workspace, text: str, band: bool = False, m: int = 1, lam="λ") -> Module:
    w = parse_walk(ws.algebra, text)
    if band:
        return checked_band(ws.algebra, w, m, lam)
    if not is_string(ws.algebra, w):
        raise InvalidWalkError(w, "not a string (pass the band flag for bands)")
    return w


def _dims(algebra: GentleAlgebra, w) -> str:
    vec = string_dimension_vector(algebra, w)
    return " ".join(f"{v}:{d}" for v, d in vec.items() if d)


# ========== COMMANDS ==========


def cmd_validate(ws: Workspace, args: argparse.Namespace) -> int:
    violations = validate_gentle(ws.algebra)
    if not violations:
        ws.emit(["gentle: yes"], ["gentle=true"])
        return 0
    ws.emit(
        ["gentle: no"] + [f"  {v}" for v in violations],
        ["gentle=false"] + [f"violation clause={v.clause} at={v.subject}" for v in violations],
    )
    return 3


def cmd_strings(ws: Workspace, args: argparse.Namespace) -> int:
    walks = enumerate_strings(ws.algebra, args.max_len)
    ws.emit([str(w) for w in walks], [f"string={w}" for w in walks])
    return 0


def cmd_bands(ws: Workspace, args: argparse.Namespace) -> int:
    walks = enumerate_bands(ws.algebra, args.max_len)
    ws.emit([str(w) for w in walks], [f"band={w}" for w in walks])
    return 0


def _target(ws: Workspace, args: argparse.Namespace) -> Module:
    if args.band:
        return _module(ws, args.band, band=True, m=args.m, lam=args.lam)
    if args.string:
        return _module(ws, args.string)
    raise UsageError("pass --string or --band")


def cmd_resolve(ws: Workspace, args: argparse.Namespace) -> int:
    module = _target(ws, args)
    depth = args.depth if args.depth is not None else ws.settings.depth
    human: List[str] = []
    structured: List[str] = []
    if not isinstance(module, BandDatum):
        completion = (
            cohomology_completion(ws.algebra, module)
            if args.injective
            else homology_completion(ws.algebra, module)
        )
        human.append(f"sigma = {completion}")
        structured.append(f"completion={completion}")
    if args.injective:
        cx = minimal_injective_resolution(ws.algebra, module, depth)
    else:
        cx = minimal_projective_resolution(ws.algebra, module, depth)
    ws.emit(human + format_complex(cx), structured + structured_complex(cx))
    return 0


def cmd_dims(ws: Workspace, args: argparse.Namespace) -> int:
    module = _target(ws, args)
    pd = projective_dimension(ws.algebra, module)
    idim = injective_dimension(ws.algebra, module)
    human = [f"pd = {pd}", f"id = {idim}"]
    structured = [f"pd={pd}", f"id={idim}"]
    if not isinstance(module, BandDatum):
        w_p, w_q = endpoint_weights(ws.algebra, module)
        cw_p, cw_q = endpoint_co_weights(ws.algebra, module)
        human.append(f"weights: p={w_p} q={w_q}; co-weights: p={cw_p} q={cw_q}")
        structured += [
            f"weight_p={w_p}",
            f"weight_q={w_q}",
            f"coweight_p={cw_p}",
            f"coweight_q={cw_q}",
        ]
    ws.emit(human, structured)
    return 0


def cmd_findim(ws: Workspace, args: argparse.Namespace) -> int:
    report = finitistic_dimension(ws.algebra)
    gl = global_dimension(ws.algebra)
    chain = " ".join(report.chain_witness)
    ws.emit(
        [
            f"findim = {report.value}",
            f"  injective witness: I{report.injective_witness}",
            f"  relation chain: {chain}",
            f"  polygon: {report.polygon_witness}",
            f"gldim = {gl}",
        ],
        [
            f"findim={report.value}",
            f"injective_witness={report.injective_witness}",
            f"chain_witness={','.join(report.chain_witness)}",
            f"polygon_witness={report.polygon_witness}",
            f"gldim={gl}",
        ],
    )
    return 0


def cmd_surface(ws: Workspace, args: argparse.Namespace) -> int:
    pc = ws.require_surface(args.from_algebra)
    if ws.surface is not None and not isomorphic(algebra_of_coordinate(pc), ws.algebra):
        logger.warning("the loaded surface does not model the loaded algebra")
    summary = pc.summary()
    text = serialize_surface(pc).splitlines()
    ws.emit(text + [f"# {summary}"], text + [str(summary).replace(" ", "\n")])
    return 0


def _curve(pc: PolygonComplex, module: Module) -> Curve:
    if isinstance(module, BandDatum):
        return string_to_curve(pc, module.walk, band=True)
    return string_to_curve(pc, module)


def _data_between(ws: Workspace, first: Module, second: Module) -> List[IntersectionDatum]:
    pc = surface_of_algebra(ws.algebra)
    c1 = _curve(pc, first)
    c2 = _curve(pc, second)
    return intersections(pc, c1, c2)


def cmd_ext(ws: Workspace, args: argparse.Namespace) -> int:
    first = _module(ws, args.source, band=args.from_band)
    second = _module(ws, args.target, band=args.to_band)
    table = ext_table(ws.algebra, first, second, args.max_weight, ws.settings)
    ws.emit(
        format_ext_table(table),
        [
            f"ext omega={w} dim={s.dimension} labels={';'.join(s.labels)}"
            for w, s in sorted(table.items())
        ],
    )
    return 0


def _pick(data: Sequence[IntersectionDatum], at: str, weight: Optional[int]) -> IntersectionDatum:
    for d in data:
        if at in (d.label, d.location) and (weight is None or d.has_weight(weight)):
            return d
    labels = ", ".join(str(d) for d in data) or "none"
    raise UnsupportedProductError(f"no intersection at {at} (available: {labels})")


def cmd_yoneda(ws: Workspace, args: argparse.Namespace) -> int:
    pc = surface_of_algebra(ws.algebra)
    first = _module(ws, args.source)
    second = _module(ws, args.target)
    if args.via:
        middle = _module(ws, args.via)
        d1 = _pick(_data_between(ws, first, middle), args.at, None)
        d2 = _pick(_data_between(ws, middle, second), args.at, None)
        product = yoneda_product(pc, d1, d2)
        walks = [curve_to_string(pc, c) for c in product.polygon]
        ws.emit(
            [f"product: {product.datum}"] + [f"  {w}" for w in walks],
            [f"product={product.datum}"] + [f"polygon={w}" for w in walks],
        )
        return 0
    datum = _pick(_data_between(ws, first, second), args.at, args.weight)
    seq = yoneda_extension(pc, datum, args.weight)
    defect = euler_defect(ws.algebra, seq)
    human = ["0 -> " + " -> ".join(str(w) for w in seq.terms) + " -> 0"]
    human += [f"  {w}: {_dims(ws.algebra, w)}" for w in seq.terms]
    human.append("euler defect: " + (str(defect) if defect else "none"))
    structured = [f"term index={i} walk={w}" for i, w in enumerate(seq.terms)]
    structured.append(f"euler_defect={len(defect)}")
    ws.emit(human, structured)
    return 0 if not defect else 3


def cmd_heart(ws: Workspace, args: argparse.Namespace) -> int:
    if args.dissection:
        path = Path(args.dissection)
        text, source = path.read_text(encoding="utf-8"), str(path)
    else:
        text, source = _bundled("heart_example.txt"), "heart_example.txt"
    gd = parse_dissection(text, ws.algebra, source)
    violations = validate_simple_minded_dissection(gd)
    if violations:
        ws.emit(
            ["valid: no"] + [f"  {v}" for v in violations],
            ["valid=false"] + [f"violation check={v.check} at={v.subject}" for v in violations],
        )
        return 3
    graded, gamma = heart_algebra(gd)
    objects = enumerate_heart_indecomposables(gd, args.max_len)
    human = ["valid: yes"] + format_gradings(gd) + ["heart algebra:"]
    human += [f"  arrow {a.name}: {a.source} -> {a.target}" for a in gamma.arrows]
    human += [f"  relation {a} {b}" for a, b in gamma.relations]
    human.append(f"indecomposables (length <= {args.max_len}): {len(objects)}")
    human += [f"  {'band' if o.is_band else 'string'} {o.walk}" for o in objects]
    structured = ["valid=true"]
    structured += [f"grading arrow={a} degree={d}" for a, d in graded.degrees.items()]
    structured += [f"heart_arrow={a.name}" for a in gamma.arrows]
    structured.append(f"indecomposables={len(objects)}")
    ws.emit(human, structured)
    return 0


def cmd_dot(ws: Workspace, args: argparse.Namespace) -> int:
    print(to_dot(ws.algebra))
    return 0


def cmd_oracle(ws: Workspace, args: argparse.Namespace) -> int:
    """Recompute through the linear-algebra oracle; mismatches raise and exit with 4."""
    prime = ws.settings.prime
    if args.check == "resolve":
        module = _target(ws, args)
        verify_resolution(ws.algebra, module, prime=prime)
        ws.emit([f"match: resolution of {args.string or args.band}"], ["match=true"])
    elif args.check == "ext":
        first = _module(ws, args.source)
        second = _module(ws, args.target)
        table = ext_table(ws.algebra, first, second, args.max_weight, ws.settings)
        checks: List[Callable[[], bool]] = [
            (lambda w=w, s=s: verify_ext(ws.algebra, first, second, w, s.dimension, prime=prime))
            for w, s in sorted(table.items())
        ]
        verify_many(checks, ws.settings)
        ws.emit([f"match: ext^0..{args.max_weight}"], ["match=true"])
    else:
        report = finitistic_dimension(ws.algebra)
        verify_finitistic(ws.algebra, report.value, prime=prime)
        ws.emit([f"match: findim = {report.value}"], ["match=true"])
    return 0


_COMMANDS: Dict[str, Callable[[Workspace, argparse.Namespace], int]] = {
    "validate": cmd_validate,
    "strings": cmd_strings,
    "bands": cmd_bands,
    "resolve": cmd_resolve,
    "dims": cmd_dims,
    "findim": cmd_findim,
    "surface": cmd_surface,
    "ext": cmd_ext,
    "yoneda": cmd_yoneda,
    "heart": cmd_heart,
    "dot": cmd_dot,
    "oracle": cmd_oracle,
}


# ========== PARSER ==========


def _add_target(p: argparse.ArgumentParser) -> None:
    p.add_argument("--string", help='String walk, e.g. "a5 a7^- a6" or e1')
    p.add_argument("--band", help="Band walk")
    p.add_argument("--m", type=int, default=1, help="Band multiplicity")
    p.add_argument("--lambda", dest="lam", default="λ", help="Band parameter")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(
        prog="gentlecalc",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
        description="Strings, bands, resolutions, Ext and hearts of gentle algebras.",
    )
    p.add_argument("--algebra", help="Algebra file (default: bundled worked example)")
    p.add_argument("--surface", help="Surface file")
    p.add_argument("--structured", action="store_true", help="key=value output")
    p.add_argument("--prime", type=int, help="Field characteristic for the oracle")
    p.add_argument("--verbose", action="store_true", help="Debug logging")
    p.add_argument("--log-dir", help="Write log files to this directory")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    sp = sub.add_parser("validate", help="Check gentleness")
    sp.add_argument("file", nargs="?", help="Algebra file (overrides --algebra)")

    for name in ("strings", "bands"):
        sp = sub.add_parser(name, help=f"Enumerate {name}")
        sp.add_argument("--max-len", type=int, default=3)

    sp = sub.add_parser("resolve", help="Minimal projective or injective resolution")
    _add_target(sp)
    sp.add_argument("--injective", action="store_true")
    sp.add_argument("--depth", type=int)

    sp = sub.add_parser("dims", help="Projective and injective dimension")
    _add_target(sp)

    sub.add_parser("findim", help="Finitistic dimension with witnesses")

    sp = sub.add_parser("surface", help="Print the coordinate complex")
    sp.add_argument("--from-algebra", action="store_true")

    sp = sub.add_parser("ext", help="Ext table from intersections")
    sp.add_argument("--from", dest="source", required=True)
    sp.add_argument("--to", dest="target", required=True)
    sp.add_argument("--from-band", action="store_true")
    sp.add_argument("--to-band", action="store_true")
    sp.add_argument("--max-weight", type=int, default=3)

    sp = sub.add_parser("yoneda", help="Exact sequence of an intersection")
    sp.add_argument("--from", dest="source", required=True)
    sp.add_argument("--to", dest="target", required=True)
    sp.add_argument("--at", required=True, help="Polygon id or datum label")
    sp.add_argument("--weight", type=int)
    sp.add_argument("--compose", dest="via", help="Middle string of a product")

    sp = sub.add_parser("heart", help="Heart of a graded dissection")
    sp.add_argument("dissection", nargs="?", help="Dissection file (default: bundled example)")
    sp.add_argument("--max-len", type=int, default=2)

    sp = sub.add_parser("oracle", help="Diff against the linear-algebra oracle")
    sp.add_argument("check", choices=("resolve", "ext", "findim"))
    _add_target(sp)
    sp.add_argument("--from", dest="source")
    sp.add_argument("--to", dest="target")
    sp.add_argument("--max-weight", type=int, default=2)

    sub.add_parser("dot", help="Quiver in DOT format")
    return p


def _setup_logging(settings: Settings) -> Logger:
    console = Logger(
        log_dir=settings.log_dir, level=Level.DEBUG if settings.verbose else Level.INFO
    )
    level = logging.DEBUG if settings.verbose else logging.WARNING
    configure_stdlib_logging(console, level=level, logger_names=["gentlecalc"])
    return console


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Run one command and return its exit code."""
    parser = build_parser()
    console: Optional[Logger] = None
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            raise UsageError("no command given")
        if args.command == "validate" and args.file:
            args.algebra = args.file
        try:
            settings = Settings.from_env().merged(
                prime=args.prime,
                log_dir=args.log_dir,
                verbose=args.verbose or None,
                output_mode="structured" if args.structured else None,
            )
        except ValueError as e:
            raise UsageError(str(e)) from None
        console = _setup_logging(settings)
        ws = load_workspace(args, settings)
        with console.timed(args.command):
            return _COMMANDS[args.command](ws, args)
    except UsageError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return UsageError.exit_code
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except GentleCalcError as e:
        print(f"error: {e}", file=sys.stderr)
        return e.exit_code
    finally:
        if console is not None:
            reset_stdlib_logging(["gentlecalc"])
            console.close()


if __name__ == "__main__":
    sys.exit(main())
