"""asmgrid command-line entry point."""

import argparse
import csv
import io
import json
import logging
import sys
from typing import Any, List, Optional, Sequence

from pydantic import ValidationError

from packages.asm.core import Asm, count_asms, enumerate_asms
from packages.asm.errors import (
    AsmGridError,
    CrossCheckError,
    DomainError,
    InvalidFlowGridError,
    ResourceGuardError,
    StructuralInputError,
)
from packages.asm.settings import get_settings
from packages.flowgrid.grid import asm_to_simple_flow_grid
from packages.flowgrid.render import doubly_graph_to_dot, grid_to_dot, render_text_grid
from services.classify.src.scan import classify_all_faces
from services.faces.src.face import Face, smallest_face
from services.faces.src.lattice import EMPTY_FACE_KEY, face_lattice
from services.structure.src.blocks import two_connected_components
from services.structure.src.product import product_decomposition
from services.structure.src.symmetry import is_centrally_symmetric

from .audit import run_audit
from .models import (
    ClassificationReport,
    Command,
    FaceReport,
    LatticeReport,
    OutputFormat,
    ProductSummary,
    RunConfig,
    TypeRow,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_INPUT = 2
EXIT_INCOMPLETE = 3

# Formats each subcommand can write; the first is the default.
SUPPORTED_FORMATS = {
    Command.COUNT.value: (OutputFormat.JSON.value,),
    Command.ENUMERATE.value: (OutputFormat.JSON.value, OutputFormat.TEXT_GRID.value),
    Command.FACE.value: (
        OutputFormat.JSON.value,
        OutputFormat.TEXT_GRID.value,
        OutputFormat.DOT.value,
    ),
    Command.LATTICE.value: (OutputFormat.JSON.value,),
    Command.CLASSIFY.value: (OutputFormat.JSON.value, OutputFormat.CSV.value),
    Command.AUDIT.value: (OutputFormat.JSON.value,),
    Command.EXPORT_DOT.value: (OutputFormat.DOT.value,),
}


def _read_asms(path: str) -> List[Asm]:
    """Read a JSON list of ASMs, each {"n", "rows"} or a bare list of rows."""
    try:
        if path == "-":
            data = json.load(sys.stdin)
        else:
            with open(path, encoding="utf-8") as handle:
                data = json.load(handle)
    except (OSError, json.JSONDecodeError) as exc:
        raise StructuralInputError(f"cannot read ASM list from {path}: {exc}", path) from exc
    if not isinstance(data, list) or not data:
        raise StructuralInputError("input must be a nonempty JSON list of ASMs", data)
    asms = []
    for position, item in enumerate(data, start=1):
        try:
            asms.append(Asm.from_json(item) if isinstance(item, dict) else Asm.from_rows(item))
        except StructuralInputError as exc:
            raise StructuralInputError(f"ASM {position} of {path}: {exc}", item) from exc
    return asms


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def _dump(model: Any) -> str:
    return model.model_dump_json(indent=2) + "\n"


def _resolve_format(args: argparse.Namespace) -> None:
    supported = SUPPORTED_FORMATS[args.command]
    if args.format is None:
        args.format = supported[0]
    elif args.format not in supported:
        raise StructuralInputError(
            f"{args.command} does not write {args.format}; use one of {', '.join(supported)}",
            args.format,
        )


def _n_of(args: argparse.Namespace) -> int:
    n = args.n_option if args.n_option is not None else args.n
    if n is None:
        raise StructuralInputError("grid order n is required")
    if n < 1:
        raise StructuralInputError(f"grid order must be at least 1, got {n}", n)
    return n


def _config(args: argparse.Namespace, **overrides: Any) -> RunConfig:
    settings = get_settings()
    values = {
        "command": args.command,
        "input_path": getattr(args, "input", None),
        "output_path": args.out,
        "dot_path": getattr(args, "dot", None),
        "max_dim": getattr(args, "max_dim", None),
        "budget": getattr(args, "budget", None) or settings.scan_budget,
        "format": args.format,
        "cycle_samples": getattr(args, "samples", None) or settings.cycle_samples,
        "sample_seed": settings.sample_seed if getattr(args, "seed", None) is None else args.seed,
    }
    values.update(overrides)
    return RunConfig(**values)


def face_report(face: Face, config: Optional[RunConfig] = None) -> FaceReport:
    """Report of a face: statistics, vertices, grid, symmetry and block factors."""
    product = None
    if len(two_connected_components(face.doubly_graph)) >= 2:
        decomposition = product_decomposition(face)
        product = ProductSummary(
            num_blocks=len(decomposition.factors),
            factor_dimensions=[f.dimension for f in decomposition.factors],
            factor_vertex_counts=[len(f.vertices) for f in decomposition.factors],
        )
    return FaceReport(
        config=config,
        centrally_symmetric=is_centrally_symmetric(face),
        product=product,
        **face.to_json(),
    )


def cmd_count(args: argparse.Namespace) -> int:
    _emit(f"{count_asms(_n_of(args))}\n", args.out)
    return EXIT_OK


def cmd_enumerate(args: argparse.Namespace) -> int:
    asms = enumerate_asms(_n_of(args))
    if args.format == OutputFormat.TEXT_GRID.value:
        text = "\n".join(render_text_grid(asm_to_simple_flow_grid(a)) for a in asms)
    else:
        text = json.dumps([a.to_json() for a in asms], indent=2) + "\n"
    _emit(text, args.out)
    return EXIT_OK


def cmd_face(args: argparse.Namespace) -> int:
    asms = _read_asms(args.input)
    face = smallest_face(asms)
    config = _config(args, n=face.n, num_seeds=len(asms))
    if args.dot:
        _emit(grid_to_dot(face.grid), args.dot)
    if args.format == OutputFormat.TEXT_GRID.value:
        _emit(render_text_grid(face.grid), args.out)
    elif args.format == OutputFormat.DOT.value:
        _emit(grid_to_dot(face.grid), args.out)
    else:
        _emit(_dump(face_report(face, config)), args.out)
    return EXIT_OK


def cmd_lattice(args: argparse.Namespace) -> int:
    asms = _read_asms(args.input)
    face = smallest_face(asms)
    config = _config(args, n=face.n, num_seeds=len(asms))
    lattice = face_lattice(face, max_dim=config.max_dim)
    report = LatticeReport(
        config=config,
        dimension=face.dimension,
        f_vector=list(lattice.f_vector()),
        dimensions={key.hex(): lattice.dimension_of(key) for key in lattice.faces},
        covers={
            (key.hex() if key != EMPTY_FACE_KEY else "empty"): [
                (k.hex() if k != EMPTY_FACE_KEY else "empty") for k in keys
            ]
            for key, keys in sorted(lattice.covers.items())
        },
    )
    _emit(_dump(report), args.out)
    return EXIT_OK


def _classification_csv(report: ClassificationReport) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["name", "d", "V", "F", "facets", "count", "line"])
    for row in report.rows:
        line = "" if row.line is None else row.line
        writer.writerow(
            [row.name, row.dimension, row.num_vertices, row.num_facets, row.facets, row.count, line]
        )
    return buffer.getvalue()


def cmd_classify(args: argparse.Namespace) -> int:
    n = _n_of(args)
    max_dim = args.max_dim if args.max_dim is not None else get_settings().classify_max_dim
    config = _config(args, n=n, max_dim=max_dim)
    result = classify_all_faces(n, max_dim, budget=config.budget)
    report = ClassificationReport(
        config=config,
        complete=result.complete,
        coverage=result.coverage,
        rows=[
            TypeRow(
                name=row.type.label,
                dimension=row.type.dimension,
                num_vertices=row.type.num_vertices,
                num_facets=row.type.num_facets,
                facets=row.type.facets_label,
                count=row.count,
                line=row.type.entry.line if row.type.entry else None,
                witness=row.witness.grid.to_json(),
            )
            for row in result.rows
        ],
    )
    if args.format == OutputFormat.CSV.value:
        _emit(_classification_csv(report), args.out)
    else:
        _emit(_dump(report), args.out)
    if not result.complete:
        logger.warning("classification incomplete: %s", result.coverage)
        return EXIT_INCOMPLETE
    return EXIT_OK


def cmd_audit(args: argparse.Namespace) -> int:
    n = _n_of(args)
    config = _config(args, n=n)
    report = run_audit(n, config.budget, config.cycle_samples, config.sample_seed)
    report.config = config
    _emit(_dump(report), args.out)
    if not report.passed:
        return EXIT_FAILED
    return EXIT_OK if report.complete else EXIT_INCOMPLETE


def cmd_export_dot(args: argparse.Namespace) -> int:
    face = smallest_face(_read_asms(args.input))
    if args.graph == "doubly":
        _emit(doubly_graph_to_dot(face.doubly_graph), args.out)
    else:
        _emit(grid_to_dot(face.grid), args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="asmgrid",
        description="Faces of the alternating sign matrix polytope as flow grids.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", default=None, help="Write output here instead of stdout")
    common.add_argument(
        "--format",
        choices=[f.value for f in OutputFormat],
        default=None,
        help="Output format (default: the first one the subcommand supports)",
    )
    common.add_argument("--log-level", default=None, help="Logging level (default: settings)")

    order = argparse.ArgumentParser(add_help=False)
    order.add_argument("n", type=int, nargs="?", default=None, help="Grid order")
    order.add_argument("--n", dest="n_option", type=int, default=None, help="Grid order")

    scan = argparse.ArgumentParser(add_help=False)
    scan.add_argument("--budget", type=int, default=None, help="Maximum faces to record")

    source = argparse.ArgumentParser(add_help=False)
    source.add_argument("input", help="JSON list of ASMs, or - for stdin")

    subparsers = parser.add_subparsers(dest="command", required=True)
    subparsers.add_parser(Command.COUNT.value, parents=[common, order], help="Count n x n ASMs")
    subparsers.add_parser(Command.ENUMERATE.value, parents=[common, order], help="List n x n ASMs")

    p_face = subparsers.add_parser(
        Command.FACE.value, parents=[common, source], help="Smallest face containing ASMs"
    )
    p_face.add_argument("--dot", default=None, help="Also write the grid as DOT to this path")

    p_lattice = subparsers.add_parser(
        Command.LATTICE.value, parents=[common, source], help="Face lattice of a face"
    )
    p_lattice.add_argument(
        "--max-dim", type=int, default=None, help="Largest face dimension accepted"
    )

    p_classify = subparsers.add_parser(
        Command.CLASSIFY.value, parents=[common, order, scan], help="Combinatorial types"
    )
    p_classify.add_argument("--max-dim", type=int, default=None, help="At most 4")

    p_audit = subparsers.add_parser(
        Command.AUDIT.value, parents=[common, order, scan], help="Theorem audit"
    )
    p_audit.add_argument("--samples", type=int, default=None, help="Cycles sampled for n > 3")
    p_audit.add_argument("--seed", type=int, default=None)

    p_dot = subparsers.add_parser(
        Command.EXPORT_DOT.value, parents=[common, source], help="DOT export of a face"
    )
    p_dot.add_argument("--graph", choices=["grid", "doubly"], default="grid")
    return parser


COMMANDS = {
    Command.COUNT.value: cmd_count,
    Command.ENUMERATE.value: cmd_enumerate,
    Command.FACE.value: cmd_face,
    Command.LATTICE.value: cmd_lattice,
    Command.CLASSIFY.value: cmd_classify,
    Command.AUDIT.value: cmd_audit,
    Command.EXPORT_DOT.value: cmd_export_dot,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Run one subcommand and return its exit code."""
    args = build_parser().parse_args(argv)
    level = args.log_level or get_settings().log_level
    logging.basicConfig(
        level=getattr(logging, str(level).upper(), logging.WARNING),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )
    try:
        _resolve_format(args)
        return COMMANDS[args.command](args)
    except CrossCheckError as exc:
        _emit(json.dumps({"discrepancy": exc.discrepancy.to_json()}, indent=2) + "\n", None)
        return EXIT_FAILED
    except (StructuralInputError, InvalidFlowGridError, DomainError, ResourceGuardError) as exc:
        print(f"asmgrid: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ValidationError as exc:
        print(f"asmgrid: invalid arguments: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except AsmGridError as exc:
        print(f"asmgrid: internal error: {exc}", file=sys.stderr)
        return EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())
