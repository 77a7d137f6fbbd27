"""
Command-line entry point.

    python main.py diss "H(12)"
    python main.py family "S(0,3)" | python main.py rho -
    python main.py enumerate 7 --diss 5
    python main.py search 10 8 --trees
    python main.py verify k_n2 --n-range 10..12 --trees
    python main.py claims --max 8

Exit codes: 0 success, 1 failed verification, 2 usage or input error.
"""

import argparse
import logging
import os
import sys
from pathlib import Path
from typing import List, Optional, Sequence, TextIO, Tuple

import pandas as pd

from app.data.graph6 import from_graph6, to_graph6
from models.config import OUTPUT_FORMATS, Config
from models.errors import DissSpectraError
from models.family_spec import FamilySpec
from models.graph import Graph
from services.canonical_labeler import CanonicalLabeler
from services.dissociation_solver import DissociationSolver
from services.extremal_search import ExtremalSearch
from services.family_builder import FamilyBuilder
from services.graph_enumerator import STRATEGIES, GraphEnumerator
from services.graph_store import GraphStore
from services.report_formatter import ReportFormatter
from services.spectral_analyzer import SpectralAnalyzer
from services.theorem_verifier import THEOREM_CASES, TheoremVerifier

logger = logging.getLogger("diss_spectra")

LOG_LEVEL_ENV = "DISS_SPECTRA_LOG_LEVEL"


def parse_n_range(text: str) -> List[int]:
    """Parse "a..b" (inclusive) or a single order."""
    try:
        if ".." in text:
            low, high = text.split("..", 1)
            values = list(range(int(low), int(high) + 1))
        else:
            values = [int(text)]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a..b or an integer, got {text!r}")
    if not values:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return values


def build_parser() -> argparse.ArgumentParser:
    # SUPPRESS keeps a subcommand's absent option from hiding the same option given earlier
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=argparse.SUPPRESS, help="power-iteration tolerance")
    common.add_argument("--tie-gap", dest="tie_gap", type=float, default=argparse.SUPPRESS,
                        help="spectral radii closer than this are ties")
    common.add_argument("--workers", type=int, default=argparse.SUPPRESS, help="worker processes")
    common.add_argument("--format", dest="output_format", choices=OUTPUT_FORMATS, default=argparse.SUPPRESS)
    common.add_argument("--out", default=argparse.SUPPRESS, help="write output to FILE instead of stdout")
    common.add_argument("--spill-dir", dest="spill_dir", default=argparse.SUPPRESS,
                        help="directory of the sqlite class store")
    common.add_argument("-v", "--verbose", action="count", default=argparse.SUPPRESS)
    common.add_argument("--progress", dest="show_progress", action="store_true", default=argparse.SUPPRESS)
    common.add_argument("--no-progress", dest="show_progress", action="store_false", default=argparse.SUPPRESS)
    common.add_argument("--no-runtime", dest="no_runtime", action="store_true", default=argparse.SUPPRESS,
                        help="write runtime_ms as 0 for reproducible reports")

    parser = argparse.ArgumentParser(prog="diss-spectra", parents=[common],
                                     description="Dissociation number and spectral radius toolkit")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True

    p = sub.add_parser("diss", parents=[common], help="dissociation number and a witness set")
    p.add_argument("graph", help="graph6 string, family spec, or - for stdin")
    p.add_argument("--engine", choices=("auto", "bruteforce", "exact", "tree"), default="auto")

    p = sub.add_parser("rho", parents=[common], help="spectral radius with residual")
    p.add_argument("graph", help="graph6 string, family spec, or - for stdin")

    p = sub.add_parser("family", parents=[common], help="graph6 of a family member")
    p.add_argument("spec", help='e.g. "G3(1,2,0,3)"')

    p = sub.add_parser("canon", parents=[common], help="canonical graph6")
    p.add_argument("graph", help="graph6 string, family spec, or - for stdin")

    p = sub.add_parser("enumerate", parents=[common], help="non-isomorphic graphs of order n")
    p.add_argument("n", type=int)
    group = p.add_mutually_exclusive_group()
    group.add_argument("--trees", action="store_true", help="free trees")
    group.add_argument("--all", dest="all_graphs", action="store_true", help="all graphs, connected or not")
    p.add_argument("--diss", type=int, default=None, help="keep graphs with this dissociation number")
    p.add_argument("--strategy", choices=STRATEGIES, default=STRATEGIES[0])

    p = sub.add_parser("search", parents=[common], help="spectral extremizers of a class")
    p.add_argument("n", type=int)
    p.add_argument("k", type=int)
    p.add_argument("--trees", action="store_true")
    p.add_argument("--max", dest="maximize", action="store_true", help="maximize instead of minimize")

    p = sub.add_parser("verify", parents=[common], help="check a characterization over a range of orders")
    p.add_argument("case", choices=THEOREM_CASES)
    p.add_argument("--n-range", dest="n_range", type=parse_n_range, required=True, metavar="A..B")
    p.add_argument("--trees", action="store_true")

    p = sub.add_parser("claims", parents=[common], help="tabulate the comparison chains and closed forms")
    p.add_argument("--max", dest="total_max", type=int, default=8, help="largest s + q")
    p.add_argument("--star-max", dest="star_max", type=int, default=50)
    p.add_argument("--r-max", dest="closed_form_r_max", type=int, default=6)

    p = sub.add_parser("chain", parents=[common], help="follow the B(n,s,t) reductions")
    p.add_argument("n", type=int)
    p.add_argument("s", type=int)
    p.add_argument("t", type=int)

    sub.add_parser("store", parents=[common], help="list classes cached in the spill directory")
    return parser


def read_graph(text: str, stdin: Optional[TextIO], families: FamilyBuilder) -> Graph:
    """Resolve a graph argument: "-" reads stdin, family specs are built, anything else is graph6."""
    if text == "-":
        source = stdin if stdin is not None else sys.stdin
        lines = [line.strip() for line in source.read().splitlines() if line.strip()]
        if not lines:
            raise DissSpectraError("no graph on standard input")
        text = lines[0]
    if FamilySpec.looks_like_spec(text):
        return families.parse_and_build(text)
    return from_graph6(text)


def load_config(args: argparse.Namespace) -> Config:
    config = Config.from_env().with_overrides(
        tol=getattr(args, "tol", None),
        tie_gap=getattr(args, "tie_gap", None),
        workers=getattr(args, "workers", None),
        output_format=getattr(args, "output_format", None),
        spill_dir=getattr(args, "spill_dir", None),
        show_progress=getattr(args, "show_progress", None),
    )
    return config.ensure_valid()


def _graph_lines_output(lines: Sequence[str], diss: Optional[Sequence[int]], formatter: ReportFormatter) -> str:
    if formatter.get_format() == "text":
        return "\n".join(lines)
    table = pd.DataFrame({"graph6": list(lines)})
    if diss is not None:
        table["diss"] = list(diss)
    return formatter.format_table(table)


def execute(args: argparse.Namespace, config: Config, stdin: Optional[TextIO],
            store: Optional[GraphStore]) -> Tuple[int, str]:
    """Run one parsed command and return (exit code, output text)."""
    formatter = ReportFormatter(config.get_output_format(), not getattr(args, "no_runtime", False))
    labeler = CanonicalLabeler()
    families = FamilyBuilder(labeler)
    command = args.command

    if command == "diss":
        result = DissociationSolver().diss(read_graph(args.graph, stdin, families), args.engine)
        record = {"diss": result.get_value(),
                  "witness": " ".join(str(v) for v in result.get_witness()),
                  "engine": result.get_engine()}
        return 0, formatter.format_record(record)

    if command == "rho":
        result = SpectralAnalyzer(config).spectral_radius(read_graph(args.graph, stdin, families))
        record = {"rho": result.get_rho(), "residual": result.get_residual(),
                  "iterations": result.get_iterations()}
        return 0, formatter.format_record(record)

    if command == "family":
        return 0, to_graph6(families.parse_and_build(args.spec))

    if command == "canon":
        return 0, to_graph6(labeler.canonical_graph(read_graph(args.graph, stdin, families)))

    enumerator = GraphEnumerator(config, store)
    if command == "enumerate":
        mode = "trees" if args.trees else "all" if args.all_graphs else "connected"
        stream = enumerator.stream(mode, args.n, args.strategy)
        if args.diss is not None:
            stream = enumerator.filter_by_diss(stream, args.diss)
        return 0, _graph_lines_output(stream.get_lines(), stream.get_diss(), formatter)

    search = ExtremalSearch(config, enumerator, SpectralAnalyzer(config), families, labeler)
    if command == "search":
        mode = "trees" if args.trees else "connected"
        if args.maximize:
            report = search.max_rho_search(args.n, args.k, mode)
        else:
            report = search.min_rho_search(args.n, args.k, mode)
        return 0, formatter.format_report(report)

    verifier = TheoremVerifier(search, config)
    if command in ("verify", "claims", "chain"):
        if command == "verify":
            result = verifier.verify_theorem(args.case, args.n_range, args.trees)
        elif command == "claims":
            result = verifier.verify_claims(args.total_max, args.star_max, args.closed_form_r_max)
        else:
            result = verifier.verify_bst_chain(args.n, args.s, args.t)
        return (0 if result.is_passed() else 1), formatter.format_verification(result)

    if store is None:
        raise DissSpectraError("store needs --spill-dir or DISS_SPECTRA_SPILL_DIR")
    return 0, formatter.format_table(store.list_runs())


def run(argv: Optional[Sequence[str]] = None, stdin: Optional[TextIO] = None) -> Tuple[int, str]:
    """Parse argv, execute, and return (exit code, buffered output).

    Errors go to stderr; the output is empty when the command failed or
    was written to --out.
    """
    parser = build_parser()
    try:
        args = parser.parse_args(list(argv) if argv is not None else None)
    except SystemExit as exc:
        return (exc.code if isinstance(exc.code, int) else 2), ""

    store = None
    try:
        config = load_config(args)
        if config.get_spill_dir():
            store = GraphStore.in_spill_dir(config.get_spill_dir())
        code, output = execute(args, config, stdin, store)
    except DissSpectraError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2, ""
    finally:
        if store is not None:
            store.close()

    out_path = getattr(args, "out", None)
    if out_path:
        Path(out_path).write_text(output + "\n", encoding="utf-8")
        logger.info("wrote %s", out_path)
        return code, ""
    return code, output


def configure_logging(argv: Sequence[str]) -> None:
    verbosity = sum(arg.count("v") for arg in argv if arg.startswith("-") and set(arg[1:]) == {"v"})
    verbosity += sum(1 for arg in argv if arg == "--verbose")
    if verbosity >= 2:
        level = logging.DEBUG
    elif verbosity == 1:
        level = logging.INFO
    else:
        level = getattr(logging, os.environ.get(LOG_LEVEL_ENV, "WARNING").upper(), logging.WARNING)
    logging.basicConfig(level=level, stream=sys.stderr,
                        format="%(asctime)s %(levelname)s %(name)s: %(message)s")


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    configure_logging(argv)
    code, output = run(argv)
    if output:
        sys.stdout.write(output + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
