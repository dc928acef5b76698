"""
Command-line surface of the GR toolkit.

    python main.py measure --cycle "+++--" --band m=1
    python main.py verify two_gr_string --cycle "++-" --max-len 12
    python main.py partition --cycle "+-" --max-len 9

Exit status: 0 when every check passed, 1 on a property failure, 2 on usage
or input errors.
"""

import argparse
import json
import sys
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from algebra.iso_classes import IsoClass
from algebra.measures import GRMeasure, fraction_text, to_rational
from algebra.quivers import Quiver, build_cycle_quiver, load_quiver, validate_string
from algebra.string_modules import Representation
from algebra.tubes import all_tubes, quasi_chain
from analysis.gr_engine import GREngine, GRResult, get_engine, reset_engines
from analysis.partition import (
    BOUNDED, mu_ij_table, no_predecessor_report, partition_prefix, successor_chain,
)
from analysis.properties import available_properties, verify_properties
from cli.experiments import worked_examples
from reports.emitter import RunReport, emit_report
from utils.config import RunConfig, load_run_config, parse_fraction
from utils.error_handler import (
    EXIT_OK, EXIT_PROPERTY_FAILURE, EXIT_USAGE, ToolkitError, UsageError, error_handler, safe_execute,
)
from utils.logging_config import get_logger, setup_logging

logger = get_logger(__name__)


def _common_options() -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False)
    source = parent.add_mutually_exclusive_group()
    source.add_argument("--cycle", help="orientation word over {+,-}, e.g. '+-+-'")
    source.add_argument("--quiver", dest="quiver_path", help="path to a quiver JSON document")
    parent.add_argument("--config", default=None, help="configuration file (default config.ini)")
    parent.add_argument("--max-len", dest="max_len", type=int, help="enumeration bound on module length")
    parent.add_argument("--lambda", dest="lambdas", action="append", help="band parameter (repeatable)")
    parent.add_argument("--seed", type=int, help="seed of the randomized rank fast path")
    parent.add_argument("--no-random-fast-path", dest="random_fast_path", action="store_false", default=None,
                        help="always use exact symbolic ranks")
    parent.add_argument("--out", dest="out_dir", help="report output directory")
    parent.add_argument("--format", dest="formats", action="append", choices=["json", "csv"],
                        help="report format (repeatable)")
    parent.add_argument("--log-level", dest="log_level", help="console log level")
    parent.add_argument("--workers", type=int, help="threads for per-length measure batches")
    parent.add_argument("--ar-pruning", dest="ar_pruning", action="store_true", default=None,
                        help="skip candidates ruled out by AR theory")
    parent.add_argument("--verify-pruning", dest="verify_pruning", action="store_true", default=None,
                        help="recompute pruned searches without pruning")
    parent.add_argument("--count-mode", dest="gr_count_mode", choices=["identify", "dimension"],
                        help="how GR submodules are counted")
    return parent


def build_parser() -> argparse.ArgumentParser:
    common = _common_options()
    parser = argparse.ArgumentParser(prog="gr-toolkit", description="Gabriel-Roiter measures for cycle quivers")
    sub = parser.add_subparsers(dest="command", required=True)

    measure = sub.add_parser("measure", parents=[common], help="GR measure and GR submodules of one module")
    target = measure.add_mutually_exclusive_group(required=True)
    target.add_argument("--band", help="homogeneous module H_m, written m=K")
    target.add_argument("--string", help="string word, e.g. 'a2 a1 a0' or 'e3' for a simple")
    target.add_argument("--representation", help="path to an explicit representation JSON document")

    sub.add_parser("enumerate", parents=[common], help="indecomposables up to the bound with their measures")
    sub.add_parser("partition", parents=[common], help="take-off / central / landing labels")

    successors = sub.add_parser("successors", parents=[common], help="chain of direct successors")
    successors.add_argument("--from", dest="start", default="{1}", help="starting measure, e.g. '{1 2}'")
    successors.add_argument("--steps", type=int, default=5)

    predecessors = sub.add_parser("predecessors", parents=[common],
                                  help="measures without a direct predecessor and the ladder tables")
    predecessors.add_argument("--window", type=int, default=None)
    predecessors.add_argument("--i-max", dest="i_max", type=int, default=None)

    verify = sub.add_parser("verify", parents=[common], help="check registered properties")
    verify.add_argument("properties", nargs="*", help=f"property ids (default: all of {available_properties()})")

    sub.add_parser("worked-examples", aliases=["paper-examples"], parents=[common],
                   help="reproduce the worked examples with known measures")
    return parser


def _overrides(args: argparse.Namespace) -> Dict[str, Any]:
    keys = ("cycle", "quiver_path", "max_len", "seed", "random_fast_path", "out_dir", "log_level",
            "workers", "ar_pruning", "verify_pruning", "gr_count_mode")
    overrides = {k: getattr(args, k, None) for k in keys}
    if args.lambdas:
        overrides['lambdas'] = tuple(parse_fraction(x) for x in args.lambdas)
    if args.formats:
        overrides['formats'] = tuple(dict.fromkeys(args.formats))
    return overrides


def resolve_quiver(config: RunConfig) -> Quiver:
    if config.cycle:
        return build_cycle_quiver(config.cycle)
    if config.quiver_path:
        return load_quiver(config.quiver_path)
    raise UsageError("Give a quiver with --cycle or --quiver")


def parse_descriptor(engine: GREngine, args: argparse.Namespace) -> IsoClass:
    q = engine.quiver
    if args.band:
        text = args.band.split("=", 1)[-1]
        try:
            m = int(text)
        except ValueError as e:
            raise UsageError(f"Band multiplicity must be an integer: {args.band!r}") from e
        if m < 1:
            raise UsageError("Band multiplicity must be at least 1")
        return engine.homogeneous(m)
    tokens = args.string.replace(",", " ").split()
    if len(tokens) == 1 and tokens[0].startswith("e") and tokens[0][1:].isdigit():
        return IsoClass.from_string(q, validate_string(q, [], vertex=int(tokens[0][1:])))
    return IsoClass.from_string(q, validate_string(q, tokens))


def _load_representation(q: Quiver, path: str) -> Representation:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            doc = json.load(handle)
    except (OSError, json.JSONDecodeError) as e:
        raise UsageError(f"Cannot read representation document {path}: {str(e)}", path=path) from e
    return Representation.from_document(q, doc)


def _base_row(config: RunConfig) -> Dict[str, Any]:
    return {'bound': config.max_len, 'seed': config.seed}


def _dims_text(dims: Sequence[int]) -> str:
    return "[" + " ".join(str(d) for d in dims) + "]"


def _rational(value: GRMeasure) -> str:
    return fraction_text(to_rational(value))


def cmd_measure(q: Quiver, config: RunConfig, args: argparse.Namespace) -> RunReport:
    engine = get_engine(q, config.engine_settings())
    if args.representation:
        result = engine.measure_of_representation(_load_representation(q, args.representation), config.lambdas)
    else:
        M = parse_descriptor(engine, args)
        if M.length == 1:
            result = GRResult(M, engine.measure(M), (), 0, (M,))
        else:
            result = engine.gr_submodules(M)
    document = result.to_dict()
    document['rational'] = _rational(result.measure)
    document['bound'] = config.max_len
    row = dict(_base_row(config), descriptor=result.module.descriptor(), measure=result.measure.csv_text(),
               rational=document['rational'], gr_count=result.gr_count,
               gr_submodules=";".join(N.descriptor() for N in result.gr_submodules),
               filtration=";".join(N.descriptor() for N in result.filtration))
    return RunReport("measure", config.echo(), document, {'measure': [row]})


def cmd_enumerate(q: Quiver, config: RunConfig, args: argparse.Namespace) -> RunReport:
    engine = get_engine(q, config.engine_settings())
    classes = engine.enumerate_indecomposables(config.max_len)
    measures = engine.measures(classes)
    rows, modules = [], []
    for X, value in zip(classes, measures):
        ar = engine.classify(X).to_dict() if q.is_cycle_quiver else {}
        gr_count = engine.gr_submodules(X).gr_count if X.length > 1 else 0
        rows.append(dict(_base_row(config), descriptor=X.descriptor(), kind=X.kind, dims=_dims_text(X.dims),
                         length=X.length, ar_kind=ar.get('kind', ""), tube=ar.get('tube') or "",
                         quasi_length=ar.get('quasi_length') or "", defect=ar.get('defect', ""),
                         measure=value.csv_text(), rational=_rational(value), gr_count=gr_count))
        modules.append(dict(X.to_dict(), ar=ar, measure=value.to_list(), gr_count=gr_count))
    document = {'bound': config.max_len, 'count': len(classes), 'modules': modules}
    return RunReport("enumerate", config.echo(), document, {'enumerate': rows})


def cmd_partition(q: Quiver, config: RunConfig, args: argparse.Namespace) -> RunReport:
    report = partition_prefix(q, config.max_len, config.engine_settings())
    rows = []
    for row in report.rows:
        rows.append(dict(_base_row(config), measure=row.measure.csv_text(), rational=_rational(row.measure),
                         label=row.label, certification=row.certification, witness=row.witness.descriptor(),
                         witness_kind=row.witness_kind))
    return RunReport("partition", config.echo(), report.to_dict(), {'partition': rows})


def cmd_successors(q: Quiver, config: RunConfig, args: argparse.Namespace) -> RunReport:
    start = GRMeasure.parse(args.start)
    chain = successor_chain(q, start, config.max_len, args.steps, config.engine_settings())
    rows = []
    for result in chain:
        rows.append(dict(_base_row(config), measure=result.measure.csv_text(),
                         successor=result.successor.csv_text() if result.successor is not None else "",
                         certification=result.certification, b_value=result.b_value))
    document = {'bound': config.max_len, 'start': start.to_list(), 'chain': [r.to_dict() for r in chain]}
    return RunReport("successors", config.echo(), document, {'successors': rows})


def _ladder_quasi_simples(engine: GREngine):
    q = engine.quiver
    h1 = engine.measure(engine.homogeneous(1))
    for tube in all_tubes(q):
        if tube.homogeneous or tube.rank < 2:
            continue
        for X in tube.quasi_simples:
            if not engine.measure(quasi_chain(q, X, tube.rank)) < h1:
                yield X, tube.rank


def cmd_predecessors(q: Quiver, config: RunConfig, args: argparse.Namespace) -> RunReport:
    settings = config.engine_settings()
    engine = get_engine(q, settings)
    window = args.window if args.window is not None else config.max_len // 2
    entries = no_predecessor_report(q, config.max_len, window, settings)
    rows = [dict(_base_row(config), window=window, measure=e.measure.csv_text(), certification=e.certification)
            for e in entries]
    tables, ladder_rows = [], []
    if not (q.is_cycle_quiver and engine.bands):
        document = {'bound': config.max_len, 'window': window, 'entries': [e.to_dict() for e in entries],
                    'ladders': [], 'passed': True}
        return RunReport("predecessors", config.echo(), document, {'predecessors': rows, 'mu_ij': []})
    h1 = engine.measure(engine.homogeneous(1))
    for X, rank in _ladder_quasi_simples(engine):
        i_max = args.i_max if args.i_max is not None else 2 * rank + 2
        if i_max < 2 * rank:
            continue
        table = mu_ij_table(q, X, i_max, config.max_len, settings)
        tables.append(table.to_dict())
        for row in table.rows:
            ladder_rows.append(dict(_base_row(config), i=row.i, j=row.j, a=row.a, measure=row.measure.csv_text(),
                                    realizers=";".join(Y.descriptor() for Y in row.realizers),
                                    checks="pass" if row.passed else "fail"))
    h1_listed = any(e.measure == h1 for e in entries)
    passed = h1_listed and all(t['passed'] for t in tables)
    document = {
        'bound': config.max_len,
        'window': window,
        'entries': [e.to_dict() for e in entries],
        'ladders': tables,
        'h1_listed': h1_listed,
        'passed': passed,
    }
    return RunReport("predecessors", config.echo(), document, {'predecessors': rows, 'mu_ij': ladder_rows})


def cmd_verify(q: Quiver, config: RunConfig, args: argparse.Namespace) -> RunReport:
    ids = args.properties or available_properties()
    reports = verify_properties(q, ids, config.max_len, config.engine_settings())
    rows = [dict(_base_row(config), property=r.property_id, passed=r.passed, checked=r.checked,
                 failures=len(r.failures)) for r in reports]
    document = {
        'bound': config.max_len,
        'properties': [r.to_dict() for r in reports],
        'passed': all(r.passed for r in reports),
    }
    return RunReport("verify", config.echo(), document, {'verify': rows})


def cmd_worked_examples(q: Optional[Quiver], config: RunConfig, args: argparse.Namespace) -> RunReport:
    results = worked_examples(config.engine_settings())
    rows = [dict(_base_row(config), **r.to_dict()) for r in results]
    document = {'examples': [r.to_dict() for r in results], 'passed': all(r.passed for r in results)}
    return RunReport("worked-examples", config.echo(), document, {'worked-examples': rows})


COMMANDS: Dict[str, Callable[..., RunReport]] = {
    'measure': cmd_measure,
    'enumerate': cmd_enumerate,
    'partition': cmd_partition,
    'successors': cmd_successors,
    'predecessors': cmd_predecessors,
    'verify': cmd_verify,
    'worked-examples': cmd_worked_examples,
    'paper-examples': cmd_worked_examples,
}


def _summarize(report: RunReport, paths: List[str]):
    bounded = [row for rows in report.tables.values() for row in rows if row.get('certification') == BOUNDED]
    if bounded:
        print(f"BOUNDED: {len(bounded)} results depend on the enumeration bound and are not certified")
    status = "passed" if report.passed else "FAILED"
    print(f"{report.command}: {status}")
    for path in paths:
        print(f"  wrote {path}")


@safe_execute
def execute(command: str, config: RunConfig, args: argparse.Namespace) -> Tuple[RunReport, List[str]]:
    """Run one subcommand and write its reports"""
    handler = COMMANDS[command]
    try:
        q = None if handler is cmd_worked_examples else resolve_quiver(config)
        report = handler(q, config, args)
        return report, emit_report(report, config.out_dir, config.formats)
    finally:
        reset_engines()


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code in (0, None) else EXIT_USAGE
    try:
        config = load_run_config(args.config, _overrides(args))
    except ToolkitError as e:
        print(error_handler.get_user_message(e), file=sys.stderr)
        return error_handler.exit_status(e)
    setup_logging(config.log_level, config.log_directory)
    try:
        report, paths = execute(args.command, config, args)
    except ToolkitError as e:
        print(error_handler.get_user_message(e), file=sys.stderr)
        return error_handler.exit_status(e)
    _summarize(report, paths)
    return EXIT_OK if report.passed else EXIT_PROPERTY_FAILURE
