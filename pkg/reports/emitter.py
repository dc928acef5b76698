"""
Report emission: one JSON document plus flat CSV tables per run.

Output is byte-stable: JSON keys are sorted, CSV columns follow a fixed
schema per command and rows keep the order the analysis produced.
"""

import json
import os
from dataclasses import dataclass, field
from typing import Any, Dict, List, Sequence

import pandas as pd

from utils.error_handler import ReportError
from utils.logging_config import get_logger

logger = get_logger(__name__)

CSV_COLUMNS: Dict[str, List[str]] = {
    'enumerate': ['bound', 'seed', 'descriptor', 'kind', 'dims', 'length', 'ar_kind', 'tube',
                  'quasi_length', 'defect', 'measure', 'rational', 'gr_count'],
    'partition': ['bound', 'seed', 'measure', 'rational', 'label', 'certification', 'witness', 'witness_kind'],
    'successors': ['bound', 'seed', 'measure', 'successor', 'certification', 'b_value'],
    'predecessors': ['bound', 'seed', 'window', 'measure', 'certification'],
    'mu_ij': ['bound', 'seed', 'i', 'j', 'a', 'measure', 'realizers', 'checks'],
    'verify': ['bound', 'seed', 'property', 'passed', 'checked', 'failures'],
    'measure': ['bound', 'seed', 'descriptor', 'measure', 'rational', 'gr_count', 'gr_submodules', 'filtration'],
    'worked-examples': ['bound', 'seed', 'example', 'expected', 'computed', 'passed'],
}


@dataclass
class RunReport:
    """Results of one CLI run, ready to be written"""
    command: str
    config: Dict[str, Any]
    document: Dict[str, Any]
    tables: Dict[str, List[Dict[str, Any]]] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.document.get('passed', True)


def _json_text(report: RunReport) -> str:
    payload = {'command': report.command, 'config': report.config}
    payload.update(report.document)
    return json.dumps(payload, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _table_file(command: str, table: str) -> str:
    return f"{command}.csv" if table == command else f"{command}_{table}.csv"


def _write_csv(path: str, table: str, rows: List[Dict[str, Any]]):
    columns = CSV_COLUMNS[table]
    df = pd.DataFrame(rows, columns=columns)
    df.to_csv(path, index=False, lineterminator="\n")


def emit_report(report: RunReport, out_dir: str, formats: Sequence[str] = ("json", "csv")) -> List[str]:
    """Write the report in every requested format; returns the written paths"""
    written = []
    try:
        os.makedirs(out_dir, exist_ok=True)
        if "json" in formats:
            path = os.path.join(out_dir, f"{report.command}.json")
            with open(path, "w", encoding="utf-8", newline="\n") as handle:
                handle.write(_json_text(report))
            written.append(path)
        if "csv" in formats:
            for table in sorted(report.tables):
                if table not in CSV_COLUMNS:
                    raise ReportError(f"No CSV schema for table {table!r}", code="schema", table=table)
                path = os.path.join(out_dir, _table_file(report.command, table))
                _write_csv(path, table, report.tables[table])
                written.append(path)
    except OSError as e:
        raise ReportError(f"Cannot write reports to {out_dir}: {str(e)}", code="unwritable", path=out_dir) from e
    logger.info(f"Wrote {len(written)} report files to {out_dir}")
    return written
