"""
Run configuration: config.ini defaults merged with command-line overrides.
"""

import configparser
import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, Optional, Tuple

from utils.error_handler import UsageError
from utils.logging_config import get_logger

logger = get_logger(__name__)

DEFAULT_CONFIG_PATH = "config.ini"
VALID_FORMATS = ("json", "csv")
VALID_COUNT_MODES = ("identify", "dimension")


@dataclass(frozen=True)
class EngineSettings:
    """Knobs consumed by the GR engine and the hom-space layer"""
    random_fast_path: bool = True
    seed: int = 20240601
    sample_bound: int = 1 << 16
    ar_pruning: bool = False
    verify_pruning: bool = False
    gr_count_mode: str = "identify"
    band_lambda: Fraction = Fraction(1)
    workers: int = 1


@dataclass(frozen=True)
class RunConfig:
    cycle: Optional[str] = None
    quiver_path: Optional[str] = None
    max_len: int = 12
    lambdas: Tuple[Fraction, ...] = (Fraction(1),)
    random_fast_path: bool = True
    seed: int = 20240601
    sample_bound: int = 1 << 16
    out_dir: str = "results"
    formats: Tuple[str, ...] = VALID_FORMATS
    gr_count_mode: str = "identify"
    ar_pruning: bool = False
    verify_pruning: bool = False
    workers: int = 1
    log_level: str = "INFO"
    log_directory: str = "logs"

    def engine_settings(self) -> EngineSettings:
        return EngineSettings(
            random_fast_path=self.random_fast_path,
            seed=self.seed,
            sample_bound=self.sample_bound,
            ar_pruning=self.ar_pruning,
            verify_pruning=self.verify_pruning,
            gr_count_mode=self.gr_count_mode,
            band_lambda=self.lambdas[0],
            workers=self.workers,
        )

    def echo(self) -> Dict[str, Any]:
        """Config echo written into every report"""
        return {
            'cycle': self.cycle,
            'quiver': self.quiver_path,
            'max_len': self.max_len,
            'lambdas': [_fraction_text(x) for x in self.lambdas],
            'random_fast_path': self.random_fast_path,
            'seed': self.seed,
            'gr_count_mode': self.gr_count_mode,
            'ar_pruning': self.ar_pruning,
            'verify_pruning': self.verify_pruning,
        }


def _fraction_text(value: Fraction) -> str:
    return str(value.numerator) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"


def parse_fraction(text: Any) -> Fraction:
    """Parse '3', '-2/5' or an int into an exact rational"""
    try:
        return Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError) as e:
        raise UsageError(f"Not an exact rational: {text!r}", value=text) from e


def load_run_config(path: Optional[str] = None, overrides: Optional[Dict[str, Any]] = None) -> RunConfig:
    """Read config.ini and apply overrides (None values are ignored)"""
    config = configparser.ConfigParser()
    path = path or DEFAULT_CONFIG_PATH
    if os.path.exists(path):
        config.read(path)
    else:
        logger.debug(f"No configuration file at {path}; using built-in defaults")

    def section(name):
        return config[name] if config.has_section(name) else config['DEFAULT']

    enumeration = section('ENUMERATION')
    homlin = section('HOMLIN')
    engine = section('ENGINE')
    reports = section('REPORTS')

    try:
        values: Dict[str, Any] = {
            'max_len': enumeration.getint('MaxLength', fallback=12),
            'random_fast_path': homlin.getboolean('RandomFastPath', fallback=True),
            'seed': homlin.getint('Seed', fallback=20240601),
            'sample_bound': homlin.getint('SampleBound', fallback=1 << 16),
            'ar_pruning': engine.getboolean('ArPruning', fallback=False),
            'verify_pruning': engine.getboolean('VerifyPruning', fallback=False),
            'gr_count_mode': engine.get('GrCountMode', fallback='identify').strip(),
            'lambdas': (parse_fraction(engine.get('Lambda', fallback='1')),),
            'workers': engine.getint('Workers', fallback=1),
            'out_dir': reports.get('OutputDirectory', fallback='results').strip(),
            'formats': tuple(f.strip() for f in reports.get('Formats', fallback='json,csv').split(',') if f.strip()),
            'log_level': config['DEFAULT'].get('LogLevel', fallback='INFO').strip(),
            'log_directory': config['DEFAULT'].get('LogDirectory', fallback='logs').strip(),
        }
    except ValueError as e:
        raise UsageError(f"Malformed configuration file {path}: {str(e)}", path=path) from e

    for key, value in (overrides or {}).items():
        if value is not None:
            values[key] = value

    run_config = RunConfig(**values)
    return validate_run_config(run_config)


def validate_run_config(run_config: RunConfig) -> RunConfig:
    if run_config.max_len < 1:
        raise UsageError("The enumeration bound must be at least 1", max_len=run_config.max_len)
    if not run_config.lambdas or any(x == 0 for x in run_config.lambdas):
        raise UsageError("Band parameters must be nonzero", lambdas=run_config.lambdas)
    bad = [f for f in run_config.formats if f not in VALID_FORMATS]
    if bad or not run_config.formats:
        raise UsageError(f"Unknown output formats: {bad}", formats=run_config.formats)
    if run_config.gr_count_mode not in VALID_COUNT_MODES:
        raise UsageError(f"Unknown gr count mode {run_config.gr_count_mode!r}")
    if run_config.workers < 1:
        raise UsageError("Workers must be at least 1", workers=run_config.workers)
    return run_config
