from .config import COMMANDS, ExperimentConfig
from .experiments import EXPERIMENTS, BaseExperiment, Criterion
from .lab import Lab
from .main import build_parser, main, run
from .report import build_report, canonical_json, write_report

__all__ = [
    'ExperimentConfig',
    'Lab',
    'BaseExperiment',
    'Criterion',
    'COMMANDS',
    'EXPERIMENTS',
    'build_parser',
    'run',
    'main',
    'build_report',
    'canonical_json',
    'write_report',
]
