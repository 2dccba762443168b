"""
Canonical json reports

Keys are sorted and no timestamps are written, so identical configs give byte identical files.
"""
import hashlib
import json
import os
from pathlib import Path
from typing import List

from willmore_lab import __version__, settings
from willmore_lab.cli.config import ExperimentConfig
from willmore_lab.cli.experiments import BaseExperiment
from willmore_lab.disk_field import write_csv
from willmore_lab.solvers.reports import _clean
from willmore_lab.surfaces import write_immersion_csv, write_ply

SCHEMA_PATH = Path(__file__).with_name('report_schema.json')


def canonical_json(value) -> str:
    return json.dumps(value, sort_keys=True, indent=2, ensure_ascii=False, allow_nan=False) + '\n'


def config_digest(config: ExperimentConfig) -> str:
    """
    sha256 of the canonical config, independent of the output path
    """
    content = {k: v for k, v in config.to_dict().items() if k not in ('output', 'progress')}
    return hashlib.sha256(json.dumps(content, sort_keys=True, separators=(',', ':')).encode('utf-8')).hexdigest()


def build_report(experiment: BaseExperiment) -> dict:
    config = experiment.config
    return {
        'schema_version': settings.SCHEMA_VERSION,
        'version': f'willmore_lab {__version__}',
        'rng': settings.RNG_ALGORITHM,
        'config': _clean(config.to_dict()),
        'config_digest': config_digest(config),
        **experiment.to_dict(),
    }


def report_path(config: ExperimentConfig) -> Path:
    """
    --output as a .json file or a directory, else the directory in WILLMORE_LAB_REPORT_DIR, else the working
    directory, the file is named after the command
    """
    if config.output and config.output.endswith('.json'):
        return Path(config.output)
    directory = config.output or os.environ.get(settings.REPORT_DIR_ENV) or '.'
    return Path(directory) / f'{config.command}.json'


def write_report(experiment: BaseExperiment) -> Path:
    path = report_path(experiment.config)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, 'w', encoding='utf-8') as handle:
        handle.write(canonical_json(build_report(experiment)))
    return path


def write_dumps(experiment: BaseExperiment, directory: Path) -> List[Path]:
    """
    csv of every computed field, csv and ply of every exported immersion
    """
    written = []
    prefix = experiment.config.command
    for name, field in experiment.fields.items():
        written.append(directory / f'{prefix}_{name}.csv')
        write_csv(field, written[-1])
    for name, immersion in experiment.exports.items():
        written.append(directory / f'{prefix}_{name}_immersion.csv')
        write_immersion_csv(immersion, written[-1])
        written.append(directory / f'{prefix}_{name}.ply')
        write_ply(immersion, written[-1])
    return written


def load_schema() -> dict:
    with open(SCHEMA_PATH, encoding='utf-8') as handle:
        return json.load(handle)
