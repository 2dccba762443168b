"""
Command line entry point

exit codes: 0 every criterion passed, 1 a criterion failed (named on stderr), 2 usage error
"""
import argparse
import logging
import sys
from typing import List, Optional

from willmore_lab.cli.config import COMMANDS, RESIDUAL_FORMS, ExperimentConfig
from willmore_lab.cli.lab import Lab
from willmore_lab.cli.report import write_dumps, write_report


EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2


def _add_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument('--config', help='json file of config values, they override the flags')
    parser.add_argument('--surface', help="catalog surface id, for example 'torus_rev(t=2)'")
    parser.add_argument('--n-r', dest='n_r', type=int)
    parser.add_argument('--n-theta', dest='n_theta', type=int)
    parser.add_argument('--fd-order', dest='fd_order', type=int)
    parser.add_argument('--ladder', help='comma separated radial node counts, for example 32,64,128')
    parser.add_argument('--form', choices=RESIDUAL_FORMS)
    parser.add_argument('--samples', type=int)
    parser.add_argument('--seed', type=int)
    parser.add_argument('--epsilon', type=float)
    parser.add_argument('--tol', type=float)
    parser.add_argument('--max-iterations', dest='max_iterations', type=int)
    parser.add_argument('--scheme')
    parser.add_argument('--data-class', dest='data_class', choices=('h_minus_1', 'l1'))
    parser.add_argument('--m', type=int)
    parser.add_argument('--amplitude', type=float)
    parser.add_argument('--k', type=int)
    parser.add_argument('--H0', dest='H0', help='comma separated residue vector of log_singular')
    parser.add_argument('--radii', help='comma separated residue radii')
    parser.add_argument('--family', help='comma separated cap radii of the bootstrap family')
    parser.add_argument('--transforms', type=int)
    parser.add_argument('--which', help="lorentz norm: '2,1', '2,inf' or '2,2'")
    parser.add_argument('--output', help='report file (.json) or directory')
    parser.add_argument('--csv', action='store_true', default=None, help='dump computed fields as csv')
    parser.add_argument('--progress', action='store_true', default=None)
    parser.add_argument('--verbose', '-v', action='count', default=0)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog='willmore_lab', description='Numerical lab for the willmore equation')
    subparsers = parser.add_subparsers(dest='command', required=True)
    for command in COMMANDS:
        _add_flags(subparsers.add_parser(command))
    return parser


def parse_config(argv: Optional[List[str]] = None):
    """
    :return: (config, verbosity)
    :raise ValueError: for invalid values
    :raise SystemExit: for unparsable command lines
    """
    args = vars(build_parser().parse_args(argv))
    path = args.pop('config')
    verbose = args.pop('verbose')
    flags = {k: v for k, v in args.items() if v is not None}
    config = ExperimentConfig.from_file(path, **flags) if path else ExperimentConfig(**flags)
    return config, verbose


def run(argv: Optional[List[str]] = None) -> int:
    """
    runs one experiment from a command line
    :param argv: arguments after the program name
    :return: exit code
    """
    try:
        config, verbose = parse_config(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code not in (0, None) else EXIT_OK
    except (ValueError, OSError) as e:
        print(f'usage error: {e}', file=sys.stderr)
        return EXIT_USAGE
    logging.basicConfig(level=[logging.WARNING, logging.INFO, logging.DEBUG][min(verbose, 2)],
                        format='%(levelname)s %(name)s: %(message)s')

    try:
        experiment = Lab(config).run(render=True)
    except ValueError as e:
        print(f'usage error: {e}', file=sys.stderr)
        return EXIT_USAGE

    path = write_report(experiment)
    print(f'report written to {path}')
    if config.csv:
        written = write_dumps(experiment, path.parent)
        print(f'{len(written)} field dumps written to {path.parent}')

    if not experiment.passed:
        for criterion in experiment.failures:
            print(f'FAILED {criterion}', file=sys.stderr)
        return EXIT_FAILED
    return EXIT_OK


def main() -> None:
    sys.exit(run())
