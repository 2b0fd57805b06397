"""
Command-line harness: ``psdmf run``, ``psdmf grid`` and ``psdmf validate``.
"""

import os
import sys
import json
import logging
import argparse

from . import configfile, exceptions, reports, runners
from .datasets import load_dataset
from .version import __version__

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2

REPORT_FILE = 'report.json'
CONFIG_ECHO_FILE = 'config.ini'
TIMINGS_FILE = 'timings.json'
GRID_CSV_FILE = 'grid.csv'
GRID_JSON_FILE = 'grid.json'


def run_experiment(experiment):
    """
    Runs the configured trials and returns their RunSummary.

    :param configfile.ExperimentConfig experiment: (required). Resolved configuration.
    """
    dataset = experiment.dataset()
    runner = runners.create_runner(experiment.run)
    return runner.run(experiment.psdmf, dataset, echo=experiment.echo())


def write_run_reports(directory, summary):
    """
    Writes report.json (deterministic), config.ini (re-runnable echo) and timings.json into directory.
    """
    os.makedirs(directory, exist_ok=True)
    summary.write_json(os.path.join(directory, REPORT_FILE))
    summary.write_timings(os.path.join(directory, TIMINGS_FILE))
    configfile.write_config(os.path.join(directory, CONFIG_ECHO_FILE), summary.config)


def cmd_run(config_path, overrides=()):
    """
    Runs PSDMF as configured, prints the mean ± std table and writes the reports. Returns the RunSummary.

    :param string config_path: (required). Configuration file, None for defaults.
    :param list overrides: (optional). section.key=value expressions.
    """
    experiment = configfile.load_config(config_path, overrides)
    summary = run_experiment(experiment)
    directory = experiment.report_dir()
    write_run_reports(directory, summary)
    print(summary.table())
    logger.info('Reports written to %s', directory)
    return summary


def cmd_grid(config_path, grid_path, overrides=()):
    """
    Runs one experiment per cell of the Cartesian grid and writes a long-format CSV plus a JSON list of
    summaries. Returns the (assignments, RunSummary) pairs in cell order.

    :param string config_path: (required). Configuration file, None for defaults.
    :param string grid_path: (required). Grid file with a [grid] section.
    :param list overrides: (optional). section.key=value expressions applied before every cell.
    """
    keys, cells = configfile.read_grid(grid_path)
    results = []

    for index, assignments in enumerate(cells):
        experiment = configfile.load_config(config_path, [*overrides, *configfile.cell_overrides(assignments)])
        logger.info('Grid cell %d of %d: %s', index + 1, len(cells), assignments or 'defaults')
        results.append((assignments, run_experiment(experiment)))

    directory = configfile.load_config(config_path, overrides).report_dir()
    os.makedirs(directory, exist_ok=True)
    reports.write_grid_csv(os.path.join(directory, GRID_CSV_FILE), results, keys)

    with open(os.path.join(directory, GRID_JSON_FILE), 'w', encoding='utf-8') as f:
        json.dump([dict(cell=assignments, **summary.to_dict()) for assignments, summary in results], f, indent=2)
        f.write('\n')

    for assignments, summary in results:
        print(', '.join(f'{key}={value}' for key, value in assignments.items()) or 'defaults')
        print(summary.table())

    return results


def cmd_validate(manifest):
    """
    Loads a dataset and prints its statistics. Returns them as a dict.

    :param string manifest: (required). Manifest path.
    """
    stats = load_dataset(manifest).describe()
    print(f'views: {len(stats["view_dims"])}')

    for p, dim in enumerate(stats['view_dims']):
        print(f'  view {p}: {dim} features')

    print(f'samples: {stats["n_samples"]}')
    print(f'classes: {stats["n_classes"] if stats["n_classes"] is not None else "unlabeled"}')
    return stats


def build_parser():
    parser = argparse.ArgumentParser(prog='psdmf', description='Partially shared semi-supervised deep matrix '
                                                               'factorization for multi-view clustering.')
    parser.add_argument('--version', action='version', version=f'%(prog)s {__version__}')
    parser.add_argument('-v', '--verbose', action='count', default=0, help='-v for progress, -vv for debugging')
    commands = parser.add_subparsers(dest='command', required=True)

    run = commands.add_parser('run', help='run repeated trials and report mean and std of ACC, NMI and purity')
    run.add_argument('--config', help='configuration file, defaults apply when omitted')
    run.add_argument('--set', dest='overrides', action='append', default=[], metavar='SECTION.KEY=VALUE',
                     help='override a configuration value, may be repeated')

    grid = commands.add_parser('grid', help='sweep configuration values over a Cartesian grid')
    grid.add_argument('--config', help='configuration file, defaults apply when omitted')
    grid.add_argument('--grid', required=True, help='grid file with a [grid] section')
    grid.add_argument('--set', dest='overrides', action='append', default=[], metavar='SECTION.KEY=VALUE',
                      help='override a configuration value, may be repeated')

    validate = commands.add_parser('validate', help='check a dataset manifest and print its statistics')
    validate.add_argument('manifest', help='dataset manifest')
    return parser


def configure_logging(verbosity):
    level = logging.WARNING if verbosity <= 0 else logging.INFO if verbosity == 1 else logging.DEBUG
    logging.basicConfig(level=level, format='%(asctime)s %(levelname)s %(name)s: %(message)s')


def main(argv=None):
    args = build_parser().parse_args(argv)
    configure_logging(args.verbose)

    try:
        if args.command == 'run':
            return EXIT_OK if cmd_run(args.config, args.overrides).ok else EXIT_FAILED
        if args.command == 'grid':
            results = cmd_grid(args.config, args.grid, args.overrides)
            return EXIT_OK if all(summary.ok for _, summary in results) else EXIT_FAILED

        cmd_validate(args.manifest)
        return EXIT_OK
    except exceptions.ConfigError as e:
        print(f'psdmf: configuration error: {e}', file=sys.stderr)
        return EXIT_USAGE
    except (exceptions.BasePsdmfError, OSError) as e:
        print(f'psdmf: {e}', file=sys.stderr)
        return EXIT_FAILED
