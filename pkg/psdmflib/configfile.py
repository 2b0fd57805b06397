"""
Reads experiment configuration files.

A configuration file is INI-style text with the sections ``[psdmf]`` (solver), ``[data]`` (``manifest``),
``[synthetic]`` (generator, used when no manifest is given) and ``[run]`` (trials). Every key is
optional and defaults to the values of the corresponding dataclass.
"""

import os
import itertools
import configparser
import dataclasses

from . import exceptions, utilities
from .psdmf import PsdmfConfig
from .runners import RunnerConfig
from .datasets import SyntheticSpec, load_dataset, generate_synthetic

REPORT_DIR_ENV = 'PSDMF_REPORT_DIR'
DEFAULT_REPORT_DIR = 'psdmf-reports'
GRID_LIST_SEPARATOR = ';'
SECTIONS = {
    'psdmf': PsdmfConfig,
    'synthetic': SyntheticSpec,
    'run': RunnerConfig,
}
DATA_KEYS = ('manifest',)


@dataclasses.dataclass
class ExperimentConfig:
    psdmf: PsdmfConfig
    run: RunnerConfig
    synthetic: SyntheticSpec
    manifest: str = None

    def dataset(self):
        """
        Loads the manifest when one is configured, generates the synthetic dataset otherwise.
        """
        if self.manifest is not None:
            return load_dataset(self.manifest)

        return generate_synthetic(self.synthetic)

    def report_dir(self):
        return self.run.report_dir or os.environ.get(REPORT_DIR_ENV) or DEFAULT_REPORT_DIR

    def echo(self):
        """
        Returns every resolved setting that influences results, grouped by section.
        """
        run = dataclasses.asdict(self.run)
        del run['report_dir']
        synthetic = dataclasses.asdict(self.synthetic)
        synthetic['view_dims'] = list(self.synthetic.view_dims)
        return {
            'psdmf': self.psdmf.to_dict(),
            'data': {'manifest': self.manifest},
            'synthetic': synthetic,
            'run': run,
        }


def _parser():
    parser = configparser.ConfigParser(interpolation=None)
    parser.optionxform = str
    return parser


def read_sections(path):
    """
    Returns the sections of a configuration file as nested dicts of strings.

    :param string path: (required). Path to the file.
    """
    parser = _parser()

    try:
        with open(path, encoding='utf-8') as f:
            parser.read_file(f)
    except OSError as e:
        raise exceptions.ConfigError(path, f'can not be read: {e.strerror}')
    except configparser.Error as e:
        raise exceptions.ConfigError(path, str(e).splitlines()[0])

    return {section: dict(parser.items(section)) for section in parser.sections()}


def _build(cls, section, values):
    fields = {field.name for field in dataclasses.fields(cls)}

    for key in values:
        if key not in fields:
            raise exceptions.ConfigError(f'{section}.{key}', 'unknown key')

    try:
        return cls(**values)
    except exceptions.ConfigError:
        raise
    except (TypeError, ValueError) as e:
        raise exceptions.ConfigError(section, str(e))


def build_config(sections, base_dir='.'):
    """
    Turns nested section dicts into an ExperimentConfig.

    :param dict sections: (required). Section name -> {key: value}.
    :param string base_dir: (optional). Directory relative manifest paths are resolved against.
    """
    for section in sections:
        if section not in SECTIONS and section != 'data':
            raise exceptions.ConfigError(section, 'unknown section')

    data = sections.get('data', {})

    for key in data:
        if key not in DATA_KEYS:
            raise exceptions.ConfigError(f'data.{key}', 'unknown key')

    manifest = data.get('manifest') or None

    if manifest is not None:
        manifest = os.path.normpath(os.path.join(base_dir, manifest))

    built = {section: _build(cls, section, sections.get(section, {})) for section, cls in SECTIONS.items()}
    return ExperimentConfig(psdmf=built['psdmf'], run=built['run'], synthetic=built['synthetic'], manifest=manifest)


def load_config(path=None, overrides=()):
    """
    Reads a configuration file (defaults only when path is None) and applies section.key=value overrides.

    :param string path: (optional). Path to the file.
    :param list overrides: (optional). Override expressions, applied in order.
    """
    sections = read_sections(path) if path is not None else {}

    for override in overrides:
        sections = utilities.merge_dicts(sections, utilities.parse_override(override))

    base_dir = os.path.dirname(os.path.abspath(path)) if path is not None else os.getcwd()
    return build_config(sections, base_dir)


def write_config(path, echo):
    """
    Writes a configuration echo back as a configuration file.

    :param string path: (required). Destination path.
    :param dict echo: (required). ExperimentConfig.echo() output.
    """
    parser = _parser()

    for section, values in echo.items():
        parser[section] = {key: _ini_value(value) for key, value in values.items() if value is not None}

    with open(path, 'w', encoding='utf-8') as f:
        parser.write(f)


def _ini_value(value):
    if isinstance(value, (list, tuple)):
        return ', '.join(str(item) for item in value)

    return str(value)


def read_grid(path):
    """
    Returns the swept keys and one assignment dict per grid cell from the ``[grid]`` section of a file
    whose lines look like ``psdmf.mu = 0.001, 0.01, 0.1``. A line holding a semicolon is split on
    semicolons only, so list values can be swept: ``psdmf.layer_sizes = 20, 6; 40, 6``. A file without
    keys yields one empty cell.

    :param string path: (required). Path to the grid file.
    """
    sections = read_sections(path)
    grid = sections.get('grid', {})
    keys = list(grid)
    values = []

    for key in keys:
        utilities.parse_override(f'{key}=')
        separator = GRID_LIST_SEPARATOR if GRID_LIST_SEPARATOR in grid[key] else ','
        values.append([value.strip() for value in grid[key].split(separator) if value.strip()])

        if not values[-1]:
            raise exceptions.ConfigError(f'grid.{key}', 'lists no values')

    return keys, [dict(zip(keys, cell)) for cell in itertools.product(*values)]


def cell_overrides(assignments):
    return [f'{key}={value}' for key, value in assignments.items()]
