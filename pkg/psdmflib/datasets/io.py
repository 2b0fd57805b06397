"""
Reads and writes datasets in the plain-text matrix / labels / manifest formats.

Matrix file: first line ``rows cols``, then one row per line of space-separated decimal scalars.
Labels file: one 0-based integer class id per line. Manifest: ``view = <path>`` lines in view order
and an optional ``labels = <path>`` line; ``#`` starts a comment, relative paths are resolved
against the manifest's directory.
"""

import os
import logging

import numpy as np

from .. import exceptions
from .base import MultiViewDataset

logger = logging.getLogger(__name__)


def _content_lines(path):
    with open(path, encoding='utf-8') as f:
        for lineno, line in enumerate(f, start=1):
            line = line.split('#', 1)[0].strip()

            if line:
                yield lineno, line


def _parse_float(token, path, lineno):
    try:
        value = float(token)
    except ValueError:
        raise exceptions.DatasetFormatError(path, lineno, f'"{token}" is not a decimal number')

    if not np.isfinite(value):
        raise exceptions.DatasetFormatError(path, lineno, f'"{token}" is not finite')

    return value


def load_matrix(path):
    """
    Loads a matrix file.

    :param string path: (required). Path to the matrix file.
    """
    lines = _content_lines(path)

    try:
        lineno, header = next(lines)
    except StopIteration:
        raise exceptions.DatasetFormatError(path, 1, 'file is empty, expected a "rows cols" header')

    parts = header.split()

    if len(parts) != 2 or not all(part.isdigit() for part in parts):
        raise exceptions.DatasetFormatError(path, lineno, f'expected a "rows cols" header, got "{header}"')

    rows, cols = int(parts[0]), int(parts[1])
    data = []

    for lineno, line in lines:
        tokens = line.split()

        if len(tokens) != cols:
            raise exceptions.DatasetFormatError(path, lineno, f'expected {cols} values, got {len(tokens)}')

        data.append([_parse_float(token, path, lineno) for token in tokens])

    if len(data) != rows or rows < 1 or cols < 1:
        raise exceptions.DatasetFormatError(path, lineno, f'expected {rows} rows of data, got {len(data)}')

    return np.array(data, dtype=np.float64)


def save_matrix(path, matrix):
    """
    Saves a matrix so that load_matrix reproduces it bit-exactly.

    :param string path: (required). Destination path.
    :param matrix: (required). Two-dimensional array.
    """
    matrix = np.asarray(matrix, dtype=np.float64)

    with open(path, 'w', encoding='utf-8') as f:
        f.write(f'{matrix.shape[0]} {matrix.shape[1]}\n')

        for row in matrix:
            f.write(' '.join(repr(float(value)) for value in row) + '\n')


def load_labels(path):
    """
    Loads a labels file.

    :param string path: (required). Path to the labels file.
    """
    labels = []

    for lineno, line in _content_lines(path):
        try:
            label = int(line)
        except ValueError:
            raise exceptions.DatasetFormatError(path, lineno, f'"{line}" is not an integer class id')

        if label < 0:
            raise exceptions.DatasetFormatError(path, lineno, 'class ids must be 0-based')

        labels.append(label)

    return np.array(labels, dtype=np.int64)


def save_labels(path, labels):
    with open(path, 'w', encoding='utf-8') as f:
        f.writelines(f'{int(label)}\n' for label in labels)


def read_manifest(path):
    """
    Returns the view paths and the optional labels path listed in a manifest.

    :param string path: (required). Path to the manifest.
    """
    base = os.path.dirname(os.path.abspath(path))
    views, labels = [], None

    for lineno, line in _content_lines(path):
        key, sep, value = line.partition('=')
        key, value = key.strip(), value.strip()

        if not sep or not value:
            raise exceptions.DatasetFormatError(path, lineno, f'expected "key = path", got "{line}"')

        value = os.path.join(base, value)

        if key == 'view':
            views.append(value)
        elif key == 'labels':
            if labels is not None:
                raise exceptions.DatasetFormatError(path, lineno, 'labels listed twice')
            labels = value
        else:
            raise exceptions.DatasetFormatError(path, lineno, f'unknown key "{key}"')

    if not views:
        raise exceptions.DatasetFormatError(path, 1, 'manifest lists no views')

    return views, labels


def load_dataset(manifest_path):
    """
    Loads every view (and labels, if listed) referenced by a manifest.

    :param string manifest_path: (required). Path to the manifest.
    """
    view_paths, labels_path = read_manifest(manifest_path)
    views = [load_matrix(path) for path in view_paths]
    counts = [view.shape[1] for view in views]

    if len(set(counts)) > 1:
        details = ', '.join(f'view {p} ({path}) has N={n}' for p, (path, n) in enumerate(zip(view_paths, counts)))
        raise exceptions.DatasetError(f'Views disagree on the number of samples: {details}')

    truth = load_labels(labels_path) if labels_path is not None else None

    if truth is not None and truth.size != counts[0]:
        raise exceptions.DatasetError(f'{labels_path} has {truth.size} labels but the views have N={counts[0]}')

    logger.info('Loaded %d views with N=%d from %s', len(views), counts[0], manifest_path)
    return MultiViewDataset(views=views, truth=truth)


def save_dataset(directory, dataset, name='dataset'):
    """
    Writes views, labels and a manifest into directory and returns the manifest path.

    :param string directory: (required). Destination directory, created if missing.
    :param MultiViewDataset dataset: (required). Dataset to save.
    :param string name: (optional). File name prefix.
    """
    os.makedirs(directory, exist_ok=True)
    lines = []

    for p, view in enumerate(dataset.views):
        filename = f'{name}.view{p}.txt'
        save_matrix(os.path.join(directory, filename), view)
        lines.append(f'view = {filename}')

    if dataset.truth is not None:
        filename = f'{name}.labels.txt'
        save_labels(os.path.join(directory, filename), dataset.truth)
        lines.append(f'labels = {filename}')

    manifest = os.path.join(directory, f'{name}.manifest')

    with open(manifest, 'w', encoding='utf-8') as f:
        f.write('\n'.join(lines) + '\n')

    return manifest
