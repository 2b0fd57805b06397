"""
Defines trial and run reports and their JSON, table and CSV renderings.
"""

import csv
import json
import dataclasses

import numpy as np

SCHEMA_VERSION = 1
METRICS = ('acc', 'nmi', 'purity')


@dataclasses.dataclass
class TrialReport:
    """
    Outcome of one seeded trial. Metrics are None when the trial failed, error then holds the reason.
    """
    trial: int
    seed: int
    acc: float = None
    nmi: float = None
    purity: float = None
    final_objective: float = None
    iterations: int = 0
    converged: bool = False
    wall_time: float = 0.0
    baseline: dict = None
    error: str = None

    @property
    def ok(self):
        return self.error is None

    def to_dict(self, timing=False):
        """
        Returns the report as a dict, without wall_time unless timing is True.
        """
        result = dataclasses.asdict(self)

        if not timing:
            del result['wall_time']

        return result


@dataclasses.dataclass
class RunSummary:
    """
    Per-metric mean and population standard deviation over the completed trials of one run, together
    with the configuration that produced them.
    """
    config: dict
    trials: list
    mean: dict
    std: dict
    baseline_mean: dict = None
    baseline_std: dict = None
    schema_version: int = SCHEMA_VERSION

    @classmethod
    def from_trials(cls, config, trials):
        """
        Aggregates trial reports.

        :param dict config: (required). Configuration echo, sections of key/value pairs.
        :param list trials: (required). TrialReport objects in trial order.
        """
        completed = [trial for trial in trials if trial.ok]
        mean, std = _aggregate([{name: getattr(trial, name) for name in METRICS} for trial in completed])
        baselines = [trial.baseline for trial in completed if trial.baseline is not None]
        baseline_mean, baseline_std = _aggregate(baselines) if baselines else (None, None)
        return cls(config=config, trials=trials, mean=mean, std=std, baseline_mean=baseline_mean,
                   baseline_std=baseline_std)

    @property
    def failed(self):
        return [trial for trial in self.trials if not trial.ok]

    @property
    def ok(self):
        return not self.failed

    def to_dict(self, timing=False):
        return {
            'schema_version': self.schema_version,
            'config': self.config,
            'mean': self.mean,
            'std': self.std,
            'baseline_mean': self.baseline_mean,
            'baseline_std': self.baseline_std,
            'completed': len(self.trials) - len(self.failed),
            'failed': len(self.failed),
            'trials': [trial.to_dict(timing=timing) for trial in self.trials],
        }

    def to_json(self, timing=False):
        return json.dumps(self.to_dict(timing=timing), indent=2) + '\n'

    def write_json(self, path):
        with open(path, 'w', encoding='utf-8') as f:
            f.write(self.to_json())

    def write_timings(self, path):
        with open(path, 'w', encoding='utf-8') as f:
            json.dump({'wall_time': [trial.wall_time for trial in self.trials]}, f, indent=2)
            f.write('\n')

    def table(self):
        """
        Returns a plain-text mean ± std table.
        """
        lines = [f'{"metric":<8} {"mean":>8} {"std":>8}']

        for name in METRICS:
            lines.append(f'{name:<8} {_fmt(self.mean.get(name)):>8} {_fmt(self.std.get(name)):>8}')

        if self.baseline_mean is not None:
            for name in METRICS:
                lines.append(f'{"km-" + name:<8} {_fmt(self.baseline_mean[name]):>8} '
                             f'{_fmt(self.baseline_std[name]):>8}')

        lines.append(f'{len(self.trials) - len(self.failed)} of {len(self.trials)} trials completed')
        return '\n'.join(lines)


def _fmt(value):
    return 'n/a' if value is None else f'{value:.4f}'


def _aggregate(rows):
    if not rows:
        return {name: None for name in METRICS}, {name: None for name in METRICS}

    values = {name: np.array([row[name] for row in rows], dtype=np.float64) for name in METRICS}
    return ({name: float(values[name].mean()) for name in METRICS},
            {name: float(values[name].std()) for name in METRICS})


def grid_rows(cells):
    """
    Yields long-format rows (cell, one column per swept key, metric, mean, std).

    :param list cells: (required). (assignments, RunSummary) pairs; assignments maps "section.key" to a value.
    """
    for index, (assignments, summary) in enumerate(cells):
        for name in METRICS:
            yield dict({'cell': index}, **assignments, metric=name, mean=summary.mean[name], std=summary.std[name])


def write_grid_csv(path, cells, keys):
    """
    Writes the long-format grid table.

    :param string path: (required). Destination path.
    :param list cells: (required). (assignments, RunSummary) pairs.
    :param list keys: (required). Swept keys, in column order.
    """
    with open(path, 'w', encoding='utf-8', newline='') as f:
        writer = csv.DictWriter(f, fieldnames=['cell', *keys, 'metric', 'mean', 'std'])
        writer.writeheader()
        writer.writerows(grid_rows(cells))
