"""
Base runner that defines trial preparation, execution and aggregation for all runners.
"""

import time
import logging
import dataclasses

from .. import baselines, metrics, psdmf, reports
from ..datasets import normalize, split_labeled
from .config import RunnerConfig

logger = logging.getLogger(__name__)


@dataclasses.dataclass
class TrialTask:
    trial: int
    seed: int
    config: psdmf.PsdmfConfig
    dataset: object
    baseline: bool = False


def execute_trial(task):
    """
    Normalizes the dataset, draws the labeled block with the trial seed, fits, predicts every sample and
    scores the prediction. Failures are returned as a report carrying the error instead of raising.

    :param TrialTask task: (required). Trial description.
    """
    started = time.perf_counter()

    try:
        cfg = task.config.replace(seed=task.seed)
        dataset = split_labeled(normalize(task.dataset, cfg.normalize), cfg.label_fraction, seed=task.seed)
        result = psdmf.fit(dataset, cfg)
        scores = metrics.evaluate(psdmf.predict_labels(result.state), dataset.truth)
        baseline = None

        if task.baseline:
            clusters = baselines.kmeans_concatenated(dataset, seed=task.seed)
            baseline = metrics.evaluate(clusters, dataset.truth).to_dict()
    except Exception as e:
        logger.exception('Trial %d (seed %d) failed', task.trial, task.seed)
        return reports.TrialReport(trial=task.trial, seed=task.seed, wall_time=time.perf_counter() - started,
                                   error=f'{e.__class__.__name__}: {e}')

    logger.info('Trial %d (seed %d): ACC %.4f NMI %.4f purity %.4f after %d iterations', task.trial, task.seed,
                scores.acc, scores.nmi, scores.purity, result.iterations)
    return reports.TrialReport(trial=task.trial, seed=task.seed, acc=scores.acc, nmi=scores.nmi, purity=scores.purity,
                               final_objective=result.trace[-1], iterations=result.iterations,
                               converged=result.converged, wall_time=time.perf_counter() - started, baseline=baseline)


class BaseRunner:
    def __init__(self, config=None):
        """
        :param RunnerConfig config: (optional). Configuration object.
        """
        self.config = config or RunnerConfig()

    def tasks(self, psdmf_config, dataset):
        """
        Returns one task per trial, seeded base_seed + trial index.

        :param PsdmfConfig psdmf_config: (required). Solver configuration.
        :param MultiViewDataset dataset: (required). Data with ground truth.
        """
        return [TrialTask(trial=trial, seed=seed, config=psdmf_config, dataset=dataset, baseline=self.config.baseline)
                for trial, seed in enumerate(self.config.seeds())]

    def run(self, psdmf_config, dataset, echo=None):
        """
        Runs every trial and aggregates them into a RunSummary.

        :param PsdmfConfig psdmf_config: (required). Solver configuration.
        :param MultiViewDataset dataset: (required). Data with ground truth.
        :param dict echo: (optional). Configuration echo stored in the summary.
        """
        trials = sorted(self.process_trials(self.tasks(psdmf_config, dataset)), key=lambda report: report.trial)
        return reports.RunSummary.from_trials(echo or {'psdmf': psdmf_config.to_dict()}, trials)

    def process_trials(self, tasks):
        """
        Executes tasks one by one or concurrently depending on the runner.

        :param list tasks: (required). TrialTask objects.
        """
        raise NotImplementedError
