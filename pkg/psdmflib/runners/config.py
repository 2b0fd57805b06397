from dataclasses import dataclass

from .. import exceptions, utilities


@dataclass
class RunnerConfig:
    runner: str = 'sync'
    workers: int = 4
    trials: int = 10
    base_seed: int = 0
    report_dir: str = None
    baseline: bool = False

    def __post_init__(self):
        self.runner = str(self.runner)
        self.workers = int(self.workers)
        self.trials = int(self.trials)
        self.base_seed = int(self.base_seed)
        self.report_dir = self.report_dir or None
        self.baseline = utilities.to_bool(self.baseline, 'run.baseline')

        if self.trials < 1:
            raise exceptions.ConfigError('run.trials', 'at least one trial is needed')
        if self.workers < 1:
            raise exceptions.ConfigError('run.workers', 'at least one worker is needed')

    def seeds(self):
        return [self.base_seed + trial for trial in range(self.trials)]

    def pool_args(self):
        return {
            'max_workers': min(self.workers, self.trials),
        }
