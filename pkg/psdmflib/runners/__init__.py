"""
Defines runners that execute repeated seeded trials of the factorization.
"""

import inspect
from enum import Enum

from .. import exceptions
from .config import RunnerConfig
from .base import BaseRunner, TrialTask, execute_trial


class RunnerType(Enum):
    sync = 'sync'
    pool = 'pool'
    default = 'sync'

    def get(self):
        if self.value == 'pool':
            from .pool import PoolRunner
            return PoolRunner
        elif self.value == 'sync':
            from .sync import SyncRunner
            return SyncRunner
        raise NotImplementedError(f'Runner {self.name} is not yet implemented')


def create_runner(config=None, runner=None):
    """
    Returns a runner instance.

    :param RunnerConfig config: (optional). Configuration object.
    :param runner: (optional). Runner name or class, config.runner by default.
    :type runner: str or cls
    """
    config = config or RunnerConfig()
    runner = runner or config.runner

    if isinstance(runner, str):
        try:
            runner = RunnerType[runner].get()
        except KeyError:
            raise exceptions.ConfigError('run.runner', f'unknown runner "{runner}"')

    if not inspect.isclass(runner) or not issubclass(runner, BaseRunner):
        raise exceptions.RunnerClassError

    return runner(config)
