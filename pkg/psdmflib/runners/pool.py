"""
Runner that executes trials in a pool of worker processes.
"""

from concurrent.futures import ProcessPoolExecutor

from .base import BaseRunner, execute_trial


class PoolRunner(BaseRunner):
    def process_trials(self, tasks):
        with ProcessPoolExecutor(**self.config.pool_args()) as pool:
            return list(pool.map(execute_trial, tasks))
