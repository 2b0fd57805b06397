"""
Synchronous runner that executes trials one by one.
"""

from .base import BaseRunner, execute_trial


class SyncRunner(BaseRunner):
    def process_trials(self, tasks):
        return [execute_trial(task) for task in tasks]
