# src/utils/parallel.py

import concurrent.futures


class ParallelCheckRunner:
    """Runs independent checks on a thread pool and hands results back ordered by name."""

    def __init__(self, max_workers=4):
        self.executor = concurrent.futures.ThreadPoolExecutor(max_workers=max_workers)

    def submit_check(self, task, *args, **kwargs):
        return self.executor.submit(task, *args, **kwargs)

    def wait_for_checks(self, futures):
        return concurrent.futures.wait(futures)

    def run_all(self, tasks):
        """
        Run every task and collect the results.

        Args:
            tasks: Mapping of check name to a zero-argument callable

        Returns:
            dict: check name -> result, in sorted name order
        """
        futures = {name: self.submit_check(task) for name, task in tasks.items()}
        self.wait_for_checks(list(futures.values()))
        return {name: futures[name].result() for name in sorted(futures)}

    def shutdown(self):
        self.executor.shutdown(wait=True)

    def __enter__(self):
        return self

    def __exit__(self, *exc_info):
        self.shutdown()
