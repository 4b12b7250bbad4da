# tests/unit/test_utils.py

import os
import sys

sys.path.insert(0, os.path.dirname(os.path.dirname(__file__)))

import logging
import tempfile
import threading
import unittest

from src.utils.config import DEFAULT_CONFIG, Config, load_config, save_config
from src.utils.file_handler import FileHandler
from src.utils.logger import setup_logger
from src.utils.parallel import ParallelCheckRunner


class TestConfig(unittest.TestCase):
    def test_defaults(self):
        config = Config()
        self.assertEqual(config.limit("triple_n"), 4)
        self.assertEqual(config.tolerance("fit_r2"), 0.99)
        self.assertEqual(config.defaults["encoding"], "product")
        self.assertEqual(config.max_workers, 4)

    def test_partial_sections_merge_with_defaults(self):
        config = Config({"limits": {"pair_n": 5}})
        self.assertEqual(config.limit("pair_n"), 5)
        self.assertEqual(config.limit("quadruple_n"), DEFAULT_CONFIG["limits"]["quadruple_n"])

    def test_defaults_are_not_shared(self):
        config = Config()
        config.config["limits"]["pair_n"] = 1
        self.assertEqual(Config().limit("pair_n"), 6)

    def test_load_and_save(self):
        with tempfile.TemporaryDirectory() as tmpdir:
            path = os.path.join(tmpdir, "config.yaml")
            with open(path, "w") as file:
                file.write("tolerances:\n  operator: 1.0e-9\nparallelism:\n  max_workers: 2\n")
            config = load_config(path)
            self.assertEqual(config.tolerance("operator"), 1e-9)
            self.assertEqual(config.max_workers, 2)
            copy_path = os.path.join(tmpdir, "copy.yaml")
            save_config(config, copy_path)
            self.assertEqual(load_config(copy_path).config, config.config)

    def test_empty_file(self):
        with tempfile.TemporaryDirectory() as tmpdir:
            path = os.path.join(tmpdir, "empty.yaml")
            open(path, "w").close()
            self.assertEqual(load_config(path).limit("max_dim"), 4096)


class TestLogger(unittest.TestCase):
    def test_repeated_setup_does_not_stack_handlers(self):
        config = {"logging": {"level": "DEBUG"}}
        setup_logger("tests.logger", config)
        logger = setup_logger("tests.logger", config)
        self.assertEqual(len(logger.handlers), 1)
        self.assertEqual(logger.level, logging.DEBUG)

    def test_file_handler(self):
        with tempfile.TemporaryDirectory() as tmpdir:
            log_file = os.path.join(tmpdir, "logs", "run.log")
            logger = setup_logger("tests.file_logger", {"logging": {"level": "INFO", "file": log_file}})
            logger.info("hello")
            for handler in logger.handlers:
                handler.flush()
            self.assertIn("hello", FileHandler.read_file(log_file))
            for handler in list(logger.handlers):
                logger.removeHandler(handler)
                handler.close()


class TestFileHandler(unittest.TestCase):
    def test_json_is_sorted_with_trailing_newline(self):
        self.assertEqual(FileHandler.dumps_json({"b": 1, "a": "λ"}), '{\n  "a": "λ",\n  "b": 1\n}\n')

    def test_write_creates_directories(self):
        with tempfile.TemporaryDirectory() as tmpdir:
            path = os.path.join(tmpdir, "nested", "out.txt")
            FileHandler.write_file(path, "line one\nline two\n")
            with open(path, "rb") as file:
                self.assertEqual(file.read(), b"line one\nline two\n")
            self.assertTrue(FileHandler.file_exists(path))

    def test_is_writable(self):
        with tempfile.TemporaryDirectory() as tmpdir:
            self.assertTrue(FileHandler.is_writable(os.path.join(tmpdir, "report.json")))
            self.assertFalse(FileHandler.is_writable(tmpdir))
            self.assertFalse(FileHandler.is_writable(os.path.join(tmpdir, "missing", "report.json")))


class TestParallelCheckRunner(unittest.TestCase):
    def test_results_sorted_by_name(self):
        barrier = threading.Barrier(2, timeout=5)

        def task(value):
            barrier.wait()
            return value

        with ParallelCheckRunner(max_workers=2) as runner:
            results = runner.run_all({"b": lambda: task(2), "a": lambda: task(1)})
        self.assertEqual(list(results), ["a", "b"])
        self.assertEqual(results, {"a": 1, "b": 2})

    def test_exceptions_propagate(self):
        def fail():
            raise RuntimeError("boom")

        with ParallelCheckRunner(max_workers=1) as runner:
            with self.assertRaises(RuntimeError):
                runner.run_all({"x": fail})


if __name__ == "__main__":
    unittest.main()
