# src/utils/__init__.py

from .config import DEFAULT_CONFIG, Config, load_config, save_config
from .file_handler import FileHandler
from .logger import get_logger, setup_logger
from .parallel import ParallelCheckRunner

__all__ = [
    "DEFAULT_CONFIG",
    "Config",
    "load_config",
    "save_config",
    "FileHandler",
    "setup_logger",
    "get_logger",
    "ParallelCheckRunner",
]
