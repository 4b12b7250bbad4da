# src/utils/file_handler.py

import json
import os


class FileHandler:
    """Report and export writer. All text output is UTF-8 with LF line endings."""

    @staticmethod
    def read_file(file_path):
        with open(file_path, "r", encoding="utf-8") as file:
            content = file.read()
        return content

    @staticmethod
    def write_file(file_path, content):
        directory = os.path.dirname(file_path)
        if directory:
            os.makedirs(directory, exist_ok=True)
        with open(file_path, "w", encoding="utf-8", newline="\n") as file:
            file.write(content)

    @staticmethod
    def dumps_json(payload):
        return json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=False) + "\n"

    @staticmethod
    def write_json(file_path, payload):
        FileHandler.write_file(file_path, FileHandler.dumps_json(payload))

    @staticmethod
    def file_exists(file_path):
        return os.path.exists(file_path)

    @staticmethod
    def is_writable(file_path):
        """Check whether `file_path` can be created or overwritten."""
        directory = os.path.dirname(os.path.abspath(file_path)) or "."
        if os.path.isdir(file_path):
            return False
        if os.path.exists(file_path):
            return os.access(file_path, os.W_OK)
        return os.path.isdir(directory) and os.access(directory, os.W_OK)
