# This file makes the tests/unit directory a Python package
