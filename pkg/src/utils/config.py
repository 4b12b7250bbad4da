# src/utils/config.py

import copy

import yaml

DEFAULT_CONFIG = {
    "tolerances": {
        "operator": 1e-10,
        "classify": 1e-8,
        "schmidt": 1e-8,
        "amplitude": 1e-8,
        "decode_fidelity": 0.999,
        "fit_r2": 0.99,
    },
    "limits": {
        "max_dim": 4096,
        "dense_cap": 4096,
        "single_register_n": 10,
        "pair_n": 6,
        "triple_n": 4,
        "quadruple_n": 3,
        "dense_compare_n": 3,
        "profile_n": 64,
    },
    "defaults": {
        "encoding": "product",
        "policy": "exclude-wrap",
        "granularity": "fine",
        "format": "json",
    },
    "parallelism": {"max_workers": 4},
    "logging": {"level": "INFO", "file": None},
}


class Config:
    def __init__(self, config=None):
        self.config = config if config is not None else copy.deepcopy(DEFAULT_CONFIG)

    def get(self, key, default=None):
        return self.config.get(key, default)

    def set(self, key, value):
        self.config[key] = value

    def save(self, config_file):
        with open(config_file, "w") as file:
            yaml.safe_dump(self.config, file)

    def _section(self, name):
        merged = dict(DEFAULT_CONFIG[name])
        merged.update(self.get(name, {}) or {})
        return merged

    @property
    def tolerances(self):
        return self._section("tolerances")

    @property
    def limits(self):
        return self._section("limits")

    @property
    def defaults(self):
        return self._section("defaults")

    @property
    def max_workers(self):
        return self._section("parallelism").get("max_workers", 4)

    def tolerance(self, name):
        return float(self.tolerances[name])

    def limit(self, name):
        return int(self.limits[name])


def load_config(config_file):
    with open(config_file, "r") as file:
        config = yaml.safe_load(file)
    return Config(config or {})


def save_config(config, config_file):
    with open(config_file, "w") as file:
        yaml.safe_dump(config.config, file)
