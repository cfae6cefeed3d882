"""Experiment configuration: a TOML file with one table per command.

Example::

    command = "discrepancy"

    [run]
    threads = 1
    block_size = 64

    [discrepancy]
    rho = "12"
    M = 256
    N = 256
    setM = "full"
    setN = "full"
    windows = "full"

Command-line flags override file values. ``threads`` is excluded from the
config hash, since it never changes results.
"""

from __future__ import annotations

import copy
import hashlib
from dataclasses import dataclass, field

import tomli
import tomli_w

from .generators import SetSpec, WindowSpec

COMMANDS = ("sum", "qn", "meanvalue", "discrepancy", "expsum", "selftest")

DEFAULTS = {
    "run": {"threads": 1, "block_size": 64, "output": "-"},
    "sum": {"m": 1, "n": 1, "naive": False},
    "qn": {"N": 0, "check_bruteforce_upto": 0},
    "meanvalue": {"N_list": [10**4, 10**5, 10**6], "prime_limit": 10**7},
    "discrepancy": {
        "rho": "12",
        "M": 64,
        "N": 64,
        "setM": "full",
        "setN": "full",
        "windows": "full",
    },
    "expsum": {
        "M": 2,
        "N": 2,
        "b": "1",
        "a": "",
        "beta": "ones",
        "setM": "full",
        "setN": "full",
        "windows": "full",
    },
    "selftest": {"scale": 1},
}


@dataclass
class ExperimentConfig:
    command: str
    params: dict = field(default_factory=dict)
    run: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ValueError(f"unknown command {self.command!r}")
        merged = copy.deepcopy(DEFAULTS[self.command])
        merged.update(self.params)
        unknown = set(merged) - set(DEFAULTS[self.command])
        if unknown:
            raise ValueError(f"unknown keys for {self.command}: {sorted(unknown)}")
        self.params = merged
        run = copy.deepcopy(DEFAULTS["run"])
        run.update(self.run)
        self.run = run
        self.validate()

    def validate(self) -> None:
        p = self.params
        if self.run["threads"] < 1 or self.run["block_size"] < 1:
            raise ValueError("threads and block_size must be >= 1")
        if self.command in ("discrepancy", "expsum"):
            if p["M"] < 1 or p["N"] < 1:
                raise ValueError("M and N must be positive")
            # the bilinear sum (expsum without a) allows M > N
            needs_tuple = self.command == "discrepancy" or p["a"] != ""
            if needs_tuple and p["M"] > p["N"]:
                raise ValueError("need M <= N")
            SetSpec.parse(p["setM"])
            SetSpec.parse(p["setN"])
            WindowSpec.parse(p["windows"])
        if self.command == "meanvalue":
            if any(N < 16 for N in p["N_list"]):
                raise ValueError("every N must be >= 16")
            if p["prime_limit"] < 2:
                raise ValueError("prime_limit must be >= 2")

    def to_dict(self) -> dict:
        return {"command": self.command, "run": dict(self.run), self.command: dict(self.params)}

    def render(self) -> str:
        return tomli_w.dumps(self.to_dict())

    @classmethod
    def parse(cls, text: str) -> "ExperimentConfig":
        data = tomli.loads(text)
        command = data.get("command")
        if command not in COMMANDS:
            raise ValueError(f"config must name a command, one of {COMMANDS}")
        return cls(command, data.get(command, {}), data.get("run", {}))

    def digest(self) -> str:
        data = self.to_dict()
        data["run"].pop("threads", None)
        data["run"].pop("output", None)
        return hashlib.sha256(tomli_w.dumps(data).encode()).hexdigest()[:16]

    def __eq__(self, other):
        return isinstance(other, ExperimentConfig) and self.to_dict() == other.to_dict()
