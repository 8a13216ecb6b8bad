"""
Run configuration for the dposet command line.

Every subcommand turns its flags into one RunConfig. Validation happens here,
before anything is computed, so bad flag combinations fail fast with exit
status 2.
"""

from enum import IntEnum
from pathlib import Path
from typing import List, Literal, Optional, Tuple

from pydantic import BaseModel, Field, model_validator

Command = Literal[
    "build",
    "validate",
    "extend",
    "enum-linspaces",
    "plane",
    "enum-posets",
    "search",
    "walks",
    "numerics",
    "probe",
]

BuildKind = Literal["young", "fibonacci", "product", "linspace", "plane"]

NUMERICS_ACTIONS = (
    "partitions",
    "yr",
    "zr",
    "hr_ratio",
    "meinardus",
    "lemma33",
    "thm35",
    "delta",
    "interval_demo",
)


class ExitCode(IntEnum):
    OK = 0
    CHECK_FAILED = 1
    USAGE = 2
    BUDGET_EXHAUSTED = 3


class NumericsAction(BaseModel):
    """Exactly one of these is set for the numerics command."""

    partitions: Optional[int] = Field(None, ge=0)
    yr: Optional[Tuple[int, int]] = None
    zr: Optional[Tuple[int, int]] = None
    hr_ratio: Optional[int] = Field(None, ge=1)
    meinardus: Optional[Tuple[int, int]] = None
    lemma33: Optional[Tuple[int, int]] = None
    thm35: Optional[Tuple[int, int]] = None
    delta: Optional[int] = Field(None, ge=0)
    seq: Optional[Path] = None
    interval_demo: bool = False

    @model_validator(mode="after")
    def _exactly_one(self):
        chosen = [name for name in NUMERICS_ACTIONS if getattr(self, name) not in (None, False)]
        if len(chosen) != 1:
            options = ", ".join("--" + name.replace("_", "-") for name in NUMERICS_ACTIONS)
            found = ", ".join("--" + name.replace("_", "-") for name in chosen) or "none"
            raise ValueError(f"choose exactly one of {options} (got {found})")
        if self.delta is not None and self.seq is None:
            raise ValueError("--delta needs --seq FILE")
        if self.seq is not None and self.delta is None:
            raise ValueError("--seq is only used with --delta")
        for name in ("yr", "zr", "meinardus", "lemma33", "thm35"):
            pair = getattr(self, name)
            if pair is not None and (pair[0] < 1 or pair[1] < 0):
                raise ValueError(f"--{name} needs r >= 1 and a nonnegative second value, got {pair}")
        return self

    @property
    def name(self) -> str:
        return next(n for n in NUMERICS_ACTIONS if getattr(self, n) not in (None, False))


class RunConfig(BaseModel):
    """Subcommand plus all flags, validated before dispatch."""

    command: Command
    output_format: Literal["csv", "text"] = "csv"

    inputs: List[Path] = []
    output: Optional[Path] = None
    canonical: bool = False
    validate_input: bool = True

    kind: Optional[BuildKind] = None
    r: Optional[int] = Field(None, ge=1)
    ranks: Optional[int] = Field(None, ge=0)
    steps: int = Field(1, ge=0)
    q: Optional[int] = None
    n: Optional[int] = Field(None, ge=0)
    target: Optional[List[int]] = None
    checks: List[str] = ["all"]

    budget_secs: Optional[float] = Field(None, gt=0)
    jobs: int = Field(1, ge=1)
    spill_dir: Optional[Path] = None
    certs_file: Optional[Path] = None
    limit: Optional[int] = Field(None, ge=1)
    spectrum: bool = False
    count_only: bool = False
    embed: bool = False

    numerics: Optional[NumericsAction] = None

    @model_validator(mode="after")
    def _required_flags(self):
        need = {
            "validate": ("inputs",),
            "extend": ("inputs",),
            "enum-linspaces": ("r",),
            "plane": ("q",),
            "enum-posets": ("r", "ranks"),
            "search": ("r", "target"),
            "walks": ("inputs", "n"),
            "numerics": ("numerics",),
            "probe": ("inputs",),
            "build": ("kind",),
        }[self.command]
        for name in need:
            if getattr(self, name) in (None, []):
                raise ValueError(f"{self.command} needs --{name.replace('_', '-')}")

        if self.command == "build":
            self._check_build()
        if self.command == "enum-posets" and self.count_only and self.certs_file is not None:
            raise ValueError("--count-only and --certs are mutually exclusive")
        if self.command == "plane" and self.canonical and not self.embed:
            raise ValueError("--canonical only applies with --embed")
        if self.command == "search" and (not self.target or self.target[0] != 1):
            raise ValueError(f"--target must start with 1, got {self.target}")
        return self

    def _check_build(self) -> None:
        required = {
            "young": ("ranks",),
            "fibonacci": ("r", "ranks"),
            "product": ("ranks",),
            "linspace": (),
            "plane": ("q",),
        }[self.kind]
        for name in required:
            if getattr(self, name) is None:
                raise ValueError(f"build {self.kind} needs --{name}")
        expected_inputs = {"product": 2, "linspace": 1}.get(self.kind, 0)
        if len(self.inputs) != expected_inputs:
            raise ValueError(f"build {self.kind} takes {expected_inputs} input file(s), got {len(self.inputs)}")
