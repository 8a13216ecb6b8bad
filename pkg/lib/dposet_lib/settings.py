"""
dposet configuration module.

Limits and acceptance tolerances used across the engine live in one place.
Values come from the bundled defaults.json; there is no environment-variable
configuration, callers override values by passing explicit arguments.
"""

import json
import logging
from pathlib import Path
from typing import Optional

from pydantic import BaseModel, Field

logger = logging.getLogger(__name__)

DEFAULTS_FILE = Path(__file__).parent / "defaults.json"


class LimitSettings(BaseModel):
    max_linear_space_r: int = Field(9, ge=1)
    max_partition_n: int = Field(1_000_000, ge=0)
    spill_threshold: int = Field(2_000_000, ge=1)
    budget_check_interval: int = Field(256, ge=1)


class ToleranceSettings(BaseModel):
    """Acceptance thresholds for leading-term asymptotic comparisons."""

    hr_ratio: float = Field(0.05, gt=0)
    meinardus_relative: float = Field(0.10, gt=0)
    lemma33_log_ratio: float = Field(0.05, gt=0)
    lemma33_log_ratio_r2: float = Field(0.10, gt=0)
    thm35_ratio_relative: float = Field(0.10, gt=0)


class SearchSettings(BaseModel):
    default_budget_secs: float = Field(1800.0, gt=0)
    interval_demo_budget_secs: float = Field(1800.0, gt=0)


class DposetSettings(BaseModel):
    limits: LimitSettings = LimitSettings()
    tolerances: ToleranceSettings = ToleranceSettings()
    search: SearchSettings = SearchSettings()


def load_settings(path: Optional[Path] = None) -> DposetSettings:
    """
    Load settings from a JSON file.

    Args:
        path: JSON document with any subset of the sections; defaults.json if omitted

    Returns:
        Validated settings, missing keys filled with model defaults
    """
    path = Path(path) if path is not None else DEFAULTS_FILE
    with open(path, "r", encoding="utf-8") as f:
        data = json.load(f)
    logger.debug(f"Loaded settings from {path}")
    return DposetSettings.model_validate(data)


# Global configuration instance
settings = load_settings()


def get_limit(name: str) -> int:
    """Get a named limit, e.g. get_limit("max_linear_space_r")."""
    if name not in LimitSettings.model_fields:
        raise ValueError(f"Unknown limit: {name}")
    return getattr(settings.limits, name)


def get_tolerance(name: str) -> float:
    """Get a named asymptotic tolerance."""
    if name not in ToleranceSettings.model_fields:
        raise ValueError(f"Unknown tolerance: {name}")
    return getattr(settings.tolerances, name)


def get_default_budget() -> float:
    return settings.search.default_budget_secs
