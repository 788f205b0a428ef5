"""Configuration loading and validation."""

from src.config.loader import (
    ConfigLoader,
    FactoringSettings,
    PipelineConfig,
    PrecisionSettings,
    ReductionSettings,
    SearchSettings,
)
from src.config.validator import print_validation_warnings, validate_config

__all__ = [
    "ConfigLoader",
    "FactoringSettings",
    "PipelineConfig",
    "PrecisionSettings",
    "ReductionSettings",
    "SearchSettings",
    "print_validation_warnings",
    "validate_config",
]
