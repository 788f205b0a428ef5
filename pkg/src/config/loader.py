"""Configuration loader supporting YAML, JSON, key=value files and environment variables."""

import json
import os
from pathlib import Path
from typing import Any, Dict, Literal, Optional

import yaml
from dotenv import load_dotenv
from pydantic import BaseModel, Field, ValidationError, model_validator

from src.errors import DomainError

LogLevel = Literal["quiet", "normal", "trace"]

DEFAULT_CONFIG_FILES = ("klucas-config.yaml", "klucas-config.json", "klucas-config.conf")


class PrecisionSettings(BaseModel):
    """Working precision schedule for certified enclosures."""

    initial_bits: int = Field(default=192, ge=8)
    max_bits: int = Field(default=2**21, ge=8)

    @model_validator(mode="after")
    def check_order(self):
        if self.initial_bits > self.max_bits:
            raise ValueError("initial_bits must not exceed max_bits")
        return self


class ReductionSettings(BaseModel):
    """Scale constants, caps and retry limits of the two reduction pipelines."""

    small_k_c_exponent: int = Field(default=355, gt=0)
    small_k_retry_exponent: int = Field(default=5, gt=0)
    small_k_max_retries: int = Field(default=5, ge=0)
    n_cap_ceiling: float = Field(default=4.62e50, gt=0)
    small_k_growth_digits: float = Field(default=0.91, ge=0)
    small_k_growth_offset: int = -28
    large_k_start_k: float = Field(default=1.64e20, gt=1000)
    large_k_start_n: float = Field(default=4.6e173, gt=0)
    large_k_target: int = Field(default=1000, gt=1)
    large_k_margin: int = Field(default=0, ge=0)
    large_k_max_retries: int = Field(default=8, ge=0)
    max_rounds: int = Field(default=8, gt=0)
    min_progress: float = Field(default=0.03, gt=0, lt=1)


class SearchSettings(BaseModel):
    """Ranges of the smooth-term sweep."""

    k_min: int = Field(default=2, ge=2)
    k_max: int = Field(default=1000, ge=2)
    n_max: int = Field(default=1449, gt=0)
    checkpoint: Optional[Path] = None

    @model_validator(mode="after")
    def check_range(self):
        if self.k_min > self.k_max:
            raise ValueError(f"empty k range {self.k_min}..{self.k_max}")
        return self


class FactoringSettings(BaseModel):
    """Budget for largest-prime-factor computations."""

    trial_limit: int = Field(default=10**6, gt=1)
    rho_iterations: int = Field(default=2 * 10**6, gt=0)
    max_bits: int = Field(default=512, gt=0)


class PipelineConfig(BaseModel):
    """Root configuration structure."""

    precision: PrecisionSettings = PrecisionSettings()
    reduction: ReductionSettings = ReductionSettings()
    search: SearchSettings = SearchSettings()
    factoring: FactoringSettings = FactoringSettings()
    workers: Optional[int] = Field(default=None, gt=0)
    output_dir: Path = Path("certificates")
    log_level: LogLevel = "normal"


def _set_path(data: Dict[str, Any], dotted: str, value: Any) -> None:
    node = data
    parts = dotted.split(".")
    for part in parts[:-1]:
        node = node.setdefault(part, {})
        if not isinstance(node, dict):
            raise ValueError(f"'{dotted}' conflicts with a scalar setting")
    node[parts[-1]] = value


def _parse_scalar(text: str) -> Any:
    """Interpret a key=value right-hand side with YAML scalar rules."""
    if not text:
        return None
    return yaml.safe_load(text)


class ConfigLoader:
    """Unified configuration loader supporting multiple sources."""

    @staticmethod
    def _validate(raw: Any, path: Path) -> PipelineConfig:
        if raw is None:
            raw = {}
        if not isinstance(raw, dict):
            raise DomainError(f"Configuration in {path} must be a mapping")
        try:
            return PipelineConfig.model_validate(raw)
        except ValidationError as e:
            raise DomainError(f"Invalid configuration in {path}: {e}")

    @staticmethod
    def load_from_yaml(path: Path) -> PipelineConfig:
        """
        Load the pipeline configuration from a YAML file.

        Args:
            path: Path to YAML configuration file

        Returns:
            Validated PipelineConfig

        Raises:
            FileNotFoundError: If file doesn't exist
            DomainError: If file is invalid
        """
        if not path.exists():
            raise FileNotFoundError(f"Configuration file not found: {path}")
        try:
            with open(path, "r", encoding="utf-8") as f:
                raw = yaml.safe_load(f)
        except yaml.YAMLError as e:
            raise DomainError(f"Invalid YAML in configuration file: {e}")
        return ConfigLoader._validate(raw, path)

    @staticmethod
    def load_from_json(path: Path) -> PipelineConfig:
        """
        Load the pipeline configuration from a JSON file.

        Raises:
            FileNotFoundError: If file doesn't exist
            DomainError: If file is invalid
        """
        if not path.exists():
            raise FileNotFoundError(f"Configuration file not found: {path}")
        try:
            with open(path, "r", encoding="utf-8") as f:
                raw = json.load(f)
        except json.JSONDecodeError as e:
            raise DomainError(f"Invalid JSON in configuration file: {e}")
        return ConfigLoader._validate(raw, path)

    @staticmethod
    def load_from_keyvalue(path: Path) -> PipelineConfig:
        """
        Load the pipeline configuration from plain `section.key = value` lines.

        Blank lines and lines starting with '#' are ignored.

        Raises:
            FileNotFoundError: If file doesn't exist
            DomainError: If a line is malformed or a value is invalid
        """
        if not path.exists():
            raise FileNotFoundError(f"Configuration file not found: {path}")
        raw: Dict[str, Any] = {}
        with open(path, "r", encoding="utf-8") as f:
            for lineno, line in enumerate(f, start=1):
                line = line.strip()
                if not line or line.startswith("#"):
                    continue
                key, sep, value = line.partition("=")
                if not sep or not key.strip():
                    raise DomainError(f"{path}:{lineno}: expected 'key = value'")
                try:
                    _set_path(raw, key.strip(), _parse_scalar(value.strip()))
                except (ValueError, yaml.YAMLError) as e:
                    raise DomainError(f"{path}:{lineno}: {e}")
        return ConfigLoader._validate(raw, path)

    @staticmethod
    def load_from_path(path: Path) -> PipelineConfig:
        """Dispatch on the file extension."""
        suffix = path.suffix.lower()
        if suffix in (".yaml", ".yml"):
            return ConfigLoader.load_from_yaml(path)
        if suffix == ".json":
            return ConfigLoader.load_from_json(path)
        return ConfigLoader.load_from_keyvalue(path)

    @staticmethod
    def apply_env(config: PipelineConfig) -> PipelineConfig:
        """
        Apply KLUCAS_WORKERS, KLUCAS_LOG_LEVEL and KLUCAS_OUTPUT_DIR overrides.

        Raises:
            DomainError: If an override has an invalid value
        """
        updates: Dict[str, Any] = {}
        if os.environ.get("KLUCAS_WORKERS"):
            updates["workers"] = os.environ["KLUCAS_WORKERS"]
        if os.environ.get("KLUCAS_LOG_LEVEL"):
            updates["log_level"] = os.environ["KLUCAS_LOG_LEVEL"]
        if os.environ.get("KLUCAS_OUTPUT_DIR"):
            updates["output_dir"] = os.environ["KLUCAS_OUTPUT_DIR"]
        if not updates:
            return config
        try:
            return PipelineConfig.model_validate({**config.model_dump(), **updates})
        except ValidationError as e:
            raise DomainError(f"Invalid environment override: {e}")

    @staticmethod
    def load(path: Optional[Path] = None) -> PipelineConfig:
        """
        Auto-detect and load configuration from available sources.

        Priority order:
        1. Explicit path
        2. KLUCAS_CONFIG environment variable
        3. ./klucas-config.yaml, ./klucas-config.json, ./klucas-config.conf
        4. Built-in defaults

        Environment overrides are applied on top of whichever source wins.

        Returns:
            Validated PipelineConfig
        """
        load_dotenv()

        if path is None and os.environ.get("KLUCAS_CONFIG"):
            path = Path(os.environ["KLUCAS_CONFIG"])
        if path is not None:
            return ConfigLoader.apply_env(ConfigLoader.load_from_path(Path(path)))

        for name in DEFAULT_CONFIG_FILES:
            candidate = Path(name)
            if candidate.exists():
                try:
                    return ConfigLoader.apply_env(ConfigLoader.load_from_path(candidate))
                except DomainError as e:
                    print(f"Warning: Failed to load {candidate}: {e.message}")

        return ConfigLoader.apply_env(PipelineConfig())
