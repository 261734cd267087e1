"""
Reasoner configuration.

Engine and output settings come from a YAML file and PCPLUS_* environment
variables; environment wins over the file, the file over the defaults.
Command-line flags (--format, --show-states, -v) override both in cli.py.
"""

import logging
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, Optional

logger = logging.getLogger(__name__)

# Default config file locations (checked in order)
DEFAULT_CONFIG_PATHS = [
    Path("~/.config/pcplus/config.yaml").expanduser(),
    Path("~/.pcplus.yaml").expanduser(),
    Path("pcplus.yaml"),
]

MODEL_FINDERS = ("pruned", "bruteforce")
UNIQUENESS_SCOPES = ("rigid-equal", "all")
OUTPUT_FORMATS = ("text", "json")


@dataclass
class EngineConfig:
    """
    Settings of the semantic engines.

    Attributes:
        model_finder: 'pruned' (default) or 'bruteforce'
        uniqueness_scope: Candidates the successor uniqueness test ranges
            over; 'rigid-equal' keeps the current state's rigid values,
            'all' lets them vary
        max_states: Refuse domains with more rigid+fluent interpretations
    """
    model_finder: str = "pruned"
    uniqueness_scope: str = "rigid-equal"
    max_states: int = 100_000


@dataclass
class OutputConfig:
    """How results are rendered."""
    format: str = "text"
    decimal_digits: int = 6
    show_states: bool = False


@dataclass
class Config:
    """
    Main configuration container.

    Holds engine and output settings plus general options.
    """
    log_level: str = "INFO"

    engine: EngineConfig = field(default_factory=EngineConfig)
    output: OutputConfig = field(default_factory=OutputConfig)

    def validate(self) -> None:
        """
        Raises:
            ValueError: If a setting is outside its allowed values
        """
        if self.engine.model_finder not in MODEL_FINDERS:
            raise ValueError(f"Unknown model finder: {self.engine.model_finder}")
        if self.engine.uniqueness_scope not in UNIQUENESS_SCOPES:
            raise ValueError(f"Unknown uniqueness scope: {self.engine.uniqueness_scope}")
        if self.engine.max_states < 1:
            raise ValueError("max_states must be positive")
        if self.output.format not in OUTPUT_FORMATS:
            raise ValueError(f"Unknown output format: {self.output.format}")
        if self.output.decimal_digits < 1:
            raise ValueError("decimal_digits must be positive")


def load_yaml_config(path: Path) -> Dict[str, Any]:
    """Load configuration from a YAML file."""
    try:
        import yaml
    except ImportError:
        logger.warning("pyyaml not installed, skipping config file")
        return {}

    if not path.exists():
        return {}

    try:
        with open(path, "r") as f:
            data = yaml.safe_load(f) or {}
            logger.info(f"Loaded config from {path}")
            return data
    except Exception as e:
        logger.warning(f"Failed to load config from {path}: {e}")
        return {}


def find_config_file() -> Optional[Path]:
    """Find the first existing config file."""
    env_path = os.getenv("PCPLUS_CONFIG")
    if env_path:
        path = Path(env_path).expanduser()
        if path.exists():
            return path

    for path in DEFAULT_CONFIG_PATHS:
        if path.exists():
            return path

    return None


def load_config(
    config_path: Optional[Path] = None,
    env_prefix: str = "PCPLUS_",
) -> Config:
    """
    Load configuration with proper precedence.

    Priority (highest to lowest):
    1. Environment variables (PCPLUS_*)
    2. Config file
    3. Defaults

    Args:
        config_path: Explicit config file path (optional)
        env_prefix: Prefix for environment variables

    Returns:
        Populated Config object

    Raises:
        ValueError: If the merged settings are invalid
    """
    config = Config()

    if config_path is None:
        config_path = find_config_file()

    if config_path:
        yaml_data = load_yaml_config(Path(config_path))
        _apply_yaml_config(config, yaml_data)

    _apply_env_config(config, env_prefix)

    config.validate()
    return config


def _apply_yaml_config(config: Config, data: Dict[str, Any]) -> None:
    """Apply YAML configuration data to config object."""
    if not data:
        return

    if "log_level" in data:
        config.log_level = data["log_level"]

    if "engine" in data and isinstance(data["engine"], dict):
        engine = data["engine"]
        if "model_finder" in engine:
            config.engine.model_finder = engine["model_finder"]
        if "uniqueness_scope" in engine:
            config.engine.uniqueness_scope = engine["uniqueness_scope"]
        if "max_states" in engine:
            config.engine.max_states = int(engine["max_states"])

    if "output" in data and isinstance(data["output"], dict):
        output = data["output"]
        if "format" in output:
            config.output.format = output["format"]
        if "decimal_digits" in output:
            config.output.decimal_digits = int(output["decimal_digits"])
        if "show_states" in output:
            config.output.show_states = bool(output["show_states"])


def _apply_env_config(config: Config, prefix: str) -> None:
    """Apply environment variable overrides to config object."""
    if os.getenv(f"{prefix}LOG_LEVEL"):
        config.log_level = os.getenv(f"{prefix}LOG_LEVEL")

    if os.getenv(f"{prefix}MODEL_FINDER"):
        config.engine.model_finder = os.getenv(f"{prefix}MODEL_FINDER")
    if os.getenv(f"{prefix}UNIQUENESS_SCOPE"):
        config.engine.uniqueness_scope = os.getenv(f"{prefix}UNIQUENESS_SCOPE")
    if os.getenv(f"{prefix}MAX_STATES"):
        config.engine.max_states = int(os.getenv(f"{prefix}MAX_STATES"))

    if os.getenv(f"{prefix}FORMAT"):
        config.output.format = os.getenv(f"{prefix}FORMAT")
    if os.getenv(f"{prefix}DECIMAL_DIGITS"):
        config.output.decimal_digits = int(os.getenv(f"{prefix}DECIMAL_DIGITS"))
    if os.getenv(f"{prefix}SHOW_STATES"):
        config.output.show_states = os.getenv(f"{prefix}SHOW_STATES", "").lower() in ("1", "true", "yes")


def create_sample_config(path: Optional[Path] = None) -> str:
    """
    Generate a sample configuration file.

    Args:
        path: Optional path to write the config file

    Returns:
        Sample YAML configuration string
    """
    sample = '''# PC+ reasoner configuration
# Place this file at ~/.config/pcplus/config.yaml

# Logging level (DEBUG, INFO, WARNING, ERROR)
log_level: INFO

engine:
  # pruned (backtracking) or bruteforce (reference double enumeration)
  model_finder: pruned
  # Successor uniqueness is tested against candidates that keep the
  # current rigid values (rigid-equal) or against every candidate (all)
  uniqueness_scope: rigid-equal
  # Refuse domains with more rigid+fluent interpretations than this
  max_states: 100000

output:
  # text or json
  format: text
  # Significant digits of decimal renderings
  decimal_digits: 6
  # List every state of every supported set
  show_states: false
'''

    if path:
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w") as f:
            f.write(sample)
        logger.info(f"Created sample config at {path}")

    return sample
