"""
Configuration management for codedensity
"""

import os
from fractions import Fraction
from pathlib import Path
from typing import Dict, Optional

# Environment variable naming the default configuration file
CONFIG_ENV_VAR = "CODEDENSITY_CONFIG"

DEFAULT_WORK_LIMIT = 10**8          # pair evaluations
DEFAULT_ENUMERATION_LIMIT = 10**7   # enumerated objects
DEFAULT_CONFIDENCE_LEVEL = Fraction(99, 100)
DEFAULT_MC_BLOCK_SIZE = 1024


class Config:
    """Application configuration"""

    def __init__(self, config_path: Optional[str] = None):
        # Defaults
        self.work_limit = DEFAULT_WORK_LIMIT
        self.enumeration_limit = DEFAULT_ENUMERATION_LIMIT
        self.confidence_level = DEFAULT_CONFIDENCE_LEVEL
        self.mc_block_size = DEFAULT_MC_BLOCK_SIZE
        self.workers = os.cpu_count() or 1
        self.debug_enabled = False
        self.log_file: Optional[str] = None

        # Explicit path wins over the environment variable
        if config_path is None:
            config_path = os.environ.get(CONFIG_ENV_VAR) or None
        self.config_path = Path(config_path) if config_path else None

        if self.config_path is not None:
            self.reload_from_file()

    def _load_file(self) -> Dict[str, str]:
        """Load key=value pairs from the configuration file"""
        values = {}
        if self.config_path is None:
            return values

        if not self.config_path.exists():
            from src.core.logging_controller import warning
            warning(f"Config file not found: {self.config_path}, using defaults")
            return values

        try:
            with open(self.config_path, 'r', encoding='utf-8') as f:
                for line in f:
                    line = line.strip()
                    # Skip comments and empty lines
                    if not line or line.startswith('#'):
                        continue
                    # Parse KEY=VALUE
                    if '=' in line:
                        key, value = line.split('=', 1)
                        values[key.strip().lower()] = value.strip()
        except OSError as e:
            from src.core.logging_controller import warning
            warning(f"Could not load config file: {e}")

        return values

    def reload_from_file(self):
        """
        Reload configuration from the file.
        Values in the file override defaults; malformed values keep the default.
        """
        from src.core.logging_controller import warning

        values = self._load_file()

        for key in ('work_limit', 'enumeration_limit', 'mc_block_size', 'workers'):
            raw = values.get(key)
            if raw:
                try:
                    parsed = int(raw.replace('_', ''))
                    if parsed < 1:
                        raise ValueError(raw)
                    setattr(self, key, parsed)
                except ValueError:
                    warning(f"Ignoring invalid {key}={raw!r}")

        raw = values.get('confidence_level')
        if raw:
            try:
                level = Fraction(raw)
                if not 0 < level < 1:
                    raise ValueError(raw)
                self.confidence_level = level
            except (ValueError, ZeroDivisionError):
                warning(f"Ignoring invalid confidence_level={raw!r}")

        raw = values.get('debug_enabled')
        if raw:
            self.debug_enabled = raw.lower() in ('true', '1', 'yes')

        raw = values.get('log_file')
        if raw:
            self.log_file = raw

    def apply_overrides(self, **overrides):
        """
        Apply command-line overrides. None values are ignored.

        Args:
            **overrides: attribute name to value
        """
        for key, value in overrides.items():
            if value is None:
                continue
            if not hasattr(self, key):
                raise AttributeError(f"Unknown configuration key: {key}")
            setattr(self, key, value)
