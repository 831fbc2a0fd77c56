"""
Verification Grid Loader

Loads the built-in verification grids from verification_grids.json.
Provides fallback to hardcoded grids if the JSON file is missing or malformed.
"""

import json
from pathlib import Path
from typing import Any, Dict, List, Optional

from src.core.logging_controller import debug, error, warning

SUITE_NAMES = ('claim-a', 'w-formula', 'ball-sizes', 'injection-claims', 'lemmas')

# Hardcoded fallback grids (same content as the shipped JSON)
FALLBACK_GRIDS = {
    "claim-a": [
        {"q": q, "n": n, "d": d}
        for q in (2, 3) for n in range(2, 5) for d in range(2, min(n, 3) + 1)
    ],
    "w-formula": [
        {"q": 2, "n": 3, "d": 2, "S": 3},
        {"q": 2, "n": 3, "d": 2, "S": 4},
        {"q": 2, "n": 4, "d": 2, "S": 3},
        {"q": 3, "n": 2, "d": 2, "S": 3},
    ],
    "injection-claims": [
        {"q": 2, "n": 4, "k": 2, "d": 2},
        {"q": 2, "n": 5, "k": 2, "d": 2},
        {"q": 3, "n": 4, "k": 2, "d": 2},
    ],
    "ball-sizes": {
        "centers": 3,
        "seed": 20240601,
        "hamming": [
            {"q": q, "n": n} for q in (2, 3, 4) for n in range(1, 5)
        ],
        "injection": [
            {"q": 2, "n": 4, "k": 2},
            {"q": 2, "n": 4, "k": 1},
            {"q": 2, "n": 5, "k": 2},
        ],
    },
    "lemmas": [
        {"metric": "hamming", "q": 2, "n": 3, "d": 2, "S": 3},
        {"metric": "hamming", "q": 2, "n": 3, "d": 2, "S": 4},
        {"metric": "hamming", "q": 2, "n": 4, "d": 2, "S": 3},
        {"metric": "hamming", "q": 3, "n": 2, "d": 2, "S": 3},
        {"metric": "injection", "q": 2, "n": 4, "k": 2, "d": 2, "S": 2},
        {"metric": "injection", "q": 2, "n": 4, "k": 2, "d": 2, "S": 3},
    ],
}

REQUIRED_FIELDS = {
    "claim-a": ["q", "n", "d"],
    "w-formula": ["q", "n", "d", "S"],
    "injection-claims": ["q", "n", "k", "d"],
    "lemmas": ["metric", "q", "n", "d", "S"],
}


class GridConfigLoader:
    """Loads verification grids from a JSON file with fallback support."""

    def __init__(self, config_path: Optional[Path] = None):
        """
        Initialize the loader.

        Args:
            config_path: Path to verification_grids.json. If None, uses project root.
        """
        if config_path is None:
            project_root = Path(__file__).parent.parent.parent
            self.config_path = project_root / "verification_grids.json"
        else:
            self.config_path = Path(config_path)

        self._config = None
        self._load_config()

    def _load_config(self):
        """Load grids from the JSON file or use the fallback."""
        if not self.config_path.exists():
            warning(f"{self.config_path.name} not found at {self.config_path}, using fallback grids")
            self._config = FALLBACK_GRIDS
            return

        try:
            with open(self.config_path, 'r', encoding='utf-8') as f:
                loaded = json.load(f)
            if not isinstance(loaded, dict):
                error(f"{self.config_path.name} must hold a JSON object, got {type(loaded).__name__}")
                error("Using fallback grids")
                self._config = FALLBACK_GRIDS
                return
            self._config = loaded
            debug(f"Loaded verification grids from {self.config_path}")
            self._validate_config()
        except json.JSONDecodeError as e:
            error(f"Failed to parse {self.config_path.name}: {e}")
            error("Using fallback grids")
            self._config = FALLBACK_GRIDS
        except OSError as e:
            error(f"Error loading {self.config_path.name}: {e}")
            error("Using fallback grids")
            self._config = FALLBACK_GRIDS

    def _validate_config(self):
        """Warn about missing suites and entries lacking required fields."""
        for suite in SUITE_NAMES:
            if suite not in self._config:
                warning(f"Missing '{suite}' grid in {self.config_path.name}, using fallback")

        for suite, fields in REQUIRED_FIELDS.items():
            for position, entry in enumerate(self._config.get(suite, [])):
                if not isinstance(entry, dict):
                    warning(f"{suite} entry {position} is not an object, skipped")
                    continue
                missing = [f for f in fields if f not in entry]
                if missing:
                    warning(f"{suite} entry {position} missing fields: {missing}")

    def get_grid(self, suite: str) -> Any:
        """
        Grid for one verification suite.

        Args:
            suite: one of SUITE_NAMES

        Returns:
            List of parameter dicts (a dict for 'ball-sizes')
        """
        if suite not in SUITE_NAMES:
            raise KeyError(f"unknown verification suite {suite!r}")
        return self._config.get(suite, FALLBACK_GRIDS[suite])

    def entries(self, suite: str) -> List[Dict[str, Any]]:
        """Entries of a list-valued grid with incomplete entries skipped."""
        fields = REQUIRED_FIELDS.get(suite, [])
        return [e for e in self.get_grid(suite)
                if isinstance(e, dict) and all(f in e for f in fields)]

    @property
    def config(self) -> Dict[str, Any]:
        return self._config


# Singleton instance
_loader_instance = None


def get_grid_config_loader() -> GridConfigLoader:
    """
    Get the singleton GridConfigLoader instance.

    Returns:
        GridConfigLoader instance
    """
    global _loader_instance
    if _loader_instance is None:
        _loader_instance = GridConfigLoader()
    return _loader_instance

