"""
Configuration settings for the Block-type Lie algebra Whittaker toolkit
"""
import json
import os
from pathlib import Path

from dotenv import load_dotenv

# Pick up a local .env before reading the environment
load_dotenv()

# Base paths
BASE_DIR = Path(__file__).parent.parent
OUTPUT_DIR = BASE_DIR / "output"

# Generator cutoff for "for all x in n" checks
DEFAULT_CUTOFF = {
    "sum_max": 8,
    "i_max": 10
}

DEFAULT_MAX_STEPS = 64

# Candidate truncation for the Whittaker-vector solver
DEFAULT_TRUNCATION = {
    "pi_min": 0,
    "part_i_max": 2,
    "len_max": 2
}

# Keys a BLOCKALG_DEFAULTS file may override, and whether they must be positive
DEFAULT_KEYS = {
    "sum_max": True,
    "i_max": False,
    "max_steps": True,
    "pi_min": False,
    "part_i_max": False,
    "len_max": True
}

# Character and ideal tags accepted in JSON
CHARACTER_KINDS = ["constant", "geometric", "polynomial", "factorial", "explicit"]
IDEAL_KINDS = ["zero", "principal"]

# CLI settings
REPORT_FORMATS = ["json", "text"]
EXIT_OK = 0
EXIT_INPUT_ERROR = 1
EXIT_VERIFICATION_FAILED = 2

# Environment variables
BLOCKALG_DEFAULTS = os.getenv("BLOCKALG_DEFAULTS")
BLOCKALG_LOG_LEVEL = os.getenv("BLOCKALG_LOG_LEVEL", "INFO")


def load_defaults(path=None) -> dict:
    """Merge built-in numeric defaults with an optional JSON override file"""
    defaults = dict(DEFAULT_CUTOFF)
    defaults.update(DEFAULT_TRUNCATION)
    defaults["max_steps"] = DEFAULT_MAX_STEPS

    path = path or BLOCKALG_DEFAULTS
    if not path:
        return defaults

    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"Defaults file not found: {path}")

    with open(path, "r", encoding="utf-8") as file:
        overrides = json.load(file)
    if not isinstance(overrides, dict):
        raise ValueError(f"Defaults file must hold a JSON object: {path}")

    for key, value in overrides.items():
        if key not in DEFAULT_KEYS:
            raise ValueError(f"Unknown defaults key: {key}")
        if not isinstance(value, int) or isinstance(value, bool):
            raise ValueError(f"Defaults key {key} must be an integer, got {value!r}")
        if DEFAULT_KEYS[key] and value <= 0:
            raise ValueError(f"Defaults key {key} must be positive, got {value}")
        if key in ("i_max", "part_i_max") and value < 0:
            raise ValueError(f"Defaults key {key} must be non-negative, got {value}")
        if key == "pi_min" and value > 0:
            raise ValueError(f"Defaults key pi_min must be <= 0, got {value}")
        defaults[key] = value

    return defaults
