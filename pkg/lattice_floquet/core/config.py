"""Configuration management for lattice-floquet."""

import os
import json
import shutil
from pathlib import Path
from typing import Dict, Any, Optional
from datetime import datetime

THREADS_ENV = 'LATTICE_FLOQUET_THREADS'
DEBUG_ENV = 'LATTICE_FLOQUET_DEBUG'


def get_config_dir() -> Path:
    """Get the configuration directory path (~/.config/lattice-floquet/)."""
    config_home = os.environ.get('XDG_CONFIG_HOME', os.path.expanduser('~/.config'))
    return Path(config_home) / 'lattice-floquet'


def get_config_path() -> Path:
    """Get the config.json file path."""
    return get_config_dir() / 'config.json'


def get_default_config() -> Dict[str, Any]:
    """Get the default configuration."""
    return {
        "version": 1,
        "grid": {
            "n1": 64,
            "n2": 64,
            "refine_tol": 1e-9,
            "max_refine_rounds": 40,
            "candidates": 2,
        },
        "spectrum": {
            "merge_tol": 1e-7,
        },
        "fit": {
            "radius": 1.0,
            "max_condition": 1e8,
        },
        "trig": {
            "grid_n": 512,
            "tol": 1e-8,
            "dedupe": 1e-6,
        },
        "output": {
            "format": "json",
        },
        "runtime": {
            "threads": None,
        },
    }


def deep_merge(default: Dict[str, Any], config: Dict[str, Any]) -> Dict[str, Any]:
    """Recursively merge config into default."""
    result = default.copy()
    for key, value in config.items():
        if key in result and isinstance(result[key], dict) and isinstance(value, dict):
            result[key] = deep_merge(result[key], value)
        else:
            result[key] = value
    return result


def config_exists() -> bool:
    """Check if a configuration file exists."""
    return get_config_path().exists()


def create_default_config() -> Path:
    """Write the default config.json unless one is already present."""
    config_path = get_config_path()
    config_path.parent.mkdir(parents=True, exist_ok=True)
    if not config_path.exists():
        with open(config_path, 'w') as f:
            json.dump(get_default_config(), f, indent=2)
    return config_path


def load_config() -> Dict[str, Any]:
    """
    Load configuration from config.json merged onto the defaults.

    A missing file is not an error: the defaults are returned.

    Returns:
        Configuration dictionary with all expected keys.

    Raises:
        json.JSONDecodeError: If config file is corrupt.
    """
    default = get_default_config()
    config_path = get_config_path()

    if not config_path.exists():
        return default

    with open(config_path, 'r') as f:
        config = json.load(f)

    return deep_merge(default, config)


def save_config(config: Dict[str, Any]) -> None:
    """
    Save configuration to config.json with backup.

    Args:
        config: Configuration dictionary to save.
    """
    config_path = get_config_path()
    config_path.parent.mkdir(parents=True, exist_ok=True)

    if config_path.exists():
        backup_path = config_path.parent / f"config.json.backup.{datetime.now().strftime('%Y%m%d_%H%M%S_%f')}"
        shutil.copy2(config_path, backup_path)

        # Keep only last 5 backups
        backups = sorted(config_path.parent.glob("config.json.backup.*"))
        if len(backups) > 5:
            for old_backup in backups[:-5]:
                old_backup.unlink()

    with open(config_path, 'w') as f:
        json.dump(config, f, indent=2)


def env_threads() -> Optional[int]:
    """Read the thread cap from the environment, ignoring junk values."""
    raw = os.environ.get(THREADS_ENV)
    if not raw:
        return None
    try:
        value = int(raw)
    except ValueError:
        return None
    return value if value > 0 else None


def debug_enabled() -> bool:
    """Check whether debug logging was requested through the environment."""
    return os.environ.get(DEBUG_ENV, '') not in ('', '0')


def resolve_settings(
    config: Optional[Dict[str, Any]] = None,
    overrides: Optional[Dict[str, Any]] = None,
) -> Dict[str, Any]:
    """
    Combine defaults, config file, environment and command-line overrides.

    Precedence is overrides > environment > config file > defaults.

    Args:
        config: Loaded configuration (loaded from disk when None)
        overrides: Nested dict of values from the command line; None entries are ignored

    Returns:
        Fully resolved settings dictionary
    """
    if config is None:
        config = load_config()
    settings = deep_merge(get_default_config(), config)

    threads = env_threads()
    if threads is not None:
        settings['runtime'] = dict(settings['runtime'], threads=threads)

    if overrides:
        cleaned = {
            section: {k: v for k, v in values.items() if v is not None}
            for section, values in overrides.items()
        }
        settings = deep_merge(settings, cleaned)

    return settings
