"""Tests for configuration management."""

import json
import tempfile
import shutil
from pathlib import Path
import pytest

from lattice_floquet.core.config import (
    get_default_config,
    create_default_config,
    config_exists,
    load_config,
    save_config,
    get_config_dir,
    env_threads,
    debug_enabled,
    resolve_settings,
    deep_merge,
)


@pytest.fixture
def temp_config_dir(monkeypatch):
    """Create a temporary config directory for testing."""
    temp_dir = tempfile.mkdtemp()
    monkeypatch.setenv('XDG_CONFIG_HOME', temp_dir)
    monkeypatch.delenv('LATTICE_FLOQUET_THREADS', raising=False)
    yield Path(temp_dir) / 'lattice-floquet'
    shutil.rmtree(temp_dir)


def test_get_default_config():
    """Test default config has all required sections."""
    config = get_default_config()

    for section in ('grid', 'spectrum', 'fit', 'trig', 'output', 'runtime'):
        assert section in config

    assert config['grid']['n1'] == 64
    assert config['grid']['n2'] == 64
    assert config['grid']['refine_tol'] == 1e-9
    assert config['spectrum']['merge_tol'] == 1e-7
    assert config['output']['format'] == 'json'
    assert config['runtime']['threads'] is None


def test_config_dir_follows_xdg(temp_config_dir):
    """Test the config directory lives under XDG_CONFIG_HOME."""
    assert get_config_dir() == temp_config_dir


def test_missing_config_returns_defaults(temp_config_dir):
    """Test that no config file is not an error."""
    assert not config_exists()
    assert load_config() == get_default_config()


def test_create_default_config(temp_config_dir):
    """Test creating the default config file."""
    path = create_default_config()

    assert temp_config_dir.exists()
    assert path == temp_config_dir / 'config.json'
    assert config_exists()
    with open(path) as f:
        assert json.load(f) == get_default_config()


def test_create_default_config_keeps_existing(temp_config_dir):
    """Test that init does not overwrite user settings."""
    temp_config_dir.mkdir(parents=True)
    with open(temp_config_dir / 'config.json', 'w') as f:
        json.dump({'grid': {'n1': 16}}, f)

    create_default_config()

    assert load_config()['grid']['n1'] == 16


def test_save_config_creates_backup(temp_config_dir):
    """Test that save_config creates backups."""
    create_default_config()

    config = load_config()
    config['grid']['n1'] = 32
    save_config(config)

    backups = list(temp_config_dir.glob('config.json.backup.*'))
    assert len(backups) == 1
    assert load_config()['grid']['n1'] == 32


def test_save_config_keeps_five_backups(temp_config_dir):
    """Test that old backups are pruned."""
    create_default_config()
    config = load_config()
    for n in range(8):
        config['grid']['n1'] = 16 + n
        save_config(config)

    backups = list(temp_config_dir.glob('config.json.backup.*'))
    assert len(backups) == 5


def test_config_merge_with_defaults(temp_config_dir):
    """Test that loading config merges with defaults."""
    temp_config_dir.mkdir(parents=True)
    with open(temp_config_dir / 'config.json', 'w') as f:
        json.dump({'spectrum': {'merge_tol': 1e-6}}, f)

    config = load_config()
    assert config['spectrum']['merge_tol'] == 1e-6
    assert config['grid']['n1'] == 64  # From defaults


def test_deep_merge_does_not_mutate_defaults():
    """Test deep_merge leaves its inputs alone."""
    default = {'a': {'b': 1, 'c': 2}}
    merged = deep_merge(default, {'a': {'b': 5}})

    assert merged == {'a': {'b': 5, 'c': 2}}
    assert default == {'a': {'b': 1, 'c': 2}}


class TestEnvironment:
    """Environment variables."""

    def test_threads_env(self, monkeypatch):
        monkeypatch.setenv('LATTICE_FLOQUET_THREADS', '3')
        assert env_threads() == 3

    @pytest.mark.parametrize('raw', ['', 'zero', '-2', '0'])
    def test_threads_env_ignores_junk(self, monkeypatch, raw):
        monkeypatch.setenv('LATTICE_FLOQUET_THREADS', raw)
        assert env_threads() is None

    def test_debug_env(self, monkeypatch):
        monkeypatch.setenv('LATTICE_FLOQUET_DEBUG', '1')
        assert debug_enabled()
        monkeypatch.setenv('LATTICE_FLOQUET_DEBUG', '0')
        assert not debug_enabled()


class TestResolveSettings:
    """Precedence: overrides > environment > config file > defaults."""

    def test_file_over_defaults(self, monkeypatch):
        monkeypatch.delenv('LATTICE_FLOQUET_THREADS', raising=False)
        settings = resolve_settings({'grid': {'n1': 20}})
        assert settings['grid']['n1'] == 20
        assert settings['grid']['n2'] == 64

    def test_env_over_file(self, monkeypatch):
        monkeypatch.setenv('LATTICE_FLOQUET_THREADS', '2')
        settings = resolve_settings({'runtime': {'threads': 8}})
        assert settings['runtime']['threads'] == 2

    def test_overrides_win_and_none_is_ignored(self, monkeypatch):
        monkeypatch.delenv('LATTICE_FLOQUET_THREADS', raising=False)
        settings = resolve_settings(
            {'spectrum': {'merge_tol': 1e-6}},
            {'spectrum': {'merge_tol': 1e-5}, 'output': {'format': None}},
        )
        assert settings['spectrum']['merge_tol'] == 1e-5
        assert settings['output']['format'] == 'json'
