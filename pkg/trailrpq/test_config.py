"""
Tests for environment-driven settings.
"""
import pytest

from .config import ENV_VARIABLES, Settings, get_settings, load_settings, override_settings, reset_settings
from .errors import ConfigError


def test_defaults():
    settings = get_settings()
    assert settings == Settings()
    assert settings.state_cap == 2**20
    assert settings.oracle_max_edges == 24
    assert settings.enumerate_oracle_max_edges == 20
    assert settings.summary_max_k == 9
    assert settings.seed == 20230613
    assert settings.log_level == "WARNING"


def test_settings_are_cached():
    assert get_settings() is get_settings()


def test_environment_overrides(monkeypatch):
    monkeypatch.setenv("TRAILRPQ_STATE_CAP", " 4096 ")
    monkeypatch.setenv("TRAILRPQ_LOG_LEVEL", "debug")
    monkeypatch.setenv("TRAILRPQ_JOBS", "")
    reset_settings()
    settings = get_settings()
    assert settings.state_cap == 4096
    assert settings.log_level == "DEBUG"
    assert settings.jobs == 1


@pytest.mark.parametrize(
    "variable, value",
    [
        ("TRAILRPQ_STATE_CAP", "0"),
        ("TRAILRPQ_ORACLE_MAX_EDGES", "many"),
        ("TRAILRPQ_JOBS", "1000"),
        ("TRAILRPQ_LOG_LEVEL", "LOUD"),
    ],
)
def test_invalid_environment(monkeypatch, variable, value):
    monkeypatch.setenv(variable, value)
    with pytest.raises(ConfigError) as info:
        load_settings()
    assert info.value.variable == variable


def test_env_file(tmp_path, monkeypatch):
    path = tmp_path / ".env"
    path.write_text("TRAILRPQ_SUMMARY_MAX_K=16\nTRAILRPQ_SEED=7\n", encoding="utf-8")
    monkeypatch.setenv("TRAILRPQ_SEED", "11")
    # registered with monkeypatch so the value loaded from the file is removed on teardown
    monkeypatch.setenv("TRAILRPQ_SUMMARY_MAX_K", "")
    monkeypatch.delenv("TRAILRPQ_SUMMARY_MAX_K")
    settings = load_settings(str(path))
    assert settings.summary_max_k == 16
    assert settings.seed == 11


def test_override_settings():
    changed = override_settings(state_cap=100, log_level="info")
    assert get_settings() is changed
    assert (changed.state_cap, changed.log_level) == (100, "INFO")
    assert changed.oracle_max_edges == 24
    with pytest.raises(ConfigError):
        override_settings(jobs=0)
    assert get_settings() is changed


def test_every_field_has_a_variable():
    assert set(ENV_VARIABLES) == set(Settings.model_fields)
