import pytest

from branescope.exceptions import UsageError
from branescope.settings import DEFAULT_SEED, BranescopeSettings, get_settings, load_settings_file


@pytest.fixture
def config_file(tmp_path):
    path = tmp_path / "branescope.yaml"
    path.write_text("seed: 7\nprime: 101\nspanning_depth: 12\n")
    return path


def test_defaults():
    settings = get_settings()
    assert settings.seed == DEFAULT_SEED
    assert settings.prime == 2**31 - 1
    assert (settings.spanning_depth, settings.spanning_window) == (20, 10)
    assert settings.output_format == "json"


def test_file_values(config_file):
    settings = get_settings(str(config_file))
    assert (settings.seed, settings.prime, settings.spanning_depth) == (7, 101, 12)


def test_precedence(config_file, monkeypatch):
    monkeypatch.setenv("BRANESCOPE_SEED", "11")
    monkeypatch.setenv("BRANESCOPE_PRIME", "103")

    settings = get_settings(str(config_file), seed=13, output_format=None)
    assert settings.seed == 13
    assert settings.prime == 103
    assert settings.spanning_depth == 12
    assert settings.output_format == "json"


def test_invalid_values(tmp_path):
    with pytest.raises(UsageError):
        get_settings(seed=-1)
    with pytest.raises(UsageError):
        get_settings(spanning_depth=5, spanning_window=8)
    with pytest.raises(UsageError):
        get_settings(output_format="xml")

    with pytest.raises(ValueError):
        BranescopeSettings(prime=2)


def test_unreadable_files(tmp_path):
    with pytest.raises(UsageError):
        load_settings_file(tmp_path / "missing.yaml")

    path = tmp_path / "list.yaml"
    path.write_text("- 1\n- 2\n")
    with pytest.raises(UsageError, match="mapping"):
        load_settings_file(path)

    empty = tmp_path / "empty.yaml"
    empty.write_text("")
    assert load_settings_file(empty) == {}
