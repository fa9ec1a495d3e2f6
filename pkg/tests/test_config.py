import pytest
from pydantic import ValidationError

from f2_subspaces.config import Settings, configure_settings, get_settings, load_settings


def test_defaults():
    settings = Settings()

    assert settings.base_dim == 10
    assert settings.max_lift_degree == 2
    assert settings.hypothesis_max_samples == 200_000
    assert settings.uniformity_projection_rounds == 24
    assert settings.log_level == "WARNING"


def test_yaml_file_and_overrides(tmp_path):
    path = tmp_path / "settings.yaml"
    path.write_text("base_dim: 8\nworkers: 4\n", encoding="utf-8")

    settings = load_settings(path, workers=2)

    assert settings.base_dim == 8
    assert settings.workers == 2


def test_empty_yaml_file_gives_defaults(tmp_path):
    path = tmp_path / "settings.yaml"
    path.write_text("", encoding="utf-8")

    assert load_settings(path) == Settings()


def test_non_mapping_file_is_rejected(tmp_path):
    path = tmp_path / "settings.yaml"
    path.write_text("- 1\n", encoding="utf-8")

    with pytest.raises(ValueError):
        load_settings(path)


def test_unknown_and_invalid_keys_are_rejected():
    with pytest.raises(ValidationError):
        Settings(bogus=1)
    with pytest.raises(ValidationError):
        Settings(base_dim=1)
    with pytest.raises(ValidationError):
        Settings(log_format="xml")


def test_environment_is_ignored(monkeypatch):
    monkeypatch.setenv("BASE_DIM", "3")
    monkeypatch.setenv("base_dim", "3")

    assert Settings().base_dim == 10


def test_settings_are_frozen():
    with pytest.raises(ValidationError):
        Settings().base_dim = 4


def test_configure_settings_swaps_the_cached_instance(tmp_path):
    path = tmp_path / "settings.yaml"
    path.write_text("projector_retry_constant: 5\n", encoding="utf-8")

    assert get_settings().projector_retry_constant == 200
    configure_settings(path)
    assert get_settings().projector_retry_constant == 5
    assert get_settings() is get_settings()
