"""Config defaults, validation, and the key=value file loader."""

import pytest

from ultraharmonic.config import Config, DEFAULT_CONFIG, load_config
from ultraharmonic.errors import ConfigError


def test_defaults():
    c = DEFAULT_CONFIG
    assert c.horizon_cap == 10**7
    assert c.checkpoints == (10**3, 10**4, 10**5, 10**6, 10**7)
    assert c.exact_term_cap == 10**6
    assert c.precision == "double"
    assert c.cache_dir is None


def test_validation():
    with pytest.raises(ConfigError):
        Config(horizon_cap=0)
    with pytest.raises(ConfigError):
        Config(checkpoints=())
    with pytest.raises(ConfigError):
        Config(checkpoints=(100, 100))
    with pytest.raises(ConfigError):
        Config(checkpoints=(1000, 100))
    with pytest.raises(ConfigError):
        Config(precision="quad")
    # checkpoints above the horizon cap are legal at construction; the
    # operations that consume them validate against their own horizon
    Config(horizon_cap=500, checkpoints=(100, 1000))


def test_file_loader_full(tmp_path):
    path = tmp_path / "run.cfg"
    path.write_text(
        "# comment line\n"
        "\n"
        "horizon = 50000\n"
        "checkpoints = 100, 1000, 50000\n"
        "precision = exact\n"
        "cache_dir = /tmp/sieves\n"
    )
    c = load_config(path, DEFAULT_CONFIG)
    assert c.horizon_cap == 50000
    assert c.checkpoints == (100, 1000, 50000)
    assert c.precision == "exact"
    assert c.cache_dir == "/tmp/sieves"


def test_file_loader_partial_keeps_base(tmp_path):
    path = tmp_path / "run.cfg"
    path.write_text("horizon=20000\ncheckpoints=100,20000\n")
    c = load_config(path, DEFAULT_CONFIG)
    assert c.horizon_cap == 20000
    assert c.precision == DEFAULT_CONFIG.precision


def test_file_loader_empty_cache_dir_means_none(tmp_path):
    path = tmp_path / "run.cfg"
    path.write_text("cache_dir =\n")
    assert load_config(path, DEFAULT_CONFIG).cache_dir is None


def test_file_loader_errors_carry_location(tmp_path):
    path = tmp_path / "run.cfg"
    path.write_text("horizon = 1000\nwat = 7\n")
    with pytest.raises(ConfigError, match=r"run\.cfg:2"):
        load_config(path, DEFAULT_CONFIG)

    path.write_text("horizon = soon\n")
    with pytest.raises(ConfigError, match=r"run\.cfg:1"):
        load_config(path, DEFAULT_CONFIG)

    path.write_text("horizon\n")
    with pytest.raises(ConfigError, match=r"run\.cfg:1"):
        load_config(path, DEFAULT_CONFIG)


def test_file_loader_missing_file():
    with pytest.raises(ConfigError):
        load_config("/nonexistent/run.cfg", DEFAULT_CONFIG)


def test_config_is_frozen():
    with pytest.raises(AttributeError):
        DEFAULT_CONFIG.horizon_cap = 5
