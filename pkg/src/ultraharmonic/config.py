"""Runtime limits and defaults, overridable from a key=value file."""

from __future__ import annotations

from dataclasses import dataclass, replace

from .errors import ConfigError

DEFAULT_CHECKPOINTS = (10**3, 10**4, 10**5, 10**6, 10**7)


@dataclass(frozen=True)
class Config:
    """Budgets shared across analyses.

    horizon_cap     largest enumeration horizon any operation accepts
    checkpoints     default horizons for partial-sum diagnostics
    exact_term_cap  most terms an exact rational sum will take
    precision       "double" or "exact" partial sums by default
    cache_dir       where sieve bit tables persist; None disables
    """

    horizon_cap: int = 10**7
    checkpoints: tuple[int, ...] = DEFAULT_CHECKPOINTS
    exact_term_cap: int = 10**6
    precision: str = "double"
    cache_dir: str | None = None

    def __post_init__(self):
        if self.horizon_cap < 1:
            raise ConfigError("horizon must be a positive integer")
        if not self.checkpoints or any(c < 1 for c in self.checkpoints):
            raise ConfigError("checkpoints must be positive integers")
        if list(self.checkpoints) != sorted(set(self.checkpoints)):
            raise ConfigError("checkpoints must be strictly increasing")
        if self.precision not in ("double", "exact"):
            raise ConfigError(f"precision must be 'double' or 'exact', got {self.precision!r}")


DEFAULT_CONFIG = Config()


def _parse_int(key: str, text: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise ConfigError(f"{key}: expected an integer, got {text!r}") from None


def load_config(path: str, base: Config = DEFAULT_CONFIG) -> Config:
    """Apply ``key = value`` lines from a file on top of ``base``.

    Recognized keys: horizon, checkpoints (comma-separated), precision,
    cache_dir.  Blank lines and lines starting with '#' are skipped.
    """
    overrides = {}
    try:
        with open(path, "r", encoding="utf-8") as fh:
            lines = fh.readlines()
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected key=value, got {line!r}")
        key, _, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if key == "horizon":
            try:
                overrides["horizon_cap"] = _parse_int(key, value)
            except ConfigError as exc:
                raise ConfigError(f"{path}:{lineno}: {exc}") from None
        elif key == "checkpoints":
            try:
                overrides["checkpoints"] = tuple(
                    _parse_int(key, part) for part in value.split(",") if part.strip()
                )
            except ConfigError as exc:
                raise ConfigError(f"{path}:{lineno}: {exc}") from None
        elif key == "precision":
            overrides["precision"] = value
        elif key == "cache_dir":
            overrides["cache_dir"] = value or None
        else:
            raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
    return replace(base, **overrides)
