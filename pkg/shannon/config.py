"""
Layered configuration: packaged defaults, then the user file (or --config),
then command-line flags. Every section loads into a frozen dataclass.
"""

import dataclasses
import shutil
from dataclasses import dataclass, field, fields
from pathlib import Path
from typing import Any, Dict, Mapping, Optional, Tuple

import toml

from shannon.errors import ConfigError

DEFAULTS_PATH = Path(__file__).parent / "defaults" / "shannon_config.toml"
VERBOSITIES = ("debug", "info", "warn", "none")
FORMATS = ("json", "table")


@dataclass(frozen=True)
class General:
    verbosity: str = "info"
    format: str = "json"
    seed: int = 42
    report_dir: str = "~/.local/share/shannon/reports"
    cache_dir: str = "~/.local/share/shannon/cache"
    cache_enabled: bool = True


@dataclass(frozen=True)
class Budgets:
    max_vertices: int = 5_000_000
    alpha_nodes: int = 100_000_000
    alpha_seconds: float = 300.0
    theta_max_vertices: int = 1000
    theta_max_iters: int = 500


@dataclass(frozen=True)
class CapacitySettings:
    kmax: int = 2
    tol: float = 1e-6
    check_tol: float = 1e-4
    theta_check_tol: float = 1e-3
    products_only_upper: bool = False
    rank_primes: Tuple[int, ...] = (2, 3)


@dataclass(frozen=True)
class SuiteSettings:
    graphs: Tuple[str, ...] = ("k1", "e2", "e3", "k3", "k5", "c5", "c7", "petersen")
    additivity_pairs: int = 100
    additivity_max_vertices: int = 10
    supermult_pairs: int = 50
    supermult_max_vertices: int = 6
    expansion_pairs: int = 20
    expansion_max_vertices: int = 4
    expansion_powers: Tuple[int, ...] = (2, 3)
    theta_pairs: int = 20
    theta_max_vertices: int = 8
    edge_probability: float = 0.5
    pclass_power: int = 2
    pclass_direct_vertices: int = 64
    converse_powers: Tuple[int, ...] = (1, 2)
    self_test: bool = False


@dataclass(frozen=True)
class Settings:
    general: General = field(default_factory=General)
    budgets: Budgets = field(default_factory=Budgets)
    capacity: CapacitySettings = field(default_factory=CapacitySettings)
    suite: SuiteSettings = field(default_factory=SuiteSettings)
    source: str = "defaults"

    def to_dict(self) -> Dict[str, Any]:
        return {
            "general": dataclasses.asdict(self.general),
            "budgets": dataclasses.asdict(self.budgets),
            "capacity": dataclasses.asdict(self.capacity),
            "suite": dataclasses.asdict(self.suite),
        }

    def replace(self, section: str, **changes) -> "Settings":
        """A copy with `changes` applied to one section; None values are ignored."""
        changes = {k: v for k, v in changes.items() if v is not None}
        if not changes:
            return self
        current = getattr(self, section)
        updated = _build(type(current), {**dataclasses.asdict(current), **changes}, section)
        return dataclasses.replace(self, **{section: updated})


_SECTIONS = {
    "general": General,
    "budgets": Budgets,
    "capacity": CapacitySettings,
    "suite": SuiteSettings,
}


def get_user_config_path() -> Path:
    """Determine the path to shannon_config.toml in the user's data directory."""
    return Path.home() / ".local" / "share" / "shannon" / "shannon_config.toml"


def _coerce(name: str, section: str, default: Any, value: Any) -> Any:
    if isinstance(default, tuple):
        if not isinstance(value, (list, tuple)):
            raise ConfigError(f"[{section}] {name} must be a list, got {value!r}")
        return tuple(value)
    if isinstance(default, bool):
        if not isinstance(value, bool):
            raise ConfigError(f"[{section}] {name} must be true or false, got {value!r}")
        return value
    if isinstance(default, int):
        if isinstance(value, bool) or not isinstance(value, (int, float)) or int(value) != value:
            raise ConfigError(f"[{section}] {name} must be an integer, got {value!r}")
        return int(value)
    if isinstance(default, float):
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ConfigError(f"[{section}] {name} must be a number, got {value!r}")
        return float(value)
    if not isinstance(value, str):
        raise ConfigError(f"[{section}] {name} must be a string, got {value!r}")
    return value


def _build(cls, values: Mapping[str, Any], section: str):
    known = {f.name: f for f in fields(cls)}
    unknown = sorted(set(values) - set(known))
    if unknown:
        raise ConfigError(f"Unknown keys in [{section}]: {', '.join(unknown)}")
    defaults = cls()
    kwargs = {
        name: _coerce(name, section, getattr(defaults, name), value)
        for name, value in values.items()
    }
    return cls(**kwargs)


def _validate(settings: Settings) -> Settings:
    g, b, c, s = settings.general, settings.budgets, settings.capacity, settings.suite
    if g.verbosity.lower() not in VERBOSITIES:
        raise ConfigError(f"verbosity must be one of {', '.join(VERBOSITIES)}, got {g.verbosity!r}")
    if g.format not in FORMATS:
        raise ConfigError(f"format must be one of {', '.join(FORMATS)}, got {g.format!r}")
    if c.kmax < 1:
        raise ConfigError(f"kmax must be >= 1, got {c.kmax}")
    if not c.tol > 0 or not c.check_tol > 0:
        raise ConfigError("tolerances must be positive")
    if min(b.max_vertices, b.alpha_nodes, b.theta_max_vertices, b.theta_max_iters) < 1:
        raise ConfigError("budgets must be positive")
    if not 0.0 <= s.edge_probability <= 1.0:
        raise ConfigError(f"edge_probability must lie in [0, 1], got {s.edge_probability}")
    if not 1 <= s.pclass_power <= 3:
        raise ConfigError(f"pclass_power must be 1, 2 or 3, got {s.pclass_power}")
    return settings


def _read_toml(path: Path) -> Dict[str, Any]:
    try:
        return toml.loads(path.read_text())
    except FileNotFoundError:
        raise ConfigError(f"Configuration file not found at {path}. Please run 'shannon init'.")
    except Exception as e:
        raise ConfigError(f"Failed to load or parse configuration from {path}: {e}")


def settings_from_mapping(data: Mapping[str, Any], source: str = "mapping") -> Settings:
    unknown = sorted(set(data) - set(_SECTIONS))
    if unknown:
        raise ConfigError(f"Unknown configuration sections: {', '.join(unknown)}")
    sections = {}
    for name, cls in _SECTIONS.items():
        values = data.get(name, {})
        if not isinstance(values, Mapping):
            raise ConfigError(f"[{name}] must be a table")
        sections[name] = _build(cls, values, name)
    return _validate(Settings(**sections, source=source))


def _merge(base: Dict[str, Any], override: Mapping[str, Any]) -> Dict[str, Any]:
    merged = {name: dict(values) for name, values in base.items()}
    for name, values in override.items():
        if isinstance(values, Mapping):
            merged.setdefault(name, {}).update(values)
        else:
            merged[name] = values
    return merged


def load_settings(config_path: Optional[str] = None) -> Settings:
    """
    Packaged defaults overlaid with the user file. An explicit path must exist;
    the default user file is optional.
    """
    data = _read_toml(DEFAULTS_PATH)
    source = "defaults"
    if config_path is not None:
        path = Path(config_path).expanduser()
        data = _merge(data, _read_toml(path))
        source = str(path)
    else:
        path = get_user_config_path()
        if path.exists():
            data = _merge(data, _read_toml(path))
            source = str(path)
    return settings_from_mapping(data, source)


def init_user_config(force: bool = False) -> Path:
    """Copy the packaged defaults into the user's data directory."""
    path = get_user_config_path()
    if path.exists() and not force:
        raise ConfigError(f"{path} already exists; pass --force to overwrite it")
    path.parent.mkdir(parents=True, exist_ok=True)
    shutil.copyfile(DEFAULTS_PATH, path)
    return path
