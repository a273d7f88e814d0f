"""Run configuration: sectioned ``key = value`` files parsed with configparser."""

import configparser
import hashlib
import json
from dataclasses import asdict, dataclass, field

from .errors import ConfigError


@dataclass(frozen=True)
class PotentialConfig:
    a: float = 1.0
    b: float = 2.0
    v0: float = 1.0


@dataclass(frozen=True)
class GridConfig:
    r_max: float = 40.0
    r_points: int = 401
    e_max: float = 400.0
    e_points: int = 2001


@dataclass(frozen=True)
class ToleranceConfig:
    newton: float = 1e-12
    hardy: float = 1e-6
    tail: float = 1e-6


@dataclass(frozen=True)
class RunConfig:
    potential: PotentialConfig = field(default_factory=PotentialConfig)
    grids: GridConfig = field(default_factory=GridConfig)
    tolerances: ToleranceConfig = field(default_factory=ToleranceConfig)
    output: str = "."
    seed: int = 0

    def to_dict(self):
        return asdict(self)

    def digest(self):
        """sha256 of the canonical JSON form."""
        text = json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(text.encode()).hexdigest()


_SECTIONS = {"potential": PotentialConfig, "grids": GridConfig, "tolerances": ToleranceConfig}
_RUN_KEYS = {"output": str, "seed": int}


def _convert(section, key, raw, kind):
    try:
        value = kind(raw)
    except ValueError as err:
        raise ConfigError(f"[{section}] {key}: cannot parse {raw!r} as {kind.__name__}") from err
    if kind in (int, float):
        # the barrier height may vanish (free problem); everything else must be positive
        ok = value >= 0 if (section, key) in (("potential", "v0"), ("run", "seed")) else value > 0
        if not ok:
            raise ConfigError(f"[{section}] {key} = {raw} is out of range")
    return value


def parse_config(text):
    """RunConfig from config text; unknown sections or keys are errors."""
    parser = configparser.ConfigParser(interpolation=None)
    parser.optionxform = str
    try:
        parser.read_string(text)
    except configparser.Error as err:
        raise ConfigError(f"malformed config: {err}") from err
    parts = {}
    run = {}
    for section in parser.sections():
        if section == "run":
            for key, raw in parser[section].items():
                if key not in _RUN_KEYS:
                    raise ConfigError(f"unknown key [run] {key}")
                run[key] = _convert("run", key, raw, _RUN_KEYS[key])
            continue
        cls = _SECTIONS.get(section)
        if cls is None:
            raise ConfigError(f"unknown section [{section}]")
        kinds = {name: f.type for name, f in cls.__dataclass_fields__.items()}
        values = {}
        for key, raw in parser[section].items():
            if key not in kinds:
                raise ConfigError(f"unknown key [{section}] {key}")
            kind = {"float": float, "int": int}.get(kinds[key], kinds[key])
            values[key] = _convert(section, key, raw, kind)
        parts[section] = cls(**values)
    cfg = RunConfig(**parts, **run)
    if not cfg.potential.a < cfg.potential.b:
        raise ConfigError("potential: need a < b")
    return cfg


def load_config(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return parse_config(fh.read())
    except OSError as err:
        raise ConfigError(f"cannot read config {path}: {err}") from err
