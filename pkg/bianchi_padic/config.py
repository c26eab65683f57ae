"""Configuration helpers for the Bianchi p-adic L-function toolkit."""

from __future__ import annotations

import json
import logging
import os
from dataclasses import asdict, dataclass, field as dataclass_field, fields, replace
from pathlib import Path
from typing import Any, Mapping, Optional

import jsonschema
import yaml

from .exceptions import ConfigError

logger = logging.getLogger(__name__)

SCHEMA_DIR = Path(__file__).resolve().parent / "schemas"

_DEFAULT_D = 4
_DEFAULT_P = 5
_DEFAULT_SEED = 2
_DEFAULT_N = 4
_DEFAULT_T = 1
_DEFAULT_DIGITS = 50
_DEFAULT_CACHE_DIR = ".bianchi_padic_cache"


def _env_flag(name: str, default: bool = True) -> bool:
    """Return a boolean flag based on common truthy/falsey strings."""
    value = os.getenv(name)
    if value is None:
        return default
    return value.strip().lower() in {"1", "true", "yes", "on"}


def _env_csv(name: str) -> tuple[str, ...]:
    """Return a tuple of non-empty values split by comma."""
    value = os.getenv(name)
    if not value:
        return ()
    parts = [item.strip() for item in value.split(",")]
    return tuple(part for part in parts if part)


def _env_int(name: str, default: int) -> int:
    """Return integer value from environment or default."""
    value = os.getenv(name)
    if value is None:
        return default
    try:
        return int(value.strip())
    except (TypeError, ValueError):
        return default


def _env_pairs(name: str, default: tuple[tuple[int, int], ...]) -> tuple[tuple[int, int], ...]:
    """Pairs written as q:r separated by commas, e.g. "0:0,1:0"."""
    items = _env_csv(name)
    if not items:
        return default
    try:
        return tuple((int(q), int(r)) for q, r in (item.split(":") for item in items))
    except ValueError:
        return default


def acceptance_enabled() -> bool:
    """Whether the expensive reference-depth runs are requested."""
    return _env_flag("BIANCHI_PADIC_RUN_ACCEPTANCE", False)


@dataclass(frozen=True)
class FieldSettings:
    """K = Q(sqrt(-D)), the split prime p and the embedding iota_p."""
    D: int = _env_int("BIANCHI_PADIC_D", _DEFAULT_D)
    p: int = _env_int("BIANCHI_PADIC_P", _DEFAULT_P)
    iota_seed: int = _env_int("BIANCHI_PADIC_IOTA_SEED", _DEFAULT_SEED)
    uniformizer_unit: int = _env_int("BIANCHI_PADIC_UNIFORMIZER_UNIT", 0)


@dataclass(frozen=True)
class CharacterSettings:
    """phi = (canonical CM character)^power; power 1 gives k = 0."""
    phi_power: int = _env_int("BIANCHI_PADIC_PHI_POWER", 1)
    curve: tuple[int, ...] = tuple(int(x) for x in _env_csv("BIANCHI_PADIC_CURVE"))

    @property
    def k(self) -> int:
        return self.phi_power - 1

    def curve_coefficients(self) -> Optional[tuple[int, int]]:
        return (self.curve[0], self.curve[1]) if len(self.curve) == 2 else None


@dataclass(frozen=True)
class PrecisionSettings:
    """p-adic precision N, moment count M (0 = N + k + 1), depth T and complex working precision."""
    N: int = _env_int("BIANCHI_PADIC_N", _DEFAULT_N)
    M: int = _env_int("BIANCHI_PADIC_M", 0)
    T: int = _env_int("BIANCHI_PADIC_T", _DEFAULT_T)
    digits: int = _env_int("BIANCHI_PADIC_DIGITS", _DEFAULT_DIGITS)
    height: int = _env_int("BIANCHI_PADIC_HEIGHT", 10 ** 12)
    embedding_precision: int = _env_int("BIANCHI_PADIC_EMBEDDING_PRECISION", 0)

    def moments(self, k: int) -> int:
        return self.M or self.N + k + 1

    def padic_precision(self) -> int:
        return self.embedding_precision or self.N + 12


@dataclass(frozen=True)
class SelectionSettings:
    """Which characters the verification stages visit."""
    max_t: int = _env_int("BIANCHI_PADIC_MAX_T", 1)
    max_s: int = _env_int("BIANCHI_PADIC_MAX_S", 1)
    infinity_types: tuple[tuple[int, int], ...] = _env_pairs("BIANCHI_PADIC_INFINITY_TYPES", ((0, 0),))


@dataclass(frozen=True)
class RuntimeSettings:
    """Cache location, report output and execution knobs."""
    cache_dir: str = os.getenv("BIANCHI_PADIC_CACHE_DIR", _DEFAULT_CACHE_DIR)
    output: str = os.getenv("BIANCHI_PADIC_OUTPUT", "")
    text_output: str = os.getenv("BIANCHI_PADIC_TEXT_OUTPUT", "")
    workers: int = _env_int("BIANCHI_PADIC_WORKERS", 1)
    log_level: str = os.getenv("BIANCHI_PADIC_LOG_LEVEL", "INFO")
    use_cache: bool = _env_flag("BIANCHI_PADIC_USE_CACHE", True)

    def cache_path(self) -> Optional[Path]:
        return Path(self.cache_dir) if self.use_cache and self.cache_dir else None


_SECTIONS = {
    "field": FieldSettings,
    "character": CharacterSettings,
    "precision": PrecisionSettings,
    "selection": SelectionSettings,
    "runtime": RuntimeSettings,
}


def _schema(name: str) -> dict:
    with open(SCHEMA_DIR / name, "r", encoding="utf-8") as handle:
        return json.load(handle)


def _coerce(section: type, values: Mapping[str, Any]) -> dict:
    names = {f.name for f in fields(section)}
    result = {}
    for key, value in values.items():
        if key not in names:
            raise ConfigError(f"unknown key {key!r} in section {section.__name__}")
        if key == "infinity_types":
            value = tuple(tuple(int(x) for x in pair) for pair in value)
        elif key == "curve":
            value = tuple(int(x) for x in value)
        result[key] = value
    return result


@dataclass(frozen=True)
class PipelineConfig:
    """Every knob of a run, echoed verbatim into the report."""
    field: FieldSettings = dataclass_field(default_factory=FieldSettings)
    character: CharacterSettings = dataclass_field(default_factory=CharacterSettings)
    precision: PrecisionSettings = dataclass_field(default_factory=PrecisionSettings)
    selection: SelectionSettings = dataclass_field(default_factory=SelectionSettings)
    runtime: RuntimeSettings = dataclass_field(default_factory=RuntimeSettings)

    @classmethod
    def from_mapping(cls, data: Mapping[str, Any], base: Optional["PipelineConfig"] = None) -> "PipelineConfig":
        """Validate against the config schema and override `base` (environment defaults) section by section."""
        try:
            jsonschema.validate(instance=dict(data), schema=_schema("config.schema.json"))
        except jsonschema.ValidationError as exc:
            raise ConfigError(f"invalid configuration: {exc.message}") from exc
        config = base or cls()
        for name, section in _SECTIONS.items():
            values = data.get(name)
            if values:
                config = replace(config, **{name: replace(getattr(config, name), **_coerce(section, values))})
        return config

    @classmethod
    def from_file(cls, path: str | Path, base: Optional["PipelineConfig"] = None) -> "PipelineConfig":
        try:
            with open(path, "r", encoding="utf-8") as handle:
                data = yaml.safe_load(handle) or {}
        except (OSError, yaml.YAMLError) as exc:
            raise ConfigError(f"cannot read configuration {path}: {exc}") from exc
        if not isinstance(data, dict):
            raise ConfigError(f"configuration {path} must be a mapping")
        logger.debug("loaded configuration from %s", path)
        return cls.from_mapping(data, base)

    @property
    def k(self) -> int:
        return self.character.k

    @property
    def M(self) -> int:
        return self.precision.moments(self.k)

    def validate(self) -> "PipelineConfig":
        """Static checks; ordinarity is checked once phi is built."""
        from .arith import kronecker
        from .exceptions import CharacterError
        from .heckechar import default_cm_modulus
        from .quadfield import FieldK, is_fundamental

        D, p = self.field.D, self.field.p
        if not is_fundamental(D):
            raise ConfigError(f"D={D} is not a fundamental discriminant")
        if p == 2 or kronecker(-D, p) != 1:
            raise ConfigError(f"p={p} does not split in Q(sqrt(-{D}))")
        K = FieldK(D)
        try:
            conductor = default_cm_modulus(K)
        except CharacterError as exc:
            raise ConfigError(exc.message) from exc
        if conductor.norm % p == 0:
            raise ConfigError(f"the conductor of phi must be coprime to p={p}")
        if K.class_number != 1:
            raise ConfigError(f"K = Q(sqrt(-{D})) has class number {K.class_number}; execution requires h = 1")
        if self.character.phi_power < 1:
            raise ConfigError("phi_power must be at least 1")
        if self.M <= self.k:
            raise ConfigError(f"M={self.M} must exceed k={self.k}")
        if self.precision.T < max(self.selection.max_t, self.selection.max_s, 1):
            raise ConfigError(
                f"depth T={self.precision.T} is below the character conductor exponents "
                f"({self.selection.max_t}, {self.selection.max_s})"
            )
        if self.precision.T < self.precision.N:
            logger.warning(
                "T=%s < N=%s: higher moments carry only the precision guaranteed by the depth",
                self.precision.T,
                self.precision.N,
            )
        for q, r in self.selection.infinity_types:
            if not (0 <= q <= self.k and 0 <= r <= self.k):
                raise ConfigError(f"infinity type ({q}, {r}) is outside 0 <= (q, r) <= ({self.k}, {self.k})")
        return self

    def as_dict(self) -> dict:
        echo = asdict(self)
        echo["selection"]["infinity_types"] = [list(pair) for pair in self.selection.infinity_types]
        echo["character"]["curve"] = list(self.character.curve)
        echo["character"]["k"] = self.k
        echo["precision"]["M_effective"] = self.M
        return echo
