"""Experiment configuration: flat INI-style files with [section] headers.

The format is deliberately trivial: one ``key = value`` per line, ``#`` or
``;`` comments, and no interpolation, so files stay hand-editable and
parseable from any language.  Parse and validation errors carry the offending
line number.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

from .lindblad import Channel, ModelParams
from .qinfo import EntropyUnit

__all__ = ["ConfigError", "ExperimentConfig", "parse_config_text", "load_config"]

_VALID_KEYS = {
    "model": {"delta", "tau", "j_xy", "gamma", "xi", "channel"},
    "evolution": {"initial_state", "t_final", "dt", "t_relax"},
    "analysis": {"window_fraction", "unit"},
    "sweep": {"xi", "gamma", "j_xy"},
    "discord": {"n_states", "ranks"},
    "output": {"directory", "seed", "workers", "save_states"},
}


class ConfigError(ValueError):
    """Malformed or invalid configuration input."""


def _default_gamma_grid() -> list[float]:
    # 16 log-spaced points spanning [0.01, 1]
    return [float(g) for g in np.logspace(-2.0, 0.0, 16)]


def _default_xi_grid() -> list[float]:
    return [float(x) for x in np.linspace(-1.0, 1.0, 21)]


@dataclass(frozen=True)
class ExperimentConfig:
    """Fully resolved experiment settings; defaults reproduce the reference
    two-qubit scenario (delta=1, tau=1, j_xy=0.25, gamma=0.05, |1 0> start)."""

    model: ModelParams = field(default_factory=ModelParams)
    initial_state: str = "10"
    t_final: float = 200.0
    dt: float = 0.01
    t_relax: float = 4000.0
    window_fraction: float = 0.25
    unit: EntropyUnit = EntropyUnit.BITS
    xi_values: tuple[float, ...] = tuple(_default_xi_grid())
    gamma_values: tuple[float, ...] = tuple(_default_gamma_grid())
    jxy_values: tuple[float, ...] = (-1.0, 0.0, 1.0)
    n_states: int = 1000
    ranks: tuple[int, ...] = (2, 3, 4)
    out_dir: str = "out"
    seed: int = 1234
    workers: int = 1
    save_states: bool = False

    def validate(self) -> "ExperimentConfig":
        if set(self.initial_state) - {"0", "1"} or len(self.initial_state) != 2:
            raise ConfigError(
                f"initial_state must be a 2-bit label like '10', got {self.initial_state!r}"
            )
        if self.dt <= 0 or self.t_final < self.dt:
            raise ConfigError("need dt > 0 and t_final >= dt")
        if not (0.0 < self.window_fraction <= 1.0):
            raise ConfigError("window_fraction must be in (0, 1]")
        for name, values in (("xi", self.xi_values), ("gamma", self.gamma_values),
                             ("j_xy", self.jxy_values)):
            if len(values) == 0:
                raise ConfigError(f"sweep list '{name}' is empty")
        if any(abs(x) > 1.0 for x in self.xi_values):
            raise ConfigError("sweep xi values must lie in [-1, 1]")
        if any(g < 0.0 for g in self.gamma_values):
            raise ConfigError("sweep gamma values must be >= 0")
        if self.n_states < 1:
            raise ConfigError("n_states must be >= 1")
        if any(not 1 <= r <= 4 for r in self.ranks):
            raise ConfigError("ranks must lie in [1, 4] for two-qubit states")
        if self.workers < 1:
            raise ConfigError("workers must be >= 1")
        return self


def parse_config_text(text: str) -> dict[str, dict[str, tuple[str, int]]]:
    """Parse INI-style text into {section: {key: (raw value, line number)}}."""
    sections: dict[str, dict[str, tuple[str, int]]] = {}
    current: str | None = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith(("#", ";")):
            continue
        if line.startswith("[") and line.endswith("]"):
            current = line[1:-1].strip().lower()
            if current not in _VALID_KEYS:
                raise ConfigError(f"line {lineno}: unknown section [{current}]")
            sections.setdefault(current, {})
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {raw!r}")
        if current is None:
            raise ConfigError(f"line {lineno}: key outside any [section]")
        key, _, value = line.partition("=")
        key = key.strip().lower()
        if key not in _VALID_KEYS[current]:
            raise ConfigError(f"line {lineno}: unknown key '{key}' in [{current}]")
        sections[current][key] = (value.split("#")[0].strip(), lineno)
    return sections


def _get(sections, section, key, conv, default, what):
    if section not in sections or key not in sections[section]:
        return default
    raw, lineno = sections[section][key]
    try:
        return conv(raw)
    except (ValueError, KeyError) as exc:
        raise ConfigError(f"line {lineno}: {key} must be {what}, got {raw!r}") from exc


def _float_list(raw: str) -> tuple[float, ...]:
    return tuple(float(tok) for tok in raw.replace(",", " ").split())


def _int_list(raw: str) -> tuple[int, ...]:
    return tuple(int(tok) for tok in raw.replace(",", " ").split())


def _bool(raw: str) -> bool:
    lowered = raw.strip().lower()
    if lowered in {"true", "yes", "on", "1"}:
        return True
    if lowered in {"false", "no", "off", "0"}:
        return False
    raise ValueError(raw)


def load_config(path) -> ExperimentConfig:
    """Load and validate a config file; missing entries keep their defaults."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            sections = parse_config_text(fh.read())
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc

    defaults = ExperimentConfig()
    try:
        model = ModelParams(
            delta=_get(sections, "model", "delta", float, defaults.model.delta, "a number"),
            tau=_get(sections, "model", "tau", float, defaults.model.tau, "a number"),
            j_xy=_get(sections, "model", "j_xy", float, defaults.model.j_xy, "a number"),
            gamma=_get(sections, "model", "gamma", float, defaults.model.gamma, "a number"),
            xi=_get(sections, "model", "xi", float, defaults.model.xi, "a number"),
            channel=_get(sections, "model", "channel", lambda s: Channel(s.lower()),
                         defaults.model.channel, "one of raise/lower/x/z"),
        )
    except ValueError as exc:
        raise ConfigError(f"invalid [model] parameters: {exc}") from exc

    cfg = ExperimentConfig(
        model=model,
        initial_state=_get(sections, "evolution", "initial_state", str,
                           defaults.initial_state, "a bit label"),
        t_final=_get(sections, "evolution", "t_final", float, defaults.t_final, "a number"),
        dt=_get(sections, "evolution", "dt", float, defaults.dt, "a number"),
        t_relax=_get(sections, "evolution", "t_relax", float, defaults.t_relax, "a number"),
        window_fraction=_get(sections, "analysis", "window_fraction", float,
                             defaults.window_fraction, "a number"),
        unit=_get(sections, "analysis", "unit", lambda s: EntropyUnit(s.lower()),
                  defaults.unit, "bits or nats"),
        xi_values=_get(sections, "sweep", "xi", _float_list, defaults.xi_values,
                       "a list of numbers"),
        gamma_values=_get(sections, "sweep", "gamma", _float_list, defaults.gamma_values,
                          "a list of numbers"),
        jxy_values=_get(sections, "sweep", "j_xy", _float_list, defaults.jxy_values,
                        "a list of numbers"),
        n_states=_get(sections, "discord", "n_states", int, defaults.n_states, "an integer"),
        ranks=_get(sections, "discord", "ranks", _int_list, defaults.ranks,
                   "a list of integers"),
        out_dir=_get(sections, "output", "directory", str, defaults.out_dir, "a path"),
        seed=_get(sections, "output", "seed", int, defaults.seed, "an integer"),
        workers=_get(sections, "output", "workers", int, defaults.workers, "an integer"),
        save_states=_get(sections, "output", "save_states", _bool, defaults.save_states,
                         "a boolean"),
    )
    return cfg.validate()


def apply_overrides(cfg: ExperimentConfig, *, out_dir=None, seed=None, unit=None
                    ) -> ExperimentConfig:
    """Apply command-line overrides on top of a loaded config."""
    updates = {}
    if out_dir is not None:
        updates["out_dir"] = str(out_dir)
    if seed is not None:
        updates["seed"] = int(seed)
    if unit is not None:
        updates["unit"] = EntropyUnit(unit)
    return replace(cfg, **updates).validate() if updates else cfg
