"""Scenario configuration files.

The format is flat ``key = value`` lines; ``#`` starts a comment. Complex
values are written ``re+imi`` (for example ``0.5-0.25i``); a plain real
number is also accepted. ``outputs`` is a comma-separated list of column
names.
"""

import math
import re
from dataclasses import dataclass, field, fields
from importlib import resources
from pathlib import Path

from .errors import ConfigError

COLUMNS = ("t", "p_ee", "s_lin", "tangle", "concurrence", "p_att_plus", "p_att_minus")
DIAGNOSTIC_COLUMNS = COLUMNS[1:]

_COMPLEX_RE = re.compile(
    r"^\s*([+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)"
    r"(?:\s*([+-])\s*((?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?\s*[ij])?\s*$")
_IMAG_ONLY_RE = re.compile(r"^\s*([+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?\s*[ij]\s*$")


def parse_complex(text, key="value"):
    m = _COMPLEX_RE.match(text)
    if m:
        re_part = float(m.group(1))
        if m.group(2) is None:
            return complex(re_part, 0.0)
        im = float(m.group(3)) if m.group(3) is not None else 1.0
        return complex(re_part, im if m.group(2) == "+" else -im)
    m = _IMAG_ONLY_RE.match(text)
    if m:
        raw = m.group(1)
        im = 1.0 if raw in (None, "+") else (-1.0 if raw == "-" else float(raw))
        return complex(0.0, im)
    raise ConfigError(key, f"cannot parse {text!r} as a complex number (use re+imi)")


def format_complex(z):
    z = complex(z)
    sign = "-" if math.copysign(1.0, z.imag) < 0 else "+"
    return f"{z.real!r}{sign}{abs(z.imag)!r}i"


@dataclass
class ScenarioConfig:
    model: str
    m_q: int = 2
    n_bar: float = None
    theta: float = 0.0
    n_max: int = None
    zeta2: float = None
    n_spins: int = None
    phi: float = 0.0
    c_ee: complex = None
    c_eg: complex = 0j
    c_ge: complex = 0j
    c_gg: complex = None
    c_e: complex = None
    c_g: complex = None
    lam: float = 1.0
    omega: float = 1.0
    delta_width: float = 0.0
    delta_samples: int = 61
    t_max_factor: float = 1.1
    n_points: int = 1200
    outputs: list = field(default_factory=list)
    out_path: str = None
    name: str = None

    def __post_init__(self):
        self.validate()

    @property
    def amplitudes(self):
        if self.m_q == 1:
            return (self.c_e, self.c_g)
        return (self.c_ee, self.c_eg, self.c_ge, self.c_gg)

    def validate(self):
        if self.model not in ("field", "spin"):
            raise ConfigError("model", f"must be 'field' or 'spin', got {self.model!r}")
        if self.m_q not in (1, 2):
            raise ConfigError("m_q", f"must be 1 or 2, got {self.m_q}")
        if self.model == "field":
            _positive("n_bar", self.n_bar)
            if self.n_max is not None and self.n_max < 1:
                raise ConfigError("n_max", "must be a positive integer")
        else:
            _positive("zeta2", self.zeta2)
            _positive("n_spins", self.n_spins)
        _positive("lambda", self.lam)
        _positive("omega", self.omega)
        _positive("t_max_factor", self.t_max_factor)
        _positive("n_points", self.n_points)
        if self.delta_width is None or self.delta_width < 0:
            raise ConfigError("delta_width", "must be >= 0")
        if self.delta_samples < 1 or self.delta_samples % 2 == 0:
            raise ConfigError("delta_samples", "must be an odd positive integer")
        if self.delta_width > 0 and self.m_q != 2:
            raise ConfigError("delta_width", "coupling mismatch needs m_q = 2")

        names = ("c_e", "c_g") if self.m_q == 1 else ("c_ee", "c_eg", "c_ge", "c_gg")
        for key in names:
            if getattr(self, key) is None:
                raise ConfigError(key, "initial amplitude is required")
        norm = sum(abs(complex(c)) ** 2 for c in self.amplitudes)
        if abs(norm - 1.0) > 1e-9:
            raise ConfigError(names[0], f"initial amplitudes have norm² {norm:.12g}, expected 1")
        for col in self.outputs:
            if col not in DIAGNOSTIC_COLUMNS:
                raise ConfigError("outputs", f"unknown column {col!r}")


def _positive(key, value):
    if value is None:
        raise ConfigError(key, "is required")
    if not value > 0:
        raise ConfigError(key, f"must be positive, got {value}")


_KEY_ALIASES = {"lambda": "lam"}
_FIELD_TYPES = {f.name: f.type for f in fields(ScenarioConfig)}
_INT_KEYS = {"m_q", "n_max", "n_spins", "delta_samples", "n_points"}
_FLOAT_KEYS = {"n_bar", "theta", "zeta2", "phi", "lam", "omega", "delta_width", "t_max_factor"}
_COMPLEX_KEYS = {"c_ee", "c_eg", "c_ge", "c_gg", "c_e", "c_g"}
_STR_KEYS = {"model", "out_path", "name"}


def _convert(key, raw):
    if key in _INT_KEYS:
        try:
            value = float(raw)
        except ValueError:
            raise ConfigError(key, f"expected an integer, got {raw!r}") from None
        if not value.is_integer():
            raise ConfigError(key, f"expected an integer, got {raw!r}")
        return int(value)
    if key in _FLOAT_KEYS:
        try:
            value = float(raw)
        except ValueError:
            raise ConfigError(key, f"expected a number, got {raw!r}") from None
        if not math.isfinite(value):
            raise ConfigError(key, f"must be finite, got {raw!r}")
        return value
    if key in _COMPLEX_KEYS:
        return parse_complex(raw, key)
    if key == "outputs":
        return [c.strip() for c in raw.split(",") if c.strip()]
    return raw


def parse_config(text, overrides=None):
    """Parse configuration text into a validated :class:`ScenarioConfig`."""
    values = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}", f"expected key=value, got {line!r}")
        key, raw = (s.strip() for s in line.split("=", 1))
        key = _KEY_ALIASES.get(key, key)
        if key not in _FIELD_TYPES:
            raise ConfigError(key, "unknown key")
        if key in values:
            raise ConfigError(key, "given more than once")
        values[key] = _convert(key, raw)
    for key, raw in (overrides or {}).items():
        key = _KEY_ALIASES.get(key, key)
        if key not in _FIELD_TYPES:
            raise ConfigError(key, "unknown key")
        values[key] = _convert(key, raw) if isinstance(raw, str) else raw
    if "model" not in values:
        raise ConfigError("model", "is required")
    return ScenarioConfig(**values)


def load_config(path, overrides=None):
    text = Path(path).read_text()
    cfg = parse_config(text, overrides)
    if cfg.name is None:
        cfg.name = Path(path).stem
    return cfg


def preset_names():
    root = resources.files("spinrevival") / "presets"
    return sorted(p.name[:-4] for p in root.iterdir() if p.name.endswith(".cfg"))


def preset_text(name):
    path = resources.files("spinrevival") / "presets" / f"{name}.cfg"
    if not path.is_file():
        raise ConfigError("preset", f"no bundled preset named {name!r}")
    return path.read_text()


def load_preset(name, overrides=None):
    cfg = parse_config(preset_text(name), overrides)
    if cfg.name is None:
        cfg.name = name
    return cfg
