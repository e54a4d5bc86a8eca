"""Run configuration: ``key = value`` documents, validation and named presets.

Units are part of every key name (``sigma0_um``, ``d_nm``, ``L_m`` ...). The
:class:`Scenario` stores values in those units so that serializing and
re-parsing is exact; SI objects are built on demand.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, fields, replace

from matterwave.comparison import VelocityDistribution
from matterwave.diffraction import Beamline, Grating, Grid, Normalization
from matterwave.wavepacket import GaussianPacket, Particle

OUTPUTS = ("quantum", "velocity-averaged", "fraunhofer")
MODES = ("geometric-T", "fixed-pregrating-width")
REQUIRED = ("sigma0_um", "n_slits", "d_nm", "b_nm", "L_m", "l_m", "v_mps")


class ConfigError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


@dataclass(frozen=True)
class Scenario:
    sigma0_um: tuple[float, ...]
    n_slits: int
    d_nm: float
    b_nm: float
    L_m: float
    l_m: float
    v_mps: float
    name: str = "custom"
    mass_amu: float = 720.0
    x0_um: float = 0.0
    grid_halfwidth_um: float = 40.0
    grid_points: int = 2001
    outputs: tuple[str, ...] = ("quantum",)
    mode: str = "geometric-T"
    pregrating_width_um: float | None = None
    spread_rel: float = 0.6
    n_velocity_samples: int = 21
    fraunhofer_v_mps: float | None = None
    normalization: str = "peak-unity"
    threshold_scale: float = 2 * math.pi

    def __post_init__(self):
        if isinstance(self.sigma0_um, (int, float)):
            object.__setattr__(self, "sigma0_um", (float(self.sigma0_um),))
        if not self.sigma0_um:
            raise ValueError("at least one sigma0 value is required")
        if not self.outputs:
            raise ValueError("at least one output must be selected")
        for o in self.outputs:
            if o not in OUTPUTS:
                raise ValueError(f"unknown output {o!r}; choose from {', '.join(OUTPUTS)}")
        if len(set(self.outputs)) != len(self.outputs):
            raise ValueError("outputs must not repeat")
        if self.mode not in MODES:
            raise ValueError(f"unknown mode {self.mode!r}; choose from {', '.join(MODES)}")
        if self.mode == "fixed-pregrating-width":
            if self.pregrating_width_um is None or not self.pregrating_width_um > 0:
                raise ValueError("fixed-pregrating-width mode needs a positive pregrating_width_um")
        Normalization(self.normalization)
        if not self.threshold_scale > 0:
            raise ValueError("threshold_scale must be positive")
        # building the physics objects enforces their invariants
        self.particle()
        self.packets()
        self.grating()
        self.beamline()
        self.grid()
        if "velocity-averaged" in self.outputs:
            self.velocity_distribution()
        if self.fraunhofer_v_mps is not None and not self.fraunhofer_v_mps > 0:
            raise ValueError("fraunhofer_v_mps must be positive")

    def particle(self) -> Particle:
        return Particle.from_amu(self.mass_amu)

    def packets(self) -> list[GaussianPacket]:
        p = self.particle()
        return [GaussianPacket(s * 1e-6, p) for s in self.sigma0_um]

    def grating(self) -> Grating:
        return Grating(self.n_slits, self.d_nm * 1e-9, self.b_nm * 1e-9, self.x0_um * 1e-6)

    def beamline(self) -> Beamline:
        return Beamline(self.L_m, self.l_m, self.v_mps)

    def grid(self) -> Grid:
        return Grid.symmetric(self.grid_halfwidth_um * 1e-6, self.grid_points)

    def velocity_distribution(self) -> VelocityDistribution:
        return VelocityDistribution(self.v_mps, self.spread_rel, self.n_velocity_samples)

    @property
    def fraunhofer_velocity(self) -> float:
        return self.v_mps if self.fraunhofer_v_mps is None else self.fraunhofer_v_mps


def _fmt(value) -> str:
    if isinstance(value, tuple):
        return ", ".join(_fmt(v) for v in value)
    if isinstance(value, float):
        return repr(value)
    return str(value)


def to_config_text(s: Scenario) -> str:
    lines = []
    for f in fields(Scenario):
        value = getattr(s, f.name)
        if value is None:
            continue
        lines.append(f"{f.name} = {_fmt(value)}")
    return "\n".join(lines) + "\n"


_FLOAT_LIST = {"sigma0_um"}
_STR_LIST = {"outputs"}
_INTS = {"n_slits", "grid_points", "n_velocity_samples"}
_STRS = {"name", "mode", "normalization"}
_KEYS = {f.name for f in fields(Scenario)} | {"scenario"}


def _convert(key: str, raw: str, line: int):
    try:
        if key in _FLOAT_LIST:
            return tuple(float(v) for v in raw.split(",") if v.strip())
        if key in _STR_LIST:
            return tuple(v.strip() for v in raw.split(",") if v.strip())
        if key in _INTS:
            return int(raw)
        if key in _STRS or key == "scenario":
            return raw
        return float(raw)
    except ValueError:
        raise ConfigError(f"cannot parse value {raw!r} for {key}", line) from None


def parse_config(text: str) -> Scenario:
    values: dict = {}
    for i, line in enumerate(text.splitlines(), start=1):
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            continue
        if "=" not in stripped:
            raise ConfigError(f"expected 'key = value', got {stripped!r}", i)
        key, raw = (part.strip() for part in stripped.split("=", 1))
        if key not in _KEYS:
            raise ConfigError(f"unknown key {key!r}", i)
        if key in values:
            raise ConfigError(f"duplicate key {key!r}", i)
        values[key] = _convert(key, raw, i)

    preset_name = values.pop("scenario", None)
    try:
        if preset_name is not None:
            base = presets().get(preset_name)
            if base is None:
                raise ConfigError(f"unknown scenario preset {preset_name!r}; known: {', '.join(presets())}")
            return replace(base, **values)
        missing = [k for k in REQUIRED if k not in values]
        if missing:
            raise ConfigError(
                "missing required keys: " + ", ".join(missing) + " (or give 'scenario = <preset>')"
            )
        return Scenario(**values)
    except ValueError as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(f"invalid scenario: {exc}") from None


_FIG3 = dict(
    sigma0_um=(5.0,),
    n_slits=2,
    d_nm=100.0,
    b_nm=18.0,
    L_m=0.1,
    l_m=1.25,
    v_mps=200.0,
    mass_amu=720.0,
)


def presets() -> dict[str, Scenario]:
    """Parameter sets of the double-diffraction figures (C60, 720 amu)."""
    multi = dict(
        outputs=("quantum", "velocity-averaged", "fraunhofer"),
        spread_rel=0.6,
        n_velocity_samples=21,
        fraunhofer_v_mps=220.0,
    )
    return {
        "fig3-twoslit": Scenario(name="fig3-twoslit", **_FIG3),
        "fig5-sweep": Scenario(
            name="fig5-sweep",
            **{**_FIG3, "sigma0_um": (6.0, 0.02, 0.0175, 0.013)},
            mode="fixed-pregrating-width",
            pregrating_width_um=1.0,
        ),
        "fig6-N2": Scenario(name="fig6-N2", **_FIG3, **multi),
        "fig9-N30": Scenario(name="fig9-N30", **{**_FIG3, "n_slits": 30}, **multi),
        "fig10-N100": Scenario(name="fig10-N100", **{**_FIG3, "n_slits": 100}, **multi),
    }
