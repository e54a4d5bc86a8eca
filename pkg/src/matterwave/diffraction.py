"""Coherent N-slit intensity on the detection screen."""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from matterwave.gaussian import slit_amplitude, slit_amplitude_natural
from matterwave.wavepacket import GaussianPacket


@dataclass(frozen=True)
class Grating:
    n_slits: int
    d: float
    b: float
    x0: float = 0.0

    def __post_init__(self):
        if int(self.n_slits) != self.n_slits or self.n_slits < 1:
            raise ValueError("n_slits must be a positive integer")
        if not self.d > 0:
            raise ValueError("slit spacing d must be positive")
        if not self.b > 0:
            raise ValueError("slit half-width b must be positive")
        if not self.b < self.d:
            raise ValueError("slit half-width b must be smaller than the spacing d")


@dataclass(frozen=True)
class Beamline:
    """Flight geometry: first slit -> grating (L), grating -> screen (l), speed v."""

    L: float
    l: float
    v: float

    def __post_init__(self):
        for name in ("L", "l", "v"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")

    @property
    def T(self) -> float:
        return self.L / self.v

    @property
    def tau(self) -> float:
        return self.l / self.v

    def with_velocity(self, v: float) -> "Beamline":
        return Beamline(self.L, self.l, v)


@dataclass(frozen=True)
class Grid:
    x_min: float
    x_max: float
    n_points: int

    def __post_init__(self):
        if int(self.n_points) != self.n_points or self.n_points < 2:
            raise ValueError("grid needs at least 2 points")
        if not self.x_min < self.x_max:
            raise ValueError("grid requires x_min < x_max")

    @classmethod
    def symmetric(cls, halfwidth: float, n_points: int) -> "Grid":
        return cls(-halfwidth, halfwidth, n_points)

    def points(self) -> np.ndarray:
        return np.linspace(self.x_min, self.x_max, self.n_points)


class Normalization(str, Enum):
    PEAK_UNITY = "peak-unity"
    UNIT_AREA = "unit-area"
    RAW = "raw"


@dataclass(frozen=True)
class IntensityCurve:
    xs: np.ndarray
    values: np.ndarray
    normalization: Normalization = Normalization.RAW

    def __post_init__(self):
        xs = np.asarray(self.xs, dtype=float)
        values = np.asarray(self.values, dtype=float)
        if xs.shape != values.shape or xs.ndim != 1:
            raise ValueError("xs and values must be 1-D arrays of equal length")
        if np.any(np.diff(xs) <= 0):
            raise ValueError("xs must be strictly increasing")
        if np.any(values < 0):
            raise ValueError("intensities must be non-negative")
        object.__setattr__(self, "xs", xs)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "normalization", Normalization(self.normalization))

    def normalized(self, normalization) -> "IntensityCurve":
        return IntensityCurve(self.xs, normalize(self.xs, self.values, normalization), normalization)


def normalize(xs: np.ndarray, values: np.ndarray, normalization) -> np.ndarray:
    normalization = Normalization(normalization)
    if normalization is Normalization.RAW:
        return values
    if normalization is Normalization.PEAK_UNITY:
        peak = values.max()
        if peak <= 0:
            raise ValueError("cannot peak-normalize an identically zero curve")
        return values / peak
    area = np.trapezoid(values, xs)
    if area <= 0:
        raise ValueError("cannot area-normalize an identically zero curve")
    return values / area


def slit_centers(g: Grating) -> np.ndarray:
    n = np.arange(g.n_slits)
    return g.x0 - (g.n_slits - 1) * g.d / 2 + n * g.d


def fixed_pregrating_width_time(packet: GaussianPacket, W: float) -> float:
    """Flight time after which the packet width has grown from sigma0 to ``W``."""
    ratio = W / packet.sigma0
    if ratio < 1:
        raise ValueError("packet cannot be narrower than its initial width sigma0")
    return packet.tau0 * math.sqrt(ratio * ratio - 1.0)


def screen_amplitude(packet: GaussianPacket, grating: Grating, beamline: Beamline, x, T=None):
    """Coherent sum of all slit amplitudes, ``T`` defaults to ``L / v``."""
    T = beamline.T if T is None else T
    t0 = packet.tau0
    s0 = packet.sigma0
    centers = slit_centers(grating)[:, None] / s0
    u = np.atleast_1d(np.asarray(x, dtype=float)) / s0
    amps = slit_amplitude_natural(T / t0, beamline.tau / t0, centers, grating.b / s0, u[None, :])
    total = amps.sum(axis=0) / math.sqrt(s0)
    return total if np.ndim(x) else complex(total[0])


def two_slit_amplitude(packet: GaussianPacket, d: float, b: float, T: float, tau: float, x):
    """``Psi_+ + Psi_-`` for apertures at ``-d/2`` and ``+d/2``."""
    return slit_amplitude(packet, -d / 2, b, T, tau, x) + slit_amplitude(packet, d / 2, b, T, tau, x)


def intensity(packet: GaussianPacket, grating: Grating, beamline: Beamline, x, T=None):
    amp = screen_amplitude(packet, grating, beamline, x, T=T)
    out = np.abs(amp) ** 2
    return float(out) if np.ndim(out) == 0 else out


def intensity_scan(
    packet: GaussianPacket,
    grating: Grating,
    beamline: Beamline,
    grid: Grid,
    normalization=Normalization.PEAK_UNITY,
    T=None,
) -> IntensityCurve:
    xs = grid.points()
    raw = intensity(packet, grating, beamline, xs, T=T)
    return IntensityCurve(xs, normalize(xs, raw, normalization), normalization)
