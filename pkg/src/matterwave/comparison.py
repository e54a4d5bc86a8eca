"""Classical reference patterns and quantum-vs-classical diagnostics."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from matterwave.diffraction import (
    Beamline,
    Grating,
    Grid,
    IntensityCurve,
    Normalization,
    intensity,
    normalize,
)
from matterwave.wavepacket import GaussianPacket, Particle, width

SCHEMES = ("gaussian-truncated",)


@dataclass(frozen=True)
class VelocityDistribution:
    """Truncated Gaussian of longitudinal speeds, std = ``spread * mean``.

    Sampled at Gauss-Legendre nodes on ``[max(cutoff*mean, mean - 4 std), mean + 4 std]``.
    """

    mean: float
    spread: float
    n_samples: int = 21
    scheme: str = "gaussian-truncated"
    cutoff: float = 0.05
    span: float = 4.0

    def __post_init__(self):
        if not self.mean > 0:
            raise ValueError("mean velocity must be positive")
        if not 0 <= self.spread < 1.5:
            raise ValueError("relative spread must lie in [0, 1.5)")
        if int(self.n_samples) != self.n_samples or self.n_samples < 1:
            raise ValueError("n_samples must be a positive integer")
        if self.scheme not in SCHEMES:
            raise ValueError(f"unknown velocity scheme {self.scheme!r}")
        if not 0 < self.cutoff < 1:
            raise ValueError("cutoff must lie in (0, 1)")

    def nodes_and_weights(self) -> tuple[np.ndarray, np.ndarray]:
        if self.spread == 0 or self.n_samples == 1:
            return np.array([self.mean]), np.array([1.0])
        std = self.spread * self.mean
        lo = max(self.cutoff * self.mean, self.mean - self.span * std)
        hi = self.mean + self.span * std
        t, w = np.polynomial.legendre.leggauss(self.n_samples)
        v = 0.5 * (hi - lo) * t + 0.5 * (hi + lo)
        weights = w * np.exp(-0.5 * ((v - self.mean) / std) ** 2)
        return v, weights / weights.sum()


def _grating_factor(phi: np.ndarray, n: int) -> np.ndarray:
    """``sin(n phi/2) / (n sin(phi/2))`` with removable singularities filled in."""
    # fold phi onto (-pi, pi]; the folded ratio only differs by a sign
    j = np.round(phi / (2 * np.pi))
    r = phi - 2 * np.pi * j
    den = n * np.sin(r / 2)
    small = np.abs(r) < 1e-6
    safe = np.where(small, 1.0, den)
    ratio = np.where(small, 1.0 - (n * n - 1) * r * r / 24.0, np.sin(n * r / 2) / safe)
    sign = np.where((j * (n - 1)) % 2 == 0, 1.0, -1.0)
    return sign * ratio


def fraunhofer_intensity(particle: Particle, grating: Grating, beamline: Beamline, v: float, x):
    """Far-field N-slit pattern of Gaussian apertures at wavelength ``h / (m v)``.

    Small-angle mapping ``theta = x / l``; peak value 1 at ``x = 0``.
    """
    k = 2 * np.pi / particle.de_broglie_wavelength(v)
    theta = np.asarray(x, dtype=float) / beamline.l
    envelope = np.exp(-((grating.b * k * theta) ** 2))
    factor = _grating_factor(k * grating.d * theta, grating.n_slits)
    out = envelope * factor * factor
    return float(out) if out.ndim == 0 else out


def fraunhofer_scan(particle, grating, beamline, v, grid: Grid, normalization=Normalization.PEAK_UNITY):
    xs = grid.points()
    raw = fraunhofer_intensity(particle, grating, beamline, v, xs)
    return IntensityCurve(xs, normalize(xs, raw, normalization), normalization)


def velocity_averaged_intensity(
    packet: GaussianPacket,
    grating: Grating,
    beamline: Beamline,
    dist: VelocityDistribution,
    grid: Grid,
    normalization=Normalization.PEAK_UNITY,
) -> IntensityCurve:
    """Incoherent, weight-averaged raw intensity over the speed distribution."""
    xs = grid.points()
    total = np.zeros_like(xs)
    for v, w in zip(*dist.nodes_and_weights()):
        total += w * intensity(packet, grating, beamline.with_velocity(v), xs)
    return IntensityCurve(xs, normalize(xs, total, normalization), normalization)


def dispersion_threshold(
    packet: GaussianPacket, grating: Grating, beamline: Beamline, scale: float = 2 * math.pi, T=None
) -> float:
    """Slit count above which the dispersive phase at the grating edge matters.

    Solves ``N**2 d**2 (T/tau0)**2 = (scale * B(T))**2`` for ``N``; returns
    ``inf`` when ``T = 0`` (no dispersive phase).
    """
    T = beamline.T if T is None else T
    s = T / packet.tau0
    if s == 0:
        return math.inf
    return scale * float(width(packet, T)) / (grating.d * s)


def pattern_distance(a: IntensityCurve, b: IntensityCurve) -> float:
    """L2 distance between the two curves after scaling each to unit L2 norm."""
    if a.xs.shape != b.xs.shape or not np.array_equal(a.xs, b.xs):
        raise ValueError("pattern_distance requires identical grids")
    na = np.linalg.norm(a.values)
    nb = np.linalg.norm(b.values)
    if na == 0 or nb == 0:
        raise ValueError("cannot compare an identically zero curve")
    return float(np.linalg.norm(a.values / na - b.values / nb))


def fringe_visibility(curve: IntensityCurve) -> float:
    """``(I_max - I_min)/(I_max + I_min)`` for the global maximum and its adjacent minima."""
    v = curve.values
    i = int(np.argmax(v))
    mins = []
    j = i
    while j + 1 < v.size and v[j + 1] <= v[j]:
        j += 1
    if j != i and j + 1 < v.size:
        mins.append(v[j])
    j = i
    while j - 1 >= 0 and v[j - 1] <= v[j]:
        j -= 1
    if j != i and j - 1 >= 0:
        mins.append(v[j])
    if not mins:
        raise ValueError("no interior minimum next to the principal maximum")
    i_min = float(np.mean(mins))
    return (v[i] - i_min) / (v[i] + i_min)
