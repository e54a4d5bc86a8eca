"""Free evolution of a Gaussian transverse wave packet.

All formulas are evaluated in natural units of the packet: lengths in units
of ``sigma0`` and times in units of the intrinsic time ``tau0 = m sigma0**2 / hbar``.
SI values are restored on output.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import constants

AMU = constants.physical_constants["atomic mass constant"][0]
HBAR = constants.hbar


@dataclass(frozen=True)
class Particle:
    mass: float
    hbar: float = HBAR

    def __post_init__(self):
        if not self.mass > 0:
            raise ValueError("mass must be positive")
        if not self.hbar > 0:
            raise ValueError("hbar must be positive")

    @classmethod
    def from_amu(cls, mass_amu: float, hbar: float = HBAR) -> "Particle":
        return cls(mass=mass_amu * AMU, hbar=hbar)

    def de_broglie_wavelength(self, v: float) -> float:
        return 2 * math.pi * self.hbar / (self.mass * v)


@dataclass(frozen=True)
class GaussianPacket:
    """Real Gaussian ``(sigma0 sqrt(pi))**-1/2 exp(-x**2 / (2 sigma0**2))`` at t = 0."""

    sigma0: float
    particle: Particle

    def __post_init__(self):
        if not self.sigma0 > 0:
            raise ValueError("sigma0 must be positive")

    @property
    def tau0(self) -> float:
        return tau0(self)

    def scaled_time(self, t):
        """``t / tau0``, rejecting negative times."""
        t = np.asarray(t, dtype=float)
        if np.any(t < 0):
            raise ValueError("time must be non-negative")
        s = t / self.tau0
        return float(s) if s.ndim == 0 else s


@dataclass(frozen=True)
class EvolvedAmplitude:
    modulus: np.ndarray | float
    phase: np.ndarray | float

    def as_complex(self):
        return self.modulus * np.exp(1j * np.asarray(self.phase))


@dataclass(frozen=True)
class CovarianceMatrix:
    """Symmetrized position-momentum covariance of a pure state.

    Entries are stored in the packet's natural units (``sigma0`` for length,
    ``hbar / sigma0`` for momentum) so the determinant can be formed without
    cancellation between large SI products.
    """

    var_x_nat: float
    var_p_nat: float
    cov_nat: float
    sigma0: float
    hbar: float

    def __post_init__(self):
        if not (self.var_x_nat > 0 and self.var_p_nat > 0):
            raise ValueError("variances must be positive")
        bound = 0.25
        if self._det_nat() < bound * (1 - 1e-12):
            raise ValueError("covariance violates the Schroedinger-Robertson bound")

    @property
    def var_x(self) -> float:
        return self.var_x_nat * self.sigma0**2

    @property
    def var_p(self) -> float:
        return self.var_p_nat * (self.hbar / self.sigma0) ** 2

    @property
    def cov_xp(self) -> float:
        return self.cov_nat * self.hbar

    def _det_nat(self) -> float:
        return self.var_x_nat * self.var_p_nat - self.cov_nat * self.cov_nat

    def determinant(self) -> float:
        return self._det_nat() * self.hbar**2

    def heisenberg_product(self) -> float:
        return self.var_x * self.var_p

    def as_array(self) -> np.ndarray:
        return np.array([[self.var_x, self.cov_xp], [self.cov_xp, self.var_p]])


def tau0(packet: GaussianPacket) -> float:
    p = packet.particle
    return p.mass * packet.sigma0**2 / p.hbar


def _width_nat(s):
    return np.sqrt(1.0 + s * s)


def width(packet: GaussianPacket, t):
    """Packet width ``B(t) = sigma0 sqrt(1 + (t/tau0)**2)``."""
    return packet.sigma0 * _width_nat(packet.scaled_time(t))


def dispersive_phase(packet: GaussianPacket, x, t):
    s = packet.scaled_time(t)
    u = np.asarray(x, dtype=float) / packet.sigma0
    phase = u * u * s / (2.0 * (1.0 + s * s))
    return float(phase) if np.ndim(phase) == 0 else phase


def evolved_amplitude(packet: GaussianPacket, x, t) -> EvolvedAmplitude:
    """Packet at time ``t`` as modulus and position-dependent phase.

    The x-independent phase of the propagated prefactor is dropped.
    """
    s = packet.scaled_time(t)
    u = np.asarray(x, dtype=float) / packet.sigma0
    b2 = 1.0 + s * s
    modulus = (math.pi * b2) ** -0.25 * np.exp(-u * u / (2.0 * b2)) / math.sqrt(packet.sigma0)
    phase = u * u * s / (2.0 * b2)
    if np.ndim(modulus) == 0:
        return EvolvedAmplitude(float(modulus), float(phase))
    return EvolvedAmplitude(modulus, phase)


def velocity_field(packet: GaussianPacket, x, t):
    """Local transverse velocity ``(hbar/m) dS/dx = t x / (tau0**2 + t**2)``."""
    s = packet.scaled_time(t)
    v = np.asarray(x, dtype=float) * s / (packet.tau0 * (1.0 + s * s))
    return float(v) if np.ndim(v) == 0 else v


def covariance(packet: GaussianPacket, t: float) -> CovarianceMatrix:
    s = packet.scaled_time(t)
    q = s * s
    return CovarianceMatrix(
        var_x_nat=(1.0 + q) / 2.0,
        var_p_nat=0.5,
        cov_nat=s / 2.0,
        sigma0=packet.sigma0,
        hbar=packet.particle.hbar,
    )


def correlation_from_empirical(C: float) -> float:
    """``<xp + px>`` in units of hbar implied by ``dx dp = C h`` on a saturated state.

    With ``det = hbar**2/4`` and ``dx dp = 2 pi C hbar`` the symmetrized
    correlation is ``2 sqrt((2 pi C)**2 - 1/4)``.
    """
    product = 2 * math.pi * C
    if product < 0.5:
        raise ValueError(
            f"C={C} gives dx*dp below hbar/2; the uncertainty bound would be violated"
        )
    return 2.0 * math.sqrt(product * product - 0.25)
