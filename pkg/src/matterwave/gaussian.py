"""Closed-form composition of complex Gaussian kernels.

Every factor in the double-diffraction integral (free propagator, Gaussian
aperture, initial packet) is ``exp(a w**2 + b w + c)`` in the integration
variable, so the amplitude at the screen reduces to chained evaluations of

    int exp(a w**2 + b w + c) dw = sqrt(-pi/a) exp(c - b**2 / (4a)),  Re(a) < 0.

Coefficients may be numpy arrays; everything broadcasts.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from matterwave.wavepacket import GaussianPacket, Particle


class NonIntegrableError(ValueError):
    """Raised when a Gaussian exponent has Re(a) >= 0."""


@dataclass(frozen=True)
class ComplexQuadraticExponent:
    """The exponent ``a w**2 + b w + c`` of a complex Gaussian in ``w``."""

    a: complex | np.ndarray
    b: complex | np.ndarray = 0.0
    c: complex | np.ndarray = 0.0

    def __add__(self, other: "ComplexQuadraticExponent") -> "ComplexQuadraticExponent":
        return ComplexQuadraticExponent(self.a + other.a, self.b + other.b, self.c + other.c)

    def __call__(self, w):
        return self.a * w * w + self.b * w + self.c

    def evaluate(self, w):
        """``exp(a w**2 + b w + c)``."""
        return np.exp(self(w))


# Natural units of a packet: hbar = m = 1, lengths in sigma0, times in tau0.
NATURAL = Particle(mass=1.0, hbar=1.0)


def gaussian_integral(e: ComplexQuadraticExponent):
    """Integral of ``exp(e(w))`` over the real line, principal square-root branch."""
    a = np.asarray(e.a, dtype=complex)
    if np.any(a.real >= 0):
        raise NonIntegrableError("Re(a) must be strictly negative for a Gaussian integral")
    b = np.asarray(e.b, dtype=complex)
    c = np.asarray(e.c, dtype=complex)
    out = np.sqrt(-np.pi / a) * np.exp(c - b * b / (4.0 * a))
    return complex(out) if out.ndim == 0 else out


def _kappa(particle: Particle, t: float, t0: float) -> float:
    if not t > t0:
        raise ValueError("propagation requires t > t0")
    return particle.mass / (particle.hbar * (t - t0))


def propagator_prefactor(particle: Particle, t: float, t0: float) -> complex:
    """``sqrt(m / (2 pi i hbar (t - t0)))``."""
    kappa = _kappa(particle, t, t0)
    return complex(np.sqrt(kappa / (2j * np.pi)))


def propagator_exponent(particle: Particle, z, t: float, t0: float) -> ComplexQuadraticExponent:
    """Exponent of the free propagator ``K(z, t; w, t0)`` as a quadratic in ``w``."""
    kappa = _kappa(particle, t, t0)
    z = np.asarray(z, dtype=float)
    return ComplexQuadraticExponent(
        a=0.5j * kappa,
        b=-1j * kappa * z,
        c=0.5j * kappa * z * z,
    )


def slit_exponent(b: float, center) -> ComplexQuadraticExponent:
    """Exponent of the Gaussian aperture ``exp(-(w - center)**2 / (2 b**2))``."""
    if not b > 0:
        raise ValueError("aperture half-width must be positive")
    center = np.asarray(center, dtype=float)
    inv = 1.0 / (b * b)
    return ComplexQuadraticExponent(a=-0.5 * inv, b=center * inv, c=-0.5 * center * center * inv)


def free_evolve(
    prefactor, e: ComplexQuadraticExponent, particle: Particle, dt: float
) -> tuple[complex, ComplexQuadraticExponent]:
    """Propagate ``prefactor * exp(e(x))`` freely for ``dt``; returns the result in ``z``.

    Integrating ``K(z, dt; x, 0) exp(e(x))`` over ``x`` gives another Gaussian
    with ``a' = a / (1 - 2ia/kappa)``, ``b' = b / (1 - 2ia/kappa)`` and
    ``c' = c - b**2 / (4 (a + i kappa / 2))``, ``kappa = m / (hbar dt)``.
    """
    kappa = _kappa(particle, dt, 0.0)
    a = np.asarray(e.a, dtype=complex)
    if np.any(a.real >= 0):
        raise NonIntegrableError("Re(a) must be strictly negative for a Gaussian integral")
    q = 1.0 - 2j * a / kappa
    big_a = a + 0.5j * kappa
    evolved = ComplexQuadraticExponent(a=a / q, b=e.b / q, c=e.c - e.b * e.b / (4.0 * big_a))
    return prefactor * np.sqrt(1.0 / q), evolved


def initial_exponent() -> tuple[float, ComplexQuadraticExponent]:
    """Initial packet in natural units: ``pi**-1/4 exp(-u**2 / 2)``."""
    return math.pi**-0.25, ComplexQuadraticExponent(a=-0.5 + 0j)


def grating_plane_packet(s_T: float) -> tuple[complex, ComplexQuadraticExponent]:
    """Packet at the grating, natural units, ``s_T = T / tau0``."""
    pf, e = initial_exponent()
    return free_evolve(pf, e, NATURAL, s_T)


def slit_amplitude_natural(s_T: float, s_tau: float, center, beta: float, u):
    """Screen amplitude of one Gaussian slit, natural units (broadcasts over center and u)."""
    if not (s_T > 0 and s_tau > 0):
        raise ValueError("flight times must be positive")
    pf1, at_grating = grating_plane_packet(s_T)
    to_screen = propagator_exponent(NATURAL, u, s_T + s_tau, s_T)
    pf2 = propagator_prefactor(NATURAL, s_T + s_tau, s_T)
    total = at_grating + slit_exponent(beta, center) + to_screen
    return pf1 * pf2 * gaussian_integral(total)


def slit_amplitude(packet: GaussianPacket, slit_center, b: float, T: float, tau: float, x):
    """Amplitude at screen position ``x`` transmitted by one Gaussian slit.

    Evaluates ``int dw int dx_i K(x, T+tau; w, T) G(w - center) K(w, T; x_i, 0) phi(x_i)``
    in closed form. Result in m**-1/2.
    """
    t0 = packet.tau0
    s0 = packet.sigma0
    amp = slit_amplitude_natural(
        T / t0,
        tau / t0,
        np.asarray(slit_center, dtype=float) / s0,
        b / s0,
        np.asarray(x, dtype=float) / s0,
    )
    return amp / math.sqrt(s0)
