"""Brute-force double quadrature of the single-slit screen amplitude.

Independent of :mod:`matterwave.gaussian`: the initial packet is pushed through
the discretized free propagator onto a grating-plane grid, masked by the
aperture, then pushed through the propagator again. Intended for desk-scale
parameters (``hbar = m = 1`` style units, flight times of order ``tau0``)
where the kernels' oscillations are resolvable.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from matterwave.wavepacket import GaussianPacket

RULES = ("composite-simpson", "gauss-legendre")


class OracleDivergenceError(RuntimeError):
    pass


@dataclass(frozen=True)
class QuadratureSpec:
    """Integration window, base resolution and rule.

    Each axis gets at least ``nodes_per_axis`` nodes, more if the propagator
    phase would otherwise advance by more than ``max_phase_step`` radians
    between neighbouring nodes.
    """

    half_extent_in_widths: float = 10.0
    nodes_per_axis: int = 401
    rule: str = "composite-simpson"
    rtol: float = 1e-7
    max_doublings: int = 3
    max_phase_step: float = 2.0

    def __post_init__(self):
        if self.half_extent_in_widths < 6:
            raise ValueError("integration window must span at least 6 widths")
        if self.nodes_per_axis < 3:
            raise ValueError("need at least 3 nodes per axis")
        if self.rule not in RULES:
            raise ValueError(f"unknown quadrature rule {self.rule!r}")
        if self.max_doublings < 1:
            raise ValueError("convergence check needs at least one doubling")
        if not self.max_phase_step > 0:
            raise ValueError("max_phase_step must be positive")


def nodes_weights(lo: float, hi: float, n: int, rule: str) -> tuple[np.ndarray, np.ndarray]:
    if rule == "gauss-legendre":
        t, w = np.polynomial.legendre.leggauss(n)
        half = 0.5 * (hi - lo)
        return half * t + 0.5 * (hi + lo), half * w
    if n % 2 == 0:
        n += 1
    x = np.linspace(lo, hi, n)
    h = (hi - lo) / (n - 1)
    w = np.full(n, 2.0)
    w[1::2] = 4.0
    w[0] = w[-1] = 1.0
    return x, w * h / 3.0


def _kernel(kappa: float, z, w):
    return np.sqrt(kappa / (2j * np.pi)) * np.exp(0.5j * kappa * (z - w) ** 2)


def _resolve(base: int, kappa: float, reach: float, span: float, max_step: float) -> int:
    # phase kappa (z - w)**2 / 2 changes by at most kappa * reach * step per step
    return max(base, int(np.ceil(kappa * reach * span / max_step)) + 1)


_BLOCK = 1 << 22


def integrate_once(
    packet: GaussianPacket,
    slit_center,
    b,
    T,
    tau,
    x,
    half_extent,
    n,
    rule="composite-simpson",
    refine=1,
    max_phase_step=2.0,
):
    """One fixed-resolution evaluation of the double integral at screen points ``x``.

    ``refine`` multiplies the node count on both axes.
    """
    p = packet.particle
    s0 = packet.sigma0
    x = np.atleast_1d(np.asarray(x, dtype=float))
    k1 = p.mass / (p.hbar * T)
    k2 = p.mass / (p.hbar * tau)
    xi_lo, xi_hi = -half_extent * s0, half_extent * s0
    w_lo, w_hi = slit_center - half_extent * b, slit_center + half_extent * b

    reach_1 = max(abs(w_hi - xi_lo), abs(xi_hi - w_lo))
    reach_2 = max(abs(x.max() - w_lo), abs(w_hi - x.min()))
    n_xi = refine * _resolve(n, k1, reach_1, xi_hi - xi_lo, max_phase_step)
    n_w = refine * max(
        _resolve(n, k1, reach_1, w_hi - w_lo, max_phase_step),
        _resolve(n, k2, reach_2, w_hi - w_lo, max_phase_step),
    )

    xi, wxi = nodes_weights(xi_lo, xi_hi, n_xi, rule)
    src = (s0 * np.sqrt(np.pi)) ** -0.5 * np.exp(-(xi**2) / (2 * s0**2)) * wxi
    ww, www = nodes_weights(w_lo, w_hi, n_w, rule)

    psi = np.zeros(ww.size, dtype=complex)
    step = max(1, _BLOCK // ww.size)
    for start in range(0, xi.size, step):
        cols = slice(start, start + step)
        psi += _kernel(k1, ww[:, None], xi[None, cols]) @ src[cols]

    masked = psi * np.exp(-((ww - slit_center) ** 2) / (2 * b * b)) * www
    return _kernel(k2, x[:, None], ww[None, :]) @ masked


def _certified(evaluate, x, spec: QuadratureSpec):
    prev = evaluate(1)
    for level in range(1, spec.max_doublings + 1):
        cur = evaluate(2**level)
        change = np.max(np.abs(cur - prev) / np.abs(cur))
        if change < spec.rtol:
            return cur if np.ndim(x) else complex(cur[0])
        prev = cur
    raise OracleDivergenceError(
        f"quadrature did not converge to rtol={spec.rtol} after {spec.max_doublings} doublings "
        f"(last relative change {change:.3g})"
    )


def oracle_amplitude(packet: GaussianPacket, slit_center, b, T, tau, x, spec: QuadratureSpec = QuadratureSpec()):
    """Numerically integrated single-slit amplitude, certified by node doubling."""
    h = spec.half_extent_in_widths
    return _certified(
        lambda r: integrate_once(
            packet, slit_center, b, T, tau, x, h, spec.nodes_per_axis, spec.rule, r, spec.max_phase_step
        ),
        x,
        spec,
    )


def oracle_grating_amplitude(packet: GaussianPacket, centers, b, T, tau, x, spec: QuadratureSpec = QuadratureSpec()):
    """Coherent sum of single-slit quadratures; convergence is certified on the sum."""
    h = spec.half_extent_in_widths
    return _certified(
        lambda r: sum(
            integrate_once(packet, c, b, T, tau, x, h, spec.nodes_per_axis, spec.rule, r, spec.max_phase_step)
            for c in centers
        ),
        x,
        spec,
    )


def inner_packet(packet: GaussianPacket, T, w, half_extent=10.0, n=1601, rule="composite-simpson"):
    """``int K(w, T; x_i, 0) phi(x_i) dx_i`` by quadrature."""
    p = packet.particle
    s0 = packet.sigma0
    xi, wxi = nodes_weights(-half_extent * s0, half_extent * s0, n, rule)
    phi = (s0 * np.sqrt(np.pi)) ** -0.5 * np.exp(-(xi**2) / (2 * s0**2))
    w = np.atleast_1d(np.asarray(w, dtype=float))
    return _kernel(p.mass / (p.hbar * T), w[:, None], xi[None, :]) @ (phi * wxi)


DESK_B = (0.1, 0.25, 0.5)
DESK_D = (2.0, 4.0, 8.0)
DESK_T = (0.5, 1.0, 2.0)
DESK_X = (-5.0, -1.0, 0.0, 1.0, 5.0)


def desk_sweep(spec: QuadratureSpec = QuadratureSpec(), tau: float = 1.0):
    """Analytic vs. quadrature amplitudes on the dimensionless sweep.

    Units ``sigma0 = hbar = m = 1``; for every ``(b, d, T)`` triple and
    ``N in (1, 2, 3)`` compares the N-slit amplitude at five screen points.
    Yields ``(b, d, T, N, max_relative_error)``.
    """
    from matterwave.diffraction import Grating, slit_centers
    from matterwave.gaussian import slit_amplitude
    from matterwave.wavepacket import Particle

    packet = GaussianPacket(1.0, Particle(1.0, 1.0))
    xs = np.array(DESK_X)
    for b in DESK_B:
        for d in DESK_D:
            for T in DESK_T:
                for n in (1, 2, 3):
                    centers = slit_centers(Grating(n, d, b))
                    exact = sum(slit_amplitude(packet, c, b, T, tau, xs) for c in centers)
                    numeric = oracle_grating_amplitude(packet, centers, b, T, tau, xs, spec)
                    yield b, d, T, n, float(np.max(np.abs(numeric - exact) / np.abs(exact)))
