"""Diagnostics behind the slit-count threshold and the sigma0 sweep.

Prints the threshold estimate under several comparison scales, the
quantum/Fraunhofer pattern distance versus slit count, and the central
intensity of the sigma0 sweep under each normalization.
"""

import math
from dataclasses import replace

import numpy as np

from matterwave.cli import compute_columns, grating_time
from matterwave.comparison import dispersion_threshold, fraunhofer_scan, fringe_visibility, pattern_distance
from matterwave.diffraction import Beamline, Grating, Grid, intensity_scan
from matterwave.scenario import presets
from matterwave.wavepacket import GaussianPacket, Particle, width

C60 = Particle.from_amu(720)
PACKET = GaussianPacket(0.5e-5, C60)
BEAMLINE = Beamline(0.1, 1.25, 200.0)
GRID = Grid.symmetric(40e-6, 2001)


def threshold_table():
    g = Grating(2, 1e-7, 1.8e-8)
    T = BEAMLINE.T
    print(f"T/tau0 = {T / PACKET.tau0:.4g}, B(T)/sigma0 - 1 = {width(PACKET, T) / PACKET.sigma0 - 1:.3g}")
    for label, scale in [("2 pi", 2 * math.pi), ("1", 1.0), ("1/(2 pi)", 1 / (2 * math.pi))]:
        print(f"  scale {label:9s} N* = {dispersion_threshold(PACKET, g, BEAMLINE, scale):.6g}")
    # edge-slit dispersive phase across the grating, for comparison with N ~ 30
    s = T / PACKET.tau0
    for n in (2, 30, 100, 1000):
        u = (n - 1) * g.d / 2 / PACKET.sigma0
        print(f"  N = {n:5d}: edge dispersive phase {u * u * s / (2 * (1 + s * s)):.3e} rad")


def divergence_table():
    ref = None
    for n in (2, 5, 10, 30, 60, 100):
        g = Grating(n, 1e-7, 1.8e-8)
        q = intensity_scan(PACKET, g, BEAMLINE, GRID)
        d = pattern_distance(q, fraunhofer_scan(C60, g, BEAMLINE, 220.0, GRID))
        same_v = pattern_distance(q, fraunhofer_scan(C60, g, BEAMLINE, 200.0, GRID))
        ref = ref or d
        print(f"  N = {n:3d}: D(220 m/s) = {d:.4g} ({d / ref:6.2f} x N=2), D(200 m/s) = {same_v:.3g}")


def sweep_table():
    base = presets()["fig5-sweep"]
    for norm in ("peak-unity", "unit-area", "raw"):
        xs, cols = compute_columns(replace(base, normalization=norm))
        centre = [col[len(xs) // 2] for col in cols.values()]
        print(f"  {norm:10s} I(0) = " + ", ".join(f"{v:.6g}" for v in centre))
    for packet in base.packets():
        T = grating_time(base, packet)
        curve = intensity_scan(packet, base.grating(), base.beamline(), base.grid(), T=T)
        argmax = curve.xs[np.argmax(curve.values)]
        print(f"  sigma0 = {packet.sigma0 * 1e6:g} um: T/tau0 = {T / packet.tau0:.4g}, "
              f"peak at x = {argmax * 1e6:.3g} um, visibility {fringe_visibility(curve):.4f}")


if __name__ == "__main__":
    print("threshold estimate")
    threshold_table()
    print("quantum vs Fraunhofer distance")
    divergence_table()
    print("sigma0 sweep, fixed pre-grating width 1 um")
    sweep_table()
