import numpy as np
import pytest

from matterwave.gaussian import slit_amplitude
from matterwave.oracle import (
    DESK_B,
    DESK_D,
    DESK_T,
    OracleDivergenceError,
    QuadratureSpec,
    desk_sweep,
    inner_packet,
    integrate_once,
    oracle_amplitude,
    oracle_grating_amplitude,
)
from matterwave.wavepacket import GaussianPacket, Particle, evolved_amplitude

UNIT_PACKET = GaussianPacket(1.0, Particle(1.0, 1.0))


@pytest.mark.parametrize(
    "kwargs",
    [dict(half_extent_in_widths=5.0), dict(nodes_per_axis=1), dict(rule="trapezoid"), dict(max_doublings=0)],
)
def test_spec_validation(kwargs):
    with pytest.raises(ValueError):
        QuadratureSpec(**kwargs)


def test_centered_slit_at_origin_is_finite_and_nonzero():
    amp = oracle_amplitude(UNIT_PACKET, 0.0, 0.25, 1.0, 1.0, 0.0)
    assert np.isfinite(amp.real) and np.isfinite(amp.imag)
    assert abs(amp) > 0


@pytest.mark.parametrize("T", [0.5, 1.0, 2.0])
def test_inner_integral_reproduces_evolved_packet(T):
    w = np.linspace(-3, 3, 7)
    psi = inner_packet(UNIT_PACKET, T, w)
    ev = evolved_amplitude(UNIT_PACKET, w, T)
    assert np.allclose(np.abs(psi), ev.modulus, rtol=1e-8, atol=0)


@pytest.mark.parametrize("rule", ["composite-simpson", "gauss-legendre"])
def test_rules_agree_with_closed_form(rule):
    xs = np.array([-3.0, 0.0, 2.0])
    exact = slit_amplitude(UNIT_PACKET, 1.0, 0.25, 1.0, 1.0, xs)
    numeric = oracle_amplitude(UNIT_PACKET, 1.0, 0.25, 1.0, 1.0, xs, QuadratureSpec(rule=rule))
    assert np.max(np.abs(numeric - exact) / np.abs(exact)) < 1e-6


def test_window_adequacy_is_binding():
    xs = np.array([0.0, 1.0, 5.0])
    args = (UNIT_PACKET, 2.0, 0.25, 1.0, 1.0, xs)
    wide = integrate_once(*args, half_extent=10.0, n=801)
    narrow = integrate_once(*args, half_extent=3.0, n=801)
    assert np.max(np.abs(narrow - wide) / np.abs(wide)) > 1e-6


def test_divergence_is_reported():
    with pytest.raises(OracleDivergenceError, match="did not converge"):
        oracle_amplitude(UNIT_PACKET, 0.0, 0.25, 1.0, 1.0, 0.0, QuadratureSpec(rtol=1e-18, max_doublings=1))


def test_desk_sweep_covers_all_triples():
    rows = list(desk_sweep())
    assert len(rows) == len(DESK_B) * len(DESK_D) * len(DESK_T) * 3
    assert max(r[-1] for r in rows) < 1e-6


def test_grating_sum_for_three_slits():
    centers = [-4.0, 0.0, 4.0]
    xs = np.array([-5.0, -1.0, 0.0, 1.0, 5.0])
    exact = sum(slit_amplitude(UNIT_PACKET, c, 0.25, 1.0, 1.0, xs) for c in centers)
    numeric = oracle_grating_amplitude(UNIT_PACKET, centers, 0.25, 1.0, 1.0, xs)
    assert np.max(np.abs(numeric - exact) / np.abs(exact)) < 1e-6
