"""Matter-wave diffraction through a Gaussian first slit and an N-slit grating."""

from matterwave.wavepacket import (
    CovarianceMatrix,
    EvolvedAmplitude,
    GaussianPacket,
    Particle,
    correlation_from_empirical,
    covariance,
    dispersive_phase,
    evolved_amplitude,
    tau0,
    velocity_field,
    width,
)
from matterwave.gaussian import (
    ComplexQuadraticExponent,
    gaussian_integral,
    propagator_exponent,
    slit_amplitude,
    slit_exponent,
)
from matterwave.diffraction import (
    Beamline,
    Grating,
    Grid,
    IntensityCurve,
    fixed_pregrating_width_time,
    intensity,
    intensity_scan,
    slit_centers,
)
from matterwave.comparison import (
    VelocityDistribution,
    dispersion_threshold,
    fraunhofer_intensity,
    fringe_visibility,
    pattern_distance,
    velocity_averaged_intensity,
)

__all__ = [
    "Beamline",
    "ComplexQuadraticExponent",
    "CovarianceMatrix",
    "EvolvedAmplitude",
    "GaussianPacket",
    "Grating",
    "Grid",
    "IntensityCurve",
    "Particle",
    "VelocityDistribution",
    "correlation_from_empirical",
    "covariance",
    "dispersion_threshold",
    "dispersive_phase",
    "evolved_amplitude",
    "fixed_pregrating_width_time",
    "fraunhofer_intensity",
    "fringe_visibility",
    "gaussian_integral",
    "intensity",
    "intensity_scan",
    "pattern_distance",
    "propagator_exponent",
    "slit_amplitude",
    "slit_centers",
    "slit_exponent",
    "tau0",
    "velocity_averaged_intensity",
    "velocity_field",
    "width",
]
