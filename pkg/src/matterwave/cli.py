"""Command-line entry point: run a scenario, write CSV and a metadata sidecar.

Exit codes: 0 success, 2 configuration error, 3 computation error, 4 I/O error.
"""

from __future__ import annotations

import argparse
import json
import logging
import math
import sys
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from matterwave.comparison import dispersion_threshold, fraunhofer_scan, velocity_averaged_intensity
from matterwave.diffraction import fixed_pregrating_width_time, intensity_scan
from matterwave.oracle import desk_sweep
from matterwave.scenario import ConfigError, Scenario, parse_config, presets, to_config_text
from matterwave.wavepacket import covariance

log = logging.getLogger("matterwave")

EXIT_CONFIG, EXIT_COMPUTE, EXIT_IO = 2, 3, 4
ORACLE_TOLERANCE = 1e-6


@dataclass
class RunReport:
    scenario: str
    parameters: dict
    derived: list[dict]
    csv_path: str | None = None
    report_path: str | None = None
    oracle_max_rel_error: float | None = None
    config: str = ""
    columns: list[str] = field(default_factory=list)

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2, sort_keys=True) + "\n"

    def to_text(self) -> str:
        out = [f"scenario: {self.scenario}"]
        for k, v in self.parameters.items():
            out.append(f"  {k} = {v}")
        for d in self.derived:
            out.append(f"sigma0 = {d['sigma0_m']:.6g} m")
            for k, v in d.items():
                if k == "sigma0_m":
                    continue
                if isinstance(v, dict):
                    v = ", ".join(f"{kk}={vv:.6g}" for kk, vv in v.items())
                elif isinstance(v, float):
                    v = f"{v:.9g}"
                out.append(f"  {k}: {v}")
        if self.oracle_max_rel_error is not None:
            out.append(f"oracle max relative error: {self.oracle_max_rel_error:.3g}")
        out.append(f"columns: {', '.join(self.columns)}")
        if self.csv_path:
            out.append(f"csv: {self.csv_path}")
        return "\n".join(out) + "\n"


def grating_time(scenario: Scenario, packet) -> float:
    """First-stage flight time: ``L / v``, or the time to reach the fixed pre-grating width."""
    if scenario.mode == "fixed-pregrating-width":
        W = scenario.pregrating_width_um * 1e-6
        if W > packet.sigma0:
            return fixed_pregrating_width_time(packet, W)
    return scenario.beamline().T


def derived_quantities(scenario: Scenario) -> list[dict]:
    grating = scenario.grating()
    beamline = scenario.beamline()
    particle = scenario.particle()
    rows = []
    for packet in scenario.packets():
        T = grating_time(scenario, packet)
        cov = covariance(packet, T)
        threshold = dispersion_threshold(packet, grating, beamline, scenario.threshold_scale, T=T)
        rows.append(
            {
                "sigma0_m": packet.sigma0,
                "tau0_s": packet.tau0,
                "T_s": T,
                "tau_s": beamline.tau,
                "T_over_tau0": T / packet.tau0,
                "lambda_dB_m": particle.de_broglie_wavelength(beamline.v),
                "threshold_N": None if math.isinf(threshold) else threshold,
                "covariance_at_grating": {
                    "var_x_m2": cov.var_x,
                    "var_p_kg2m2_s2": cov.var_p,
                    "cov_xp_Js": cov.cov_xp,
                    "det_over_bound": cov.determinant() / (particle.hbar**2 / 4),
                },
            }
        )
    return rows


def compute_columns(scenario: Scenario) -> tuple[np.ndarray, dict[str, np.ndarray]]:
    grid = scenario.grid()
    grating = scenario.grating()
    beamline = scenario.beamline()
    norm = scenario.normalization
    packets = scenario.packets()
    sweep = len(packets) > 1

    def label(base, packet):
        return f"{base}[sigma0_um={packet.sigma0 * 1e6:g}]" if sweep else base

    cols: dict[str, np.ndarray] = {}
    if "quantum" in scenario.outputs:
        for packet in packets:
            T = grating_time(scenario, packet)
            cols[label("I_quantum", packet)] = intensity_scan(packet, grating, beamline, grid, norm, T=T).values
    if "velocity-averaged" in scenario.outputs:
        dist = scenario.velocity_distribution()
        for packet in packets:
            curve = velocity_averaged_intensity(packet, grating, beamline, dist, grid, norm)
            cols[label("I_velocity_avg", packet)] = curve.values
    if "fraunhofer" in scenario.outputs:
        curve = fraunhofer_scan(scenario.particle(), grating, beamline, scenario.fraunhofer_velocity, grid, norm)
        cols["I_fraunhofer"] = curve.values
    return grid.points(), cols


def format_csv(xs: np.ndarray, cols: dict[str, np.ndarray]) -> str:
    lines = [",".join(["x_um", *cols])]
    data = [xs * 1e6, *cols.values()]
    for row in zip(*data):
        lines.append(",".join(f"{v:.9g}" for v in row))
    return "\n".join(lines) + "\n"


def run(scenario: Scenario, out_dir: Path | str = ".", report_format: str = "json", verify_oracle=False) -> RunReport:
    if scenario.mode == "fixed-pregrating-width" and "velocity-averaged" in scenario.outputs:
        raise ConfigError("velocity averaging is only defined in geometric-T mode")
    out_dir = Path(out_dir)
    xs, cols = compute_columns(scenario)
    beamline = scenario.beamline()
    report = RunReport(
        scenario=scenario.name,
        parameters={
            "mass_kg": scenario.particle().mass,
            "hbar_Js": scenario.particle().hbar,
            "n_slits": scenario.n_slits,
            "d_m": scenario.grating().d,
            "b_m": scenario.grating().b,
            "x0_m": scenario.grating().x0,
            "L_m": beamline.L,
            "l_m": beamline.l,
            "v_mps": beamline.v,
            "fraunhofer_v_mps": scenario.fraunhofer_velocity,
            "mode": scenario.mode,
            "normalization": scenario.normalization,
            "grid_points": scenario.grid_points,
            "grid_halfwidth_m": scenario.grid().x_max,
        },
        derived=derived_quantities(scenario),
        columns=["x_um", *cols],
    )
    if verify_oracle:
        report.oracle_max_rel_error = max(err for *_, err in desk_sweep())

    csv_path = out_dir / f"{scenario.name}.csv"
    report_path = out_dir / f"{scenario.name}.report.{'json' if report_format == 'json' else 'txt'}"
    report.csv_path = str(csv_path)
    report.report_path = str(report_path)
    report.config = to_config_text(scenario)
    out_dir.mkdir(parents=True, exist_ok=True)
    csv_path.write_text(format_csv(xs, cols))
    report_path.write_text(report.to_json() if report_format == "json" else report.to_text())
    return report


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="matterwave", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    r = sub.add_parser("run", help="compute the intensity curves of a scenario")
    r.add_argument("config", nargs="?", help="key = value configuration file")
    r.add_argument("--out", default=".", help="output directory (default: current)")
    r.add_argument("--preset", choices=sorted(presets()), help="start from a named preset")
    r.add_argument("--verify-oracle", action="store_true", help="check the analytic engine against quadrature")
    r.add_argument("--report", choices=("text", "json"), default="json", help="sidecar format")

    sub.add_parser("presets", help="list the named scenarios")
    return parser


def _load(args) -> Scenario:
    text = ""
    if args.config:
        try:
            text = Path(args.config).read_text(encoding="utf-8")
        except OSError as exc:
            raise OSError(f"cannot read config {args.config}: {exc.strerror}") from exc
    if args.preset and "scenario" not in {l.split("=", 1)[0].strip() for l in text.splitlines() if "=" in l}:
        text = f"scenario = {args.preset}\n" + text
    return parse_config(text)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    if args.command == "presets":
        for name, s in presets().items():
            print(f"{name}: N={s.n_slits}, sigma0_um={', '.join(f'{v:g}' for v in s.sigma0_um)}, mode={s.mode}")
        return 0
    try:
        scenario = _load(args)
        report = run(scenario, args.out, args.report, args.verify_oracle)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (ValueError, ArithmeticError, RuntimeError) as exc:
        print(f"computation error: {exc}", file=sys.stderr)
        return EXIT_COMPUTE
    if args.report == "text":
        sys.stdout.write(report.to_text())
    else:
        log.info("wrote %s and %s", report.csv_path, report.report_path)
    if report.oracle_max_rel_error is not None:
        ok = report.oracle_max_rel_error < ORACLE_TOLERANCE
        print(f"oracle max relative error {report.oracle_max_rel_error:.3g} ({'ok' if ok else 'FAILED'})")
        if not ok:
            return EXIT_COMPUTE
    return 0


if __name__ == "__main__":
    sys.exit(main())
