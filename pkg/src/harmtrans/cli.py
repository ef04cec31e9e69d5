"""Experiment front end.

    harmtrans <command> --config <path> [--workers K] [--out PATH]

Commands: transmission-sweep, capacity, decompose, validate, probe.
Configuration is a single JSON file (schema in the README); identical
config + seed reproduce byte-identical output.  Logs go to stderr, data
to files or stdout.  Exit codes: 0 success, 1 usage/config error,
2 numerical failure.
"""

from __future__ import annotations

import argparse
import concurrent.futures
import json
import logging
import math
import sys
from dataclasses import dataclass

import numpy as np

from . import bie, capacity, curves, series, transmission

log = logging.getLogger("harmtrans")

COMMANDS = ("transmission-sweep", "capacity", "decompose", "validate", "probe")


class ConfigError(ValueError):
    pass


def fmt(x) -> str:
    """Serialize a number with 17 significant digits."""
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return f"{float(x):.17g}"


@dataclass(frozen=True)
class ExperimentConfig:
    command: str
    seed: int
    output: str | None
    payload: dict

    @staticmethod
    def load(path: str, command: str) -> "ExperimentConfig":
        try:
            with open(path, "r", encoding="utf-8") as fh:
                data = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from exc
        if not isinstance(data, dict):
            raise ConfigError("config must be a JSON object")
        declared = data.get("command")
        if declared is not None and declared != command:
            raise ConfigError(f"config declares command {declared!r} but "
                              f"{command!r} was invoked")
        seed = int(data.get("seed", 0))
        return ExperimentConfig(command, seed, data.get("output"), data)


def _write_lines(lines, out_path):
    text = "\n".join(lines) + "\n"
    if out_path is None:
        sys.stdout.write(text)
    else:
        with open(out_path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        log.info("wrote %s", out_path)


def _curve_list(cfg_sweep: dict):
    specs = []
    if "families" in cfg_sweep:
        for fam in cfg_sweep["families"]:
            name = fam["name"]
            for p in fam["params"]:
                specs.append({"family": name, "param": float(p)})
    specs.extend(cfg_sweep.get("curves", []))
    if not specs:
        raise ConfigError("sweep config lists no curves")
    return specs


def _sweep_task(args):
    spec, N, n, direction = args
    curve = curves.curve_from_dict(spec)
    rep = transmission.transmission_norm(curve, N, n, direction)
    tpc = curves.three_point_constant(curve)
    return (curve.family_tag, curve.distortion_param, rep, tpc)


def run_transmission_sweep(cfg: ExperimentConfig, workers: int):
    sweep = cfg.payload.get("sweep", {})
    N = int(sweep.get("modes", 16))
    n = int(sweep.get("nodes", 8 * N))
    direction = sweep.get("direction", transmission.INT_TO_EXT)
    if n < 8 * N:
        raise ConfigError("sweep requires nodes >= 8*modes")
    tasks = [(spec, N, n, direction) for spec in _curve_list(sweep)]
    if workers > 1:
        with concurrent.futures.ProcessPoolExecutor(max_workers=workers) as ex:
            results = list(ex.map(_sweep_task, tasks))
    else:
        results = [_sweep_task(t) for t in tasks]
    results.sort(key=lambda r: (r[0], r[1]))
    lines = ["family,param,N,n,norm,converged,three_point"]
    for fam, param, rep, tpc in results:
        lines.append(",".join([fam, fmt(param), str(rep.N), str(rep.n),
                               fmt(rep.norm_estimate), fmt(rep.converged),
                               fmt(tpc)]))
    return lines


def run_capacity(cfg: ExperimentConfig, workers: int):
    arcs = cfg.payload.get("arcs")
    if arcs is None:
        raise ConfigError("capacity config needs 'arcs': [[start, end], ...]")
    bset = capacity.BoundarySet(tuple((float(a), float(b)) for a, b in arcs))
    n_values = [int(v) for v in cfg.payload.get("n_values", [10, 20, 40, 80])]
    cands = int(cfg.payload.get("candidates", 4096))
    lines = ["n,d_n"]
    for n in sorted(n_values):
        d = capacity.fekete_capacity(bset, n, candidates=cands)
        lines.append(f"{n},{fmt(d)}")
    return lines


def _series_from_config(data: dict, r_inner: float) -> series.HarmonicSeries:
    a = {int(k): complex(re, im) for k, re, im in data.get("a", [])}
    b = {int(k): complex(re, im) for k, re, im in data.get("b", [])}
    c = complex(*data.get("log_coeff", (0.0, 0.0)))
    return series.HarmonicSeries(series.Domain.annulus(r_inner, 1.0), a, b, c)


def _random_annulus_series(rng, r_inner: float, max_index: int):
    dom = series.Domain.annulus(r_inner, 1.0)
    idx = range(-max_index, max_index + 1)
    a = {k: complex(rng.standard_normal(), rng.standard_normal()) for k in idx}
    b = {k: complex(rng.standard_normal(), rng.standard_normal()) for k in idx}
    c = complex(rng.standard_normal(), rng.standard_normal())
    return series.HarmonicSeries(dom, a, b, c)


def _recomposition_error(h, rng, samples: int) -> float:
    h1, h2, c = series.annulus_decompose(h)
    r_in, r_out = h.domain.r_inner, h.domain.r_outer
    rr = r_in + (r_out - r_in) * (0.05 + 0.9 * rng.random(samples))
    th = 2 * math.pi * rng.random(samples)
    z = rr * np.exp(1j * th)
    recomposed = (series.evaluate(h1, z) + series.evaluate(h2, z)
                  - c * np.log(np.abs(z)))
    return float(np.abs(recomposed - series.evaluate(h, z)).max())


def run_decompose(cfg: ExperimentConfig, workers: int):
    rng = np.random.default_rng(cfg.seed)
    r_inner = float(cfg.payload.get("r_inner", 0.5))
    samples = int(cfg.payload.get("samples", 100))
    lines = ["quantity,value"]
    if "series" in cfg.payload:
        h = _series_from_config(cfg.payload["series"], r_inner)
        err = _recomposition_error(h, rng, samples)
        lines.append(f"series_count,1")
        lines.append(f"max_recomposition_error,{fmt(err)}")
    else:
        count = int(cfg.payload.get("count", 100))
        max_index = int(cfg.payload.get("max_index", 8))
        worst = 0.0
        for _ in range(count):
            h = _random_annulus_series(rng, r_inner, max_index)
            worst = max(worst, _recomposition_error(h, rng, samples))
        lines.append(f"series_count,{count}")
        lines.append(f"max_recomposition_error,{fmt(worst)}")
    return lines


def run_probe(cfg: ExperimentConfig, workers: int):
    curve = curves.curve_from_dict(cfg.payload.get("curve", {"family": "ellipse",
                                                             "param": 0.5}))
    n = int(cfg.payload.get("nodes", 256))
    n_probes = int(cfg.payload.get("probes", 64))
    t = 2 * math.pi * np.arange(n) / n
    data_spec = cfg.payload.get("data", "re_boundary")
    if data_spec == "re_boundary":
        h = np.real(curve.eval(t))
    else:
        h = np.zeros(n)
        for k, re, im in data_spec["modes"]:
            h = h + np.real(complex(re, im) * np.exp(1j * int(k) * t))
    report = transmission.boundary_agreement(curve, h, n, n_probes)
    rt = transmission.round_trip_error(curve, h, n)
    lines = ["quantity,value",
             f"probes,{n_probes}",
             f"fraction_converged,{fmt(report.fraction_converged)}",
             f"max_discrepancy,{fmt(report.max_discrepancy)}",
             f"round_trip_error,{fmt(rt)}"]
    return lines


# ---------------------------------------------------------------------------
# validate: the oracle/invariant battery
# ---------------------------------------------------------------------------

def _validate_checks(seed: int):
    rng = np.random.default_rng(seed)
    pi = math.pi

    def circle_area():
        c = curves.curve_family("circle", 0.0)
        return abs(curves.enclosed_area(c) - pi), 1e-12

    def ellipse_area():
        c = curves.curve_family("ellipse", 0.5)
        return abs(curves.enclosed_area(c) - pi / 2), 1e-12

    def derivative_fd():
        worst = 0.0
        for name, p in (("ellipse", 0.5), ("star", 0.1), ("cusp", 0.5)):
            c = curves.curve_family(name, p)
            t = rng.random(16) * 2 * pi
            fd = (c.eval(t + 1e-5) - c.eval(t - 1e-5)) / 2e-5
            worst = max(worst, np.abs(fd - c.derivative(t)).max()
                        / np.abs(c.derivative(t)).max())
        return worst, 1e-8

    def three_point_circle():
        c = curves.curve_family("circle", 0.0)
        return abs(curves.three_point_constant(c, 256) - pi / 2), 1e-3

    def greens_symmetry():
        worst = 0.0
        for _ in range(50):
            p = 0.9 * math.sqrt(rng.random()) * np.exp(2j * pi * rng.random())
            z = 0.9 * math.sqrt(rng.random()) * np.exp(2j * pi * rng.random())
            if abs(z - p) < 1e-3:
                continue
            worst = max(worst, abs(series.greens_disk(p, z)
                                   - series.greens_disk(z, p)))
        return worst, 1e-13

    def coperiod():
        worst = max(abs(series.greens_coperiod(p) + 2 * pi)
                    for p in (0.0, 0.3, 0.5j))
        return worst, 1e-10

    def collar_chart_boundary():
        chart = series.canonical_collar_chart(0.5)
        th = np.linspace(0, 2 * pi, 181)
        return abs(np.abs(chart.map(np.exp(1j * th))) - 1).max(), 1e-14

    def collar_energy():
        return abs(series.collar_energy_greens(0.0, math.exp(-1.0))
                   - 2 * pi), 1e-12

    def decompose_roundtrip():
        worst = 0.0
        for _ in range(20):
            h = _random_annulus_series(rng, 0.5, 6)
            worst = max(worst, _recomposition_error(h, rng, 50))
        return worst, 1e-13

    def series_orthogonality():
        dom = series.Domain.disk(1.0)
        f = series.HarmonicSeries(dom, {1: 1.0}, {})
        g = series.HarmonicSeries(dom, {}, {1: 1.0})
        return abs(series.dirichlet_inner(f, g)), 1e-15

    def disk_energy_modes():
        dom = series.Domain.disk(1.0)
        worst = max(abs(series.energy(series.HarmonicSeries(dom, {k: 1.0}, {}))
                        - k * pi) for k in range(1, 9))
        return worst, 1e-12

    def jump_constant():
        sys_ = bie.build_system(curves.curve_family("circle", 0.0), 64)
        return np.abs(sys_.K @ np.ones(64) + 0.5).max(), 1e-12

    def single_layer_spectrum():
        sys_ = bie.build_system(curves.curve_family("circle", 0.0), 64)
        worst = 0.0
        for k in (1, 2, 5):
            ck = np.cos(k * sys_.t)
            worst = max(worst, np.abs(sys_.S @ ck - ck / (2 * k)).max())
        return worst, 1e-10

    def unit_density_jump():
        sys_ = bie.build_system(curves.curve_family("ellipse", 0.5), 128)
        mu = np.ones(128)
        inside = bie.evaluate_potential(sys_, mu, 0.1 + 0.05j, bie.INTERIOR)
        outside = bie.evaluate_potential(sys_, mu, 2.5 + 1j, bie.EXTERIOR)
        return max(abs(inside + 1.0), abs(outside)), 1e-10

    def bie_energy_modes():
        sys_ = bie.build_system(curves.curve_family("circle", 0.0), 256)
        worst = max(abs(bie.dirichlet_energy(sys_, np.cos(k * sys_.t),
                                             bie.INTERIOR) - k * pi)
                    for k in range(1, 9))
        return worst, 1e-9

    def ellipse_energy_area():
        c = curves.curve_family("ellipse", 0.5)
        sys_ = bie.build_system(c, 256)
        h = np.real(sys_.nodes)
        return abs(bie.dirichlet_energy(sys_, h, bie.INTERIOR) - pi / 2), 1e-8

    def series_vs_bie():
        sys_ = bie.build_system(curves.curve_family("circle", 0.0), 256)
        dom = series.Domain.disk(1.0)
        worst = 0.0
        for k in (1, 3, 6):
            h = np.cos(k * sys_.t)
            e_b = bie.dirichlet_energy(sys_, h, bie.INTERIOR)
            f = series.HarmonicSeries(dom, {k: 0.5}, {k: 0.5})
            e_s = 2.0 * series.energy(f)       # gradient over series = 2
            worst = max(worst, abs(e_b - e_s))
        return worst, 1e-9

    def capacity_circle():
        full = capacity.BoundarySet(((0.0, 2 * pi),))
        return abs(capacity.fekete_capacity(full, 64) - 1.0), 1e-3

    def capacity_arc():
        arc = capacity.BoundarySet(((0.0, pi),))
        return abs(capacity.fekete_capacity(arc, 200)
                   - math.sin(pi / 4)), 1e-3

    def capacity_monotone():
        worst = -math.inf
        for _ in range(5):
            a = rng.uniform(0.1, 1.0)
            b = a + rng.uniform(0.3, 1.5)
            bset = capacity.BoundarySet(((a, b), (b + 0.3, b + 1.0)))
            vals = [capacity.fekete_capacity(bset, m) for m in (10, 20, 40, 80)]
            worst = max(worst, float(np.diff(vals).max()))
        return max(worst, 0.0), 1e-4

    def transmission_circle():
        c = curves.curve_family("circle", 0.0)
        worst = 0.0
        for direction in transmission.DIRECTIONS:
            rep = transmission.transmission_norm(c, 16, 256, direction)
            worst = max(worst, abs(rep.norm_estimate - 1.0))
        return worst, 1e-8

    def agreement_circle():
        c = curves.curve_family("circle", 0.0)
        t = 2 * pi * np.arange(128) / 128
        rep = transmission.boundary_agreement(c, np.cos(t), 128, 16)
        penalty = 0.0 if rep.fraction_converged == 1.0 else 1.0
        return rep.max_discrepancy + penalty, 1e-8

    return [
        ("curve.circle_area", circle_area),
        ("curve.ellipse_area", ellipse_area),
        ("curve.derivative_vs_fd", derivative_fd),
        ("curve.three_point_circle", three_point_circle),
        ("series.greens_symmetry", greens_symmetry),
        ("series.coperiod_minus_2pi", coperiod),
        ("series.collar_chart_modulus", collar_chart_boundary),
        ("series.collar_energy_2pi", collar_energy),
        ("series.decompose_roundtrip", decompose_roundtrip),
        ("series.holo_antiholo_orthogonal", series_orthogonality),
        ("series.disk_mode_energies", disk_energy_modes),
        ("bie.jump_constant", jump_constant),
        ("bie.single_layer_spectrum", single_layer_spectrum),
        ("bie.unit_density_jump", unit_density_jump),
        ("bie.circle_mode_energies", bie_energy_modes),
        ("bie.ellipse_energy_is_area", ellipse_energy_area),
        ("bie.series_vs_bie_energy", series_vs_bie),
        ("capacity.full_circle", capacity_circle),
        ("capacity.half_circle_arc", capacity_arc),
        ("capacity.monotone_in_n", capacity_monotone),
        ("transmission.circle_norm_one", transmission_circle),
        ("transmission.circle_agreement", agreement_circle),
    ]


def run_validate(cfg: ExperimentConfig, workers: int):
    checks = _validate_checks(cfg.seed)
    lines = ["check,observed,tolerance,status"]
    failures = 0
    for name, fn in checks:
        try:
            observed, tol = fn()
            ok = observed < tol
        except Exception as exc:   # a thrown oracle is a failure
            log.error("check %s raised: %s", name, exc)
            observed, tol, ok = math.inf, math.nan, False
        failures += not ok
        lines.append(f"{name},{fmt(observed)},{fmt(tol)},"
                     f"{'pass' if ok else 'FAIL'}")
    lines.append(f"summary,{len(checks) - failures},{len(checks)},"
                 f"{'pass' if failures == 0 else 'FAIL'}")
    return lines, failures


RUNNERS = {
    "transmission-sweep": run_transmission_sweep,
    "capacity": run_capacity,
    "decompose": run_decompose,
    "probe": run_probe,
}


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="harmtrans",
        description="harmonic transmission experiments on Jordan curves")
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--config", required=True, help="JSON config file")
    parser.add_argument("--workers", type=int, default=1)
    parser.add_argument("--out", default=None,
                        help="output path (overrides config 'output')")
    args = parser.parse_args(argv)
    logging.basicConfig(stream=sys.stderr, level=logging.INFO,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        cfg = ExperimentConfig.load(args.config, args.command)
    except ConfigError as exc:
        log.error("%s", exc)
        return 1
    out_path = args.out if args.out is not None else cfg.output
    try:
        if args.command == "validate":
            lines, failures = run_validate(cfg, args.workers)
            _write_lines(lines, out_path)
            return 0 if failures == 0 else 2
        lines = RUNNERS[args.command](cfg, args.workers)
    except ConfigError as exc:
        log.error("%s", exc)
        return 1
    except (bie.SolverError, bie.NearBoundaryError, curves.CurveError,
            series.SeriesError, capacity.CapacityError) as exc:
        log.error("numerical failure: %s", exc)
        return 2
    _write_lines(lines, out_path)
    return 0


if __name__ == "__main__":
    sys.exit(main())
