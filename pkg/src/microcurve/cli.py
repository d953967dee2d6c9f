"""Command-line front end.

    microcurve curve|buckling|study --config <path> [--model NAME] [--gamma G] [--out DIR]

``curve`` writes one loading curve, ``buckling`` the critical curve over the
configured mode range and ``study NAME`` a named family of curves plus a
gnuplot script. ``MICROCURVE_THREADS`` caps the worker threads (0 = all cores).
"""

from __future__ import annotations

import argparse
import math
import sys
from dataclasses import replace
from pathlib import Path

import numpy as np

from .buckling import BucklingTable, build_buckling_table
from .composite import default_workers, sweep_curve
from .config import MODEL_NAMES, RunConfig, parse_config
from .errors import ConfigError, MicrocurveError
from .materials import SOFT_MATRIX, SOFT_SHELL, GammaDistribution, PolytropicGas

CURVE_HEADER = ("p_over_mu_m", "delta_V", "buckled_fraction")
BUCKLING_HEADER = ("n", "Xhat_c", "pc_over_mu_m")


def format_value(v: float) -> str:
    """Exact zeros as ``0``, everything else with 12 significant digits."""
    v = float(v)
    if v == 0.0:
        return "0"
    if not math.isfinite(v):
        raise ValueError(f"refusing to write non-finite value {v!r}")
    return f"{v:.11e}"


def write_csv(path: Path, header, rows) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    lines = [",".join(header)]
    lines += [",".join(format_value(x) for x in row) for row in rows]
    # newline="\n" keeps output byte-identical across platforms
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")
    return path


def read_csv(path) -> tuple[list[str], np.ndarray]:
    """Re-read a file written by :func:`write_csv`."""
    with open(path, encoding="ascii") as fh:
        header = fh.readline().strip().split(",")
        data = np.loadtxt(fh, delimiter=",", ndmin=2)
    return header, data


class TableCache:
    """Buckling tables shared between the curves of one invocation."""

    def __init__(self):
        self._tables: dict[tuple, BucklingTable] = {}

    def get(self, config: RunConfig) -> BucklingTable:
        spec = config.spec
        key = (spec.shell_material, spec.matrix_material, config.n_min, config.n_max, config.samples)
        if key not in self._tables:
            self._tables[key] = build_buckling_table(spec.shell_material, spec.matrix_material,
                                                     config.n_min, config.n_max, config.samples)
        return self._tables[key]


def compute_curve(config: RunConfig, tables: TableCache | None = None, workers: int | None = None):
    tables = TableCache() if tables is None else tables
    mu = config.spec.matrix_material.shear_modulus
    return sweep_curve(config.pressure_ratios() * mu, config.spec, tables.get(config), workers)


def run_curve(config: RunConfig, out: Path | None = None, workers: int | None = None) -> Path:
    """Sweep the configured pressure grid and write ``curve.csv``."""
    curve = compute_curve(config, workers=workers)
    path = Path(out) if out is not None else config.output_dir / "curve.csv"
    return write_csv(path, CURVE_HEADER, curve.rows())


def run_buckling(config: RunConfig, out: Path | None = None) -> Path:
    """Tabulate the critical curve over the configured mode range and write ``buckling.csv``."""
    spec = config.spec
    table = build_buckling_table(spec.shell_material, spec.matrix_material,
                                 config.n_min, config.n_max, config.samples)
    mu = spec.matrix_material.shear_modulus
    rows = zip(table.n.tolist(), table.xhat_c.tolist(), (table.p_c / mu).tolist())
    path = Path(out) if out is not None else config.output_dir / "buckling.csv"
    return write_csv(path, BUCKLING_HEADER, rows)


# -- named studies -------------------------------------------------------------

def _with_spec(config: RunConfig, **changes) -> RunConfig:
    return replace(config, spec=replace(config.spec, **changes))


def _with_dist(config: RunConfig, shape=None, mean=None) -> RunConfig:
    d = config.spec.distribution
    return _with_spec(config, distribution=GammaDistribution(d.shape if shape is None else shape,
                                                             d.mean if mean is None else mean))


def _models(config: RunConfig):
    return [(name, config.with_model(name)) for name in MODEL_NAMES]


def _study_fig6(config):
    return _models(config)


def _study_fig7(config):
    if config.extend_to is None:
        config = replace(config, extend_to=25.0)
    return _models(config)


def _study_fig8(config):
    return [
        ("reference", config),
        ("volume_fraction_0.1", _with_spec(config, volume_fraction=0.1)),
        ("polytropic_gas", _with_spec(config, gas_law=PolytropicGas())),
        ("soft_shell", _with_spec(config, shell_material=SOFT_SHELL)),
        ("soft_matrix", _with_spec(config, matrix_material=SOFT_MATRIX)),
    ]


def _study_fig9(config):
    runs = [(f"mean_{m:g}", _with_dist(config, shape=8.0, mean=m)) for m in (0.01, 0.02, 0.005)]
    runs += [(f"shape_{k:g}", _with_dist(config, shape=k, mean=0.01)) for k in (8.0, 15.0, 30.0)]
    return runs


def _study_fig10(config):
    return [(f"shape_{k:g}" if math.isfinite(k) else "single_ratio", _with_dist(config, shape=k, mean=0.01))
            for k in (8.0, 50.0, math.inf)]


STUDIES = {
    "fig6": (_study_fig6, "matrix models on the reference composite"),
    "fig7": (_study_fig7, "matrix models up to large pressure"),
    "fig8": (_study_fig8, "volume fraction, gas law, softer shell, softer matrix"),
    "fig9": (_study_fig9, "mean shell ratio and Gamma shape"),
    "fig10": (_study_fig10, "Gamma shape towards a single shell ratio"),
}


def gnuplot_script(study: str, labels, logscale: bool = False) -> str:
    lines = [
        f"# microcurve study {study}: run `gnuplot {study}.gp` in this directory",
        "set datafile separator ','",
        "set terminal pngcairo size 900,600",
        f"set output '{study}.png'",
        "set xlabel 'p / mu_m'",
        "set ylabel 'relative volume change'",
        "set key left top",
    ]
    if logscale:
        lines.append("set logscale x")
    plots = [f"'{label}.csv' using 1:2 skip 1 with lines title '{label}'" for label in labels]
    lines.append("plot " + ", \\\n     ".join(plots))
    return "\n".join(lines) + "\n"


def run_study(config: RunConfig, study: str, out: Path | None = None,
              workers: int | None = None) -> list[Path]:
    """Compute every curve of ``study``; write one CSV each plus ``<study>.gp``."""
    if study not in STUDIES:
        raise ConfigError(f"unknown study {study!r}; expected one of {', '.join(STUDIES)}")
    runs = STUDIES[study][0](config)
    folder = (Path(out) if out is not None else config.output_dir) / study
    tables = TableCache()
    paths = []
    for label, cfg in runs:
        curve = compute_curve(cfg, tables, workers)
        paths.append(write_csv(folder / f"{label}.csv", CURVE_HEADER, curve.rows()))
    script = folder / f"{study}.gp"
    with open(script, "w", encoding="ascii", newline="\n") as fh:
        fh.write(gnuplot_script(study, [label for label, _ in runs], logscale=study == "fig7"))
    paths.append(script)
    return paths


# -- entry point ---------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="microcurve",
        description="Pressure vs relative volume change of an elastomer filled with thin shells.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", required=True, help="path to a key = value configuration file")
    common.add_argument("--model", choices=MODEL_NAMES, help="override model.name")
    common.add_argument("--gamma", type=float, help="override model.gamma")
    common.add_argument("--out", help="override output.dir")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("curve", parents=[common], help="write the loading curve")
    sub.add_parser("buckling", parents=[common], help="write the critical buckling curve")
    p = sub.add_parser("study", parents=[common], help="write a named parameter study",
                       epilog="studies: " + "; ".join(f"{k}: {v[1]}" for k, v in STUDIES.items()))
    p.add_argument("study", choices=sorted(STUDIES))
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        try:
            workers = default_workers()
        except ValueError as exc:
            raise ConfigError(f"MICROCURVE_THREADS: {exc}") from None
        config = parse_config(args.config).with_model(args.model, args.gamma)
        if args.out is not None:
            config = replace(config, output_dir=Path(args.out))
        if args.command == "curve":
            paths = [run_curve(config, workers=workers)]
        elif args.command == "buckling":
            paths = [run_buckling(config)]
        else:
            paths = run_study(config, args.study, workers=workers)
    except ConfigError as exc:
        print(f"microcurve: configuration error: {exc}", file=sys.stderr)
        return 2
    except (MicrocurveError, ValueError, OSError) as exc:
        print(f"microcurve: error: {exc}", file=sys.stderr)
        return 1
    for path in paths:
        print(path)
    return 0


if __name__ == "__main__":
    sys.exit(main())
