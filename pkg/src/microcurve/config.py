"""Run configuration: a flat ``key = value`` text file with dotted keys.

Blank lines and ``#`` comments are ignored. Every key is optional; omitted
keys take the reference values below. Unknown keys, repeated keys, empty
values and out-of-range values are errors naming the key and line.

Example::

    # shell and matrix moduli, Pa
    shell.kappa_pa = 2.1e9
    shell.mu_pa = 1.26e9
    matrix.kappa_pa = 4e9
    matrix.mu_pa = 1.2e6
    composite.volume_fraction = 0.05
    distribution.shape = 8          # or "inf" for a single shell ratio
    distribution.mean = 0.01
    model.name = mooney-rivlin      # neo-hookean | mooney-rivlin | horgan-murphy | linear
    model.gamma = 0.0555555555556
    gas.law = constant              # constant | polytropic
    pressure.max_ratio = 0.8
    pressure.points = 200
    output.dir = out
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from pathlib import Path

from .composite import pressure_grid
from .errors import ConfigError
from .materials import (P_ATM, REFERENCE_MATRIX, REFERENCE_SHELL, CompositeSpec, ConstantGas,
                        ElasticMaterial, GammaDistribution, HorganMurphy, LinearElastic,
                        MooneyRivlin, NeoHookean, PolytropicGas)

MODEL_NAMES = ("neo-hookean", "mooney-rivlin", "horgan-murphy", "linear")
GAS_LAWS = ("constant", "polytropic")


def _positive_float(text):
    v = float(text)
    if not (math.isfinite(v) and v > 0.0):
        raise ValueError("must be a positive finite number")
    return v


def _shape(text):
    if text.strip().lower() in ("inf", "infinity", "delta"):
        return math.inf
    return _positive_float(text)


def _count(text):
    v = int(text)
    if v < 2:
        raise ValueError("must be an integer of at least 2")
    return v


def _optional_ratio(text):
    if text.strip().lower() in ("none", "off"):
        return None
    return _positive_float(text)


def _optional_epsilon(text):
    if text.strip().lower() in ("none", "auto"):
        return None
    return float(text)


def _choice(options):
    def parse(text):
        if text not in options:
            raise ValueError(f"must be one of {', '.join(options)}")
        return text
    return parse


# key -> (parser, default); defaults reproduce the reference composite
KEYS = {
    "shell.kappa_pa": (_positive_float, REFERENCE_SHELL.bulk_modulus),
    "shell.mu_pa": (_positive_float, REFERENCE_SHELL.shear_modulus),
    "matrix.kappa_pa": (_positive_float, REFERENCE_MATRIX.bulk_modulus),
    "matrix.mu_pa": (_positive_float, REFERENCE_MATRIX.shear_modulus),
    "composite.volume_fraction": (float, 0.05),
    "distribution.shape": (_shape, 8.0),
    "distribution.mean": (_positive_float, 0.01),
    "model.name": (_choice(MODEL_NAMES), "mooney-rivlin"),
    "model.gamma": (float, 1.0 / 18.0),
    "model.epsilon": (_optional_epsilon, None),
    "model.c1_pressure": (_choice(("far-field", "net")), "far-field"),
    "gas.law": (_choice(GAS_LAWS), "constant"),
    "gas.eta": (_positive_float, 1.4),
    "gas.p_atm_pa": (_positive_float, P_ATM),
    "buckling.n_min": (float, 2.0),
    "buckling.n_max": (float, 1e4),
    "buckling.samples": (_count, 1024),
    "pressure.max_ratio": (_positive_float, 0.8),
    "pressure.points": (_count, 200),
    "pressure.extend_to": (_optional_ratio, None),
    "pressure.extra_points": (_count, 100),
    "output.dir": (str, "."),
}


@dataclass(frozen=True)
class RunConfig:
    """Validated run configuration (pressures in Pa, ratios dimensionless)."""

    spec: CompositeSpec = field(default_factory=CompositeSpec)
    model_name: str = "mooney-rivlin"
    n_min: float = 2.0
    n_max: float = 1e4
    samples: int = 1024
    max_ratio: float = 0.8
    points: int = 200
    extend_to: float | None = None
    extra_points: int = 100
    output_dir: Path = Path(".")

    def __post_init__(self):
        if not 1.0 < self.n_min < self.n_max:
            raise ConfigError(f"buckling.n_min/n_max: need 1 < n_min < n_max, "
                              f"got {self.n_min} and {self.n_max}")

    def pressure_ratios(self):
        return pressure_grid(self.max_ratio, self.points, self.extend_to, self.extra_points)

    def with_model(self, name: str | None = None, gamma: float | None = None) -> "RunConfig":
        """Copy with the matrix model and/or its gamma replaced."""
        if name is None and gamma is None:
            return self
        name = self.model_name if name is None else name
        current = self.spec.matrix_model
        given = gamma is not None
        if not given:
            # keep a configured gamma, but not the fixed neo-Hookean one
            gamma = 1.0 / 18.0
            if isinstance(current, (MooneyRivlin, HorganMurphy)):
                gamma = current.gamma
        extra = {}
        if isinstance(current, HorganMurphy):
            extra = {"epsilon": current.epsilon, "c1_pressure": current.c1_pressure}
        model = make_model(name, gamma, given, **extra)
        if isinstance(model, LinearElastic) and not isinstance(self.spec.gas_law, ConstantGas):
            raise ConfigError("--model linear supports only the constant gas law")
        return replace(self, spec=replace(self.spec, matrix_model=model), model_name=name)


def make_model(name: str, gamma: float = 1.0 / 18.0, gamma_given: bool = False,
               epsilon: float | None = None, c1_pressure: str = "far-field"):
    if name == "neo-hookean":
        if gamma_given and gamma != 0.5:
            raise ConfigError("model.gamma: neo-hookean fixes gamma = 1/2; "
                              "use mooney-rivlin to vary it")
        return NeoHookean()
    if name == "mooney-rivlin":
        return MooneyRivlin(gamma)
    if name == "horgan-murphy":
        return HorganMurphy(gamma, epsilon, c1_pressure)
    if name == "linear":
        return LinearElastic()
    raise ConfigError(f"model.name: unknown model {name!r}; expected one of {', '.join(MODEL_NAMES)}")


def read_pairs(text: str, source: str = "<config>") -> dict[str, tuple[str, int]]:
    """Split config text into ``{key: (raw value, line number)}``."""
    pairs: dict[str, tuple[str, int]] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{source}:{lineno}: expected 'key = value', got {raw.strip()!r}")
        key, value = (s.strip() for s in line.split("=", 1))
        if key not in KEYS:
            raise ConfigError(f"{source}:{lineno}: unknown key {key!r}")
        if key in pairs:
            raise ConfigError(f"{source}:{lineno}: key {key!r} repeated "
                              f"(first set on line {pairs[key][1]})")
        if not value:
            raise ConfigError(f"{source}:{lineno}: key {key!r} has no value")
        pairs[key] = (value, lineno)
    return pairs


def config_from_text(text: str, source: str = "<config>") -> RunConfig:
    pairs = read_pairs(text, source)
    values = {}
    for key, (parse, default) in KEYS.items():
        if key not in pairs:
            values[key] = default
            continue
        raw, lineno = pairs[key]
        try:
            values[key] = parse(raw)
        except ValueError as exc:
            raise ConfigError(f"{source}:{lineno}: key {key!r}: invalid value {raw!r} ({exc})") from None

    def where(key):
        return f"{source}:{pairs[key][1]}: " if key in pairs else f"{source}: "

    # build each object separately so a failure can be pinned to its key
    def build(keys, make):
        try:
            return make()
        except (ValueError, ConfigError) as exc:
            key = next((k for k in keys if k in pairs), keys[0])
            raise ConfigError(f"{where(key)}key {key!r}: {exc}") from None

    v = values
    shell = build(["shell.kappa_pa", "shell.mu_pa"],
                  lambda: ElasticMaterial(v["shell.kappa_pa"], v["shell.mu_pa"]))
    matrix = build(["matrix.kappa_pa", "matrix.mu_pa"],
                   lambda: ElasticMaterial(v["matrix.kappa_pa"], v["matrix.mu_pa"]))
    dist = build(["distribution.shape", "distribution.mean"],
                 lambda: GammaDistribution(v["distribution.shape"], v["distribution.mean"]))
    model = build(["model.gamma", "model.name", "model.epsilon"],
                  lambda: make_model(v["model.name"], v["model.gamma"], "model.gamma" in pairs,
                                     v["model.epsilon"], v["model.c1_pressure"]))
    if v["gas.law"] == "polytropic":
        gas = build(["gas.eta", "gas.p_atm_pa"], lambda: PolytropicGas(v["gas.eta"], v["gas.p_atm_pa"]))
    else:
        gas = ConstantGas()
    if v["model.name"] == "linear" and v["gas.law"] != "constant":
        raise ConfigError(f"{where('gas.law')}key 'gas.law': the linear model supports only "
                          f"the constant gas law")
    spec = build(["composite.volume_fraction"],
                 lambda: CompositeSpec(v["composite.volume_fraction"], shell, matrix, model, gas, dist))
    return build(["buckling.n_min", "buckling.n_max"], lambda: RunConfig(
        spec=spec, model_name=v["model.name"], n_min=v["buckling.n_min"], n_max=v["buckling.n_max"],
        samples=v["buckling.samples"], max_ratio=v["pressure.max_ratio"], points=v["pressure.points"],
        extend_to=v["pressure.extend_to"], extra_points=v["pressure.extra_points"],
        output_dir=Path(v["output.dir"])))


def parse_config(path) -> RunConfig:
    """Read and validate the configuration file at ``path``."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config {str(path)!r}: {exc.strerror or exc}") from None
    return config_from_text(text, str(path))
