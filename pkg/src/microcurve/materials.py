"""Material, geometry and configuration value types.

Every radius is normalised by the outer shell radius, so ``A = 1`` throughout.
Pressures are stored in Pa; curves report them as ratios to the matrix shear
modulus.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Union

import numpy as np

from .errors import DomainError, InvalidMaterialError

OUTER_RADIUS = 1.0
P_ATM = 101325.0
CAVITY_THRESHOLD = 1e-8


@dataclass(frozen=True)
class ElasticMaterial:
    """Isotropic linear-elastic moduli, in Pa."""

    bulk_modulus: float
    shear_modulus: float

    def __post_init__(self):
        k, m = self.bulk_modulus, self.shear_modulus
        if not (np.isfinite(k) and np.isfinite(m)) or k <= 0.0 or m <= 0.0:
            raise InvalidMaterialError(
                f"moduli must be positive and finite, got kappa={k!r}, mu={m!r}")

    @classmethod
    def from_youngs(cls, youngs_modulus: float, poisson_ratio: float) -> "ElasticMaterial":
        E, nu = float(youngs_modulus), float(poisson_ratio)
        if E <= 0.0 or not -1.0 < nu < 0.5:
            raise InvalidMaterialError(f"need E > 0 and -1 < nu < 0.5, got E={E}, nu={nu}")
        return cls(E / (3.0 * (1.0 - 2.0 * nu)), E / (2.0 * (1.0 + nu)))

    @property
    def youngs_modulus(self) -> float:
        k, m = self.bulk_modulus, self.shear_modulus
        return 9.0 * k * m / (3.0 * k + m)

    @property
    def poisson_ratio(self) -> float:
        k, m = self.bulk_modulus, self.shear_modulus
        return (3.0 * k - 2.0 * m) / (2.0 * (3.0 * k + m))

    @property
    def lame_lambda(self) -> float:
        return self.bulk_modulus - 2.0 * self.shear_modulus / 3.0


def derive_moduli(material: ElasticMaterial) -> tuple[float, float, float]:
    """Return ``(E, nu, lambda)`` for the given bulk/shear pair."""
    return material.youngs_modulus, material.poisson_ratio, material.lame_lambda


# glassy shell and polyurethane-like host used in every reference study
REFERENCE_SHELL = ElasticMaterial(bulk_modulus=2.1e9, shear_modulus=1.26e9)
REFERENCE_MATRIX = ElasticMaterial(bulk_modulus=4.0e9, shear_modulus=1.2e6)
SOFT_SHELL = ElasticMaterial(bulk_modulus=0.21e9, shear_modulus=0.126e9)
SOFT_MATRIX = ElasticMaterial(bulk_modulus=0.4e9, shear_modulus=1.2e6)


def x_from_xhat(xhat):
    """Thickness/outer-radius ratio from thickness/mid-radius ratio (vectorised)."""
    xhat = np.asarray(xhat, dtype=float)
    return xhat / (1.0 + 0.5 * xhat)


def xhat_from_x(x):
    x = np.asarray(x, dtype=float)
    return x / (1.0 - 0.5 * x)


@dataclass(frozen=True)
class ShellGeometry:
    """Shell of unit outer radius and thickness ``thickness``."""

    thickness: float

    def __post_init__(self):
        if not 0.0 <= self.thickness <= OUTER_RADIUS:
            raise DomainError(f"shell thickness must lie in [0, 1], got {self.thickness!r}")

    @property
    def outer_radius(self) -> float:
        return OUTER_RADIUS

    @property
    def inner_radius(self) -> float:
        return OUTER_RADIUS - self.thickness

    @property
    def mid_radius(self) -> float:
        return OUTER_RADIUS - 0.5 * self.thickness

    @property
    def ratio(self) -> float:
        """X = H/A."""
        return self.thickness / OUTER_RADIUS

    @property
    def mid_ratio(self) -> float:
        """X-hat = H/A-hat."""
        return self.thickness / self.mid_radius

    @property
    def is_cavity(self) -> bool:
        return self.ratio < CAVITY_THRESHOLD


def ratio_conversions(xhat: float) -> ShellGeometry:
    """Build the unit-radius shell whose thickness/mid-radius ratio is ``xhat``."""
    xhat = float(xhat)
    if not 0.0 <= xhat <= 2.0:
        raise DomainError(f"mid-surface ratio must lie in [0, 2], got {xhat!r}")
    return ShellGeometry(thickness=min(float(x_from_xhat(xhat)) * OUTER_RADIUS, OUTER_RADIUS))


# -- gas laws -----------------------------------------------------------------

@dataclass(frozen=True)
class ConstantGas:
    """Gas held at atmospheric pressure: no extra inner pressure."""


@dataclass(frozen=True)
class PolytropicGas:
    eta: float = 1.4
    p_atm: float = P_ATM

    def __post_init__(self):
        if self.eta <= 0.0 or self.p_atm <= 0.0:
            raise DomainError(f"need eta > 0 and p_atm > 0, got {self.eta}, {self.p_atm}")


GasLaw = Union[ConstantGas, PolytropicGas]


# -- matrix constitutive models -------------------------------------------------

def _check_gamma(gamma):
    if not -0.5 <= gamma <= 0.5:
        raise DomainError(f"Mooney-Rivlin gamma must lie in [-1/2, 1/2], got {gamma!r}")


@dataclass(frozen=True)
class LinearElastic:
    """Post-buckling by small-strain elasticity; reference curves only."""


@dataclass(frozen=True)
class NeoHookean:
    @property
    def gamma(self) -> float:
        return 0.5

    def energy_derivatives(self, mu):
        """(dW/dI1, dW/dI2) for shear modulus ``mu``."""
        return 0.5 * mu, 0.0


@dataclass(frozen=True)
class MooneyRivlin:
    gamma: float = 1.0 / 18.0

    def __post_init__(self):
        _check_gamma(self.gamma)

    def energy_derivatives(self, mu):
        return 0.5 * (0.5 + self.gamma) * mu, 0.5 * (0.5 - self.gamma) * mu


@dataclass(frozen=True)
class HorganMurphy:
    """Slightly compressible Mooney-Rivlin generalisation.

    ``epsilon`` is mu/kappa of the matrix. ``None`` means take it from the
    matrix material at evaluation time. ``c1_pressure`` selects the pressure
    entering the first-order integration constant: the far-field pressure
    ("far-field", default) or the net pressure across the cavity wall ("net").
    """

    gamma: float = 1.0 / 18.0
    epsilon: float | None = None
    c1_pressure: str = "far-field"

    def __post_init__(self):
        _check_gamma(self.gamma)
        if self.epsilon is not None:
            check_epsilon(self.epsilon)
        if self.c1_pressure not in ("far-field", "net"):
            raise DomainError(f"c1_pressure must be 'far-field' or 'net', got {self.c1_pressure!r}")

    def leading_order(self) -> MooneyRivlin:
        return MooneyRivlin(self.gamma)


def check_epsilon(epsilon):
    if not 0.0 <= epsilon <= 0.1:
        raise DomainError(f"compressibility parameter must lie in [0, 0.1], got {epsilon!r}")
    if epsilon > 0.01:
        warnings.warn(f"epsilon={epsilon:g} is not small; first-order correction may be poor",
                      stacklevel=3)


MatrixModel = Union[LinearElastic, NeoHookean, MooneyRivlin, HorganMurphy]


# -- distribution and composite ------------------------------------------------

@dataclass(frozen=True)
class GammaDistribution:
    """Gamma law of mid-surface ratios with shape ``shape`` and mean ``mean``.

    ``shape=math.inf`` is the delta limit: every shell has ratio ``mean``.
    """

    shape: float = 8.0
    mean: float = 0.01

    def __post_init__(self):
        if not self.shape > 0.0 or not (np.isfinite(self.mean) and self.mean > 0.0):
            raise DomainError(f"need shape > 0 and mean > 0, got {self.shape}, {self.mean}")

    @property
    def is_delta(self) -> bool:
        return math.isinf(self.shape)

    @property
    def rate(self) -> float:
        return self.shape / self.mean


@dataclass(frozen=True)
class CompositeSpec:
    volume_fraction: float = 0.05
    shell_material: ElasticMaterial = REFERENCE_SHELL
    matrix_material: ElasticMaterial = REFERENCE_MATRIX
    matrix_model: MatrixModel = field(default_factory=MooneyRivlin)
    gas_law: GasLaw = field(default_factory=ConstantGas)
    distribution: GammaDistribution = field(default_factory=GammaDistribution)

    def __post_init__(self):
        if not 0.0 < self.volume_fraction < 1.0:
            raise DomainError(f"volume fraction must lie in (0, 1), got {self.volume_fraction!r}")

    @property
    def fictitious_radius(self) -> float:
        return fictitious_radius(self.volume_fraction)

    @property
    def epsilon(self) -> float:
        """mu/kappa of the matrix; overridden by an explicit HorganMurphy epsilon."""
        model = self.matrix_model
        if isinstance(model, HorganMurphy) and model.epsilon is not None:
            return model.epsilon
        return self.matrix_material.shear_modulus / self.matrix_material.bulk_modulus


def fictitious_radius(volume_fraction: float) -> float:
    """Outer radius S of the composite sphere, from Phi = (A/S)^3."""
    if not 0.0 < volume_fraction < 1.0:
        raise DomainError(f"volume fraction must lie in (0, 1), got {volume_fraction!r}")
    return OUTER_RADIUS * volume_fraction ** (-1.0 / 3.0)


@dataclass(frozen=True, eq=False)
class LoadCurve:
    """Sampled loading curve; pressures are ratios to the matrix shear modulus."""

    pressure_ratio: np.ndarray
    volume_change: np.ndarray
    buckled_fraction: np.ndarray

    def __post_init__(self):
        p = np.asarray(self.pressure_ratio, dtype=float)
        dv = np.asarray(self.volume_change, dtype=float)
        bf = np.asarray(self.buckled_fraction, dtype=float)
        if not p.shape == dv.shape == bf.shape or p.ndim != 1:
            raise ValueError("curve columns must be 1-d and of equal length")
        if p.size > 1 and np.any(np.diff(p) <= 0.0):
            raise ValueError("pressure ratios must be strictly increasing")
        if np.any(dv < 0.0) or np.any(dv >= 1.0):
            raise ValueError("volume change must lie in [0, 1)")
        if np.any(bf < 0.0) or np.any(bf > 1.0):
            raise ValueError("buckled fraction must lie in [0, 1]")
        # quadrature-level jitter is tolerated
        if bf.size > 1 and np.any(np.diff(bf) < -1e-12):
            raise ValueError("buckled fraction must be non-decreasing")
        for name, arr in (("pressure_ratio", p), ("volume_change", dv), ("buckled_fraction", bf)):
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)

    def __len__(self):
        return self.pressure_ratio.size

    def rows(self):
        return list(zip(self.pressure_ratio.tolist(), self.volume_change.tolist(),
                        self.buckled_fraction.tolist()))
