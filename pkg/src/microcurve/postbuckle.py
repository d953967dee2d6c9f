"""Finite-strain collapse of a pressurised cavity standing in for a buckled shell.

The matrix deformation is ``r = (R**3 + alpha)**(1/3)`` with
``alpha = abar**3 - A**3``; the cavity radius ``abar`` follows from the
closed-form pressure relation of the chosen strain-energy function plus the
inner (residual shell + gas) pressure.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.integrate import solve_ivp

from .errors import (DomainError, SingularCorrectionError, SolverError,
                     UnphysicalDeformationError, WouldExpandError)
from .materials import (OUTER_RADIUS, ConstantGas, GasLaw, HorganMurphy,
                        MatrixModel, MooneyRivlin, NeoHookean, PolytropicGas,
                        check_epsilon)

C1_PRESSURE_CHOICES = ("far-field", "net")


@dataclass(frozen=True)
class CavityState:
    undeformed_radius: float
    deformed_radius: float
    residual_shell_pressure: float
    gas_pressure: float
    pressure: float
    shear_modulus: float
    model: MatrixModel

    @property
    def offset(self) -> float:
        """alpha = abar^3 - A^3 (non-positive under compression)."""
        return self.deformed_radius**3 - self.undeformed_radius**3

    @property
    def inner_pressure(self) -> float:
        return self.residual_shell_pressure + self.gas_pressure


def gas_pressure(abar, A=OUTER_RADIUS, law: GasLaw = ConstantGas()):
    """Gas pressure above atmospheric inside a cavity shrunk from ``A`` to ``abar``."""
    abar = np.asarray(abar, dtype=float)
    if np.any(abar <= 0.0):
        raise DomainError("deformed cavity radius must be positive")
    if isinstance(law, ConstantGas):
        out = np.zeros_like(abar)
    elif isinstance(law, PolytropicGas):
        out = law.p_atm * np.expm1(3.0 * law.eta * np.log(A / abar))
    else:
        raise TypeError(f"unknown gas law {law!r}")
    return out if out.ndim else float(out)


def _leading_order(model: MatrixModel):
    if isinstance(model, HorganMurphy):
        return model.leading_order()
    return model


def cavity_pressure_relation(abar, A=OUTER_RADIUS, model: MatrixModel = NeoHookean()):
    """``(p - p_in) / mu`` that holds the cavity at radius ``abar``."""
    abar = np.asarray(abar, dtype=float)
    lam = A / abar
    nh = 0.5 * lam**4 + 2.0 * lam - 2.5
    if isinstance(model, NeoHookean):
        out = nh
    elif isinstance(model, MooneyRivlin):
        g = model.gamma
        out = (0.5 + g) * nh + (0.5 - g) * (lam**2 - 2.0 / lam + 1.0)
    else:
        raise TypeError(f"no closed-form cavity relation for {type(model).__name__}")
    return out if out.ndim else float(out)


def cavity_radii(p, p_in_s, model: MatrixModel, law: GasLaw, mu, A=OUTER_RADIUS):
    """Vectorised cavity radius solve; entries with ``p <= p_in_s`` return ``A``.

    Bisection in ``log(abar)`` on ``[1e-9 A, A]`` followed by regula-falsi
    polishing. The residual is strictly decreasing in ``abar``.
    """
    model = _leading_order(model)
    p, p_in_s = np.broadcast_arrays(np.asarray(p, dtype=float), np.asarray(p_in_s, dtype=float))
    net = p - p_in_s

    def resid(t):
        abar = A * np.exp(t)
        return mu * cavity_pressure_relation(abar, A, model) + gas_pressure(abar, A, law) - net

    lo = np.full(p.shape, np.log(1e-9))
    hi = np.zeros(p.shape)
    if np.any(resid(lo) < 0.0):
        raise SolverError("cavity radius not bracketed above 1e-9 A; pressure too large")
    for _ in range(48):
        mid = 0.5 * (lo + hi)
        pos = resid(mid) > 0.0
        lo = np.where(pos, mid, lo)
        hi = np.where(pos, hi, mid)
    f_lo, f_hi = resid(lo), resid(hi)
    for _ in range(3):
        denom = f_lo - f_hi
        t = np.where(denom != 0.0, lo + f_lo * (hi - lo) / np.where(denom != 0.0, denom, 1.0),
                     0.5 * (lo + hi))
        t = np.clip(t, lo, hi)
        f_t = resid(t)
        pos = f_t > 0.0
        lo, f_lo = np.where(pos, t, lo), np.where(pos, f_t, f_lo)
        hi, f_hi = np.where(pos, hi, t), np.where(pos, f_hi, f_t)
    t = np.where(np.abs(f_lo) < np.abs(f_hi), lo, hi)
    return np.where(net > 0.0, A * np.exp(t), A)


def solve_cavity_radius(p: float, p_in_s: float, model: MatrixModel, law: GasLaw,
                        mu: float, A: float = OUTER_RADIUS) -> CavityState:
    """Deformed cavity radius under far-field ``p`` and residual shell pressure ``p_in_s``."""
    if p < p_in_s:
        raise WouldExpandError(
            f"far-field pressure {p:g} below inner shell pressure {p_in_s:g}")
    abar = float(cavity_radii(p, p_in_s, model, law, mu, A))
    return CavityState(A, abar, float(p_in_s), float(gas_pressure(abar, A, law)),
                       float(p), float(mu), model)


def deformed_radius_incompressible(R, state: CavityState):
    """Image ``(R^3 + alpha)^(1/3)`` of reference radius ``R >= A``."""
    return np.cbrt(np.asarray(R, dtype=float) ** 3 + state.offset)


def first_order_constant(abar, A, p, gamma, mu):
    """Integration constant C1 of the first-order compressibility correction."""
    g = gamma
    alphas = (
        135.0 * A**9 * (1 + 2 * g)**2 * mu,
        -40.0 * A**8 * (1 + 2 * g) * (4 * p + 3 * (6 * g - 1) * mu),
        60.0 * A**7 * (4 * g**2 - 1) * mu,
        16.0 * A**6 * (10 * p * (2 * g - 1) + 9 * mu + 6 * g * (16 * g - 9) * mu),
        -10.0 * A**5 * (p * (4 + 8 * g) + 3 * (5 + 4 * g * (9 * g - 5)) * mu),
        120.0 * A**4 * (4 * g**2 - 1) * mu,
        -20.0 * A**3 * (2 * g - 1) * (4 * p + 3 * (6 * g - 1) * mu),
        240.0 * A**2 * (1 - 2 * g)**2 * mu,
        A * (40 * p * (7 + 6 * g) - 3 * (83 + 4 * g * (43 * g - 57)) * mu),
    )
    numerator = sum(c * abar**i for i, c in enumerate(alphas))
    denominator = 480.0 * abar * (A**3 + abar**3) * (abar**2 * (1 - 2 * g) + A**2 * (1 + 2 * g)) * mu
    if np.any(denominator == 0.0):
        raise SingularCorrectionError("C1 denominator vanishes")
    return -numerator / denominator


def first_order_radius(R, abar, A, p, gamma, mu, c1_pressure=None):
    """First-order displacement correction r1(R).

    ``c1_pressure`` is the pressure fed to C1; the far-field ``p`` by default.
    """
    R = np.asarray(R, dtype=float)
    g = gamma
    r0 = np.cbrt(R**3 + abar**3 - A**3)
    C1 = first_order_constant(abar, A, p if c1_pressure is None else c1_pressure, g, mu)
    return (2 * R**2 * r0**2 * (-1 + 2 * g) + R**4 * (1 + 2 * g)
            + R**3 * r0 * (1 - 6 * g - 4 * p / (3 * mu)) + 4 * C1 * r0) / (4 * r0**3)


def _c1_pressure(state: CavityState, c1_pressure: str):
    if c1_pressure == "far-field":
        return state.pressure
    if c1_pressure == "net":
        return state.pressure - state.inner_pressure
    raise ValueError(f"c1_pressure must be one of {C1_PRESSURE_CHOICES}, got {c1_pressure!r}")


def slightly_compressible_correction(R, state: CavityState, epsilon: float,
                                     c1_pressure: str = "far-field"):
    """Deformed radius ``r0(R) + epsilon * r1(R)`` for a slightly compressible matrix."""
    check_epsilon(epsilon)
    r0 = deformed_radius_incompressible(R, state)
    if epsilon == 0.0:
        return r0
    gamma = _leading_order(state.model).gamma
    r1 = first_order_radius(R, state.deformed_radius, state.undeformed_radius, state.pressure,
                            gamma, state.shear_modulus, _c1_pressure(state, c1_pressure))
    return r0 + epsilon * r1


def postbuckle_volume_change(state: CavityState, S: float, epsilon: float = 0.0,
                             c1_pressure: str = "far-field") -> float:
    """Relative volume loss of the composite sphere of radius ``S`` around a buckled shell."""
    if S < state.undeformed_radius:
        raise ValueError(f"composite radius must be at least A, got {S}")
    if epsilon == 0.0:
        # exact for an incompressible matrix
        return -state.offset / S**3
    s_bar = float(slightly_compressible_correction(S, state, epsilon, c1_pressure))
    if s_bar <= 0.0:
        raise UnphysicalDeformationError("composite sphere radius became non-positive")
    return 1.0 - (s_bar / S) ** 3


def ode_oracle_far_field_pressure(abar: float, model: MatrixModel, p_in: float, mu: float,
                                  A: float = OUTER_RADIUS, R_max: float | None = None,
                                  rtol: float = 1e-11) -> float:
    """Far-field pressure recovered by integrating radial equilibrium outward.

    Integrates ``dT_rr/dr = -(2/r)(T_rr - T_tt)`` from the cavity wall to the
    image of ``R_max`` (default ``1e4 A``), with the stress difference built
    from the strain-energy derivatives under the incompressible deformation.
    Independent of :func:`cavity_pressure_relation`.
    """
    model = _leading_order(model)
    if not 0.0 < abar <= A:
        raise DomainError(f"deformed radius must lie in (0, A], got {abar!r}")
    if not hasattr(model, "energy_derivatives"):
        raise TypeError(f"{type(model).__name__} has no strain-energy function")
    W1, W2 = model.energy_derivatives(mu)
    alpha = abar**3 - A**3
    R_max = 1e4 * A if R_max is None else R_max
    r_max = np.cbrt(R_max**3 + alpha)

    def rhs(s, y):
        r = np.exp(s)
        R = np.cbrt(r**3 - alpha)
        lt = r / R
        lr = 1.0 / lt**2
        diff = 2.0 * W1 * (lr**2 - lt**2) - 2.0 * W2 * (lr**-2 - lt**-2)
        # d/d(log r) of T_rr
        return [-2.0 * diff]

    sol = solve_ivp(rhs, (np.log(abar), np.log(r_max)), [-p_in], method="DOP853",
                    rtol=rtol, atol=1e-14 * max(mu, abs(p_in), 1.0))
    if not sol.success:
        raise SolverError(f"oracle integration failed: {sol.message}")
    return float(-sol.y[0, -1])
