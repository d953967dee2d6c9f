"""Macroscopic loading curve of a dilute shell-filled composite.

Each composite sphere responds independently to the far-field pressure. Shells
thinner than the current critical ratio are buckled and replaced by a
pressurised cavity; the rest stay in the linear pre-buckling state. The
volume change is averaged over the Gamma law of shell ratios.
"""

from __future__ import annotations

import os
import threading
from concurrent.futures import ThreadPoolExecutor

import numpy as np
from scipy import special

from .buckling import BucklingTable, critical_pressures, critical_ratio_at_pressure
from .errors import DomainError
from .linear import residual_shell_pressure_array, shell_matrix_coefficients, volume_change_from_displacement
from .materials import (OUTER_RADIUS, CompositeSpec, ConstantGas, GammaDistribution,
                        HorganMurphy, LinearElastic, LoadCurve, x_from_xhat)
from .postbuckle import cavity_radii, first_order_radius, gas_pressure
from .quadrature import gauss_kronrod

TAIL_MASS = 1e-12


def gamma_pdf(xhat, dist: GammaDistribution):
    """Gamma density of mid-surface ratios with shape ``k`` and mean ``xhat0``."""
    if dist.is_delta:
        raise DomainError("the delta limit has no density")
    xhat = np.asarray(xhat, dtype=float)
    if np.any(xhat < 0.0):
        raise DomainError("shell ratio must be non-negative")
    k, rate = dist.shape, dist.rate
    # 0 * log(0) at k = 1 is patched below
    with np.errstate(divide="ignore", invalid="ignore"):
        log_f = k * np.log(rate) + (k - 1.0) * np.log(xhat) - special.gammaln(k) - rate * xhat
    out = np.exp(log_f)
    if k == 1.0:
        out = np.where(xhat == 0.0, rate, out)
    return out if out.ndim else float(out)


def gamma_cdf(xhat, dist: GammaDistribution):
    if dist.is_delta:
        return np.where(np.asarray(xhat) >= dist.mean, 1.0, 0.0)
    return special.gammainc(dist.shape, dist.rate * np.asarray(xhat, dtype=float))


def support(dist: GammaDistribution, tail: float = TAIL_MASS) -> tuple[float, float]:
    """Ratio interval outside which each tail carries less than ``tail`` mass, clipped to [0, 2]."""
    if dist.is_delta:
        return dist.mean, dist.mean
    lo = special.gammaincinv(dist.shape, tail) / dist.rate
    hi = special.gammainccinv(dist.shape, tail) / dist.rate
    return float(max(lo, 0.0)), float(min(hi, 2.0))


class ResidualPressureCache:
    """Thread-safe memo of ``(p_c, p_in_s)`` per shell ratio for one table."""

    def __init__(self, table: BucklingTable):
        self.table = table
        self._store: dict[float, tuple[float, float]] = {}
        self._lock = threading.Lock()

    def __len__(self):
        return len(self._store)

    def lookup(self, xhat):
        xhat = np.asarray(xhat, dtype=float)
        keys = xhat.ravel().tolist()
        with self._lock:
            hits = [self._store.get(x) for x in keys]
        miss = [i for i, h in enumerate(hits) if h is None]
        if miss:
            xm = np.array([keys[i] for i in miss])
            p_c = critical_pressures(self.table, xm)
            p_in = residual_shell_pressure_array(x_from_xhat(xm), self.table.shell,
                                                 self.table.matrix, p_c)
            with self._lock:
                for i, a, b in zip(miss, p_c.tolist(), p_in.tolist()):
                    hits[i] = (a, b)
                    self._store[keys[i]] = (a, b)
        arr = np.array(hits, dtype=float).reshape(xhat.shape + (2,))
        return arr[..., 0], arr[..., 1]


class CompositeModel:
    """Evaluator bundling a composite, its buckling table and the residual-pressure memo."""

    def __init__(self, spec: CompositeSpec, table: BucklingTable,
                 abs_tol: float = 1e-12, rel_tol: float = 1e-10):
        if table.shell != spec.shell_material or table.matrix != spec.matrix_material:
            raise ValueError("buckling table was built for different materials")
        if isinstance(spec.matrix_model, LinearElastic) and not isinstance(spec.gas_law, ConstantGas):
            raise ValueError("the linear post-buckling reference supports only the constant gas law")
        self.spec = spec
        self.table = table
        self.cache = ResidualPressureCache(table)
        self.abs_tol = abs_tol
        self.rel_tol = rel_tol
        self.S = spec.fictitious_radius

    # -- per composite sphere ---------------------------------------------

    def intact(self, xhat, p):
        """Pre-buckling volume change for intact shells (vectorised in ``xhat``)."""
        xhat = np.asarray(xhat, dtype=float)
        c = shell_matrix_coefficients(x_from_xhat(xhat), self.spec.shell_material,
                                      self.spec.matrix_material, p, 0.0)
        return volume_change_from_displacement(c[..., 2] + c[..., 3] / self.S**3)

    def buckled(self, xhat, p):
        """Post-buckling volume change for buckled shells (vectorised in ``xhat``)."""
        xhat = np.asarray(xhat, dtype=float)
        _, p_in_s = self.cache.lookup(xhat)
        return self._cavity_volume_change(p, p_in_s)

    def _cavity_volume_change(self, p, p_in_s):
        spec, S, A = self.spec, self.S, OUTER_RADIUS
        mu = spec.matrix_material.shear_modulus
        model = spec.matrix_model
        if isinstance(model, LinearElastic):
            u_over_S = (-p / (3.0 * spec.matrix_material.bulk_modulus)
                        + (p_in_s - p) * A**3 / (4.0 * mu * S**3))
            return volume_change_from_displacement(u_over_S)
        abar = cavity_radii(p, p_in_s, model, spec.gas_law, mu)
        if not isinstance(model, HorganMurphy):
            return (A**3 - abar**3) / S**3
        eps = spec.epsilon
        if model.c1_pressure == "far-field":
            p_c1 = p
        else:
            p_c1 = p - p_in_s - gas_pressure(abar, A, spec.gas_law)
        r1 = first_order_radius(S, abar, A, p, model.gamma, mu, p_c1)
        s_bar = np.cbrt(S**3 + abar**3 - A**3) + eps * r1
        return 1.0 - (s_bar / S) ** 3

    def sphere_volume_change(self, xhat: float, p: float) -> float:
        """Volume change of one composite sphere with shell ratio ``xhat`` at pressure ``p``."""
        if not 0.0 <= xhat <= 2.0:
            raise DomainError(f"shell ratio must lie in [0, 2], got {xhat!r}")
        if p < 0.0:
            raise DomainError("pressure must be non-negative")
        if p == 0.0:
            return 0.0
        if xhat == 0.0:
            # bare cavity: buckled from the first increment, no residual support
            return float(self._cavity_volume_change(p, np.zeros(1))[0])
        xc = critical_ratio_at_pressure(self.table, p).xhat_c
        arr = np.array([xhat])
        return float((self.buckled(arr, p) if xhat <= xc else self.intact(arr, p))[0])

    # -- distribution average --------------------------------------------

    def total(self, p: float) -> tuple[float, float]:
        """``(delta_V, buckled_fraction)`` at far-field pressure ``p`` (Pa)."""
        if p < 0.0:
            raise DomainError("pressure must be non-negative")
        if p == 0.0:
            return 0.0, 0.0
        dist = self.spec.distribution
        xc = critical_ratio_at_pressure(self.table, p).xhat_c
        if dist.is_delta:
            if 0.0 < dist.mean <= xc:
                return float(self.buckled(np.array([dist.mean]), p)[0]), 1.0
            return float(self.intact(np.array([dist.mean]), p)[0]), 0.0

        lo, hi = support(dist)
        split = min(max(xc, lo), hi)
        total = 0.0
        for a, b, branch in ((lo, split, self.buckled), (split, hi, self.intact)):
            if b <= a or float(gamma_cdf(b, dist) - gamma_cdf(a, dist)) < TAIL_MASS:
                continue
            res = gauss_kronrod(lambda x, br=branch: br(x, p) * gamma_pdf(x, dist), a, b,
                                abs_tol=self.abs_tol, rel_tol=self.rel_tol)
            total += res.value
        return total, float(gamma_cdf(xc, dist)) if xc > 0.0 else 0.0

    def sweep(self, p_grid, workers: int | None = None) -> LoadCurve:
        p_grid = np.asarray(p_grid, dtype=float)
        if p_grid.size and (p_grid[0] != 0.0 or np.any(np.diff(p_grid) <= 0.0)):
            raise ValueError("pressure grid must start at 0 and increase strictly")
        workers = default_workers() if workers is None else workers
        if workers > 1 and p_grid.size > 1:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                rows = list(pool.map(self.total, p_grid.tolist()))
        else:
            rows = [self.total(p) for p in p_grid.tolist()]
        dv = np.array([r[0] for r in rows])
        bf = np.array([r[1] for r in rows])
        mu = self.spec.matrix_material.shear_modulus
        return LoadCurve(p_grid / mu, dv, bf)


def default_workers() -> int:
    """Worker cap from ``MICROCURVE_THREADS`` (unset or 0 means all cores)."""
    raw = os.environ.get("MICROCURVE_THREADS", "0").strip() or "0"
    n = int(raw)
    if n < 0:
        raise ValueError("MICROCURVE_THREADS must be non-negative")
    return n if n > 0 else (os.cpu_count() or 1)


def composite_sphere_volume_change(xhat: float, p: float, spec: CompositeSpec,
                                   table: BucklingTable) -> float:
    return CompositeModel(spec, table).sphere_volume_change(xhat, p)


def total_volume_change(p: float, spec: CompositeSpec, table: BucklingTable) -> tuple[float, float]:
    """Relative volume change of the whole material and the buckled fraction at ``p`` (Pa)."""
    return CompositeModel(spec, table).total(p)


def sweep_curve(p_grid, spec: CompositeSpec, table: BucklingTable,
                workers: int | None = None) -> LoadCurve:
    """Load curve over far-field pressures ``p_grid`` (Pa, starting at 0)."""
    return CompositeModel(spec, table).sweep(p_grid, workers)


def pressure_grid(max_ratio: float = 0.8, points: int = 200,
                  extend_to: float | None = None, extra_points: int = 100):
    """Pressure ratios ``p/mu_m``: uniform on ``[0, max_ratio]``, optionally log-extended."""
    grid = np.linspace(0.0, max_ratio, points)
    if extend_to is not None and extend_to > max_ratio:
        grid = np.concatenate([grid, np.geomspace(max_ratio, extend_to, extra_points + 1)[1:]])
    return grid
