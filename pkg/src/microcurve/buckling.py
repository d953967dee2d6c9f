"""Critical pressure of a thin shell embedded in an elastic matrix.

The Fok-Allwright pressure ``p(xhat, n)`` is minimised over a continuous mode
number ``n > 1``. Setting ``dp/dn = 0`` gives a depressed cubic in ``xhat``
whose positive root is the critical ratio for mode ``n``; sweeping ``n``
traces the curve ``(xhat_c(n), p_c(n))`` stored in a :class:`BucklingTable`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import NamedTuple

import numpy as np
from numpy.polynomial import Polynomial
from scipy.interpolate import PchipInterpolator
from scipy.optimize import brentq

from .errors import (DomainError, NoCriticalRatioError, TableBuildError,
                     TableExtensionError, UnbuckledInRange)
from .materials import ElasticMaterial

_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0
_n = Polynomial([0.0, 1.0])


class _Constants(NamedTuple):
    E_s: float
    nu_s: float
    E_m: float
    nu_m: float


def _constants(shell: ElasticMaterial, matrix: ElasticMaterial) -> _Constants:
    return _Constants(shell.youngs_modulus, shell.poisson_ratio,
                      matrix.youngs_modulus, matrix.poisson_ratio)


@lru_cache(maxsize=64)
def _p3_parts(nu_m):
    """Numerator and denominator of p3 (without E_m/E_s) and their derivatives."""
    num = (2 * _n**3 - _n**2 + 3 * _n + 2) - nu_m * (2 * _n**3 - 3 * _n**2 + 5 * _n + 2)
    den = (_n - 1)**2 * (_n + 2) * (3 * _n + 2 - 2 * nu_m * (2 * _n + 1)) * (1 + nu_m)
    return (num, num.deriv(), num.deriv(2)), (den, den.deriv(), den.deriv(2))


def mode_coefficients(n, nu_s, nu_m, stiffness_ratio, order=0):
    """Return ``(p1, p2, p3)`` or their ``order``-th derivative in ``n``.

    ``stiffness_ratio`` is E_m/E_s. Works on arrays of ``n``.
    """
    n = np.asarray(n, dtype=float)
    c = stiffness_ratio
    (num, dnum, ddnum), (den, dden, ddden) = _p3_parts(float(nu_m))
    q = (n - 1.0) * (n + 2.0)
    dq = 2.0 * n + 1.0
    if order == 0:
        p1 = (n * (n + 1.0) - (1.0 - nu_s)) / (12.0 * (1.0 - nu_s**2))
        p2 = 2.0 / (q * (1.0 + nu_s))
        p3 = c * num(n) / den(n)
    elif order == 1:
        p1 = (2.0 * n + 1.0) / (12.0 * (1.0 - nu_s**2))
        p2 = -2.0 * dq / ((1.0 + nu_s) * q**2)
        N, D, dN, dD = num(n), den(n), dnum(n), dden(n)
        p3 = c * (dN * D - N * dD) / D**2
    elif order == 2:
        p1 = np.full_like(n, 2.0 / (12.0 * (1.0 - nu_s**2)))
        p2 = -2.0 * (2.0 * q - 2.0 * dq**2) / ((1.0 + nu_s) * q**3)
        N, D = num(n), den(n)
        dN, dD = dnum(n), dden(n)
        ddN, ddD = ddnum(n), ddden(n)
        p3 = c * ((ddN * D - N * ddD) * D - 2.0 * dD * (dN * D - N * dD)) / D**3
    else:
        raise ValueError("order must be 0, 1 or 2")
    return p1, p2, p3


def fok_allwright_pressure(xhat, n, E_s, nu_s, E_m, nu_m):
    """Critical far-field pressure for ratio ``xhat`` and mode ``n`` from raw constants.

    ``E_m = 0`` is allowed here (a void in place of the matrix).
    """
    xhat = np.asarray(xhat, dtype=float)
    n = np.asarray(n, dtype=float)
    if np.any(n <= 1.0):
        raise DomainError("mode number must exceed 1")
    if np.any(xhat <= 0.0) or np.any(xhat > 2.0):
        raise DomainError("mid-surface ratio must lie in (0, 2]")
    c = E_m / E_s
    p1, p2, p3 = mode_coefficients(n, nu_s, nu_m, c)
    prefactor = (2.0 / 3.0) * (1.0 + nu_m) / (1.0 - nu_m)
    matrix_term = 1.0 + (1.0 - nu_s) / (1.0 + nu_m) * c / xhat
    return E_s * prefactor * matrix_term * (p1 * xhat**3 + p2 * xhat + p3)


def fa_pressure(xhat, n, shell: ElasticMaterial, matrix: ElasticMaterial):
    """Fok-Allwright pressure ``p(xhat, n)`` in Pa."""
    return fok_allwright_pressure(xhat, n, *_constants(shell, matrix))


def depressed_cubic_roots(P: float, Q: float) -> list[float]:
    """Real roots of ``x**3 + P*x + Q = 0``, ascending.

    Trigonometric form when there are three real roots, Cardano otherwise.
    """
    if P == 0.0:
        return [float(np.cbrt(-Q))]
    disc = -(4.0 * P**3 + 27.0 * Q**2)
    if disc > 0.0:
        m = 2.0 * math.sqrt(-P / 3.0)
        arg = 3.0 * Q / (P * m)
        theta = math.acos(max(-1.0, min(1.0, arg))) / 3.0
        roots = [m * math.cos(theta - 2.0 * math.pi * k / 3.0) for k in range(3)]
    else:
        s = math.sqrt(max(Q**2 / 4.0 + P**3 / 27.0, 0.0))
        u = float(np.cbrt(-Q / 2.0 + s))
        v = float(np.cbrt(-Q / 2.0 - s))
        roots = [u + v]
        if disc == 0.0:
            roots.append(-(u + v) / 2.0)
    # one Newton step each cleans up cancellation in the closed forms
    polished = []
    for x in roots:
        d = 3.0 * x * x + P
        if d != 0.0:
            x -= (x**3 + P * x + Q) / d
        polished.append(x)
    return sorted(polished)


def stationarity_residual(xhat, n, shell, matrix) -> float:
    """Relative residual of ``p1'(n) x^3 + p2'(n) x + p3'(n)`` at ``xhat``."""
    k = _constants(shell, matrix)
    a, b, c = mode_coefficients(n, k.nu_s, k.nu_m, k.E_m / k.E_s, order=1)
    terms = np.array([a * xhat**3, b * xhat, c])
    return float(abs(terms.sum()) / np.abs(terms).sum())


def critical_ratio_for_mode(n: float, shell: ElasticMaterial, matrix: ElasticMaterial) -> float:
    """Shell ratio for which mode ``n`` minimises the Fok-Allwright pressure."""
    if n <= 1.0:
        raise DomainError(f"mode number must exceed 1, got {n!r}")
    k = _constants(shell, matrix)
    c = k.E_m / k.E_s
    a, b, d = (float(v) for v in mode_coefficients(n, k.nu_s, k.nu_m, c, order=1))
    roots = [x for x in depressed_cubic_roots(b / a, d / a) if 0.0 < x <= 2.0]
    best = None
    for x in roots:
        a2, b2, d2 = mode_coefficients(n, k.nu_s, k.nu_m, c, order=2)
        # the prefactor is positive, so the sign of the bracket decides
        if a2 * x**3 + b2 * x + d2 <= 0.0:
            continue
        p = float(fok_allwright_pressure(x, n, *k))
        if best is None or p < best[1]:
            best = (x, p)
    if best is None:
        raise NoCriticalRatioError(f"no admissible critical ratio for mode n={n:g}")
    return best[0]


def golden_section_mode(xhat, shell, matrix, n_lo, n_hi, rtol=1e-11):
    """Minimise ``p(xhat, n)`` over ``n`` in ``[n_lo, n_hi]`` for arrays of ``xhat``.

    Golden-section search in ``log n``; returns ``(p_min, n_min)``.
    """
    k = _constants(shell, matrix)
    xhat = np.asarray(xhat, dtype=float)
    lo = np.log(np.broadcast_to(np.asarray(n_lo, dtype=float), xhat.shape)).copy()
    hi = np.log(np.broadcast_to(np.asarray(n_hi, dtype=float), xhat.shape)).copy()
    width = float(np.max(hi - lo)) if xhat.size else 0.0
    steps = max(1, int(math.ceil(math.log(max(width, rtol) / rtol) / -math.log(_INV_PHI))))

    def f(t):
        return fok_allwright_pressure(xhat, np.exp(t), *k)

    c = hi - _INV_PHI * (hi - lo)
    d = lo + _INV_PHI * (hi - lo)
    fc, fd = f(c), f(d)
    for _ in range(steps):
        left = fc < fd
        hi = np.where(left, d, hi)
        lo = np.where(left, lo, c)
        new_c = hi - _INV_PHI * (hi - lo)
        new_d = lo + _INV_PHI * (hi - lo)
        # reuse the surviving interior point
        c, d = np.where(left, new_c, d), np.where(left, c, new_d)
        fnew = f(np.where(left, c, d))
        fc, fd = np.where(left, fnew, fd), np.where(left, fc, fnew)
    t = 0.5 * (lo + hi)
    return f(t), np.exp(t)


@dataclass(frozen=True, eq=False)
class BucklingTable:
    """Critical curve sampled at modes ``n`` (ascending, so ``xhat_c`` descends)."""

    n: np.ndarray
    xhat_c: np.ndarray
    p_c: np.ndarray
    shell: ElasticMaterial
    matrix: ElasticMaterial
    _p_of_x: PchipInterpolator = field(init=False, repr=False)
    _n_of_x: PchipInterpolator = field(init=False, repr=False)
    _x_of_p: PchipInterpolator = field(init=False, repr=False)

    def __post_init__(self):
        for name in ("n", "xhat_c", "p_c"):
            arr = np.array(getattr(self, name), dtype=float)
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)
        lx = np.log(self.xhat_c[::-1])
        lp = np.log(self.p_c[::-1])
        object.__setattr__(self, "_p_of_x", PchipInterpolator(lx, lp))
        object.__setattr__(self, "_n_of_x", PchipInterpolator(lx, np.log(self.n[::-1])))
        object.__setattr__(self, "_x_of_p", PchipInterpolator(lp, lx))

    def __len__(self):
        return self.n.size

    @property
    def xhat_min(self) -> float:
        return float(self.xhat_c[-1])

    @property
    def xhat_max(self) -> float:
        return float(self.xhat_c[0])

    @property
    def p_min(self) -> float:
        return float(self.p_c[-1])

    @property
    def p_max(self) -> float:
        return float(self.p_c[0])

    def interpolate_pressure(self, xhat):
        """Shape-preserving interpolation of ``p_c`` (no minimisation)."""
        return np.exp(self._p_of_x(np.log(xhat)))

    def interpolate_mode(self, xhat):
        return np.exp(self._n_of_x(np.log(xhat)))

    def interpolate_ratio(self, p):
        return np.exp(self._x_of_p(np.log(p)))


def build_buckling_table(shell: ElasticMaterial, matrix: ElasticMaterial,
                         n_min: float = 2.0, n_max: float = 1e4,
                         samples: int = 1024) -> BucklingTable:
    """Tabulate the critical curve over ``samples`` log-spaced modes."""
    if not 1.0 < n_min < n_max:
        raise ValueError(f"need 1 < n_min < n_max, got n_min={n_min}, n_max={n_max}")
    if samples < 16:
        raise ValueError(f"need at least 16 samples, got {samples}")
    k = _constants(shell, matrix)
    rows = []
    for n in np.geomspace(n_min, n_max, int(samples)):
        try:
            x = critical_ratio_for_mode(n, shell, matrix)
        except NoCriticalRatioError:
            continue
        resid = stationarity_residual(x, n, shell, matrix)
        if resid > 1e-10:
            raise TableBuildError(f"stationarity residual {resid:.2e} at n={n:g}")
        rows.append((n, x, float(fok_allwright_pressure(x, n, *k))))
    if len(rows) < 2:
        raise TableBuildError("fewer than two modes admit a critical ratio")
    n_arr, x_arr, p_arr = (np.array(col) for col in zip(*rows))
    for i in range(len(rows) - 1):
        if not x_arr[i + 1] < x_arr[i]:
            raise TableBuildError(
                f"critical ratio not monotone on n in [{n_arr[i]:g}, {n_arr[i + 1]:g}]")
        if not p_arr[i + 1] < p_arr[i]:
            raise TableBuildError(
                f"critical pressure not monotone on n in [{n_arr[i]:g}, {n_arr[i + 1]:g}]")
    return BucklingTable(n_arr, x_arr, p_arr, shell, matrix)


def _mode_bracket(table: BucklingTable, xhat):
    """Golden-section bracket in ``n`` around the tabulated mode for each ratio."""
    xhat = np.asarray(xhat, dtype=float)
    inside = xhat >= table.xhat_min
    n_guess = np.where(inside, table.interpolate_mode(np.clip(xhat, table.xhat_min, table.xhat_max)), 1.0)
    lo = np.where(inside, np.maximum(n_guess / 1.1, 1.0 + 1e-9), table.n[-1] / 1.1)
    hi = np.where(inside, n_guess * 1.1, table.n[-1] * 1e4)
    return lo, hi


def critical_pressures(table: BucklingTable, xhat):
    """Minimum Fok-Allwright pressure for arrays of ratios.

    Ratios below the table are handled by widening the mode bracket; values
    above the table are returned as ``inf`` (never buckle in range).
    """
    xhat = np.asarray(xhat, dtype=float)
    out = np.full(xhat.shape, np.inf)
    ok = xhat <= table.xhat_max
    if np.any(ok):
        lo, hi = _mode_bracket(table, xhat[ok])
        out[ok] = golden_section_mode(xhat[ok], table.shell, table.matrix, lo, hi)[0]
    return out


def critical_pressure(table: BucklingTable, xhat: float) -> float:
    """Critical pressure (Pa) of a shell with mid-surface ratio ``xhat``."""
    xhat = float(xhat)
    if xhat > table.xhat_max:
        raise UnbuckledInRange(
            f"xhat={xhat:g} exceeds the largest tabulated critical ratio {table.xhat_max:g}")
    if xhat < table.xhat_min:
        raise TableExtensionError(
            f"xhat={xhat:g} is below the table minimum {table.xhat_min:g}; raise n_max")
    # node values come straight from the cubic
    hit = np.flatnonzero(table.xhat_c == xhat)
    if hit.size:
        return float(table.p_c[hit[0]])
    return float(critical_pressures(table, np.array([xhat]))[0])


class RatioLookup(NamedTuple):
    xhat_c: float
    saturated: bool


def critical_ratio_at_pressure(table: BucklingTable, p: float) -> RatioLookup:
    """Largest shell ratio already buckled at pressure ``p``."""
    p = float(p)
    if p < 0.0:
        raise DomainError(f"pressure must be non-negative, got {p}")
    if p < table.p_min:
        return RatioLookup(0.0, False)
    if p >= table.p_max:
        return RatioLookup(table.xhat_max, p > table.p_max)
    hit = np.flatnonzero(table.p_c == p)
    if hit.size:
        return RatioLookup(float(table.xhat_c[hit[0]]), False)
    # bracket between neighbouring nodes, then invert the refined minimum
    j = int(np.searchsorted(table.p_c[::-1], p))
    x_lo = float(table.xhat_c[::-1][j - 1])
    x_hi = float(table.xhat_c[::-1][j])

    def g(t):
        return math.log(critical_pressures(table, np.array([math.exp(t)]))[0] / p)

    a, b = math.log(x_lo), math.log(x_hi)
    ga, gb = g(a), g(b)
    if ga >= 0.0 or gb <= 0.0:
        # p within rounding of a node
        return RatioLookup(math.exp(a if abs(ga) <= abs(gb) else b), False)
    t = brentq(g, a, b, xtol=1e-15, rtol=1e-15)
    return RatioLookup(math.exp(t), False)
