"""Small-strain response of a shell bonded inside an unbounded matrix.

In each region the radial displacement is ``u = a*r + b/r**2`` and the radial
stress ``sigma_rr = 3*kappa*a - 4*mu*b/r**3``. Compression is negative.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import SolverError, UnphysicalDeformationError
from .materials import CAVITY_THRESHOLD, OUTER_RADIUS, ElasticMaterial, ShellGeometry


@dataclass(frozen=True)
class LinearSolution:
    shell_coeffs: tuple[float, float]
    matrix_coeffs: tuple[float, float]
    geometry: ShellGeometry
    shell: ElasticMaterial | None
    matrix: ElasticMaterial
    applied_pressure: float
    inner_pressure: float

    def _region(self, region):
        if region == "shell":
            if self.shell is None:
                raise ValueError("cavity solution has no shell region")
            return self.shell_coeffs, self.shell
        return self.matrix_coeffs, self.matrix

    def _evaluate(self, r, region, stress):
        r = np.asarray(r, dtype=float)
        if region is None:
            if self.shell is None:
                region = "matrix"
            else:
                return np.where(r < OUTER_RADIUS, self._evaluate(r, "shell", stress),
                                self._evaluate(r, "matrix", stress))
        (a, b), mat = self._region(region)
        if stress:
            return 3.0 * mat.bulk_modulus * a - 4.0 * mat.shear_modulus * b / r**3
        return a * r + b / r**2

    def displacement(self, r, region: str | None = None):
        """Radial displacement at ``r``; ``region`` ('shell'/'matrix') overrides the lookup by radius."""
        return self._evaluate(r, region, stress=False)

    def radial_stress(self, r, region: str | None = None):
        return self._evaluate(r, region, stress=True)


def shell_matrix_coefficients(x, shell: ElasticMaterial, matrix: ElasticMaterial, p, p_in=0.0):
    """Solve the 4x4 interface system for arrays of thickness ratios ``x = H/A``.

    Returns an array of shape ``x.shape + (4,)`` holding
    ``(a_shell, b_shell, a_matrix, b_matrix)``.
    """
    x = np.asarray(x, dtype=float)
    p = np.broadcast_to(np.asarray(p, dtype=float), x.shape)
    p_in = np.broadcast_to(np.asarray(p_in, dtype=float), x.shape)
    ks, ms = shell.bulk_modulus, shell.shear_modulus
    km, mm = matrix.bulk_modulus, matrix.shear_modulus
    A = OUTER_RADIUS
    r_in = A * (1.0 - x)

    M = np.zeros(x.shape + (4, 4))
    rhs = np.zeros(x.shape + (4,))
    # sigma_s(r_in) = -p_in
    M[..., 0, 0] = 3.0 * ks
    M[..., 0, 1] = -4.0 * ms / r_in**3
    rhs[..., 0] = -p_in
    # u_s(A) = u_m(A)
    M[..., 1, :] = [A, 1.0 / A**2, -A, -1.0 / A**2]
    # sigma_s(A) = sigma_m(A)
    M[..., 2, :] = [3.0 * ks, -4.0 * ms / A**3, -3.0 * km, 4.0 * mm / A**3]
    # sigma_m -> -p far away
    M[..., 3, 2] = 3.0 * km
    rhs[..., 3] = -p

    # scale rows by their largest entry before the pivoted solve
    scale = np.max(np.abs(M), axis=-1, keepdims=True)
    try:
        sol = np.linalg.solve(M / scale, (rhs / scale[..., 0])[..., None])[..., 0]
    except np.linalg.LinAlgError as exc:
        raise SolverError(f"singular shell/matrix system: {exc}") from exc
    if not np.all(np.isfinite(sol)):
        raise SolverError("shell/matrix system produced non-finite coefficients")
    return sol


def solve_cavity(matrix: ElasticMaterial, p: float, p_in: float) -> LinearSolution:
    """Spherical cavity of unit radius in the matrix, no shell."""
    a_m = -p / (3.0 * matrix.bulk_modulus)
    b_m = (p_in - p) * OUTER_RADIUS**3 / (4.0 * matrix.shear_modulus)
    return LinearSolution(
        shell_coeffs=(0.0, 0.0), matrix_coeffs=(a_m, b_m), geometry=ShellGeometry(0.0),
        shell=None, matrix=matrix, applied_pressure=float(p), inner_pressure=float(p_in))


def solve_shell_in_matrix(geometry: ShellGeometry, shell: ElasticMaterial,
                          matrix: ElasticMaterial, p: float, p_in: float = 0.0) -> LinearSolution:
    """Bonded shell in an infinite matrix under far-field pressure ``p``.

    Vanishingly thin shells (X below 1e-8) are routed to :func:`solve_cavity`.
    """
    if geometry.is_cavity:
        return solve_cavity(matrix, p, p_in)
    if geometry.thickness >= OUTER_RADIUS:
        raise SolverError("solid sphere has no inner surface; the two-region system is degenerate")
    c = shell_matrix_coefficients(geometry.ratio, shell, matrix, p, p_in)
    return LinearSolution(
        shell_coeffs=(float(c[0]), float(c[1])), matrix_coeffs=(float(c[2]), float(c[3])),
        geometry=geometry, shell=shell, matrix=matrix,
        applied_pressure=float(p), inner_pressure=float(p_in))


def volume_change_from_displacement(u_over_S):
    """1 - (1 + u/S)^3, guarded against collapse through the origin."""
    stretch = 1.0 + np.asarray(u_over_S, dtype=float)
    if np.any(stretch <= 0.0):
        raise UnphysicalDeformationError("composite sphere radius became non-positive")
    # -expm1(3 log1p(.)) keeps precision when u/S is tiny
    return -np.expm1(3.0 * np.log1p(np.asarray(u_over_S, dtype=float)))


def prebuckle_volume_change(sol: LinearSolution, S: float) -> float:
    """Relative volume loss of the composite sphere of radius ``S``."""
    if S < OUTER_RADIUS:
        raise ValueError(f"composite radius must be at least the shell radius, got {S}")
    a_m, b_m = sol.matrix_coeffs
    return float(volume_change_from_displacement(a_m + b_m / S**3))


def residual_shell_pressure(geometry: ShellGeometry, shell: ElasticMaterial,
                            matrix: ElasticMaterial, p_c: float) -> float:
    """Pressure the intact shell exerts on the matrix at its critical load."""
    sol = solve_shell_in_matrix(geometry, shell, matrix, p_c, 0.0)
    return float(-sol.radial_stress(OUTER_RADIUS, "matrix"))


def residual_shell_pressure_array(x, shell, matrix, p_c):
    """Vectorised :func:`residual_shell_pressure` over ratios ``x = H/A``."""
    x = np.asarray(x, dtype=float)
    p_c = np.broadcast_to(np.asarray(p_c, dtype=float), x.shape)
    out = np.zeros(x.shape)
    solid = x >= CAVITY_THRESHOLD
    if np.any(solid):
        c = shell_matrix_coefficients(x[solid], shell, matrix, p_c[solid], 0.0)
        out[solid] = -(3.0 * matrix.bulk_modulus * c[..., 2]
                       - 4.0 * matrix.shear_modulus * c[..., 3] / OUTER_RADIUS**3)
    return out

