"""Simultaneous polynomial root finding (Aberth-Ehrlich iteration).

Coefficients are ascending-degree complex arrays.  The solver normalizes
the largest coefficient magnitude to one, starts from a deterministically
perturbed circle, iterates the Aberth-Ehrlich correction, polishes with
two Newton steps, and reports componentwise relative backward errors
|p(z)| / sum_j |c_j| |z|^j.  No companion-matrix eigensolver is involved.
"""

from __future__ import annotations

import numpy as np

from .errors import RootFindingError

__all__ = ["backward_errors", "aberth_roots", "solve_polynomial"]


def _polyval(coeffs: np.ndarray, z: np.ndarray) -> np.ndarray:
    """Horner evaluation of an ascending-coefficient polynomial."""
    out = np.full(z.shape, coeffs[-1], dtype=np.complex128)
    for c in coeffs[-2::-1]:
        out = out * z + c
    return out


def backward_errors(coeffs: np.ndarray, z: np.ndarray) -> np.ndarray:
    """Componentwise relative backward error of candidate roots."""
    coeffs = np.asarray(coeffs, dtype=np.complex128)
    z = np.asarray(z, dtype=np.complex128)
    num = np.abs(_polyval(coeffs, z))
    den = _polyval(np.abs(coeffs).astype(np.complex128), np.abs(z).astype(np.complex128)).real
    return num / np.maximum(den, np.finfo(float).tiny)


def aberth_roots(
    coeffs: np.ndarray, *, maxiter: int = 160, tol: float = 1e-13
) -> tuple[np.ndarray, np.ndarray]:
    """All roots of a polynomial with nonzero first and last coefficient.

    Returns (roots, backward_errors); convergence failures are left to the
    caller to judge via the returned errors.
    """
    c = np.asarray(coeffs, dtype=np.complex128)
    n = c.size - 1
    if n < 1 or c[0] == 0 or c[-1] == 0:
        raise ValueError("aberth_roots expects a stripped polynomial of degree >= 1")
    c = c / np.max(np.abs(c))
    if n == 1:
        z = np.array([-c[0] / c[1]])
        return z, backward_errors(c, z)
    dc = c[1:] * np.arange(1, n + 1)

    r0 = float(np.clip((np.abs(c[0]) / np.abs(c[-1])) ** (1.0 / n), 1e-6, 1e6))
    k = np.arange(n)
    ang = 2.0 * np.pi * (k + 0.25) / n + 0.79
    rad = r0 * (1.0 + 0.08 * np.cos(2.9 * k + 0.5))
    z = rad * np.exp(1j * ang)

    abs_c = np.abs(c).astype(np.complex128)
    for _ in range(maxiter):
        p = _polyval(c, z)
        den = _polyval(abs_c, np.abs(z).astype(np.complex128)).real
        eta = np.abs(p) / np.maximum(den, np.finfo(float).tiny)
        active = eta > tol
        if not active.any():
            break
        dp = _polyval(dc, z)
        bad = dp == 0
        if bad.any():
            z = np.where(bad, z * (1.0 + 1e-8) + 1e-8, z)
            continue
        w = p / dp
        diff = z[:, None] - z[None, :]
        np.fill_diagonal(diff, np.inf)
        if (diff == 0).any():
            coll = (diff == 0).any(axis=1)
            z = np.where(coll, z * (1.0 + 1e-7 * (1 + k)) + 1e-9, z)
            continue
        s = (1.0 / diff).sum(axis=1)
        denom = 1.0 - w * s
        denom = np.where(np.abs(denom) < 1e-290, 1.0, denom)
        corr = np.where(active, w / denom, 0.0)
        z = z - corr

    for _ in range(2):
        p = _polyval(c, z)
        dp = _polyval(dc, z)
        step = np.where(dp != 0, p / np.where(dp != 0, dp, 1.0), 0.0)
        z = z - step
    return z, backward_errors(c, z)


def _cluster(roots: np.ndarray, rtol: float) -> tuple[np.ndarray, np.ndarray]:
    """Greedy merge of near-coincident roots into multiplicity clusters."""
    order = np.lexsort((roots.imag, roots.real))
    centers: list[complex] = []
    counts: list[int] = []
    for r in roots[order]:
        if centers and abs(r - centers[-1]) <= rtol * (1.0 + abs(r)):
            n = counts[-1]
            centers[-1] = (centers[-1] * n + r) / (n + 1)
            counts[-1] = n + 1
        else:
            centers.append(complex(r))
            counts.append(1)
    return np.array(centers, dtype=np.complex128), np.array(counts, dtype=np.int64)


def solve_polynomial(
    coeffs: np.ndarray,
    *,
    accept_tol: float = 1e-12,
    cluster_rtol: float = 1e-7,
) -> tuple[np.ndarray, np.ndarray, int, np.ndarray]:
    """Roots with multiplicities of an arbitrary polynomial.

    Exact zero leading coefficients are stripped into degree deficiency
    (returned as the count of dropped leading terms); exact zero trailing
    coefficients become a root at the origin.  Raises RootFindingError if
    the worst backward error exceeds accept_tol.

    Returns (roots, multiplicities, leading_deficiency, residuals) where
    leading_deficiency = (len(coeffs) - 1) - effective degree.
    """
    c = np.asarray(coeffs, dtype=np.complex128)
    if c.ndim != 1 or c.size == 0 or not np.any(c != 0):
        raise ValueError("solve_polynomial expects a nonzero coefficient vector")
    nz = np.flatnonzero(c != 0)
    lead_def = int(c.size - 1 - nz[-1])
    zero_mult = int(nz[0])
    core = c[nz[0] : nz[-1] + 1]
    roots: list[complex] = []
    mults: list[int] = []
    resid: list[float] = []
    if zero_mult:
        roots.append(0.0 + 0.0j)
        mults.append(zero_mult)
        resid.append(0.0)
    if core.size > 1:
        z, eta = aberth_roots(core)
        worst = float(eta.max())
        if worst > accept_tol:
            raise RootFindingError(
                f"root iteration stalled at backward error {worst:.3e}", worst_residual=worst
            )
        centers, counts = _cluster(z, cluster_rtol)
        eta_c = np.empty(centers.size)
        for i, ctr in enumerate(centers):
            eta_c[i] = eta[np.argmin(np.abs(z - ctr))]
        roots.extend(centers.tolist())
        mults.extend(counts.tolist())
        resid.extend(eta_c.tolist())
    return (
        np.array(roots, dtype=np.complex128),
        np.array(mults, dtype=np.int64),
        lead_def,
        np.array(resid, dtype=np.float64),
    )
