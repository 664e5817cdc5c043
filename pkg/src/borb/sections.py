"""L^2 spaces of bundle sections: bases, Gram matrices, Bergman kernels.

Sections of the p-th power of a model's bundle are monomials in the core
chart coordinate; the basis is the set of exponents that are invariant
under the chart isotropy action and square-integrable over the model.
Gram matrices are computed by honest two-dimensional chart quadrature
(no closed-form shortcuts), orthonormalized through the inverse transpose
of the Cholesky factor, and kernels are evaluated in log space with a
per-point exponent shift so that large powers never overflow.

The optional canonical twist replaces the base-form inner product by the
plain chart area measure (the adjoint bundle absorbs the base density);
the twisted pointwise kernel divides by the base density accordingly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from scipy.linalg import solve_triangular

from .errors import (
    ConfigurationError,
    IllConditionedError,
    UnsupportedConfigurationError,
)
from .models import Chart, ModelKind, OrbifoldModel
from .quadrature import orbifold_nodes

__all__ = [
    "SectionSpace",
    "enumerate_basis",
    "gram_matrix",
    "orthonormalize",
    "build_space",
    "bergman_kernel",
    "bergman_extremal",
    "fs_potential",
    "section_norm_sq",
]

_GRAM_CHUNK = 16384


def enumerate_basis(model: OrbifoldModel, p: int, twist: bool = False) -> np.ndarray:
    """Exponents (core-chart coordinate) of the monomial section basis.

    Untwisted: exponents 0 <= e <= p * deg_up that are multiples of the
    isotropy order, deg_up being the upstairs bundle degree.  Twisted:
    the reflected exponent at the infinity chart drops by 2 (the adjoint
    frame transition), so integrability cuts the range to e <= p*deg - 2.
    """
    if not (isinstance(p, (int, np.integer)) and p >= 1):
        raise ConfigurationError(f"power p must be a positive integer, got {p!r}")
    if twist and model.kind is ModelKind.FOOTBALL:
        raise UnsupportedConfigurationError(
            "canonical twist on FOOTBALL models is not supported"
        )
    d_up = model.degree * model.m
    top = p * d_up - (2 if twist else 0)
    if top < 0:
        raise ConfigurationError(f"twisted space at p={p} is empty")
    return np.arange(0, top + 1, model.m, dtype=np.int64)


def _chart_exponents(exponents: np.ndarray, chart: Chart, p: int, d_up: int, twist: bool):
    """Basis exponents seen in a chart frame (reflected on the infinity side)."""
    if chart.side == "core":
        return np.asarray(exponents, dtype=np.float64)
    reflect = p * d_up - (2 if twist else 0)
    return reflect - np.asarray(exponents, dtype=np.float64)


def _int_pow(z: np.ndarray, k: float) -> np.ndarray:
    """z**k for small integer k by binary multiplication (pow is slow)."""
    ki = int(k)
    if ki != k or abs(ki) > 64:
        return z**k
    if ki < 0:
        return _int_pow(1.0 / z, -ki)
    out = np.ones_like(z)
    base = z
    while ki:
        if ki & 1:
            out = out * base
        ki >>= 1
        if ki:
            base = base * base
    return out


def gram_matrix(
    model: OrbifoldModel,
    exponents: Sequence[int],
    p: int,
    twist: bool = False,
    *,
    radial_nodes: int = 64,
    angular_nodes: int = 256,
) -> np.ndarray:
    """Gram matrix of monomial sections by two-dimensional chart quadrature.

    Entry (j, k) is the orbifold integral of z^{e_j} conj(z)^{e_k}
    exp(-2 p phi) against the base form (plain chart area when twisted).
    The integrand is assembled on polar product grids per chart; the
    angular trapezoid rule kills off-diagonal entries to roundoff, which
    the tests verify rather than assume.
    """
    e = np.asarray(exponents, dtype=np.int64)
    d = e.size
    d_up = model.degree * model.m
    gram = np.zeros((d, d), dtype=np.complex128)
    chunks = orbifold_nodes(
        model,
        measure=("area" if twist else "base"),
        radial_nodes=radial_nodes,
        angular_nodes=angular_nodes,
        radial_variable="t",
    )
    for chart, z, w in chunks:
        ech = _chart_exponents(e, chart, p, d_up, twist)
        phi = model.weight_radial(chart, np.abs(z))
        shift = -float(p) * phi + 0.5 * np.log(w)
        for lo in range(0, z.size, _GRAM_CHUNK):
            sl = slice(lo, min(lo + _GRAM_CHUNK, z.size))
            arg = np.multiply.outer(ech, np.log(z[sl]))
            arg += shift[sl][None, :]
            b = np.exp(arg)
            gram += b @ b.conj().T
    return 0.5 * (gram + gram.conj().T)


def _cholesky_lower(gram: np.ndarray) -> np.ndarray:
    """Lower Cholesky factor, reporting the pivot index on failure."""
    a = np.array(gram, dtype=np.complex128)
    n = a.shape[0]
    lower = np.zeros_like(a)
    for k in range(n):
        diag = a[k, k].real - float(np.real(np.vdot(lower[k, :k], lower[k, :k])))
        if not (diag > 0.0 and math.isfinite(diag)):
            raise IllConditionedError(
                f"Gram matrix lost positivity at working precision (pivot {k})", pivot=k
            )
        lower[k, k] = math.sqrt(diag)
        if k + 1 < n:
            col = a[k + 1 :, k] - lower[k + 1 :, :k] @ lower[k, :k].conj()
            lower[k + 1 :, k] = col / lower[k, k]
    return lower


def orthonormalize(gram: np.ndarray) -> np.ndarray:
    """Coefficient matrix C with C^H G C = I (inverse transpose of Cholesky).

    Column i of C gives the monomial coefficients of the i-th orthonormal
    section in the ascending-exponent basis.
    """
    lower = _cholesky_lower(gram)
    linv = solve_triangular(lower, np.eye(lower.shape[0], dtype=np.complex128), lower=True)
    return linv.conj().T


@dataclass
class SectionSpace:
    """An orthonormalized space of global sections at power p."""

    model: OrbifoldModel
    p: int
    twist: bool
    exponents: np.ndarray
    gram: np.ndarray
    ortho: np.ndarray
    resolution: tuple[int, int]
    _pair_cache: dict = field(default_factory=dict, repr=False)

    @property
    def dim(self) -> int:
        return int(self.exponents.size)

    @property
    def degree_upstairs(self) -> int:
        return self.model.degree * self.model.m

    @property
    def zero_budget(self) -> int:
        """Total zero mass downstairs (affine roots plus mass at infinity)."""
        top = self.p * self.degree_upstairs - (2 if self.twist else 0)
        return top // self.model.m

    @property
    def min_exponent(self) -> int:
        return int(self.exponents[0])

    @property
    def min_exponent_downstairs(self) -> float:
        return self.min_exponent / self.model.m

    def key(self) -> str:
        rn, an = self.resolution
        return (
            f"{self.model.key()}|p={self.p}|twist={int(self.twist)}|rn={rn}|an={an}|fmt=1"
        )

    def downstairs_exponents(self) -> np.ndarray:
        """Integer downstairs monomial degrees (requires invariant exponents)."""
        e = np.asarray(self.exponents, dtype=np.int64)
        if np.any(e % self.model.m):
            raise UnsupportedConfigurationError(
                "basis exponents are not invariant under the chart isotropy action"
            )
        return e // self.model.m

    # -- evaluation ------------------------------------------------------------

    def _scaled_monomials(self, chart: Chart, z: np.ndarray, reduce_min: bool = False):
        """Monomials z^e scaled by exp(-kappa) with per-point shift kappa.

        reduce_min subtracts the common factor z^{e_min} from every basis
        element (as seen from the core chart), which adds e_min to the
        reflected exponents on the infinity side; the reduced potential is
        then a single global function smooth at the core origin.

        The exponent ladder is arithmetic, so rows are built by one complex
        exp for the first exponent and a cumulative product for the rest;
        e.kappa is the max of the endpoint values e*log|z| (the real part
        is linear in e), which keeps every scaled row at magnitude <= 1.
        """
        e = _chart_exponents(self.exponents, chart, self.p, self.degree_upstairs, self.twist)
        if reduce_min:
            shift = float(self.min_exponent)
            e = e - shift if chart.side == "core" else e + shift
        z = np.asarray(z, dtype=np.complex128).ravel()
        nz = z != 0
        mono = np.empty((e.size, z.size), dtype=np.complex128)
        kappa = np.zeros(z.shape, dtype=np.float64)
        if nz.any():
            all_nz = bool(nz.all())
            zz = z if all_nz else z[nz]
            logz = np.log(zz)
            step = e[1] - e[0] if e.size > 1 else 0.0
            block = mono if all_nz else np.empty((e.size, zz.size), dtype=np.complex128)
            if e.size > 1 and not np.all(np.diff(e) == step):
                arg = np.multiply.outer(e, logz)
                k = np.max(arg.real, axis=0)
                np.exp(arg - k[None, :], out=block)
            else:
                k = np.maximum(e[0] * logz.real, e[-1] * logz.real)
                # Start each point's ladder at its dominant end: starting at
                # the small end can underflow the first row to exact zero at
                # large exponent spans, poisoning the whole running product.
                fwd = e[0] * logz.real >= e[-1] * logz.real
                for mask, j0, order, stp in (
                    (fwd, 0, range(1, e.size), step),
                    (~fwd, e.size - 1, range(e.size - 2, -1, -1), -step),
                ):
                    if not mask.any():
                        continue
                    zm, km = zz[mask], k[mask]
                    block[j0, mask] = np.exp(e[j0] * np.log(zm) - km)
                    if e.size > 1:
                        sp = _int_pow(zm, stp)
                        prev = j0
                        for j in order:
                            block[j, mask] = block[prev, mask] * sp
                            prev = j
            if all_nz:
                kappa = k
            else:
                mono[:, nz] = block
                kappa[nz] = k
        if (~nz).any():
            mono[:, ~nz] = (e == 0.0)[:, None]
        return mono, kappa

    def log_sum_sq(self, chart: Chart, z: np.ndarray, reduce_min: bool = False) -> np.ndarray:
        """log sum_j |s_j(z)|^2 in a chart frame, -inf at common zeros."""
        mono, kappa = self._scaled_monomials(chart, z, reduce_min)
        vals = self.ortho.T @ mono
        sumsq = np.einsum("ij,ij->j", vals.real, vals.real)
        sumsq += np.einsum("ij,ij->j", vals.imag, vals.imag)
        with np.errstate(divide="ignore"):
            return 2.0 * kappa + np.log(sumsq)

    def _split_affine(self, x: np.ndarray):
        """Group downstairs affine points by owning chart (principal lifts)."""
        x = np.asarray(x, dtype=np.complex128).ravel()
        if not np.all(np.isfinite(x)):
            raise ConfigurationError("affine evaluation points must be finite")
        m = self.model.m
        core_mask = np.abs(x) <= self.model.swap_radius
        out = []
        if core_mask.any():
            y = x[core_mask] ** (1.0 / m) if m > 1 else x[core_mask]
            out.append((self.model.core_chart, core_mask, y))
        if (~core_mask).any():
            inv = 1.0 / x[~core_mask]
            y = inv ** (1.0 / m) if m > 1 else inv
            out.append((self.model.inf_chart, ~core_mask, y))
        return x, out

    def _log_kernel_chart(self, chart: Chart, z: np.ndarray) -> np.ndarray:
        z = np.asarray(z, dtype=np.complex128).ravel()
        r = np.abs(z)
        lss = self.log_sum_sq(chart, z)
        out = lss - 2.0 * self.p * self.model.weight_radial(chart, r)
        if self.twist:
            out = out - np.log(self.model.base_density(chart, r))
        return out

    def log_kernel(self, points: np.ndarray, chart: Chart | str | None = None) -> np.ndarray:
        """log of the Bergman kernel function; -inf where all sections vanish."""
        if chart is not None:
            ch = self.model.chart(chart) if isinstance(chart, str) else chart
            return self._log_kernel_chart(ch, points)
        x, groups = self._split_affine(points)
        out = np.empty(x.shape, dtype=np.float64)
        for ch, mask, y in groups:
            out[mask] = self._log_kernel_chart(ch, y)
        return out


def build_space(
    model: OrbifoldModel,
    p: int,
    twist: bool | None = None,
    *,
    radial_nodes: int = 64,
    angular_nodes: int | None = None,
    cache=None,
) -> SectionSpace:
    """Enumerate, integrate and orthonormalize the section space at power p.

    The angular node count is raised automatically above twice the largest
    exponent so the trapezoid rule stays alias-free for Gram integrands.
    """
    if twist is None:
        twist = model.spec.twist_canonical
    exponents = enumerate_basis(model, p, twist)
    max_exp = p * model.degree * model.m
    if angular_nodes is None:
        angular_nodes = max(256, 32 * math.ceil((2 * max_exp + 32) / 32))
    if cache is not None:
        key = (
            f"{model.key()}|p={p}|twist={int(twist)}|rn={radial_nodes}|an={angular_nodes}|fmt=1"
        )
        gram = cache.load(key, exponents.size)
        if gram is None:
            gram = gram_matrix(
                model, exponents, p, twist,
                radial_nodes=radial_nodes, angular_nodes=angular_nodes,
            )
            cache.store(key, gram)
    else:
        gram = gram_matrix(
            model, exponents, p, twist,
            radial_nodes=radial_nodes, angular_nodes=angular_nodes,
        )
    ortho = orthonormalize(gram)
    return SectionSpace(model, p, bool(twist), exponents, gram, ortho, (radial_nodes, angular_nodes))


def bergman_kernel(
    space: SectionSpace, points: np.ndarray, chart: Chart | str | None = None
) -> np.ndarray:
    """Bergman kernel function P_p at downstairs points (or in a chart).

    Computed as exp(log sum |s_j|^2 - 2 p phi) with a per-point exponent
    shift; the twisted variant divides by the base density, matching the
    adjoint-frame pointwise norm.
    """
    return np.exp(space.log_kernel(points, chart))


def fs_potential(
    space: SectionSpace,
    points: np.ndarray,
    chart: Chart | str | None = None,
    *,
    reduce_min: bool = False,
) -> np.ndarray:
    """Potential (1/2) log sum_j |s_j|^2 of the Fubini-Study current.

    With chart=None the points are downstairs affine coordinates and the
    value is taken in the affine frame globally (the infinity-chart frame
    transition zero_budget * log|x| is folded back in), so dd^c of the
    result is the Fubini-Study current on the affine chart.  With a chart
    argument the raw chart-frame potential at chart points is returned.

    reduce_min=True strips the common monomial factor of order e_min at
    the core origin, leaving a global potential smooth there; the stripped
    part is exactly (e_min / m) * log|x| downstairs.
    """
    if chart is not None:
        ch = space.model.chart(chart) if isinstance(chart, str) else chart
        return 0.5 * space.log_sum_sq(ch, points, reduce_min)
    x, groups = space._split_affine(points)
    out = np.empty(x.shape, dtype=np.float64)
    for ch, mask, y in groups:
        out[mask] = 0.5 * space.log_sum_sq(ch, y, reduce_min)
        if ch.side == "inf":
            out[mask] += space.zero_budget * np.log(np.abs(x[mask]))
    return out


def section_norm_sq(
    space: SectionSpace,
    coeffs: np.ndarray,
    points: np.ndarray,
    chart: Chart | str | None = None,
) -> np.ndarray:
    """Pointwise squared norm |S_a(z)|^2_h of a section given orthonormal coords.

    Evaluated through the monomial coefficient vector C a by a dense Horner
    sweep: an independent code path from the kernel's log-space sum, used
    to cross-check extremal identities.
    """
    a = np.asarray(coeffs, dtype=np.complex128).ravel()
    if a.size != space.dim:
        raise ConfigurationError("coefficient vector length must match the space dimension")
    mono = space.ortho @ a

    def eval_chart(ch: Chart, z: np.ndarray) -> np.ndarray:
        e = _chart_exponents(space.exponents, ch, space.p, space.degree_upstairs, space.twist)
        dense = np.zeros(int(e.max()) + 1, dtype=np.complex128)
        dense[e.astype(np.int64)] = mono
        vals = np.polynomial.polynomial.polyval(z, dense)
        r = np.abs(z)
        with np.errstate(divide="ignore"):
            logsq = 2.0 * np.log(np.abs(vals))
        out = logsq - 2.0 * space.p * space.model.weight_radial(ch, r)
        if space.twist:
            out = out - np.log(space.model.base_density(ch, r))
        return np.exp(out)

    if chart is not None:
        ch = space.model.chart(chart) if isinstance(chart, str) else chart
        return eval_chart(ch, np.asarray(points, dtype=np.complex128).ravel())
    x, groups = space._split_affine(points)
    out = np.empty(x.shape, dtype=np.float64)
    for ch, mask, y in groups:
        out[mask] = eval_chart(ch, y)
    return out


def bergman_extremal(
    space: SectionSpace, points: np.ndarray, chart: Chart | str | None = None
) -> np.ndarray:
    """Extremal description of the kernel: max |S(x)|^2_h over unit sections.

    The maximizer is the coherent-state vector (conjugated normalized
    section values); its pointwise norm is evaluated through the dense
    monomial path of section_norm_sq, independent of the kernel sum.
    Returns 0 where every section vanishes.
    """
    pts = np.asarray(points, dtype=np.complex128).ravel()
    out = np.empty(pts.shape, dtype=np.float64)
    if chart is not None:
        ch = space.model.chart(chart) if isinstance(chart, str) else chart
        groups = [(ch, np.ones(pts.shape, dtype=bool), pts)]
        x = pts
    else:
        x, groups = space._split_affine(pts)
    for ch, mask, y in groups:
        idx = np.flatnonzero(mask)
        for j, z0 in zip(idx, y):
            mono, _ = space._scaled_monomials(ch, np.array([z0]))
            v = (space.ortho.T @ mono[:, 0])
            nv = np.linalg.norm(v)
            if nv == 0.0:
                out[j] = 0.0
                continue
            a = v.conj() / nv
            out[j] = section_norm_sq(space, a, np.array([z0]), chart=ch)[0]
    return out
