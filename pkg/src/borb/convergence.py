"""Convergence experiments: L^1 decay, weak FS convergence, zero statistics.

The limit laws being exercised are asymptotic, so every helper here reports
plain numbers for endpoint comparisons and trend fits; nothing asserts
per-step monotonicity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .currents import curvature_pairing, fs_current_pairing
from .errors import ConfigurationError
from .quadrature import RadialRegion, integrate_orbifold

__all__ = [
    "ConvergenceTable",
    "log_bergman_l1",
    "fs_weak_residuals",
    "CurvatureCdf",
    "curvature_radial_cdf",
    "radial_cdf_discrepancy",
    "zero_region_fraction",
    "BandFit",
    "bergman_band_fit",
]


@dataclass
class ConvergenceTable:
    """Rows keyed by p; cells carry their quadrature/Monte Carlo error mates."""

    columns: tuple
    rows: list = field(default_factory=list)

    def add_row(self, row: dict):
        missing = [c for c in self.columns if c not in row]
        if missing:
            raise ConfigurationError(f"row is missing columns {missing}")
        self.rows.append(dict(row))
        self.rows.sort(key=lambda r: r.get("p", 0))


def log_bergman_l1(
    space,
    region: RadialRegion | None = None,
    *,
    radial_nodes: int = 96,
    angular_nodes: int = 32,
    with_error: bool = False,
):
    """Orbifold integral of |(1/p) log P_p| over a region, base measure."""
    region = region or RadialRegion()

    def integrand(chart, z):
        return np.abs(space.log_kernel(z, chart=chart)) / space.p

    res = integrate_orbifold(
        space.model,
        integrand,
        region=region,
        measure="base",
        radial_nodes=radial_nodes,
        angular_nodes=angular_nodes,
        radial_variable="t",
        extra_breakpoints_down=[r for r in (region.r_lo, region.r_hi) if 0 < r < math.inf],
    )
    return (res.value, res.error_estimate) if with_error else res.value


def fs_weak_residuals(spaces, bank) -> ConvergenceTable:
    """Per-p rows of <(1/p) fs current - c1, f> for every bank function."""
    labels = [f.label for f in bank]
    table = ConvergenceTable(columns=("p", *labels))
    for space in spaces:
        row = {"p": space.p}
        for f in bank:
            row[f.label] = fs_current_pairing(space, f) / space.p - curvature_pairing(
                space.model, f
            )
        table.add_row(row)
    return table


class CurvatureCdf:
    """Radial CDF of the normalized curvature measure of a model.

    The smooth part is integrated cell-exactly (Gauss nodes per cell of a
    dense geometric downstairs grid, mapped into the owning chart), so the
    cumulative values at grid points carry only quadrature error; linear
    interpolation in between adds O(cell width^2).  Circle atoms enter as
    exact steps.  Normalization is by the bundle degree.
    """

    def __init__(self, model, *, grid_points: int = 2400, r_max: float = 1e8):
        self.model = model
        self.atoms = tuple(model.curvature_atoms)
        kinks = [model.swap_radius] + [r for r, _ in self.atoms]
        if model.cap_radius is not None:
            kinks.append(model.cap_radius)
        grid = np.geomspace(1e-4, r_max, grid_points)
        grid = np.unique(np.concatenate([[0.0], grid, kinks]))
        x8, w8 = np.polynomial.legendre.leggauss(8)
        cells = np.zeros(grid.size - 1)
        for chart in model.charts:
            k = chart.cover_exponent
            if chart.side == "core":
                sel = grid[1:] <= model.swap_radius + 1e-300
                lo = grid[:-1][sel] ** (1.0 / k)
                hi = grid[1:][sel] ** (1.0 / k)
            else:
                sel = grid[:-1] >= model.swap_radius - 1e-300
                lo = grid[1:][sel] ** (-1.0 / k)
                hi = grid[:-1][sel] ** (-1.0 / k)
            mid, half = 0.5 * (lo + hi), 0.5 * (hi - lo)
            r = mid[:, None] + half[:, None] * x8[None, :]
            dens = model.curvature_density(chart, r.ravel()).reshape(r.shape)
            vals = (2.0 * math.pi / chart.isotropy_order) * np.einsum(
                "ij,j->i", dens * r, w8
            ) * half
            cells[sel] += vals
        self._grid = grid
        self._cum_smooth = np.concatenate([[0.0], np.cumsum(cells)])
        self.total = float(model.degree)

    def mass_within(self, r) -> np.ndarray:
        """Curvature mass (unnormalized) of the closed disk of radius r."""
        r = np.asarray(r, dtype=np.float64)
        smooth = np.interp(r, self._grid, self._cum_smooth)
        out = smooth
        for radius, mass in self.atoms:
            out = out + mass * (r >= radius)
        return out

    def cdf(self, r) -> np.ndarray:
        return self.mass_within(r) / self.total


def curvature_radial_cdf(model) -> CurvatureCdf:
    return CurvatureCdf(model)


def radial_cdf_discrepancy(
    model, radii, masses, *, mass_at_infinity: float = 0.0, reference: CurvatureCdf | None = None
) -> float:
    """sup_r |empirical radial CDF - curvature radial CDF|.

    The empirical measure consists of weighted atoms at the given radii
    (plus optional mass at infinity, which counts in the normalization but
    never enters the CDF).  Both CDFs are right-continuous steps/curves;
    the supremum is attained at a jump radius of either measure and is
    evaluated from both sides there.
    """
    ref = reference or curvature_radial_cdf(model)
    radii = np.asarray(radii, dtype=np.float64)
    masses = np.asarray(masses, dtype=np.float64)
    total = float(masses.sum()) + mass_at_infinity
    if total <= 0:
        raise ConfigurationError("empirical measure must have positive mass")
    order = np.argsort(radii)
    r_sorted = radii[order]
    cum = np.cumsum(masses[order]) / total
    jumps = np.concatenate([r_sorted, [a for a, _ in ref.atoms]])
    jumps = np.unique(jumps)
    emp_at = np.searchsorted(r_sorted, jumps, side="right")
    emp_before = np.searchsorted(r_sorted, jumps, side="left")
    cum0 = np.concatenate([[0.0], cum])
    f_emp_hi = cum0[emp_at]
    f_emp_lo = cum0[emp_before]
    f_ref_hi = ref.cdf(jumps)
    f_ref_lo = ref.cdf(np.maximum(jumps - 1e-12 * (1.0 + jumps), 0.0))
    disc = np.maximum(np.abs(f_emp_hi - f_ref_hi), np.abs(f_emp_lo - f_ref_lo))
    disc = np.maximum(disc, np.abs(f_emp_lo - f_ref_hi))
    disc = np.maximum(disc, np.abs(f_emp_hi - f_ref_lo))
    return float(disc.max())


def zero_region_fraction(zero_sets, r_lo: float, r_hi: float) -> float:
    """Mean fraction of total zero mass lying in the open annulus."""
    fracs = [
        zs.mass_in(r_lo, r_hi) / zs.total_mass for zs in zero_sets if zs is not None
    ]
    if not fracs:
        raise ConfigurationError("no accepted zero sets")
    return float(np.mean(fracs))


@dataclass(frozen=True)
class BandFit:
    """Fitted kernel-band constant and its stability diagnostics."""

    c_hat: float
    per_p: dict
    stable: bool
    upper_band_margin: float | None = None

    @property
    def upper_band_holds(self) -> bool:
        return self.upper_band_margin is not None and self.upper_band_margin >= 0.0


def _probe_grid(region: RadialRegion, radii: int, angles: int) -> np.ndarray:
    r = np.geomspace(max(region.r_lo, 1e-3), region.r_hi, radii)
    th = 2.0 * np.pi * (np.arange(angles) + 0.37) / angles
    return np.outer(r, np.exp(1j * th)).ravel()


def bergman_band_fit(
    spaces,
    region: RadialRegion,
    *,
    radii: int = 24,
    angles: int = 8,
    ball_radius: float = 0.1,
    check_upper_from: int = 16,
) -> BandFit:
    """Fit the lower-band constant of the kernel and probe the upper band.

    C_hat is the largest over the p grid of exp(-min_z log P_p(z)) on the
    probe grid; stability means C_hat varies by < 2x across the upper half
    of the grid.  The upper band is checked with ball radius r and psi =
    model weight minus its smooth Fubini-Study part: (1/p) log P_p(z) <=
    (log C_hat - 2 log r)/p + 2 (max_ball psi - psi(z)); the reported
    margin is the minimum slack over probes and p >= check_upper_from.
    """
    spaces = sorted(spaces, key=lambda s: s.p)
    if not spaces or not math.isfinite(region.r_hi):
        raise ConfigurationError("band fit needs spaces and a bounded region")
    probes = _probe_grid(region, radii, angles)
    model = spaces[0].model

    def psi(x):
        return model.weight_affine(x) - 0.5 * np.log1p(np.abs(x) ** 2)

    per_p = {}
    for space in spaces:
        m_p = float(np.min(space.log_kernel(probes)))
        per_p[space.p] = math.exp(-m_p)
    c_hat = max(per_p.values())
    ps = sorted(per_p)
    upper = [per_p[p] for p in ps[len(ps) // 2 :]]
    stable = max(upper) / min(upper) < 2.0

    margin = None
    upper_spaces = [s for s in spaces if s.p >= check_upper_from]
    if upper_spaces:
        r_ball = ball_radius
        ball_max = np.empty(probes.size)
        for j, z in enumerate(probes):
            rr = np.linspace(max(abs(z) - r_ball, 0.0), abs(z) + r_ball, 65)
            ball_max[j] = float(np.max(psi(rr.astype(np.complex128))))
        psi_z = psi(probes)
        margin = math.inf
        for space in upper_spaces:
            lhs = space.log_kernel(probes) / space.p
            rhs = (math.log(c_hat) - 2.0 * math.log(r_ball)) / space.p + 2.0 * (
                ball_max - psi_z
            )
            margin = min(margin, float(np.min(rhs - lhs)))
    return BandFit(c_hat=c_hat, per_p=per_p, stable=stable, upper_band_margin=margin)
