"""Bidegree-(1,1) currents on the model surfaces and their pairings.

Everything is paired in the downstairs affine coordinate.  A pairing with
dd^c of a potential v is computed as integral of v * (1/2pi) Laplacian(f)
over a polar grid adapted to the test function, so distributional parts of
dd^c v (point and circle atoms) are picked up exactly via integration by
parts.  Normalization: dd^c log|z - a| = delta_a.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ._roots import solve_polynomial
from .errors import (
    ConfigurationError,
    UnsupportedConfigurationError,
    UnsupportedSupportError,
)
from .quadrature import Panelization, graded_breakpoints, polar_nodes, radial_rule, smoothstep7
from .util import format_float

__all__ = [
    "GaussBump",
    "RadialCap",
    "CurrentSample",
    "ddc_pair",
    "pair_log_point",
    "circle_mean",
    "curvature_pairing",
    "fs_current_pairing",
    "fs_identity_residual",
    "lelong_poincare_residual",
    "section_dense_coefficients",
    "pair_current",
    "current_total_mass",
    "current_consistency",
    "scale_current",
    "branched_pullback",
    "branched_pushforward",
    "cover_average",
    "cover_lift",
    "default_bank",
    "bank_records",
    "bank_from_records",
]

_GOLDEN_ANGLE = 2.0 * math.pi * (1.0 - 2.0 / (1.0 + math.sqrt(5.0)))


@dataclass(frozen=True)
class GaussBump:
    """Gaussian test bump exp(-8 rho^2 / width^2), truncated at rho = 2 width.

    The truncated tail is below 1.3e-14 of the peak, so the function is
    treated as compactly supported on the disk of radius 2 width about
    center.  The Laplacian is closed-form and radial about center.
    """

    center: complex
    width: float

    def __post_init__(self):
        if not (self.width > 0 and np.isfinite(self.width)):
            raise ConfigurationError("bump width must be positive and finite")
        object.__setattr__(self, "center", complex(self.center))

    @property
    def support_radius(self) -> float:
        return 2.0 * self.width

    @property
    def alpha(self) -> float:
        return 8.0 / self.width**2

    @property
    def sup_value(self) -> float:
        return 1.0

    @property
    def sup_laplacian(self) -> float:
        return 4.0 * self.alpha

    @property
    def label(self) -> str:
        return (
            f"gauss:c={format_float(self.center.real)},{format_float(self.center.imag)}"
            f":w={format_float(self.width)}"
        )

    def value(self, z: np.ndarray) -> np.ndarray:
        rho2 = np.abs(np.asarray(z, dtype=np.complex128) - self.center) ** 2
        out = np.exp(-self.alpha * rho2)
        return np.where(rho2 <= self.support_radius**2, out, 0.0)

    def laplacian_radial(self, rho: np.ndarray) -> np.ndarray:
        rho = np.asarray(rho, dtype=np.float64)
        a = self.alpha
        out = (4.0 * a * a * rho**2 - 4.0 * a) * np.exp(-a * rho**2)
        return np.where(rho <= self.support_radius, out, 0.0)

    def laplacian(self, z: np.ndarray) -> np.ndarray:
        return self.laplacian_radial(np.abs(np.asarray(z, dtype=np.complex128) - self.center))

    def pair_breakpoints(self) -> tuple[float, ...]:
        return graded_breakpoints(self.support_radius, levels=6, ratio=4.0)

    def to_record(self) -> dict:
        return {
            "kind": "GAUSS_BUMP",
            "center_re": self.center.real,
            "center_im": self.center.imag,
            "width": self.width,
        }


@dataclass(frozen=True)
class RadialCap:
    """Radial plateau: 1 on |z| <= r_inner, C^3 ramp to 0 over margin."""

    r_inner: float
    margin: float

    def __post_init__(self):
        if not (self.r_inner > 0 and self.margin > 0):
            raise ConfigurationError("cap needs positive inner radius and margin")

    center: complex = 0.0 + 0.0j

    @property
    def support_radius(self) -> float:
        return self.r_inner + self.margin

    @property
    def sup_value(self) -> float:
        return 1.0

    @property
    def sup_laplacian(self) -> float:
        rho = np.linspace(self.r_inner, self.support_radius, 4001)
        return float(np.max(np.abs(self.laplacian_radial(rho))))

    @property
    def label(self) -> str:
        return f"cap:r0={format_float(self.r_inner)}:m={format_float(self.margin)}"

    def value(self, z: np.ndarray) -> np.ndarray:
        rho = np.abs(np.asarray(z, dtype=np.complex128))
        u = (rho - self.r_inner) / self.margin
        return 1.0 - smoothstep7(u)

    def laplacian_radial(self, rho: np.ndarray) -> np.ndarray:
        rho = np.asarray(rho, dtype=np.float64)
        u = (rho - self.r_inner) / self.margin
        inside = (u > 0.0) & (u < 1.0)
        uc = np.clip(u, 0.0, 1.0)
        d1 = 140.0 * uc**3 * (1.0 - uc) ** 3 / self.margin
        d2 = 420.0 * uc**2 * (1.0 - uc) ** 2 * (1.0 - 2.0 * uc) / self.margin**2
        lap = -(d2 + d1 / np.maximum(rho, 1e-300))
        return np.where(inside, lap, 0.0)

    def laplacian(self, z: np.ndarray) -> np.ndarray:
        return self.laplacian_radial(np.abs(np.asarray(z, dtype=np.complex128)))

    def pair_breakpoints(self) -> tuple[float, ...]:
        mid = self.r_inner + 0.5 * self.margin
        return (self.r_inner, mid, self.support_radius)

    def to_record(self) -> dict:
        return {"kind": "RADIAL_CAP", "r_inner": self.r_inner, "margin": self.margin}


def bank_records(bank) -> list[dict]:
    return [f.to_record() for f in bank]


def bank_from_records(records) -> list:
    out = []
    for rec in records:
        kind = rec.get("kind")
        if kind == "GAUSS_BUMP":
            out.append(GaussBump(complex(rec["center_re"], rec["center_im"]), rec["width"]))
        elif kind == "RADIAL_CAP":
            out.append(RadialCap(rec["r_inner"], rec["margin"]))
        else:
            raise ConfigurationError(f"unknown test-function kind {kind!r}")
    return out


# ---------------------------------------------------------------------------
# scalar pairings


def _pair_grid(f, radial_nodes: int, angular_nodes: int):
    """Polar nodes about f's center weighted by (1/2pi) Laplacian(f) dA."""
    pan = Panelization(f.pair_breakpoints(), radial_nodes, angular_nodes, "r")
    z, w = polar_nodes(pan)
    w = w * f.laplacian_radial(np.abs(z)) / (2.0 * math.pi)
    keep = w != 0.0
    return f.center + z[keep], w[keep]


def ddc_pair(v, f, *, radial_nodes: int = 64, angular_nodes: int = 256) -> float:
    """Pairing <dd^c v, f> = integral v * (1/2pi) Laplacian(f) dA.

    v is a callable on downstairs affine points.  Exact for the
    distributional parts of dd^c v that sit where f is locally constant;
    point singularities of v at f's center are absorbed by a graded grid.
    """
    z, w = _pair_grid(f, radial_nodes, angular_nodes)
    vals = np.asarray(v(z), dtype=np.float64)
    return float(np.dot(w, vals))


def pair_log_point(a: complex, f, *, radial_nodes: int = 64) -> float:
    """<dd^c log|z - a|, f> = f(a), computed by radial reduction.

    The angular mean of log|z - a| over the circle of radius rho about f's
    center is log max(rho, d) with d = |a - center|, leaving a 1-D radial
    integral with a single kink that gets its own panel boundary.
    """
    d = abs(complex(a) - complex(f.center))
    hi = f.support_radius
    if d >= hi:
        return 0.0
    pts = set(f.pair_breakpoints())
    if d == 0.0:
        pts.update(graded_breakpoints(hi, levels=6, ratio=4.0))
    else:
        pts.add(d)
    bp = tuple(sorted(p for p in pts if p <= hi))
    pan = Panelization(bp, radial_nodes, angular_nodes=4, radial_variable="r")
    rho, u = radial_rule(pan)
    g = f.laplacian_radial(rho) * np.log(np.maximum(rho, d if d > 0.0 else rho))
    return float(np.dot(u, g))


def _circle_nodes_for(f, radius: float) -> int:
    """Trapezoid count resolving f on an origin circle of given radius."""
    width = getattr(f, "width", None)
    if width is None:
        return 64
    k = 33.0 * (abs(f.center) + f.support_radius) / width + 64.0
    return int(32 * math.ceil(k / 32.0))


def circle_mean(f, radius: float, nodes: int | None = None) -> float:
    """Average of f over the circle |z| = radius (about the origin)."""
    if nodes is None:
        nodes = _circle_nodes_for(f, radius)
    theta = 2.0 * np.pi * np.arange(nodes) / nodes
    return float(np.mean(f.value(radius * np.exp(1j * theta))))


_CURV_CACHE: dict = {}


def _origin_angular_nodes(f, cover_exponent: int = 1) -> int:
    return max(256, cover_exponent * _circle_nodes_for(f, 0.0))


def curvature_pairing(model, f, *, radial_nodes: int = 64, angular_nodes: int | None = None) -> float:
    """<c1 of the model metric, f> from the analytic curvature descriptor.

    Sums the smooth per-chart curvature density by orbifold quadrature and
    the circle atoms by exact circle averages.  Cached per (model, f).
    """
    key = (model.key(), f.label, radial_nodes, angular_nodes)
    hit = _CURV_CACHE.get(key)
    if hit is not None:
        return hit
    from .quadrature import orbifold_nodes

    extra = [abs(f.center) - f.support_radius, abs(f.center), abs(f.center) + f.support_radius]
    if complex(f.center) == 0:
        extra += list(f.pair_breakpoints())
    total = 0.0
    for chart, z, w in orbifold_nodes(
        model,
        measure="area",
        radial_nodes=radial_nodes,
        angular_nodes=angular_nodes or _origin_angular_nodes(f, model.m),
        radial_variable="t",
        extra_breakpoints_down=[r for r in extra if r > 0],
    ):
        dens = model.curvature_density(chart, np.abs(z))
        mask = dens != 0.0
        if mask.any():
            x = model.chart_to_affine(chart, z[mask])
            total += float(np.dot(w[mask] * dens[mask], f.value(x)))
    for radius, mass in model.curvature_atoms:
        total += mass * circle_mean(f, radius)
    _CURV_CACHE[key] = total
    return total


def fs_current_pairing(space, f, *, radial_nodes: int = 64, angular_nodes: int | None = None) -> float:
    """<dd^c(fs_potential), f> with the common zero at the origin split off.

    The minimal basis exponent contributes an exact point mass at 0; the
    reduced potential is smooth on supports away from common zeros and is
    paired by quadrature.  Cached on the space.
    """
    from .sections import fs_potential

    an = angular_nodes or _fs_angular_nodes(space)
    key = ("fs", f.label, radial_nodes, an)
    hit = space._pair_cache.get(key)
    if hit is not None:
        return hit
    mu = space.min_exponent_downstairs
    total = mu * pair_log_point(0.0, f, radial_nodes=radial_nodes)
    total += ddc_pair(
        lambda z: fs_potential(space, z, reduce_min=True),
        f,
        radial_nodes=radial_nodes,
        angular_nodes=an,
    )
    space._pair_cache[key] = total
    return total


def _fs_angular_nodes(space) -> int:
    down_deg = space.zero_budget
    return max(256, int(32 * math.ceil((4 * down_deg + 64) / 32)))


def fs_identity_residual(space, f, *, radial_nodes: int = 64) -> float:
    """Residual of 2 dd^c(fs potential) = 2p c1 + dd^c log(kernel) against f.

    The three terms are paired by independent routes: the Fubini-Study
    current through the reduced potential in the affine frame, the
    curvature from the analytic descriptor, and the kernel term from the
    per-chart log kernel (frame-invariant, so it never touches the affine
    transition that the potential route depends on).  The origin atom of
    each singular term is split off exactly via pair_log_point.
    """
    if space.twist:
        raise UnsupportedConfigurationError(
            "the kernel identity is implemented for untwisted spaces only"
        )
    p = space.p
    an = _fs_angular_nodes(space)
    fs_pair = fs_current_pairing(space, f, radial_nodes=radial_nodes, angular_nodes=an)
    curv = curvature_pairing(space.model, f, radial_nodes=radial_nodes)
    mu = space.min_exponent_downstairs
    plp = pair_log_point(0.0, f, radial_nodes=radial_nodes)

    def log_kernel_reduced(z):
        z = np.asarray(z, dtype=np.complex128)
        out = space.log_kernel(z)
        if mu:
            out = out - 2.0 * mu * np.log(np.abs(z))
        return out

    logp_pair = 2.0 * mu * plp + ddc_pair(
        log_kernel_reduced, f, radial_nodes=radial_nodes, angular_nodes=an
    )
    return abs(2.0 * fs_pair - 2.0 * p * curv - logp_pair)


def section_dense_coefficients(space, coeffs: np.ndarray) -> np.ndarray:
    """Downstairs dense polynomial coefficients of a section (ascending)."""
    a = np.asarray(coeffs, dtype=np.complex128)
    if a.shape != (space.dim,):
        raise ConfigurationError("coefficient vector length must match the space dimension")
    mono = space.ortho @ a
    dense = np.zeros(space.zero_budget + 1, dtype=np.complex128)
    dense[space.downstairs_exponents()] = mono
    return dense


def lelong_poincare_residual(coeffs: np.ndarray, space, f, *, radial_nodes: int = 64) -> float:
    """Residual of [S=0] = p c1 + dd^c log|S|_h against a test function.

    The zero divisor side evaluates f on the root list; the right side
    pairs the analytic curvature plus the potential log|c| + sum of
    log|z - root| - p * weight, the log points by exact radial reduction.
    """
    model = space.model
    dense = section_dense_coefficients(space, coeffs)
    roots, mults, lead_def, _ = solve_polynomial(dense)
    if int(mults.sum()) + lead_def != space.zero_budget:
        raise ConfigurationError("zero mass budget violated; inconsistent root data")
    lhs = float(sum(m * f.value(np.array([r]))[0] for r, m in zip(roots, mults)))

    nz = np.flatnonzero(dense != 0)
    c_eff = dense[nz[-1]]
    an = _fs_angular_nodes(space)
    key = (model.key(), "lelong-weight", f.label, radial_nodes, an)
    cached = _CURV_CACHE.get(key)
    if cached is None:
        phi_pair = ddc_pair(model.weight_affine, f, radial_nodes=radial_nodes, angular_nodes=an)
        const_pair = ddc_pair(lambda z: np.ones(z.shape), f, radial_nodes=radial_nodes, angular_nodes=an)
        cached = (phi_pair, const_pair)
        _CURV_CACHE[key] = cached
    phi_pair, const_pair = cached

    pot_pair = math.log(abs(c_eff)) * const_pair - space.p * phi_pair
    pot_pair += float(sum(m * pair_log_point(r, f, radial_nodes=radial_nodes) for r, m in zip(roots, mults)))
    rhs = space.p * curvature_pairing(model, f, radial_nodes=radial_nodes) + pot_pair
    return abs(lhs - rhs)


# ---------------------------------------------------------------------------
# current samples and the branched-cover calculus


@dataclass(frozen=True, eq=False)
class CurrentSample:
    """A (1,1) current: smooth density + point atoms + circle atoms.

    density is a callable giving the absolutely continuous part with
    respect to plain area; density_rings lists radii where the density may
    be nonsmooth.  potential, when present, is a redundant representation
    with current = dd^c potential (consistency is asserted in tests, not
    assumed).
    """

    density: object = None
    support_radius: float = 0.0
    density_rings: tuple = ()
    point_atoms: tuple = ()
    circle_atoms: tuple = ()
    potential: object = None
    label: str = ""

    def __post_init__(self):
        if self.density is not None and not (
            np.isfinite(self.support_radius) and self.support_radius > 0
        ):
            raise UnsupportedSupportError("a density part needs a finite support radius")
        for a, _m in self.point_atoms:
            if not np.isfinite(abs(complex(a))):
                raise UnsupportedSupportError("point atoms must sit in the affine chart")
        for r, _m in self.circle_atoms:
            if not (0.0 < r < math.inf):
                raise UnsupportedSupportError("circle atoms need a finite positive radius")


def pair_current(T: CurrentSample, f, *, radial_nodes: int = 64, angular_nodes: int | None = None) -> float:
    """Pairing <T, f> from the density/atom representation."""
    total = 0.0
    if T.density is not None:
        pts = {0.0, T.support_radius}
        pts.update(r for r in T.density_rings if 0.0 < r < T.support_radius)
        f_rings = [abs(f.center) - f.support_radius, abs(f.center), abs(f.center) + f.support_radius]
        if complex(f.center) == 0:
            # kink circles of a radial test function are origin circles
            f_rings += list(f.pair_breakpoints())
        for r in f_rings:
            if 0.0 < r < T.support_radius:
                pts.add(r)
        pan = Panelization(
            tuple(sorted(pts)),
            radial_nodes,
            angular_nodes or _origin_angular_nodes(f),
            "r",
        )
        z, w = polar_nodes(pan)
        total += float(np.dot(w * np.asarray(T.density(z), dtype=np.float64), f.value(z)))
    for a, mass in T.point_atoms:
        total += mass * float(f.value(np.array([a]))[0])
    for r, mass in T.circle_atoms:
        total += mass * circle_mean(f, r)
    return total


def pair_current_potential(T: CurrentSample, f, *, radial_nodes: int = 64, angular_nodes: int = 256) -> float:
    """Pairing through the redundant potential representation."""
    if T.potential is None:
        raise ConfigurationError("current carries no potential representation")
    return ddc_pair(T.potential, f, radial_nodes=radial_nodes, angular_nodes=angular_nodes)


def current_consistency(T: CurrentSample, f) -> float:
    """Difference between the potential and density/atom pairings."""
    return abs(pair_current(T, f) - pair_current_potential(T, f))


def current_total_mass(T: CurrentSample, *, radial_nodes: int = 96) -> float:
    total = sum(m for _, m in T.point_atoms) + sum(m for _, m in T.circle_atoms)
    if T.density is not None:
        pts = {0.0, T.support_radius}
        pts.update(r for r in T.density_rings if 0.0 < r < T.support_radius)
        pan = Panelization(tuple(sorted(pts)), radial_nodes, 256, "r")
        z, w = polar_nodes(pan)
        total += float(np.dot(w, np.asarray(T.density(z), dtype=np.float64)))
    return total


def scale_current(T: CurrentSample, s: float) -> CurrentSample:
    dens = None if T.density is None else (lambda z, g=T.density: s * np.asarray(g(z)))
    pot = None if T.potential is None else (lambda z, v=T.potential: s * np.asarray(v(z)))
    return CurrentSample(
        density=dens,
        support_radius=T.support_radius,
        density_rings=T.density_rings,
        point_atoms=tuple((a, s * m) for a, m in T.point_atoms),
        circle_atoms=tuple((r, s * m) for r, m in T.circle_atoms),
        potential=pot,
        label=T.label,
    )


def _check_disk_support(T: CurrentSample):
    if T.density is not None and not np.isfinite(T.support_radius):
        raise UnsupportedSupportError("current must be supported in the affine disk chart")


def branched_pullback(T: CurrentSample, m: int) -> CurrentSample:
    """Pullback of a current under the branched cover y -> y^m.

    Potentials compose; densities pick up the Jacobian m^2 |y|^(2m-2);
    a point atom away from 0 lifts to its m preimages with the same mass
    each; circle atoms and radii map by rho -> rho^(1/m).
    """
    if not (isinstance(m, int) and m >= 1):
        raise ConfigurationError("cover order must be a positive integer")
    _check_disk_support(T)
    if m == 1:
        return T

    dens = None
    if T.density is not None:
        dens = lambda y, g=T.density: (
            m * m * np.abs(y) ** (2 * m - 2) * np.asarray(g(y**m), dtype=np.float64)
        )
    atoms = []
    for a, mass in T.point_atoms:
        if a == 0:
            atoms.append((0.0 + 0.0j, m * mass))
        else:
            base = complex(a) ** (1.0 / m)
            for k in range(m):
                atoms.append((base * np.exp(2j * np.pi * k / m), mass))
    pot = None
    if T.potential is not None:
        pot = lambda y, v=T.potential: np.asarray(v(y**m))
    return CurrentSample(
        density=dens,
        support_radius=T.support_radius ** (1.0 / m) if T.density is not None else 0.0,
        density_rings=tuple(r ** (1.0 / m) for r in T.density_rings),
        point_atoms=tuple(atoms),
        circle_atoms=tuple((r ** (1.0 / m), m * mass) for r, mass in T.circle_atoms),
        potential=pot,
        label=T.label,
    )


def branched_pushforward(T: CurrentSample, m: int) -> CurrentSample:
    """Pushforward under y -> y^m (fiber sum; masses are conserved)."""
    if not (isinstance(m, int) and m >= 1):
        raise ConfigurationError("cover order must be a positive integer")
    _check_disk_support(T)
    if m == 1:
        return T

    def _preimages(x):
        x = np.asarray(x, dtype=np.complex128)
        base = np.where(x != 0, x, 1.0) ** (1.0 / m)
        ks = np.exp(2j * np.pi * np.arange(m) / m)
        ys = base[..., None] * ks
        return np.where(x[..., None] != 0, ys, 0.0)

    dens = None
    if T.density is not None:

        def dens(x, g=T.density):
            ys = _preimages(x)
            vals = np.asarray(g(ys.ravel()), dtype=np.float64).reshape(ys.shape)
            jac = m * m * np.abs(ys) ** (2 * m - 2)
            out = np.where(jac > 0, vals / np.maximum(jac, 1e-300), 0.0)
            return out.sum(axis=-1)

    pot = None
    if T.potential is not None:

        def pot(x, v=T.potential):
            ys = _preimages(x)
            return np.asarray(v(ys.ravel()), dtype=np.float64).reshape(ys.shape).sum(axis=-1)

    return CurrentSample(
        density=dens,
        support_radius=T.support_radius**m if T.density is not None else 0.0,
        density_rings=tuple(r**m for r in T.density_rings),
        point_atoms=tuple((complex(a) ** m, mass) for a, mass in T.point_atoms),
        circle_atoms=tuple((r**m, mass) for r, mass in T.circle_atoms),
        potential=pot,
        label=T.label,
    )


def cover_average(T: CurrentSample, m: int) -> CurrentSample:
    """Downstairs current (1/m) * pushforward, the inverse of cover_lift."""
    return scale_current(branched_pushforward(T, m), 1.0 / m)


def cover_lift(T: CurrentSample, m: int) -> CurrentSample:
    """Upstairs current: plain pullback under y -> y^m."""
    return branched_pullback(T, m)


# ---------------------------------------------------------------------------
# the fixed test bank


def default_bank(model) -> list:
    """Deterministic pairing bank: 24 Gaussian bumps plus 4 radial caps.

    Centers keep at least 2.2 widths away from the model's singular locus
    (the weight-kink circle for the circle models, the cone point for the
    branched models), so every bank support sees smooth weights only.
    """
    from .models import ModelKind

    bumps = []
    if model.kind in (ModelKind.CIRCLE_MASS, ModelKind.FLAT_CAP):
        g = 1.0 if model.kind is ModelKind.CIRCLE_MASS else model.cap_radius
        widths = (0.1 * g, 0.16 * g, 0.25 * g)
        offsets = (2.4, 3.2, 4.5, 2.8)
        for i, w in enumerate(widths):
            radii = [max(g - off * w, 0.04 * g) for off in offsets]
            radii += [g + off * w for off in (2.4, 3.2, 4.2, 2.8)]
            for j, r in enumerate(radii):
                theta = (8 * i + j) * _GOLDEN_ANGLE + 0.611
                bumps.append(GaussBump(r * np.exp(1j * theta), w))
        caps = [
            RadialCap(0.45 * g, 0.35 * g),
            RadialCap(1.1 * g, 0.4 * g),
            RadialCap(1.55 * g, 0.45 * g),
            RadialCap(0.3 * g, 0.5 * g),
        ]
    else:
        widths = (0.15, 0.25, 0.4)
        if model.kind is ModelKind.FOOTBALL:
            bases = (0.0, 0.15, 0.4, 0.7, 1.0, 1.35, 1.75, 0.55)
            radii_for = lambda w: [2.2 * w + b for b in bases]
        else:
            bases = (0.0, 0.35, 0.7, 1.05, 1.4, 1.8, 2.3, 0.5)
            radii_for = lambda w: list(bases)
        for i, w in enumerate(widths):
            for j, r in enumerate(radii_for(w)):
                theta = (8 * i + j) * _GOLDEN_ANGLE + 0.611
                bumps.append(GaussBump(r * np.exp(1j * theta), w))
        caps = [
            RadialCap(0.45, 0.35),
            RadialCap(1.1, 0.4),
            RadialCap(1.55, 0.45),
            RadialCap(0.3, 0.5),
        ]
    return bumps + caps
