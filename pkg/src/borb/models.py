"""Catalog of model orbifold curves with hermitian line bundle weights.

Four models on the underlying Riemann sphere, each described by two polar
charts (a core chart around 0 and one around infinity) and a circularly
symmetric weight per chart:

* FS_SPHERE: round metric weight, degree 1, smooth positive curvature.
* FOOTBALL(m): quotient of the round sphere by the rotation of order m.
  Both charts are upstairs coordinates carrying the Z_m action through
  the covering map y -> y^m; sections are realized by invariant
  monomials.  Degree 1, two orbifold points.
* CIRCLE_MASS: round weight plus the subharmonic kink max(log|z|, 0);
  curvature = smooth round part (mass 1) + uniform measure on the unit
  circle (mass 1).  Degree 2.
* FLAT_CAP(c): weight max(log(1+|z|^2), c)/2, flat (zero curvature) on
  the cap 1+|z|^2 < e^c, with the complementary mass sitting as a uniform
  atom on the cap boundary circle.  Degree 1.

All weights are radial, so curvature data splits into a radial smooth
density per chart plus circle atoms recorded in the downstairs coordinate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Sequence

import numpy as np

from .errors import ConfigurationError, DomainError
from .quadrature import Panelization, radial_rule

__all__ = [
    "ModelKind",
    "ModelSpec",
    "Chart",
    "OrbifoldModel",
    "build_model",
    "isotropy_order",
    "curvature_total_mass",
]


class ModelKind(str, Enum):
    FS_SPHERE = "FS_SPHERE"
    FOOTBALL = "FOOTBALL"
    CIRCLE_MASS = "CIRCLE_MASS"
    FLAT_CAP = "FLAT_CAP"


_INTRINSIC_DEGREE = {
    ModelKind.FS_SPHERE: 1,
    ModelKind.FOOTBALL: 1,
    ModelKind.CIRCLE_MASS: 2,
    ModelKind.FLAT_CAP: 1,
}


@dataclass(frozen=True)
class ModelSpec:
    """Requested model parameters.

    m is the isotropy order (FOOTBALL only, >= 2); c the cap height
    (FLAT_CAP only, > 0, default log 2); bundle_degree must match the
    model's intrinsic degree when given.  twist_canonical asks section
    spaces of this model to carry the canonical-bundle twist by default.
    """

    kind: ModelKind | str
    m: int = 1
    c: float | None = None
    bundle_degree: int | None = None
    twist_canonical: bool = False


@dataclass(frozen=True)
class Chart:
    """One polar chart: coordinate y, group Z_m acting by rotation.

    The covering map sends y to y^cover_exponent downstairs (core side)
    or to y^(-cover_exponent) (infinity side).  core_radius is the chart
    coordinate radius of the region this chart owns under the sharp
    two-chart partition.
    """

    label: str
    isotropy_order: int
    cover_exponent: int
    core_radius: float
    side: str  # "core" | "inf"


def _as_kind(kind) -> ModelKind:
    try:
        return ModelKind(kind)
    except ValueError:
        raise ConfigurationError(f"unknown model kind {kind!r}") from None


@dataclass(frozen=True)
class OrbifoldModel:
    """A built model: charts, weight, base form and curvature descriptor."""

    spec: ModelSpec
    kind: ModelKind
    m: int
    c: float | None
    degree: int
    charts: tuple[Chart, Chart]
    swap_radius: float
    cap_radius: float | None
    curvature_atoms: tuple[tuple[float, float], ...]  # downstairs (radius, mass)

    def key(self) -> str:
        """Stable identity string for cache keys."""
        return f"{self.kind.value}:m={self.m}:c={self.c!r}:D={self.degree}"

    def chart(self, label: str) -> Chart:
        for ch in self.charts:
            if ch.label == label:
                return ch
        raise DomainError(f"model {self.kind.value} has no chart {label!r}")

    @property
    def core_chart(self) -> Chart:
        return self.charts[0]

    @property
    def inf_chart(self) -> Chart:
        return self.charts[1]

    # -- weight and measures (radial, per chart) ------------------------------

    def weight_radial(self, chart: Chart, r: np.ndarray) -> np.ndarray:
        """Local psh weight phi of the full-degree bundle at chart radius r."""
        r = np.asarray(r, dtype=np.float64)
        fs = 0.5 * np.log1p(r * r)
        if self.kind is ModelKind.FS_SPHERE:
            return fs
        if self.kind is ModelKind.FOOTBALL:
            return self.m * fs
        if self.kind is ModelKind.CIRCLE_MASS:
            return fs + np.log(np.maximum(r, 1.0))
        # FLAT_CAP
        out = np.array(fs, copy=True)
        if chart.side == "core":
            np.maximum(out, 0.5 * self.c, out=out)
        else:
            inner = 1.0 / self.cap_radius
            mask = r >= inner
            if mask.any():
                out[mask] = 0.5 * self.c + np.log(r[mask])
        return out

    def weight(self, chart: Chart, z: np.ndarray) -> np.ndarray:
        return self.weight_radial(chart, np.abs(z))

    def weight_affine(self, x: np.ndarray) -> np.ndarray:
        """Weight evaluated at downstairs affine points (lifting as needed)."""
        x = np.asarray(x, dtype=np.complex128)
        r = np.abs(x)
        out = np.empty(r.shape, dtype=np.float64)
        core = r <= self.swap_radius
        if core.any():
            out[core] = self.weight_radial(self.core_chart, r[core] ** (1.0 / self.m))
        if (~core).any():
            out[~core] = (
                self.weight_radial(self.inf_chart, r[~core] ** (-1.0 / self.m))
                + self.degree * np.log(r[~core])
            )
        return out

    def base_density(self, chart: Chart, r: np.ndarray) -> np.ndarray:
        """Density of the base area form against chart Lebesgue measure."""
        r = np.asarray(r, dtype=np.float64)
        dens = (1.0 / math.pi) / (1.0 + r * r) ** 2
        if self.kind is ModelKind.FOOTBALL:
            dens = self.m * dens
        return dens

    def curvature_density(self, chart: Chart, r: np.ndarray) -> np.ndarray:
        """Smooth part of the curvature current, as a chart dA-density."""
        r = np.asarray(r, dtype=np.float64)
        dens = (1.0 / math.pi) / (1.0 + r * r) ** 2
        if self.kind is ModelKind.FOOTBALL:
            return self.m * dens
        if self.kind is ModelKind.FLAT_CAP:
            if chart.side == "core":
                return dens * (r > self.cap_radius)
            return dens * (r < 1.0 / self.cap_radius)
        return dens

    def curvature_density_affine(self, x: np.ndarray) -> np.ndarray:
        """Smooth curvature part as a density against downstairs Lebesgue dA.

        For cone order m > 1 the density has an integrable power singularity
        at the cone points; callers should keep quadrature nodes away from 0.
        """
        x = np.asarray(x, dtype=np.complex128)
        r = np.abs(x)
        out = np.empty(r.shape, dtype=np.float64)
        k = 1.0 / self.m
        jac = k * k
        core = r <= self.swap_radius
        if core.any():
            rc = r[core]
            out[core] = self.curvature_density(self.core_chart, rc**k) * jac * rc ** (
                2.0 * k - 2.0
            )
        if (~core).any():
            ri = r[~core]
            out[~core] = self.curvature_density(self.inf_chart, ri**-k) * jac * ri ** (
                -2.0 * k - 2.0
            )
        return out

    def singular_radii(self, chart: Chart) -> tuple[float, ...]:
        """Chart radii where the weight or curvature density has kinks."""
        if self.kind is ModelKind.CIRCLE_MASS:
            return (1.0,)
        if self.kind is ModelKind.FLAT_CAP:
            return (self.cap_radius,) if chart.side == "core" else (1.0 / self.cap_radius,)
        return ()

    # -- chart/downstairs coordinate plumbing ---------------------------------

    def downstairs_radius(self, chart: Chart, r: np.ndarray) -> np.ndarray:
        r = np.asarray(r, dtype=np.float64)
        k = chart.cover_exponent
        if chart.side == "core":
            return r**k
        with np.errstate(divide="ignore"):
            return np.where(r > 0.0, r ** (-float(k)), np.inf)

    def chart_to_affine(self, chart: Chart, z: np.ndarray) -> np.ndarray:
        """Map chart points to the downstairs affine coordinate (inf allowed)."""
        z = np.asarray(z, dtype=np.complex128)
        k = chart.cover_exponent
        if chart.side == "core":
            return z**k
        out = np.full(z.shape, np.inf + 0j, dtype=np.complex128)
        nz = z != 0
        out[nz] = z[nz] ** (-float(k))
        return out

    def affine_to_chart(self, x: complex) -> tuple[Chart, complex]:
        """Lift a downstairs affine point to its owning chart (principal root)."""
        x = complex(x)
        if not (math.isfinite(x.real) and math.isfinite(x.imag)):
            raise DomainError("affine point must be finite; address the infinity chart directly")
        k = self.core_chart.cover_exponent
        if abs(x) <= self.swap_radius:
            y = x ** (1.0 / k) if k > 1 else x
            return self.core_chart, y
        y = (1.0 / x) ** (1.0 / k) if k > 1 else 1.0 / x
        return self.inf_chart, y


def _radial_integral(density, breakpoints: Sequence[float], nodes: int = 128) -> float:
    pan = Panelization(tuple(breakpoints), nodes, angular_nodes=4)
    r, u = radial_rule(pan)
    return float(2.0 * math.pi * np.dot(u, density(r)))


def build_model(spec: ModelSpec) -> OrbifoldModel:
    """Validate a model spec and construct the catalog entry.

    Raises ConfigurationError naming the violated invariant for invalid
    parameter combinations.  For FLAT_CAP the boundary atom mass is not a
    hardcoded constant: it is measured as the bundle degree minus the
    quadrature mass of the smooth curvature part, closing the mass budget.
    """
    kind = _as_kind(spec.kind)
    degree = _INTRINSIC_DEGREE[kind]
    if spec.bundle_degree is not None and spec.bundle_degree != degree:
        raise ConfigurationError(
            f"bundle_degree {spec.bundle_degree} conflicts with intrinsic degree "
            f"{degree} of {kind.value}"
        )
    if kind is ModelKind.FOOTBALL:
        if not (isinstance(spec.m, int) and spec.m >= 2):
            raise ConfigurationError("FOOTBALL requires integer isotropy order m >= 2")
        m = spec.m
    else:
        if spec.m != 1:
            raise ConfigurationError(f"{kind.value} has trivial isotropy; m must be 1")
        m = 1
    c = spec.c
    if kind is ModelKind.FLAT_CAP:
        c = math.log(2.0) if c is None else float(c)
        if not (math.isfinite(c) and c > 0.0):
            raise ConfigurationError("FLAT_CAP requires a finite cap height c > 0")
        cap_radius = math.sqrt(math.expm1(c))
    else:
        if c is not None:
            raise ConfigurationError(f"{kind.value} takes no cap height c")
        cap_radius = None

    swap = 1.0
    if kind is ModelKind.CIRCLE_MASS or (cap_radius is not None and abs(cap_radius - 1.0) < 1e-9):
        swap = 2.0

    core = Chart("core", m, m, swap ** (1.0 / m), "core")
    infc = Chart("inf", m, m, (1.0 / swap) ** (1.0 / m), "inf")

    atoms: tuple[tuple[float, float], ...] = ()
    if kind is ModelKind.CIRCLE_MASS:
        atoms = ((1.0, 1.0),)
    model = OrbifoldModel(spec, kind, m, c, degree, (core, infc), swap, cap_radius, atoms)
    if kind is ModelKind.FLAT_CAP:
        smooth = 0.0
        for chart in model.charts:
            bp = sorted({0.0, chart.core_radius, *(
                r for r in model.singular_radii(chart) if 0.0 < r < chart.core_radius
            )})
            smooth += _radial_integral(lambda r, ch=chart: model.curvature_density(ch, r), bp)
        atom_mass = degree - smooth
        model = OrbifoldModel(
            spec, kind, m, c, degree, (core, infc), swap, cap_radius,
            ((cap_radius, atom_mass),),
        )
    return model


def isotropy_order(model: OrbifoldModel, point: complex, chart: Chart | str | None = None) -> int:
    """Isotropy order of a point, given downstairs or in an explicit chart.

    With chart=None the point is a downstairs affine coordinate and is
    lifted to its owning chart; otherwise the point is interpreted in the
    named chart's coordinate.
    """
    if chart is None:
        ch, y = model.affine_to_chart(point)
    else:
        ch = model.chart(chart) if isinstance(chart, str) else chart
        y = complex(point)
        if not (math.isfinite(y.real) and math.isfinite(y.imag)):
            raise DomainError("chart point must be finite")
    return ch.isotropy_order if y == 0 else 1


def curvature_total_mass(model: OrbifoldModel, radial_nodes: int = 128) -> float:
    """Total curvature mass: quadrature of the smooth part plus atom masses."""
    total = sum(mass for _, mass in model.curvature_atoms)
    for chart in model.charts:
        bp = sorted({0.0, chart.core_radius, *(
            r for r in model.singular_radii(chart) if 0.0 < r < chart.core_radius
        )})
        total += _radial_integral(
            lambda r, ch=chart: model.curvature_density(ch, r), bp, radial_nodes
        ) / chart.isotropy_order
    return total
