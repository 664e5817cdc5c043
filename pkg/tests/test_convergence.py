"""Tests for convergence diagnostics: L^1 decay, weak limits, radial CDFs."""

import math

import numpy as np
import pytest

from borb.convergence import (
    BandFit,
    ConvergenceTable,
    bergman_band_fit,
    curvature_radial_cdf,
    fs_weak_residuals,
    log_bergman_l1,
    radial_cdf_discrepancy,
    zero_region_fraction,
)
from borb.currents import default_bank
from borb.errors import ConfigurationError
from borb.quadrature import RadialRegion
from borb.zeros import ZeroSet


# ----------------------------------------------------------- radial cdf of c1


def test_curvature_cdf_fs_closed_form(models):
    # FS: mass within r of (1/pi)(1+s^2)^{-2} dA is r^2/(1+r^2).
    cdf = curvature_radial_cdf(models["fs"])
    r = np.geomspace(1e-3, 1e3, 1500)
    assert np.abs(cdf.cdf(r) - r**2 / (1 + r**2)).max() < 5e-5
    assert cdf.total == 1.0
    assert float(cdf.cdf(1e7)) == pytest.approx(1.0, abs=1e-4)


def test_curvature_cdf_football_closed_form(models):
    cdf = curvature_radial_cdf(models["football3"])
    r = np.geomspace(1e-3, 1e3, 1500)
    exact = r ** (2.0 / 3.0) / (1 + r ** (2.0 / 3.0))
    assert np.abs(cdf.cdf(r) - exact).max() < 5e-5


def test_curvature_cdf_circle_unit_step(models):
    cdf = curvature_radial_cdf(models["circle"])
    assert cdf.total == 2.0
    # Unit-mass atom on |z| = 1 plus the smooth FS part.
    jump = float(cdf.mass_within(1.0) - cdf.mass_within(0.9999))
    assert abs(jump - 1.0) < 1e-3
    smooth_half = 0.5  # FS mass within r=1
    assert float(cdf.mass_within(0.9999)) == pytest.approx(smooth_half, abs=1e-3)


def test_curvature_cdf_flat_cap_atom(models):
    model = models["flatcap"]
    cdf = curvature_radial_cdf(model)
    rc = model.cap_radius
    # No curvature strictly inside the cap, then the measured boundary atom.
    assert float(cdf.mass_within(0.8 * rc)) == pytest.approx(0.0, abs=1e-9)
    atom = model.curvature_atoms[0][1]
    assert float(cdf.mass_within(rc)) == pytest.approx(atom, abs=1e-6)
    assert float(cdf.cdf(1e7)) == pytest.approx(1.0, abs=1e-4)


# ---------------------------------------------------------------- discrepancy


def test_discrepancy_of_quantile_atoms_is_small(models):
    n = 400
    q = (np.arange(n) + 0.5) / n
    radii = np.sqrt(q / (1 - q))  # FS radial quantiles
    assert radial_cdf_discrepancy(models["fs"], radii, np.ones(n)) < 0.002


def test_discrepancy_detects_dilated_law(models):
    # Doubling all radii turns F(r) = r^2/(1+r^2) into r^2/(4+r^2);
    # sup of the difference is 1/3 (attained at r = sqrt(2)).
    n = 400
    q = (np.arange(n) + 0.5) / n
    radii = 2.0 * np.sqrt(q / (1 - q))
    d = radial_cdf_discrepancy(models["fs"], radii, np.ones(n))
    assert 0.31 < d < 0.36


def test_discrepancy_counts_mass_at_infinity(models):
    n = 400
    q = (np.arange(n) + 0.5) / n
    radii = np.sqrt(q / (1 - q))
    d = radial_cdf_discrepancy(models["fs"], radii, np.ones(n), mass_at_infinity=float(n))
    assert d > 0.45  # half the empirical mass escaped to infinity
    with pytest.raises(ConfigurationError):
        radial_cdf_discrepancy(models["fs"], [], [], mass_at_infinity=0.0)


def test_discrepancy_sees_reference_atoms(models):
    # Empirical measure missing the unit-circle atom of CIRCLE_MASS must be
    # flagged even when its radii avoid the jump radius entirely.
    n = 200
    q = (np.arange(n) + 0.5) / n
    radii = np.sqrt(q / (1 - q))
    d = radial_cdf_discrepancy(models["circle"], radii, np.ones(n))
    assert d > 0.2


def test_zero_region_fraction_exact():
    zs1 = ZeroSet(
        roots=np.array([0.5 + 0j, 3.0 + 0j]),
        multiplicities=np.array([2, 1]),
        mass_at_infinity=1,
        residuals=np.zeros(2),
    )
    zs2 = ZeroSet(
        roots=np.array([2.0 + 0j]),
        multiplicities=np.array([1]),
        mass_at_infinity=0,
        residuals=np.zeros(1),
    )
    assert zero_region_fraction([zs1, None, zs2], 0.0, 1.0) == pytest.approx(0.25)
    assert zero_region_fraction([zs1], 1.0, 10.0) == pytest.approx(0.25)
    with pytest.raises(ConfigurationError):
        zero_region_fraction([None], 0.0, 1.0)


# ------------------------------------------------------------------- L^1 size


@pytest.mark.parametrize("p", [4, 16])
def test_log_bergman_l1_fs_closed_form(spaces, p):
    # FS kernel is the constant p+1, so the integrand is log(p+1)/p and the
    # base measure has unit mass.
    val = log_bergman_l1(spaces("fs", p))
    assert abs(val - math.log(p + 1) / p) < 1e-10


def test_log_bergman_l1_region_and_error(spaces):
    space = spaces("fs", 4)
    val, err = log_bergman_l1(space, RadialRegion(0.0, 1.0), with_error=True)
    # Half the base mass lies inside |z| <= 1.
    assert abs(val - 0.5 * math.log(5) / 4) < 1e-10
    assert 0.0 <= err < 1e-8


# ------------------------------------------------------------ weak residuals


def test_fs_weak_residuals_vanish_for_fs(models, spaces):
    bank = [default_bank(models["fs"])[i] for i in (0, 24)]
    table = fs_weak_residuals([spaces("fs", 4), spaces("fs", 8)], bank)
    assert [r["p"] for r in table.rows] == [4, 8]
    for row in table.rows:
        for f in bank:
            assert abs(row[f.label]) < 1e-8


def test_fs_weak_residuals_shrink_for_football(models, spaces):
    bank = [default_bank(models["football3"])[i] for i in (0, 24)]
    table = fs_weak_residuals([spaces("football3", 4), spaces("football3", 16)], bank)
    env = {r["p"]: max(abs(r[f.label]) for f in bank) for r in table.rows}
    assert env[16] < env[4]
    assert env[4] > 1e-6  # the p=4 residual is genuinely nonzero


def test_convergence_table_contract():
    table = ConvergenceTable(columns=("p", "x"))
    table.add_row({"p": 8, "x": 1.0})
    table.add_row({"p": 2, "x": 2.0, "extra": 3.0})
    assert [r["p"] for r in table.rows] == [2, 8]
    with pytest.raises(ConfigurationError):
        table.add_row({"p": 4})


# -------------------------------------------------------------------- banding


def test_band_fit_fs_constant_kernel(spaces):
    region = RadialRegion(0.05, 2.0)
    fit = bergman_band_fit([spaces("fs", p) for p in (2, 4, 6, 8)], region)
    # Kernel is identically p+1, so the per-p constants are 1/(p+1).
    for p, c in fit.per_p.items():
        assert c == pytest.approx(1.0 / (p + 1), rel=1e-10)
    assert fit.c_hat == pytest.approx(1.0 / 3.0, rel=1e-10)
    assert fit.stable
    assert fit.upper_band_margin is None and not fit.upper_band_holds
    assert isinstance(fit, BandFit)


def test_band_fit_upper_band_fs(spaces):
    region = RadialRegion(0.05, 2.0)
    fit = bergman_band_fit(
        [spaces("fs", p) for p in (2, 4, 6, 8)], region, check_upper_from=2
    )
    assert fit.upper_band_margin is not None and fit.upper_band_margin > 0.0
    assert fit.upper_band_holds


def test_band_fit_rejects_bad_inputs(spaces):
    with pytest.raises(ConfigurationError):
        bergman_band_fit([], RadialRegion(0.0, 2.0))
    with pytest.raises(ConfigurationError):
        bergman_band_fit([spaces("fs", 2)], RadialRegion(0.0, math.inf))
