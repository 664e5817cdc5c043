"""Acceptance suite: twelve pass/fail gates, one test function per gate.

Run with ``pytest tests/test_acceptance.py -v`` to get one line per
criterion.  Tolerances are fixed here and must not be loosened; every
expected value is either a closed form derived independently of the
implementation or an exact bookkeeping identity.
"""

import json
import math
import time

import numpy as np
import pytest
from scipy.integrate import quad

from borb.cli import Runner, default_config, normalize_config
from borb.convergence import (
    log_bergman_l1,
    radial_cdf_discrepancy,
    zero_region_fraction,
)
from borb.currents import (
    CurrentSample,
    GaussBump,
    branched_pullback,
    branched_pushforward,
    cover_average,
    cover_lift,
    curvature_pairing,
    default_bank,
    fs_current_pairing,
    fs_identity_residual,
    lelong_poincare_residual,
    pair_current,
)
from borb.quadrature import RadialRegion
from borb.sections import bergman_extremal, bergman_kernel, gram_matrix
from borb.zeros import (
    RngStream,
    expectation_estimate,
    sample_sphere,
    section_zeros,
    sz_variance_constant,
    variance_estimate,
    variance_slope,
    zero_samples,
)

from conftest import FOUR_MODELS

MASTER_SEED = 20260815


@pytest.fixture(scope="module")
def banks(models):
    return {name: default_bank(models[name]) for name in FOUR_MODELS}


def _probe_points(rng, n: int) -> np.ndarray:
    r = np.exp(rng.uniform(math.log(0.05), math.log(20.0), n))
    return r * np.exp(2j * math.pi * rng.uniform(0.0, 1.0, n))


def test_criterion_01_fs_bergman_kernel_is_constant_p_plus_1(spaces):
    t0 = time.time()
    radii = np.geomspace(0.02, 50.0, 25)
    angles = np.exp(2j * math.pi * (np.arange(8) + 0.3) / 8)
    grid = np.outer(radii, angles).ravel()
    assert grid.size == 200
    worst = 0.0
    for p in range(1, 41):
        kern = bergman_kernel(spaces("fs", p), grid)
        worst = max(worst, float(np.abs(kern - (p + 1)).max()) / (p + 1))
    assert worst < 1e-6, f"max relative kernel error {worst:.3e}"
    assert time.time() - t0 < 60.0


def test_criterion_02_extremal_formulation_matches_kernel(spaces):
    rng = np.random.default_rng(MASTER_SEED)
    for name in FOUR_MODELS:
        for p in (2, 8, 32):
            space = spaces(name, p)
            pts = _probe_points(rng, 100)
            kern = bergman_kernel(space, pts)
            extr = bergman_extremal(space, pts)
            rel = float(np.max(np.abs(extr - kern) / kern))
            assert rel < 1e-10, f"{name} p={p}: extremal mismatch {rel:.3e}"


def test_criterion_03_fs_identity_residuals_for_every_bank_function(spaces, banks):
    worst = {}
    for name in FOUR_MODELS:
        bank = banks[name]
        w = 0.0
        for p in range(1, 33):
            space = spaces(name, p)
            for f in bank:
                w = max(w, fs_identity_residual(space, f))
        worst[name] = w
        assert w < 1e-5, f"{name}: worst fs-identity residual {w:.3e}"
    assert all(v < 1e-5 for v in worst.values())


def test_criterion_04_lelong_poincare_residual_and_zero_budget(models, spaces, banks):
    p = 8
    for name in FOUR_MODELS:
        space = spaces(name, p)
        assert space.zero_budget == p * models[name].degree
        f = banks[name][0]
        stream = RngStream(MASTER_SEED, f"lelong/{name}")
        for i in range(100):
            a = sample_sphere(space.dim, stream.child(f"i={i}"))
            zs = section_zeros(a, space)
            assert zs.total_mass == p * models[name].degree  # 100% budget
            res = lelong_poincare_residual(a, space, f)
            assert res < 1e-5, f"{name} sample {i}: residual {res:.3e}"


def test_criterion_05_pushpull_is_m_times_identity_and_replay_inverts():
    f = GaussBump(0.2 + 0.1j, 0.3)
    T = CurrentSample(
        density=lambda z: np.exp(-3.0 * np.abs(z) ** 2),
        support_radius=0.9,
        density_rings=(0.3, 0.6),
        circle_atoms=((0.5, 0.7),),
        label="probe",
    )
    base = pair_current(T, f)
    assert abs(base) > 1e-3
    for m in (2, 3, 5):
        pp = branched_pushforward(branched_pullback(T, m), m)
        err = abs(pair_current(pp, f) - m * base)
        assert err < 1e-8 * max(1.0, m * abs(base)), f"m={m}: push-pull error {err:.3e}"
        replay = cover_average(cover_lift(T, m), m)
        err = abs(pair_current(replay, f) - base)
        assert err < 1e-8 * max(1.0, abs(base)), f"m={m}: replay error {err:.3e}"


def test_criterion_06_cover_norm_factor_and_matched_kernels(spaces):
    p = 6
    for m in (2, 3, 5):
        space = spaces(f"football{m}", p)
        diag = np.diag(gram_matrix(space.model, space.exponents, p)).real

        for k in range(p + 1):
            # Independent downstairs route: the quotient-plane integral of
            # |x^k|^2 e^{-2 p phi} against the transported base form, split
            # at |x| = 1 with the outer piece inverted onto (0, 1].
            def inner(r, k=k):
                return (2.0 / m) * r ** (2 * k + 2.0 / m - 1) * (1 + r ** (2.0 / m)) ** (
                    -p * m - 2
                )

            def outer(u, k=k):
                # r = 1/u on (1, inf); simplified so no huge powers appear.
                return (2.0 / m) * u ** (2 * (p - k) + 2.0 / m - 1) * (
                    1 + u ** (2.0 / m)
                ) ** (-p * m - 2)

            v1, e1 = quad(inner, 0.0, 1.0, epsabs=0.0, epsrel=1e-12, limit=200)
            v2, e2 = quad(outer, 0.0, 1.0, epsabs=0.0, epsrel=1e-12, limit=200)
            down = v1 + v2
            closed = (
                math.factorial(m * k)
                * math.factorial(m * p - m * k)
                / math.factorial(m * p + 1)
            )
            assert e1 + e2 < 1e-9 * down
            assert abs(diag[k] - down) / down < 1e-8, f"m={m} k={k}"
            assert abs(down - closed) / closed < 1e-10

        # Matched points: kernel downstairs == kernel at the principal lift.
        x = np.outer(np.geomspace(0.05, 0.99, 6), np.exp(2j * np.pi * np.arange(5) / 5)).ravel()
        y = x ** (1.0 / m)
        assert np.array_equal(space.log_kernel(x), space.log_kernel(y, chart="core"))


def test_criterion_07_l1_decay_of_normalized_log_kernel(spaces):
    t0 = time.time()
    regions = {
        "fs": [RadialRegion()],
        "football3": [RadialRegion()],
        "circle": [RadialRegion(0.0, 0.8), RadialRegion(1.25, math.inf)],
        "flatcap": [RadialRegion(1.25, math.inf)],
    }
    for name in FOUR_MODELS:
        vals = {
            p: sum(log_bergman_l1(spaces(name, p), reg) for reg in regions[name])
            for p in (8, 64)
        }
        if name == "fs":
            assert abs(vals[8] - math.log(9) / 8) < 1e-6
            assert abs(vals[64] - math.log(65) / 64) < 1e-6
        else:
            assert vals[64] < 0.5 * vals[8], f"{name}: {vals[64]:.4f} vs {vals[8]:.4f}"
    assert time.time() - t0 < 300.0  # stated runtime budget


def test_criterion_08_weak_fs_convergence_envelopes_shrink(models, spaces, banks):
    fractions = {}
    for name in ("football3", "circle", "flatcap"):
        bank = banks[name]
        s8, s64 = spaces(name, 8), spaces(name, 64)
        n_dec = 0
        for f in bank:
            r8 = fs_current_pairing(s8, f) / 8.0 - curvature_pairing(models[name], f)
            r64 = fs_current_pairing(s64, f) / 64.0 - curvature_pairing(models[name], f)
            n_dec += abs(r64) < abs(r8)
        fractions[name] = n_dec / len(bank)
    assert fractions["football3"] == 1.0, f"football fractions {fractions}"
    assert fractions["circle"] >= 0.9, f"circle fraction {fractions['circle']:.3f}"
    assert fractions["flatcap"] >= 0.9, f"flatcap fraction {fractions['flatcap']:.3f}"


def test_criterion_09_sz_expectation_within_3_stderr(spaces, banks):
    n, cells, within = 2000, 0, 0
    for name in ("fs", "circle"):
        stream = RngStream(MASTER_SEED, f"mc/{name}")
        for p in (8, 16, 32):
            space = spaces(name, p)
            for f in banks[name]:
                est = expectation_estimate(space, f, n, stream)
                assert est["n_used"] >= 0.99 * n
                cells += 1
                within += abs(est["mean"]) <= 3.0 * est["stderr"]
    frac = within / cells
    assert cells == 168
    assert frac >= 0.95, f"only {within}/{cells} within 3 stderr"


def test_criterion_10_sz_variance_trend_and_constant(spaces, banks):
    const = sz_variance_constant()
    assert abs(const - 0.494528) < 1e-6
    print(f"variance-bound constant A = {const:.10f}")

    # Fixed test function: the widest origin-centered bump in the bank, the
    # canonical choice whose support is well populated by zeros at every p
    # in the grid (the trend is a plateau statement, so it is only readable
    # once the support holds more than a handful of zeros).
    f = max(
        (g for g in banks["fs"] if getattr(g, "width", 0) and g.center == 0),
        key=lambda g: g.width,
    )
    assert f.label == "gauss:c=0.0,0.0:w=0.4"
    ps = (8, 16, 32, 64)
    vs = [
        variance_estimate(spaces("fs", p), f, 2000, RngStream(MASTER_SEED, "mc/fs"))
        for p in ps
    ]
    slope, lo, hi = variance_slope(ps, vs)
    print(f"fixed f={f.label}: Var(Y_p)={vs}, slope CI [{lo:.3e}, {hi:.3e}]")
    assert lo <= 0.0, f"slope CI [{lo:.3e}, {hi:.3e}] excludes <= 0 (growth)"
    drop = (vs[0] / ps[0] ** 2) / (vs[-1] / ps[-1] ** 2)
    assert drop >= 3.0, f"normalized variance drop {drop:.2f} < 3"


def test_criterion_11_zero_equidistribution_at_p_64(models, spaces):
    n = 200
    stats = {}
    for name in ("fs", "circle", "flatcap"):
        space = spaces(name, 64)
        zsets = [
            z
            for z in zero_samples(space, n, RngStream(MASTER_SEED, f"zeros/{name}"))
            if z is not None
        ]
        assert len(zsets) >= 0.99 * n
        stats[name] = zsets
    radii = np.concatenate([np.abs(z.roots) for z in stats["fs"]])
    masses = np.concatenate([z.multiplicities for z in stats["fs"]]).astype(float)
    inf_mass = float(sum(z.mass_at_infinity for z in stats["fs"]))
    disc = radial_cdf_discrepancy(
        models["fs"], radii, masses, mass_at_infinity=inf_mass
    )
    ring = zero_region_fraction(stats["circle"], 0.9, 1.1)
    inner = zero_region_fraction(stats["flatcap"], -1.0, 0.8)
    print(
        f"fs discrepancy {disc:.4f}; circle ring fraction {ring:.4f}; "
        f"flatcap inner fraction {inner:.5f}"
    )
    assert disc < 0.05, f"fs radial-CDF discrepancy {disc:.4f}"
    assert abs(ring - 0.5) < 0.05, f"circle ring fraction {ring:.4f}"
    assert inner < 0.02, f"flatcap inner zero fraction {inner:.5f}"


def test_criterion_12_default_suite_is_byte_deterministic(tmp_path):
    config = normalize_config(default_config())
    outs = []
    for tag in ("a", "b"):
        out = tmp_path / tag
        out.mkdir()
        Runner(config, out).run()
        outs.append(out)
    names = sorted(p.name for p in outs[0].iterdir())
    assert "manifest.json" in names and "summary.json" in names
    assert sorted(p.name for p in outs[1].iterdir()) == names
    for name in names:
        b0 = (outs[0] / name).read_bytes()
        b1 = (outs[1] / name).read_bytes()
        if name == "manifest.json":
            m0, m1 = json.loads(b0), json.loads(b1)
            m0.pop("created_utc"), m1.pop("created_utc")
            assert m0 == m1
        else:
            assert b0 == b1, f"{name} differs between identical runs"
