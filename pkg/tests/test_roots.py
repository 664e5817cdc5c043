import numpy as np
import pytest

from borb._roots import aberth_roots, backward_errors, solve_polynomial


def match_root_sets(got, want, tol):
    """Greedy distance matching; fails if any root strays past tol."""
    got = list(got)
    for w in want:
        d = [abs(g - w) for g in got]
        k = int(np.argmin(d))
        assert d[k] < tol, f"no computed root near {w}"
        got.pop(k)
    assert not got


@pytest.mark.parametrize("n", [1, 2, 5, 12, 40])
def test_roots_of_unity(n):
    coeffs = np.zeros(n + 1, dtype=np.complex128)
    coeffs[0] = -1.0
    coeffs[n] = 1.0
    roots, mults, lead_def, resid = solve_polynomial(coeffs)
    assert lead_def == 0
    assert np.all(mults == 1)
    want = np.exp(2j * np.pi * np.arange(n) / n)
    match_root_sets(roots, want, 1e-10)
    assert np.max(resid) < 1e-12


def test_double_root_merges_and_mass_is_conserved():
    # (z - 0.5)^3 (z + 2)^2: the double root merges into one cluster; the
    # triple root spreads ~eps^(1/3), wider than the cluster radius, and
    # stays as three near-coincident simple roots.  Total mass is exact
    # either way, which is what every consumer of the root data relies on.
    coeffs = np.polynomial.polynomial.polyfromroots([0.5, 0.5, 0.5, -2.0, -2.0])
    roots, mults, lead_def, _ = solve_polynomial(coeffs)
    assert lead_def == 0
    assert int(mults.sum()) == 5
    near_double = np.abs(roots + 2.0) < 1e-6
    assert int(mults[near_double].sum()) == 2 and near_double.sum() == 1
    near_triple = np.abs(roots - 0.5) < 1e-3
    assert int(mults[near_triple].sum()) == 3


def test_trailing_zeros_become_origin_roots():
    # z^2 (z + 1) = z^2 + z^3
    coeffs = np.array([0.0, 0.0, 1.0, 1.0], dtype=np.complex128)
    roots, mults, lead_def, resid = solve_polynomial(coeffs)
    assert lead_def == 0
    origin = np.flatnonzero(roots == 0)
    assert origin.size == 1 and mults[origin[0]] == 2
    match_root_sets(roots[roots != 0], [-1.0], 1e-12)
    assert np.all(resid[roots == 0] == 0.0)


def test_leading_deficiency_counts_dropped_degree():
    # degree-4 vector with two exactly-zero leading coefficients
    coeffs = np.array([2.0, -3.0, 1.0, 0.0, 0.0], dtype=np.complex128)
    roots, mults, lead_def, _ = solve_polynomial(coeffs)
    assert lead_def == 2
    match_root_sets(roots, [1.0, 2.0], 1e-10)
    assert int(mults.sum()) == 2


def test_constant_polynomial_has_no_roots():
    roots, mults, lead_def, _ = solve_polynomial(np.array([3.0 + 0j]))
    assert roots.size == 0 and mults.size == 0 and lead_def == 0


def test_zero_vector_rejected():
    with pytest.raises(ValueError):
        solve_polynomial(np.zeros(4, dtype=np.complex128))


def test_aberth_is_deterministic(rng):
    coeffs = rng.standard_normal(18) + 1j * rng.standard_normal(18)
    r1, e1 = aberth_roots(coeffs.copy())
    r2, e2 = aberth_roots(coeffs.copy())
    np.testing.assert_array_equal(r1, r2)
    np.testing.assert_array_equal(e1, e2)
    assert float(e1.max()) < 1e-12


def test_backward_errors_flag_bad_roots():
    coeffs = np.polynomial.polynomial.polyfromroots([1.0, 2.0, -0.5])
    good = np.array([1.0, 2.0, -0.5], dtype=np.complex128)
    bad = good + 0.05
    assert np.max(backward_errors(coeffs, good)) < 1e-14
    assert np.min(backward_errors(coeffs, bad)) > 1e-4
