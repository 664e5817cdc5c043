"""Random sections, their zero sets, and the zero-statistics Monte Carlo.

Sections are sampled uniformly from the unit sphere of a section space.
Reproducibility contract: every Monte Carlo task derives its own generator
from (master seed, label) through FNV-1a-64, so runs parallelize without
changing the sampled values and replays are bit-identical.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np
from scipy import stats as _stats

from ._roots import solve_polynomial
from .currents import fs_current_pairing, section_dense_coefficients
from .errors import ConfigurationError, ExperimentError, RootFindingError
from .quadrature import Panelization, graded_breakpoints, radial_rule
from .util import substream_seed

__all__ = [
    "RngStream",
    "ZeroSet",
    "sample_sphere",
    "section_zeros",
    "y_statistic",
    "y_from_zeroset",
    "zero_samples",
    "expectation_estimate",
    "variance_estimate",
    "variance_slope",
    "sequence_experiment",
    "sz_variance_constant",
    "random_unitary",
]

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class RngStream:
    """Seeded substream: generator state = FNV-1a-64(master bytes || label)."""

    master: int
    label: str = ""

    def seed(self) -> int:
        return substream_seed(self.master, self.label)

    def child(self, suffix: str) -> "RngStream":
        label = suffix if not self.label else f"{self.label}/{suffix}"
        return RngStream(self.master, label)

    def generator(self) -> np.random.Generator:
        return np.random.Generator(np.random.PCG64(self.seed()))


def sample_sphere(d: int, rng) -> np.ndarray:
    """Uniform draw from the unit sphere of C^d (normalized complex Gaussian)."""
    if d < 1:
        raise ConfigurationError("need at least one dimension to sample")
    gen = rng.generator() if isinstance(rng, RngStream) else rng
    x = gen.standard_normal((2, d))
    a = x[0] + 1j * x[1]
    return a / np.linalg.norm(a)


@dataclass(frozen=True)
class ZeroSet:
    """Affine roots with multiplicities plus the mass at infinity.

    residuals are the componentwise relative backward errors of the
    accepted roots (0 for roots produced by exact coefficient stripping).
    """

    roots: np.ndarray
    multiplicities: np.ndarray
    mass_at_infinity: int
    residuals: np.ndarray

    @property
    def total_mass(self) -> int:
        return int(self.multiplicities.sum()) + self.mass_at_infinity

    def mass_in(self, r_lo: float, r_hi: float) -> int:
        """Total multiplicity of roots with r_lo < |root| < r_hi."""
        r = np.abs(self.roots)
        sel = (r > r_lo) & (r < r_hi)
        return int(self.multiplicities[sel].sum())


def section_zeros(a: np.ndarray, space) -> ZeroSet:
    """All zeros of the section with given orthonormal coefficients."""
    dense = section_dense_coefficients(space, a)
    roots, mults, lead_def, resid = solve_polynomial(dense)
    zs = ZeroSet(roots, mults, lead_def, resid)
    if zs.total_mass != space.zero_budget:
        raise ExperimentError("zero mass budget violated by the root finder")
    return zs


def y_from_zeroset(zs: ZeroSet, space, f) -> float:
    """<[S=0] - fs current, f> given an existing zero set."""
    val = 0.0
    if zs.roots.size:
        val = float(np.dot(zs.multiplicities, f.value(zs.roots)))
    return val - fs_current_pairing(space, f)


def y_statistic(a: np.ndarray, space, f) -> float:
    """Zero-minus-expected pairing Y = <[S_a=0] - fs current, f>."""
    return y_from_zeroset(section_zeros(a, space), space, f)


def zero_samples(space, n: int, rng: RngStream) -> list:
    """n independent zero sets; failed samples stay as None placeholders.

    Sample i uses the substream labelled "p=<p>/i=<i>"; failures are logged
    and excluded (never resampled, to keep the estimates unbiased).  The
    result is cached on the space keyed by (master, label, n).
    """
    key = ("zero-samples", rng.master, rng.label, n)
    hit = space._pair_cache.get(key)
    if hit is not None:
        return hit
    out = []
    for i in range(n):
        stream = rng.child(f"p={space.p}/i={i}")
        a = sample_sphere(space.dim, stream)
        try:
            out.append(section_zeros(a, space))
        except RootFindingError as exc:
            log.warning("sample %d at p=%d skipped: %s", i, space.p, exc)
            out.append(None)
    space._pair_cache[key] = out
    return out


def _y_values(space, f, n: int, rng: RngStream) -> np.ndarray:
    samples = zero_samples(space, n, rng)
    ys = [y_from_zeroset(zs, space, f) for zs in samples if zs is not None]
    failures = n - len(ys)
    if failures > 0.01 * n:
        raise ExperimentError(f"{failures} of {n} samples failed root finding")
    return np.array(ys, dtype=np.float64)


def expectation_estimate(space, f, n: int, rng: RngStream, sink=None) -> dict:
    """Monte Carlo mean and standard error of Y over n sphere samples."""
    if n < 100:
        raise ConfigurationError("expectation estimate needs at least 100 samples")
    ys = _y_values(space, f, n, rng)
    if sink is not None:
        samples = zero_samples(space, n, rng)
        j = 0
        for i, zs in enumerate(samples):
            if zs is None:
                continue
            sink(
                {
                    "p": space.p,
                    "sample_index": i,
                    "root_count": int(zs.multiplicities.sum()),
                    "mass_at_infinity": zs.mass_at_infinity,
                    "f_label": f.label,
                    "Y": ys[j],
                }
            )
            j += 1
    mean = float(ys.mean())
    stderr = float(ys.std(ddof=1) / math.sqrt(ys.size)) if ys.size > 1 else 0.0
    return {"mean": mean, "stderr": stderr, "n_used": int(ys.size)}


def variance_estimate(space, f, n: int, rng: RngStream) -> float:
    """Unbiased sample variance of Y over n sphere samples."""
    if n < 500:
        raise ConfigurationError("variance estimate needs at least 500 samples")
    ys = _y_values(space, f, n, rng)
    return float(ys.var(ddof=1))


def variance_slope(p_values, variances, confidence: float = 0.95):
    """Least-squares slope of variance vs p with a t confidence interval.

    Returns (slope, lo, hi).
    """
    p_values = np.asarray(p_values, dtype=np.float64)
    variances = np.asarray(variances, dtype=np.float64)
    if p_values.size < 3:
        raise ConfigurationError("slope fit needs at least three p values")
    res = _stats.linregress(p_values, variances)
    tcrit = float(_stats.t.ppf(0.5 + confidence / 2.0, p_values.size - 2))
    slope, err = float(res.slope), float(res.stderr)
    return slope, slope - tcrit * err, slope + tcrit * err


def sequence_experiment(model, p_values, bank, rng: RngStream, *, spaces=None) -> list[dict]:
    """One random section per p: rows of normalized residuals (1/p) Y.

    Realizes the almost-sure sequence statement: for each p an independent
    substream draws a single section and the table records (1/p) times the
    pairing of its zero set minus the FS current against every bank f.
    """
    from .sections import build_space

    rows = []
    for p in p_values:
        space = None
        if spaces is not None:
            space = spaces.get(p)
        if space is None:
            space = build_space(model, p)
        stream = rng.child(f"p={p}/i=0")
        a = sample_sphere(space.dim, stream)
        zs = section_zeros(a, space)
        row = {"p": int(p)}
        for f in bank:
            row[f.label] = y_from_zeroset(zs, space, f) / p
        rows.append(row)
    return rows


def sz_variance_constant(radial_nodes: int = 64) -> float:
    """The variance-bound constant (1/pi^2) int (log|z1|)^2 e^(-|z1|^2-|z2|^2).

    Both planar factors are computed by radial quadrature over a graded
    ladder (the squared log is integrable at 0) with the Gaussian cut at
    radius 12, far below double precision resolution.
    """
    bp = graded_breakpoints(2.0, levels=10, ratio=4.0) + (4.0, 6.0, 9.0, 12.0)
    pan = Panelization(bp, radial_nodes, angular_nodes=4, radial_variable="r")
    r, u = radial_rule(pan)
    gauss = np.exp(-(r**2))
    i_log = 2.0 * math.pi * float(np.dot(u, np.log(r) ** 2 * gauss))
    i_one = 2.0 * math.pi * float(np.dot(u, gauss))
    return i_log * i_one / math.pi**2


def random_unitary(d: int, rng) -> np.ndarray:
    """Haar-distributed d x d unitary (QR of a complex Gaussian, phase-fixed)."""
    gen = rng.generator() if isinstance(rng, RngStream) else rng
    g = gen.standard_normal((d, d)) + 1j * gen.standard_normal((d, d))
    q, r = np.linalg.qr(g)
    ph = np.diag(r).copy()
    ph /= np.abs(ph)
    return q * ph.conj()
