"""Experiment runner CLI: validates a JSON config, executes the selected
experiments in dependency order (section spaces first, statistics after),
and writes CSV tables, a JSON summary and a hashed run manifest.

Exit codes: 0 ok, 2 configuration error, 3 numeric/experiment error.
Identical config + seed produce byte-identical CSV/JSON artifacts (the
manifest's created_utc field is the single exception).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import math
import sys
from concurrent.futures import ThreadPoolExecutor
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from . import __version__
from .convergence import (
    bergman_band_fit,
    curvature_radial_cdf,
    fs_weak_residuals,
    radial_cdf_discrepancy,
    zero_region_fraction,
)
from .currents import (
    CurrentSample,
    bank_from_records,
    bank_records,
    branched_pullback,
    branched_pushforward,
    cover_average,
    cover_lift,
    current_total_mass,
    curvature_pairing,
    default_bank,
    fs_identity_residual,
    pair_current,
)
from .errors import ConfigurationError, ExperimentError, NumericsError
from .gramcache import GramCache
from .models import ModelKind, ModelSpec, build_model
from .quadrature import RadialRegion, graded_breakpoints
from .sections import bergman_extremal, bergman_kernel, build_space
from .util import canonical_json, config_digest, fnv1a64, format_float
from .zeros import (
    RngStream,
    expectation_estimate,
    sequence_experiment,
    sz_variance_constant,
    variance_estimate,
    variance_slope,
    zero_samples,
)

EXPERIMENTS = (
    "bergman",
    "fs_identity",
    "weak_convergence",
    "sz_expectation",
    "sz_variance",
    "sz_sequence",
    "zeros_cdf",
    "band_fit",
    "current_calculus",
)

_TOP_KEYS = {"model", "p_grid", "quadrature", "monte_carlo", "bank", "outputs", "experiments"}
_MODEL_KEYS = {"kind", "m", "c", "bundle_degree", "twist_canonical"}
_QUAD_KEYS = {"radial_nodes", "angular_nodes"}
_MC_KEYS = {"samples", "master_seed"}


def default_config() -> dict:
    """The default experiment suite: FS sphere, every experiment, N=500."""
    return {
        "model": {"kind": "FS_SPHERE"},
        "p_grid": [4, 8, 16],
        "quadrature": {"radial_nodes": 64, "angular_nodes": None},
        "monte_carlo": {"samples": 500, "master_seed": 20260815},
        "bank": None,
        "outputs": "runs/default",
        "experiments": list(EXPERIMENTS),
    }


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise ConfigurationError(message)


def _as_int(value, name: str) -> int:
    _require(isinstance(value, int) and not isinstance(value, bool), f"{name} must be an integer")
    return value


def normalize_config(raw: dict) -> dict:
    """Validate a raw config dict and fill every default.

    The returned dict is the canonical form that gets hashed into the
    manifest; the resolved test bank is serialized into it so a run is
    reproducible from the manifest alone.
    """
    _require(isinstance(raw, dict), "config must be a JSON object")
    unknown = set(raw) - _TOP_KEYS
    _require(not unknown, f"unknown config keys: {sorted(unknown)}")

    model_raw = raw.get("model")
    _require(isinstance(model_raw, dict), "config needs a 'model' object")
    unknown = set(model_raw) - _MODEL_KEYS
    _require(not unknown, f"unknown model keys: {sorted(unknown)}")
    kind = model_raw.get("kind")
    kinds = [k.value for k in ModelKind]
    _require(kind in kinds, f"model.kind must be one of {kinds}")
    m = _as_int(model_raw.get("m", 1), "model.m")
    _require(m >= 1, "model.m must be >= 1")
    c = model_raw.get("c")
    if c is not None:
        _require(isinstance(c, (int, float)) and math.isfinite(c) and c > 0, "model.c must be a positive number")
        c = float(c)
    bundle_degree = model_raw.get("bundle_degree")
    if bundle_degree is not None:
        bundle_degree = _as_int(bundle_degree, "model.bundle_degree")
    twist = model_raw.get("twist_canonical", False)
    _require(isinstance(twist, bool), "model.twist_canonical must be a boolean")
    spec = ModelSpec(kind=kind, m=m, c=c, bundle_degree=bundle_degree, twist_canonical=twist)
    model = build_model(spec)

    p_grid = raw.get("p_grid")
    _require(isinstance(p_grid, list) and p_grid, "p_grid must be a non-empty list")
    p_grid = [_as_int(p, "p_grid entry") for p in p_grid]
    _require(all(p >= 1 for p in p_grid), "p_grid entries must be >= 1")
    _require(all(a < b for a, b in zip(p_grid, p_grid[1:])), "p_grid must be strictly ascending")

    experiments = raw.get("experiments", list(EXPERIMENTS))
    _require(isinstance(experiments, list) and experiments, "experiments must be a non-empty list")
    unknown = [e for e in experiments if e not in EXPERIMENTS]
    _require(not unknown, f"unknown experiments: {unknown} (valid: {list(EXPERIMENTS)})")
    _require(len(set(experiments)) == len(experiments), "experiments must not repeat")
    experiments = [e for e in EXPERIMENTS if e in experiments]
    if "fs_identity" in experiments:
        _require(not twist, "fs_identity requires an untwisted section space")

    quad = raw.get("quadrature") or {}
    _require(isinstance(quad, dict), "quadrature must be an object")
    unknown = set(quad) - _QUAD_KEYS
    _require(not unknown, f"unknown quadrature keys: {sorted(unknown)}")
    radial_nodes = _as_int(quad.get("radial_nodes", 64), "quadrature.radial_nodes")
    _require(8 <= radial_nodes <= 512, "quadrature.radial_nodes must be in [8, 512]")
    angular_nodes = quad.get("angular_nodes")
    if angular_nodes is not None:
        angular_nodes = _as_int(angular_nodes, "quadrature.angular_nodes")
        _require(32 <= angular_nodes <= 16384, "quadrature.angular_nodes must be in [32, 16384]")

    mc = raw.get("monte_carlo") or {}
    _require(isinstance(mc, dict), "monte_carlo must be an object")
    unknown = set(mc) - _MC_KEYS
    _require(not unknown, f"unknown monte_carlo keys: {sorted(unknown)}")
    samples = _as_int(mc.get("samples", 500), "monte_carlo.samples")
    master_seed = _as_int(mc.get("master_seed", 20260815), "monte_carlo.master_seed")
    _require(0 <= master_seed < 2**64, "monte_carlo.master_seed must fit in 64 bits")
    needs_mc = [e for e in experiments if e.startswith("sz_") or e == "zeros_cdf"]
    if any(e.startswith("sz_") for e in experiments):
        _require(samples >= 100, "monte_carlo.samples must be >= 100 for sz_* experiments")
    if "sz_variance" in experiments:
        _require(samples >= 500, "monte_carlo.samples must be >= 500 for sz_variance")
    _require(samples >= 1 or not needs_mc, "monte_carlo.samples must be >= 1")

    bank_raw = raw.get("bank")
    if bank_raw is None:
        bank = default_bank(model)
    else:
        _require(isinstance(bank_raw, list) and bank_raw, "bank must be null or a non-empty list")
        bank = bank_from_records(bank_raw)

    outputs = raw.get("outputs")
    _require(isinstance(outputs, str) and outputs, "config needs an 'outputs' directory path")

    return {
        "model": {
            "kind": kind,
            "m": m,
            "c": c,
            "bundle_degree": bundle_degree,
            "twist_canonical": twist,
        },
        "p_grid": p_grid,
        "quadrature": {"radial_nodes": radial_nodes, "angular_nodes": angular_nodes},
        "monte_carlo": {"samples": samples, "master_seed": master_seed},
        "bank": bank_records(bank),
        "outputs": outputs,
        "experiments": experiments,
    }


class Runner:
    """Executes the experiments of one validated config into one directory."""

    def __init__(self, config: dict, out_dir: Path, cache_dir: str | None = None, threads: int = 1):
        self.config = config
        self.model = build_model(ModelSpec(**config["model"]))
        self.bank = bank_from_records(config["bank"])
        self.out = out_dir
        self.cache = GramCache(cache_dir) if cache_dir else None
        self.threads = max(1, threads)
        self.spaces: dict = {}
        self.files: dict[str, str] = {}
        self.written: list[Path] = []
        self.summary: dict = {}
        self.failed: str | None = None
        self.seed = config["monte_carlo"]["master_seed"]
        self.n_mc = config["monte_carlo"]["samples"]

    # -- artifact plumbing -----------------------------------------------

    def _emit(self, name: str, text: str) -> None:
        data = text.encode("utf-8")
        self.files[name] = f"{fnv1a64(data):016x}"
        path = self.out / name
        path.write_bytes(data)
        self.written.append(path)

    def _emit_csv(self, name: str, columns, rows) -> None:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([self._cell(row[c]) for c in columns])
        self._emit(name, buf.getvalue())

    @staticmethod
    def _cell(value) -> str:
        if isinstance(value, bool):
            return "true" if value else "false"
        if isinstance(value, (int, np.integer)):
            return str(int(value))
        if isinstance(value, (float, np.floating)):
            return format_float(float(value))
        return str(value)

    def cleanup(self) -> None:
        for path in self.written:
            path.unlink(missing_ok=True)
        self.written.clear()

    # -- shared resources --------------------------------------------------

    def _build_spaces(self) -> None:
        quad = self.config["quadrature"]
        ps = self.config["p_grid"]

        def build_one(p):
            return build_space(
                self.model,
                p,
                radial_nodes=quad["radial_nodes"],
                angular_nodes=quad["angular_nodes"],
                cache=self.cache,
            )

        if self.threads > 1 and len(ps) > 1:
            with ThreadPoolExecutor(max_workers=self.threads) as pool:
                built = list(pool.map(build_one, ps))
        else:
            built = [build_one(p) for p in ps]
        self.spaces = dict(zip(ps, built))

    @property
    def _scale(self) -> float:
        return self.model.cap_radius if self.model.kind is ModelKind.FLAT_CAP else 1.0

    def _mc_stream(self) -> RngStream:
        return RngStream(self.seed, "mc")

    # -- experiments -------------------------------------------------------

    def run_bergman(self) -> None:
        radii = np.geomspace(0.02, 20.0, 24) * self._scale
        angles = 2.0 * np.pi * (np.arange(8) + 0.37) / 8.0
        probes = np.outer(radii, np.exp(1j * angles)).ravel()
        rows = []
        per_p = {}
        for p, space in self.spaces.items():
            kern = bergman_kernel(space, probes)
            extremal = bergman_extremal(space, probes)
            rel = np.abs(extremal - kern) / kern
            for j, z in enumerate(probes):
                rows.append(
                    {
                        "p": p,
                        "probe_index": j,
                        "x_re": z.real,
                        "x_im": z.imag,
                        "kernel": kern[j],
                        "extremal_rel_err": rel[j],
                    }
                )
            stats = {
                "kernel_min": float(kern.min()),
                "kernel_max": float(kern.max()),
                "max_extremal_rel_err": float(rel.max()),
            }
            if self.model.kind is ModelKind.FS_SPHERE and not space.twist:
                stats["flatness"] = float(np.max(np.abs(kern / (p + 1) - 1.0)))
            per_p[str(p)] = stats
        cols = ("p", "probe_index", "x_re", "x_im", "kernel", "extremal_rel_err")
        self._emit_csv("bergman.csv", cols, rows)
        summary = {"per_p": per_p}
        summary["max_extremal_rel_err"] = max(v["max_extremal_rel_err"] for v in per_p.values())
        summary["pass_extremal"] = summary["max_extremal_rel_err"] < 1e-10
        if self.model.kind is ModelKind.FS_SPHERE and "flatness" in next(iter(per_p.values())):
            summary["max_flatness"] = max(v["flatness"] for v in per_p.values())
            summary["pass_constancy"] = summary["max_flatness"] < 1e-6
        self.summary["bergman"] = summary

    def run_fs_identity(self) -> None:
        rn = self.config["quadrature"]["radial_nodes"]
        rows = []
        worst = 0.0
        for p, space in self.spaces.items():
            for f in self.bank:
                res = fs_identity_residual(space, f, radial_nodes=rn)
                worst = max(worst, res)
                rows.append({"p": p, "f_label": f.label, "residual": res})
        self._emit_csv("fs_identity.csv", ("p", "f_label", "residual"), rows)
        self.summary["fs_identity"] = {
            "max_residual": worst,
            "tolerance": 1e-5,
            "pass": worst < 1e-5,
        }

    def run_weak_convergence(self) -> None:
        spaces = [self.spaces[p] for p in self.config["p_grid"]]
        table = fs_weak_residuals(spaces, self.bank)
        self._emit_csv("weak_convergence.csv", table.columns, table.rows)
        summary: dict = {}
        if len(table.rows) >= 2:
            first, last = table.rows[0], table.rows[-1]
            improved = {f.label: abs(last[f.label]) < abs(first[f.label]) for f in self.bank}
            frac = sum(improved.values()) / len(improved)
            summary = {
                "p_low": first["p"],
                "p_high": last["p"],
                "fraction_improved": frac,
                "pass_all": frac == 1.0,
                "pass_90": frac >= 0.9,
            }
        summary["max_abs_residual_at_p_high"] = max(
            abs(table.rows[-1][f.label]) for f in self.bank
        )
        self.summary["weak_convergence"] = summary

    def run_sz_expectation(self) -> None:
        rng = self._mc_stream()
        sample_rows: list[dict] = []
        rows = []
        n_within = 0
        for p in self.config["p_grid"]:
            space = self.spaces[p]
            for f in self.bank:
                est = expectation_estimate(space, f, self.n_mc, rng, sink=sample_rows.append)
                within = abs(est["mean"]) <= 3.0 * est["stderr"]
                n_within += within
                rows.append(
                    {
                        "p": p,
                        "f_label": f.label,
                        "mean": est["mean"],
                        "stderr": est["stderr"],
                        "n_used": est["n_used"],
                        "within_3se": within,
                    }
                )
        self._emit_csv(
            "sz_expectation.csv", ("p", "f_label", "mean", "stderr", "n_used", "within_3se"), rows
        )
        self._emit_csv(
            "sz_samples.csv",
            ("p", "sample_index", "root_count", "mass_at_infinity", "f_label", "Y"),
            sample_rows,
        )
        frac = n_within / len(rows)
        self.summary["sz_expectation"] = {
            "fraction_within_3se": frac,
            "pass": frac >= 0.95,
            "samples": self.n_mc,
        }

    def run_sz_variance(self) -> None:
        rng = self._mc_stream()
        ps = self.config["p_grid"]
        rows = []
        by_f: dict[str, list[float]] = {f.label: [] for f in self.bank}
        for p in ps:
            space = self.spaces[p]
            for f in self.bank:
                var = variance_estimate(space, f, self.n_mc, rng)
                by_f[f.label].append(var)
                rows.append(
                    {
                        "p": p,
                        "f_label": f.label,
                        "variance": var,
                        "variance_normalized": var / p**2,
                    }
                )
        self._emit_csv(
            "sz_variance.csv", ("p", "f_label", "variance", "variance_normalized"), rows
        )
        per_f = {}
        n_ok = 0
        for label, variances in by_f.items():
            entry: dict = {}
            if len(ps) >= 3:
                slope, lo, hi = variance_slope(ps, variances)
                entry = {"slope": slope, "ci_lo": lo, "ci_hi": hi, "nonincreasing": lo <= 0.0}
                n_ok += entry["nonincreasing"]
            ratio = (variances[0] / ps[0] ** 2) / max(variances[-1] / ps[-1] ** 2, 1e-300)
            entry["normalized_drop"] = ratio
            per_f[label] = entry
        summary = {
            "variance_bound_constant": sz_variance_constant(),
            "per_f": per_f,
            "samples": self.n_mc,
        }
        if len(ps) >= 3:
            summary["fraction_nonincreasing"] = n_ok / len(per_f)
        self.summary["sz_variance"] = summary

    def run_sz_sequence(self) -> None:
        rng = RngStream(self.seed, "seq")
        rows = sequence_experiment(
            self.model, self.config["p_grid"], self.bank, rng, spaces=self.spaces
        )
        cols = ("p", *[f.label for f in self.bank])
        self._emit_csv("sz_sequence.csv", cols, rows)
        last = rows[-1]
        self.summary["sz_sequence"] = {
            "p_high": last["p"],
            "max_abs_normalized_at_p_high": max(abs(last[f.label]) for f in self.bank),
        }

    def run_zeros_cdf(self) -> None:
        rng = self._mc_stream()
        ref = curvature_radial_cdf(self.model)
        scale = self._scale
        rows = []
        for p in self.config["p_grid"]:
            space = self.spaces[p]
            zsets = zero_samples(space, self.n_mc, rng)
            accepted = [zs for zs in zsets if zs is not None]
            failures = self.n_mc - len(accepted)
            if failures > 0.01 * self.n_mc or not accepted:
                raise ExperimentError(f"{failures} of {self.n_mc} zero samples failed at p={p}")
            radii = np.concatenate([np.abs(zs.roots) for zs in accepted])
            masses = np.concatenate([zs.multiplicities for zs in accepted]).astype(float)
            inf_mass = float(sum(zs.mass_at_infinity for zs in accepted))
            disc = radial_cdf_discrepancy(
                self.model, radii, masses, mass_at_infinity=inf_mass, reference=ref
            )
            rows.append(
                {
                    "p": p,
                    "n_used": len(accepted),
                    "discrepancy": disc,
                    "frac_inner": zero_region_fraction(accepted, -1.0, 0.8 * scale),
                    "frac_ring": zero_region_fraction(accepted, 0.9 * scale, 1.1 * scale),
                }
            )
        self._emit_csv(
            "zeros_cdf.csv", ("p", "n_used", "discrepancy", "frac_inner", "frac_ring"), rows
        )
        last = rows[-1]
        summary = {
            "p_high": last["p"],
            "discrepancy_at_p_high": last["discrepancy"],
            "frac_inner_at_p_high": last["frac_inner"],
            "frac_ring_at_p_high": last["frac_ring"],
        }
        kind = self.model.kind
        if kind in (ModelKind.FS_SPHERE, ModelKind.FOOTBALL):
            summary["pass_discrepancy"] = last["discrepancy"] < 0.05
        if kind is ModelKind.CIRCLE_MASS:
            summary["pass_ring"] = abs(last["frac_ring"] - 0.5) < 0.05
        if kind is ModelKind.FLAT_CAP:
            summary["pass_inner"] = last["frac_inner"] < 0.02
        self.summary["zeros_cdf"] = summary

    def run_band_fit(self) -> None:
        spaces = [self.spaces[p] for p in self.config["p_grid"]]
        region = RadialRegion(0.0, 4.0 * self._scale)
        fit = bergman_band_fit(spaces, region)
        rows = [{"p": p, "c_p": c} for p, c in sorted(fit.per_p.items())]
        self._emit_csv("band_fit.csv", ("p", "c_p"), rows)
        self.summary["band_fit"] = {
            "c_hat": fit.c_hat,
            "stable": fit.stable,
            "upper_band_margin": fit.upper_band_margin,
            "upper_band_holds": fit.upper_band_holds,
        }

    def _curvature_current(self, horizon: float = 8.0) -> CurrentSample:
        rings = set(graded_breakpoints(min(1.0, self.model.swap_radius), levels=6, ratio=4.0))
        rings.add(self.model.swap_radius)
        rings.update(r for r, _ in self.model.curvature_atoms)
        rings = tuple(sorted(r for r in rings if 0.0 < r < horizon))
        return CurrentSample(
            density=self.model.curvature_density_affine,
            support_radius=horizon,
            density_rings=rings,
            circle_atoms=self.model.curvature_atoms,
            label="curvature",
        )

    def run_current_calculus(self) -> None:
        T = self._curvature_current()
        rows = []
        pair_worst = 0.0
        for f in self.bank[:6]:
            value = pair_current(T, f)
            res = abs(value - curvature_pairing(self.model, f))
            pair_worst = max(pair_worst, res)
            rows.append({"operation": "pair", "m": 1, "f_label": f.label, "value": value, "residual": res})
        replay_worst = 0.0
        for m in (2, 3):
            pulled = branched_pullback(T, m)
            for f in self.bank[:2]:
                base = pair_current(T, f)
                value = pair_current(branched_pushforward(pulled, m), f)
                res = abs(value - m * base)
                replay_worst = max(replay_worst, res)
                rows.append({"operation": "push_pull", "m": m, "f_label": f.label, "value": value, "residual": res})
                value = pair_current(cover_average(cover_lift(T, m), m), f)
                res = abs(value - base)
                replay_worst = max(replay_worst, res)
                rows.append({"operation": "average_lift", "m": m, "f_label": f.label, "value": value, "residual": res})
        ref = curvature_radial_cdf(self.model)
        mass = current_total_mass(T)
        mass_res = abs(mass - float(ref.mass_within(T.support_radius)))
        rows.append({"operation": "total_mass", "m": 1, "f_label": "", "value": mass, "residual": mass_res})
        self._emit_csv(
            "current_calculus.csv", ("operation", "m", "f_label", "value", "residual"), rows
        )
        self.summary["current_calculus"] = {
            "max_pair_residual": pair_worst,
            "max_replay_residual": replay_worst,
            "mass_consistency": mass_res,
            "pass_replay": replay_worst < 1e-8,
        }

    # -- driver ------------------------------------------------------------

    def run(self) -> dict:
        self._build_spaces()
        for name in self.config["experiments"]:
            self.failed = name
            getattr(self, f"run_{name}")()
        self.failed = None
        self._emit("summary.json", canonical_json(self.summary) + "\n")
        manifest = {
            "config": self.config,
            "config_digest": config_digest(self.config),
            "tool_version": __version__,
            "created_utc": datetime.now(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ"),
            "seed": self.seed,
            "experiments": {name: "ok" for name in self.config["experiments"]},
            "files": dict(sorted(self.files.items())),
        }
        path = self.out / "manifest.json"
        path.write_text(canonical_json(manifest) + "\n", encoding="utf-8")
        self.written.append(path)
        return manifest


# ---------------------------------------------------------------------------
# subcommands


def cmd_run(args) -> int:
    try:
        raw = json.loads(Path(args.config).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2

    runner = None
    try:
        if args.seed is not None:
            if not isinstance(raw, dict):
                raise ConfigurationError("config must be a JSON object")
            if not isinstance(raw.get("monte_carlo"), dict):
                raw["monte_carlo"] = {}
            raw["monte_carlo"]["master_seed"] = args.seed
        config = normalize_config(raw)
        out_dir = Path(args.out if args.out is not None else config["outputs"])
        out_dir.mkdir(parents=True, exist_ok=True)
        probe = out_dir / ".write-probe"
        try:
            probe.write_bytes(b"")
            probe.unlink()
        except OSError as exc:
            raise ConfigurationError(f"outputs directory not writable: {exc}") from exc
        runner = Runner(config, out_dir, cache_dir=args.cache, threads=args.threads)
        manifest = runner.run()
    except ConfigurationError as exc:
        if runner is not None:
            runner.cleanup()
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except NumericsError as exc:
        where = f" in {runner.failed}" if runner is not None and runner.failed else ""
        if runner is not None:
            runner.cleanup()
        print(f"experiment error{where}: {exc}", file=sys.stderr)
        return 3

    print(f"wrote {len(manifest['files']) + 1} files to {out_dir} (config {manifest['config_digest']})")
    return 0


def cmd_verify(args) -> int:
    path = Path(args.manifest)
    try:
        manifest = json.loads(path.read_text(encoding="utf-8"))
        files = manifest["files"]
    except (OSError, json.JSONDecodeError, KeyError, TypeError) as exc:
        print(f"manifest error: {exc}", file=sys.stderr)
        return 2
    base = path.parent
    bad = 0
    for name in sorted(files):
        target = base / name
        if not target.is_file():
            print(f"MISSING  {name}", file=sys.stderr)
            bad += 1
            continue
        actual = f"{fnv1a64(target.read_bytes()):016x}"
        if actual != files[name]:
            print(f"MISMATCH {name}: {actual} != {files[name]}", file=sys.stderr)
            bad += 1
        else:
            print(f"ok       {name}")
    if bad:
        print(f"{bad} of {len(files)} files failed verification", file=sys.stderr)
        return 3
    print(f"all {len(files)} files verified")
    return 0


def cmd_report(args) -> int:
    from .report import render_report

    run_dir = Path(args.run_dir)
    if not run_dir.is_dir():
        print(f"report error: {run_dir} is not a directory", file=sys.stderr)
        return 2
    figures = render_report(run_dir)
    if not figures:
        print("report error: no experiment tables found", file=sys.stderr)
        return 2
    for fig in figures:
        print(f"wrote {fig}")
    return 0


def _seed_arg(text: str) -> int:
    value = int(text, 0)
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError("seed must fit in 64 bits")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="borb",
        description="Bergman kernels and random zeros on model orbifold surfaces.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run_p = sub.add_parser("run", help="execute the experiments of a JSON config")
    run_p.add_argument("config", help="path to the experiment config (JSON)")
    run_p.add_argument("--out", help="output directory (overrides config.outputs)")
    run_p.add_argument("--seed", type=_seed_arg, help="override monte_carlo.master_seed")
    run_p.add_argument("--threads", type=int, default=1, help="worker threads for space builds")
    run_p.add_argument("--cache", help="directory for the Gram matrix cache")
    run_p.set_defaults(func=cmd_run)

    ver_p = sub.add_parser("verify", help="recompute and check a manifest's file hashes")
    ver_p.add_argument("manifest", help="path to a run manifest.json")
    ver_p.set_defaults(func=cmd_verify)

    rep_p = sub.add_parser("report", help="render figures from a run directory's tables")
    rep_p.add_argument("run_dir", help="directory holding the run's CSV tables")
    rep_p.set_defaults(func=cmd_report)
    return parser


def main(argv=None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
