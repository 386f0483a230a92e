"""Command-line surface: experiment configs, dimension runs, figures.

Subcommands
-----------
eval       evaluate a series on a test set, write a CSV of (x, re, im)
dim        replicate ensemble: evaluate, box-count, fit, compare to theory
charfn     Bessel-product characteristic function vs Monte Carlo, CSV + verdict
predict    closed-form dimension predictions for a named family
figure     render one of the built-in curve presets to a 1024x1024 PNG
sigma-tau  finite-window block-decay exponent estimates as JSON

Exit codes: 0 success/consistent, 1 inconsistent verdict, 2 validation error,
3 runtime error.  All outputs are byte-stable for a fixed master seed,
independent of worker count.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import oracle
from .basis import BasisFunction
from .besselcf import expected_fourier_sq, mc_fourier_sq_grid
from .fracdim import FitRangeError, box_count, default_scales, fit_dimension
from .sampler import (
    PhaseModel,
    SeriesSpec,
    TestSet,
    eval_riemann_vortex,
    eval_series,
    spec_from_dict,
    spec_to_dict,
)
from .sequences import FrequencyRule, CoefficientRule, estimate_sigma_tau, l1_tail

THREADS_ENV = "LACUNARY_THREADS"

EXIT_OK = 0
EXIT_INCONSISTENT = 1
EXIT_VALIDATION = 2
EXIT_RUNTIME = 3

_CANVAS = 1024
_MARGIN = 0.02


class ConfigError(ValueError):
    """Malformed experiment configuration."""


# ---------------------------------------------------------------------------
# experiment configuration
# ---------------------------------------------------------------------------

_CONFIG_KEYS = {
    "spec", "test_set", "eps_tail", "replicates", "master_seed", "threads",
    "target", "scales", "tolerance", "charfn", "sigma", "tau",
}
_TEST_SET_KEYS = {"kind", "lo", "hi", "points", "ratio", "level"}
_SCALES_KEYS = {"j_min", "j_max"}
_CHARFN_KEYS = {"atoms", "xi_grid", "n_terms", "mc_replicates"}
_SPEC_PRESET_KEYS = {
    "weierstrass": {"preset", "beta", "lam", "phases"},
    "riemann": {"preset", "a", "b", "phases"},
    "wm": {"preset", "beta", "lam", "phases"},
    "real_sine": {"preset", "a", "b", "phases"},
    "takagi": {"preset", "beta", "lam", "phases"},
    "riemann_vortex": {"preset"},
}


def _reject_unknown(d: dict, allowed: set, where: str) -> None:
    unknown = set(d) - allowed
    if unknown:
        raise ConfigError(f"unknown key(s) {sorted(unknown)} in {where}")


@dataclass(frozen=True)
class ExperimentConfig:
    """One experiment, losslessly round-trippable through JSON."""

    raw: dict = field(repr=False)
    spec: dict
    test_set: dict
    eps_tail: float
    replicates: int
    master_seed: int
    threads: int
    target: str           # "image" | "graph"
    scales: dict          # {"j_min", "j_max"}
    tolerance: float
    charfn: dict
    sigma: Optional[float]
    tau: Optional[float]

    def to_dict(self) -> dict:
        return json.loads(json.dumps(self.raw, sort_keys=True))


def parse_config(d: dict) -> ExperimentConfig:
    if not isinstance(d, dict):
        raise ConfigError("config must be a JSON object")
    _reject_unknown(d, _CONFIG_KEYS, "config")
    if "spec" not in d:
        raise ConfigError("config needs a 'spec' entry")
    spec = d["spec"]
    if "preset" in spec:
        preset = spec["preset"]
        if preset not in _SPEC_PRESET_KEYS:
            raise ConfigError(f"unknown preset {preset!r}")
        _reject_unknown(spec, _SPEC_PRESET_KEYS[preset], f"spec preset {preset!r}")
    ts = d.get("test_set", {"kind": "interval", "lo": 0.0, "hi": 1.0, "points": 4096})
    _reject_unknown(ts, _TEST_SET_KEYS, "test_set")
    scales = d.get("scales", {"j_min": 1, "j_max": 16})
    _reject_unknown(scales, _SCALES_KEYS, "scales")
    charfn = d.get("charfn", {})
    _reject_unknown(charfn, _CHARFN_KEYS, "charfn")
    target = d.get("target", "image")
    if target not in ("image", "graph"):
        raise ConfigError(f"target must be 'image' or 'graph', got {target!r}")
    cfg = ExperimentConfig(
        raw=d,
        spec=spec,
        test_set=ts,
        eps_tail=float(d.get("eps_tail", 1e-6)),
        replicates=int(d.get("replicates", 1)),
        master_seed=int(d.get("master_seed", 0)),
        threads=int(d.get("threads", 1)),
        target=target,
        scales=scales,
        tolerance=float(d.get("tolerance", 0.2)),
        charfn=charfn,
        sigma=float(d["sigma"]) if "sigma" in d else None,
        tau=float(d["tau"]) if "tau" in d else None,
    )
    build_test_set(cfg.test_set)  # validate eagerly
    if spec.get("preset") != "riemann_vortex":
        build_series_spec(cfg.spec, cfg.master_seed)
    return cfg


def load_config(path: str) -> ExperimentConfig:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_config(json.load(fh))


def build_test_set(d: dict) -> TestSet:
    kind = d.get("kind", "interval")
    if kind == "interval":
        return TestSet.interval(d.get("lo", 0.0), d.get("hi", 1.0), d["points"])
    if kind == "cantor":
        return TestSet.cantor(d["ratio"], d["level"])
    raise ConfigError(f"unknown test set kind {kind!r}")


def _phases_from_config(d: Optional[dict], master_seed: int) -> PhaseModel:
    if d is None:
        return PhaseModel.steinhaus(master_seed)
    kind = d.get("kind")
    if kind == "steinhaus":
        return PhaseModel.steinhaus(d.get("seed", master_seed))
    if kind == "equidistributed":
        return PhaseModel.equidistributed(d["alpha"])
    if kind == "zero":
        return PhaseModel.zero()
    raise ConfigError(f"unknown phase kind {kind!r}")


def build_series_spec(d: dict, master_seed: int) -> SeriesSpec:
    """SeriesSpec from either a preset entry or a fully explicit description."""
    if "preset" in d:
        preset = d["preset"]
        phases = _phases_from_config(d.get("phases"), master_seed)
        if preset == "weierstrass":
            return SeriesSpec.weierstrass(d["beta"], d["lam"], phases)
        if preset == "riemann":
            return SeriesSpec.riemann(d["a"], d["b"], phases)
        if preset == "wm":
            return SeriesSpec.wm(d["beta"], d["lam"], phases)
        if preset == "real_sine":
            return SeriesSpec.real_sine(d["a"], d["b"], phases)
        if preset == "takagi":
            return SeriesSpec.takagi(d["beta"], d["lam"], phases)
        raise ConfigError(f"preset {d['preset']!r} cannot build a plain series spec")
    spec = spec_from_dict(d)
    if spec.phases.kind == "steinhaus" and spec.phases.seed is None:
        spec = SeriesSpec(spec.coeffs, spec.freqs, spec.basis,
                          PhaseModel.steinhaus(master_seed), spec.two_sided, spec.label)
    return spec


def _preset_exponents(spec_dict: dict, cfg: ExperimentConfig):
    """(sigma, tau) for the prediction side; config overrides win."""
    if cfg.sigma is not None and cfg.tau is not None:
        return cfg.sigma, cfg.tau
    preset = spec_dict.get("preset")
    if preset in ("weierstrass", "wm", "takagi"):
        return spec_dict["beta"], spec_dict["beta"]
    if preset in ("riemann", "real_sine"):
        r = oracle.riemann_exponents(spec_dict["a"], spec_dict["b"])
        return r.sigma, r.tau
    if preset == "riemann_vortex":
        r = oracle.riemann_exponents(2.0, 2.0)
        return r.sigma, r.tau
    return None, None


# ---------------------------------------------------------------------------
# output helpers
# ---------------------------------------------------------------------------

def _f(x: float) -> str:
    return repr(float(x))


def write_curve_csv(path: str, xs, values) -> None:
    """CSV with header x,re,im; real-valued series write im = 0."""
    values = np.asarray(values)
    lines = ["x,re,im"]
    if np.iscomplexobj(values):
        for x, v in zip(xs, values):
            lines.append(f"{_f(x)},{_f(v.real)},{_f(v.imag)}")
    else:
        for x, v in zip(xs, values):
            lines.append(f"{_f(x)},{_f(v)},0.0")
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def write_json(path: Optional[str], payload: dict) -> None:
    text = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def render_png(points, path: str, size: int = _CANVAS) -> None:
    """Rasterize a planar point cloud: single black pixels on white, axis-equal."""
    from PIL import Image

    pts = np.asarray(points, dtype=np.float64)
    lo = pts.min(axis=0)
    hi = pts.max(axis=0)
    center = (lo + hi) / 2.0
    span = float(np.max(hi - lo))
    if span == 0.0:
        span = 1.0
    scale = size * (1.0 - 2.0 * _MARGIN) / span
    px = np.floor((pts[:, 0] - center[0]) * scale + size / 2.0).astype(np.int64)
    py = np.floor((center[1] - pts[:, 1]) * scale + size / 2.0).astype(np.int64)
    np.clip(px, 0, size - 1, out=px)
    np.clip(py, 0, size - 1, out=py)
    arr = np.full((size, size, 3), 255, dtype=np.uint8)
    arr[py, px] = 0
    Image.fromarray(arr, mode="RGB").save(path, format="PNG")


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def _eval_points(cfg: ExperimentConfig, stream_id: int, threads: int):
    """Evaluate once and return (curve, image points, graph points)."""
    ts = build_test_set(cfg.test_set)
    if cfg.spec.get("preset") == "riemann_vortex":
        curve = eval_riemann_vortex(ts, cfg.eps_tail, cfg.master_seed,
                                    stream_id=stream_id, threads=threads)
        spec = None
    else:
        spec = build_series_spec(cfg.spec, cfg.master_seed)
        curve = eval_series(spec, ts, cfg.eps_tail, stream_id=stream_id,
                            threads=threads)
    vals = curve.values
    if np.iscomplexobj(vals):
        image = np.column_stack([vals.real, vals.imag])
        graph = np.column_stack([curve.xs, vals.real, vals.imag])
        if spec is not None:
            # fold the graph's value axes into a unit-ish box for conditioning
            total = l1_tail(spec.coeffs, 0) * spec.basis.sup_norm
            if spec.two_sided:
                total *= spec.coeffs.lam ** spec.coeffs.beta + 1.0
            graph = graph.copy()
            graph[:, 1:] /= 2.0 * total
    else:
        image = np.column_stack([vals, np.zeros_like(vals)])
        graph = np.column_stack([curve.xs, vals])
    return curve, image, graph


def cmd_eval(cfg: ExperimentConfig, out: str, threads: int) -> int:
    curve, _, _ = _eval_points(cfg, stream_id=0, threads=threads)
    write_curve_csv(out, curve.xs, curve.values)
    return EXIT_OK


def cmd_dim(cfg: ExperimentConfig, out: Optional[str], threads: int) -> int:
    """Replicate ensemble of box-counting dimension estimates vs prediction."""
    ts = build_test_set(cfg.test_set)
    dim_a = ts.hausdorff_dim
    sigma, tau = _preset_exponents(cfg.spec, cfg)
    j_min, j_max = int(cfg.scales["j_min"]), int(cfg.scales["j_max"])

    fits = []
    for r in range(cfg.replicates):
        _, image, graph = _eval_points(cfg, stream_id=r, threads=threads)
        pts = image if cfg.target == "image" else graph
        curve = box_count(pts, default_scales(pts, j_min=j_min, j_max=j_max))
        try:
            est = fit_dimension(curve)
            fits.append({
                "replicate": r, "value": est.value, "stderr": est.stderr,
                "r_squared": est.r_squared, "fit_range": list(est.fit_range),
                "scales": list(curve.scales), "counts": list(curve.counts),
                "counts_avg": list(curve.counts_avg),
            })
        except FitRangeError as exc:
            fits.append({"replicate": r, "error": str(exc)})

    values = [f["value"] for f in fits if "value" in f]
    report = {
        "config": cfg.to_dict(),
        "target": cfg.target,
        "dim_a": dim_a,
        "replicates": fits,
        "ensemble": {},
        "prediction": None,
        "verdict": "inconclusive",
        "tolerance": cfg.tolerance,
    }
    if values:
        mean = float(np.mean(values))
        spread = float(np.std(values))
        report["ensemble"] = {"mean": mean, "spread": spread, "count": len(values)}
    if sigma is not None and values:
        codomain = 1 if cfg.spec.get("preset") == "real_sine" else 2
        pred = oracle.build_prediction(sigma, tau, dim_a, codomain)
        lo, hi = (pred.image_dim_lo, pred.image_dim_hi) if cfg.target == "image" \
            else (pred.graph_dim_lo, pred.graph_dim_hi)
        report["prediction"] = {
            "image": [pred.image_dim_lo, pred.image_dim_hi],
            "graph": [pred.graph_dim_lo, pred.graph_dim_hi],
            "lebesgue_positive": pred.lebesgue_positive,
            "has_interior": pred.has_interior,
            "sigma": sigma, "tau": tau,
        }
        if lo is not None:
            slack = cfg.tolerance + report["ensemble"]["spread"]
            ok = lo - slack <= report["ensemble"]["mean"] <= hi + slack
            report["verdict"] = "consistent" if ok else "inconsistent"
    write_json(out, report)
    return EXIT_OK if report["verdict"] != "inconsistent" else EXIT_INCONSISTENT


def cmd_charfn(cfg: ExperimentConfig, out: Optional[str], threads: int) -> int:
    """Analytic Bessel product vs Monte Carlo across a frequency grid."""
    spec = build_series_spec(cfg.spec, cfg.master_seed)
    n_atoms = int(cfg.charfn.get("atoms", 64))
    xi_grid = [float(x) for x in cfg.charfn.get("xi_grid", [0.5, 1, 2, 3, 4, 6, 8, 12])]
    n_terms = cfg.charfn.get("n_terms")
    n_terms = int(n_terms) if n_terms is not None else None
    replicates = int(cfg.charfn.get("mc_replicates", 100000))
    atoms = [(x, 1.0 / n_atoms) for x in np.arange(n_atoms) / n_atoms]

    xiv = [x if spec.codomain_dim == 1 else (x, 0.0) for x in xi_grid]
    mcs = mc_fourier_sq_grid(spec, atoms, xiv, replicates, cfg.master_seed,
                             eps_tail=cfg.eps_tail, n_terms=n_terms, threads=threads)
    rows, consistent = [], True
    for x, mc in zip(xi_grid, mcs):
        analytic = expected_fourier_sq(spec, atoms, x, eps_tail=cfg.eps_tail,
                                       n_terms=n_terms)
        ok = abs(analytic - mc.mean.real) <= 4.0 * mc.stderr
        consistent &= ok
        rows.append((x, analytic, mc.mean.real, mc.stderr))

    lines = ["xi,analytic,mc_mean,mc_stderr"]
    for x, a, m, s in rows:
        lines.append(f"{_f(x)},{_f(a)},{_f(m)},{_f(s)}")
    text = "\n".join(lines) + "\n"
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    sys.stderr.write(f"verdict: {'consistent' if consistent else 'inconsistent'}\n")
    return EXIT_OK if consistent else EXIT_INCONSISTENT


_FAMILY_CODOMAIN = {"weierstrass": 2, "riemann": 2, "wm": 2, "takagi": 2, "real_sine": 1}


def cmd_predict(family: str, dim_a: float, out: Optional[str], beta=None,
                lam=None, a=None, b=None) -> int:
    if family in ("weierstrass", "wm", "takagi"):
        if beta is None:
            raise ConfigError(f"{family} prediction needs --beta")
        sigma = tau = float(beta)
    elif family in ("riemann", "real_sine"):
        if a is None or b is None:
            raise ConfigError(f"{family} prediction needs --a and --b")
        r = oracle.riemann_exponents(float(a), float(b))
        sigma, tau = r.sigma, r.tau
    else:
        raise ConfigError(f"unknown family {family!r}")
    pred = oracle.build_prediction(sigma, tau, float(dim_a), _FAMILY_CODOMAIN[family])
    write_json(out, {
        "family": family, "sigma": sigma, "tau": tau, "dim_a": float(dim_a),
        "image_dim": [pred.image_dim_lo, pred.image_dim_hi],
        "graph_dim": [pred.graph_dim_lo, pred.graph_dim_hi],
        "graph_partial_lower": pred.graph_partial_lower,
        "lebesgue_positive": pred.lebesgue_positive,
        "has_interior": pred.has_interior,
        "codomain_dim": pred.codomain_dim,
    })
    return EXIT_OK


def cmd_sigma_tau(cfg: ExperimentConfig, k_min: int, k_max: int,
                  out: Optional[str]) -> int:
    spec = build_series_spec(cfg.spec, cfg.master_seed)
    est = estimate_sigma_tau(spec.coeffs, spec.freqs, k_min, k_max)
    write_json(out, {
        "q": est.q, "sigma_est": est.sigma_est, "tau_est": est.tau_est,
        "slope": est.slope, "window": list(est.window),
        "per_k": [[k, v] for k, v in est.per_k],
    })
    return EXIT_OK


# ---------------------------------------------------------------------------
# figure presets (parameters mirror the curve-family captions)
# ---------------------------------------------------------------------------

_FIG_SEED = 20260810
_FIG_POINTS = 2**17


def _fig_weierstrass(beta, lam, phases):
    return {
        "spec": SeriesSpec.weierstrass(beta, lam, phases),
        "range": (0.0, lam),  # classical frequencies lam^n over [0, 1]
        "eps": 1e-6,
    }


def _fig_riemann(a, b):
    return {"spec": SeriesSpec.riemann(a, b, PhaseModel.zero()),
            "range": (0.0, 1.0), "eps": 1e-4}


def _fig_expdiff(beta, lam, phases):
    spec = SeriesSpec(
        CoefficientRule.geometric(beta, lam), FrequencyRule.geometric(lam),
        BasisFunction.exp_diff(beta, lam), phases,
        label=f"expdiff(beta={beta},lam={lam})",
    )
    return {"spec": spec, "range": (0.0, lam), "eps": 1e-6}


def _fig_takagi(beta, lam):
    return {"spec": SeriesSpec.takagi(beta, lam, PhaseModel.zero()),
            "range": (0.0, lam), "eps": 1e-6}


def _fig_lacunary_tau0():
    spec = SeriesSpec(
        CoefficientRule.power(2.0), FrequencyRule.geometric(2.0),
        BasisFunction.exp(), PhaseModel.zero(), label="tau0(2^n, n^-2)",
    )
    return {"spec": spec, "range": (0.0, 2.0), "eps": 2e-4}


def figure_presets() -> dict:
    """preset id -> builder; parameters match the published curve captions."""
    zero = PhaseModel.zero()
    equi = PhaseModel.equidistributed(math.pi)
    iid = PhaseModel.steinhaus(_FIG_SEED)
    return {
        "fig1a": lambda: _fig_weierstrass(0.3, 6.0, zero),
        "fig1b": lambda: _fig_weierstrass(0.7, 6.0, zero),
        "fig1c": lambda: _fig_weierstrass(0.9, 6.0, zero),
        "fig1d": lambda: _fig_weierstrass(0.7, 6.5, zero),
        "fig1e": lambda: _fig_weierstrass(0.7, math.sqrt(43.0), zero),
        "fig1f": lambda: _fig_weierstrass(0.7, 2.0 * math.pi, zero),
        "fig1g": lambda: _fig_weierstrass(0.4, 30.0, zero),
        "fig1h": lambda: _fig_weierstrass(0.5, 30.0, zero),
        "fig1i": lambda: _fig_weierstrass(0.6, 30.0, zero),
        "fig2a": lambda: _fig_riemann(6.0, 2.0),
        "fig2b": lambda: _fig_riemann(3.0, 2.0),
        "fig2c": lambda: _fig_riemann(2.0, 2.0),
        "fig3a": lambda: _fig_expdiff(0.3, 6.0, equi),
        "fig3b": lambda: _fig_expdiff(0.6, 6.0, equi),
        "fig4a": lambda: _fig_expdiff(0.3, 6.0, iid),
        "fig4b": lambda: _fig_expdiff(0.6, 6.0, iid),
        "fig5a": lambda: _fig_takagi(0.3, 2.0),
        "fig5b": lambda: _fig_takagi(0.6, 2.0),
        "fig5c": lambda: _fig_takagi(1.0, 2.0),
        "fig6": _fig_lacunary_tau0,
    }


def cmd_figure(preset_id: str, out: str, threads: int) -> int:
    presets = figure_presets()
    if preset_id not in presets:
        raise ConfigError(f"unknown figure preset {preset_id!r}; "
                          f"known: {', '.join(sorted(presets))}")
    p = presets[preset_id]()
    lo, hi = p["range"]
    ts = TestSet.interval(lo, hi, _FIG_POINTS)
    curve = eval_series(p["spec"], ts, p["eps"], stream_id=0, threads=threads)
    pts = np.column_stack([curve.values.real, curve.values.imag])
    render_png(pts, out)
    return EXIT_OK


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="lacunary",
                                 description="random lacunary series laboratory")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, need_config=True):
        if need_config:
            p.add_argument("--config", required=True, help="JSON experiment config")
        p.add_argument("--seed", type=int, default=None, help="override master seed")
        p.add_argument("--threads", type=int, default=None)
        p.add_argument("--out", default=None, help="output path")

    common(sub.add_parser("eval", help="evaluate a series to CSV"))
    common(sub.add_parser("dim", help="dimension ensemble vs prediction"))
    common(sub.add_parser("charfn", help="characteristic function cross-check"))

    pp = sub.add_parser("predict", help="closed-form dimension predictions")
    pp.add_argument("--family", required=True,
                    choices=sorted(_FAMILY_CODOMAIN))
    pp.add_argument("--dim-a", type=float, required=True)
    pp.add_argument("--beta", type=float)
    pp.add_argument("--lam", type=float)
    pp.add_argument("--a", type=float)
    pp.add_argument("--b", type=float)
    pp.add_argument("--out", default=None)

    pf = sub.add_parser("figure", help="render a figure preset to PNG")
    pf.add_argument("preset")
    pf.add_argument("--out", required=True)
    pf.add_argument("--threads", type=int, default=None)

    pst = sub.add_parser("sigma-tau", help="block-decay exponent estimates")
    common(pst)
    pst.add_argument("--k-min", type=int, default=5)
    pst.add_argument("--k-max", type=int, default=40)
    return ap


def _resolve_threads(flag: Optional[int], cfg_threads: int = 1) -> int:
    if flag is not None:
        return max(1, flag)
    env = os.environ.get(THREADS_ENV)
    if env:
        return max(1, int(env))
    return max(1, cfg_threads)


def _with_seed(cfg: ExperimentConfig, seed: Optional[int]) -> ExperimentConfig:
    if seed is None:
        return cfg
    raw = cfg.to_dict()
    raw["master_seed"] = int(seed)
    return parse_config(raw)


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "predict":
            return cmd_predict(args.family, args.dim_a, args.out,
                               beta=args.beta, lam=args.lam, a=args.a, b=args.b)
        if args.command == "figure":
            return cmd_figure(args.preset, args.out, _resolve_threads(args.threads))
        cfg = _with_seed(load_config(args.config), args.seed)
        threads = _resolve_threads(args.threads, cfg.threads)
        if args.command == "eval":
            if args.out is None:
                raise ConfigError("eval needs --out for the CSV")
            return cmd_eval(cfg, args.out, threads)
        if args.command == "dim":
            return cmd_dim(cfg, args.out, threads)
        if args.command == "charfn":
            return cmd_charfn(cfg, args.out, threads)
        if args.command == "sigma-tau":
            return cmd_sigma_tau(cfg, args.k_min, args.k_max, args.out)
        raise ConfigError(f"unknown command {args.command!r}")
    except (ConfigError, ValueError, KeyError, FileNotFoundError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_VALIDATION
    except Exception as exc:  # noqa: BLE001 - CLI boundary
        sys.stderr.write(f"runtime error: {exc}\n")
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
