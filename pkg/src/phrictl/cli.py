"""Batch front-end: config-driven sweeps, fronts, selection, bundle, serve.

Stages are composable through a shared output directory: `sweep` writes the
per-alpha objective maps, `front` consumes (or computes) them, `select` and
`bundle` consume fronts, `serve` exposes the bundle plus the explorer assets
over HTTP.  Every artifact embeds the fully resolved config so a run can be
reproduced exactly.
"""

from __future__ import annotations

import argparse
import copy
import http.server
import json
import math
import os
import sys
from pathlib import Path

import jsonschema
import numpy as np

from . import freqresp, maps, metrics, pareto, selection

BUNDLE_VERSION = "1"


class ConfigError(ValueError):
    pass


class ComputationError(RuntimeError):
    pass


DEFAULT_CONFIG = {
    "plant": {
        "tau_r_s": freqresp.DEFAULT_TAU_R_S,
        "filter_order": freqresp.DEFAULT_FILTER_ORDER,
        "filter_cutoff_hz": freqresp.DEFAULT_FILTER_CUTOFF_HZ,
    },
    "scenario": "S1",
    "k_eq": None,  # default: upper end of the scenario stiffness range
    "alphas": [1.0, 0.7, 0.4],
    "grid": {
        "m_range": [0.2, 100.0],
        "m_step": 0.1,
        "b_range": [0.001, 500.0],
        "b_step": 1.0,
    },
    "frequency": {
        "band_hz": [0.01, 30.0],
        "points": 500,
        "nyquist_band_hz": [0.001, 10000.0],
        "nyquist_points": 4000,
    },
    "weighting": {"order": 5, "cutoff_hz": 5.0},
    "weight_step": 0.001,
    "constraints": {
        "C_max": None,
        "rho_min": 0.55,
        "omega_c_min_hz": 2.3,
        "k_e_eval": 610.0,
    },
    "policy": "min_C",
    "output_dir": "out",
    "downsample": 100,
}

_TERM_LIST = {
    "type": "array",
    "items": {
        "type": "object",
        "properties": {"c": {"type": "number"}, "beta": {"type": "number"}},
        "required": ["c", "beta"],
        "additionalProperties": False,
    },
}

_RANGE = {
    "type": "array",
    "items": {"type": "number"},
    "minItems": 2,
    "maxItems": 2,
}

CONFIG_SCHEMA = {
    "type": "object",
    "additionalProperties": False,
    "properties": {
        "plant": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "tau_r_s": {"type": "number", "exclusiveMinimum": 0},
                "filter_order": {"type": "integer", "minimum": 1},
                "filter_cutoff_hz": {"type": "number", "exclusiveMinimum": 0},
                "G_num": _TERM_LIST,
                "G_den": _TERM_LIST,
                "H_num": _TERM_LIST,
                "H_den": _TERM_LIST,
            },
        },
        "scenario": {
            "oneOf": [
                {"type": "string", "enum": sorted(metrics.SCENARIOS)},
                {
                    "type": "object",
                    "additionalProperties": False,
                    "properties": {
                        "m_range": _RANGE,
                        "b_range": _RANGE,
                        "k_range": _RANGE,
                    },
                    "required": ["m_range", "b_range", "k_range"],
                },
            ]
        },
        "k_eq": {"type": ["number", "null"], "minimum": 0},
        "alphas": {
            "type": "array",
            "minItems": 1,
            "items": {"type": "number", "exclusiveMinimum": 0, "maximum": 1},
        },
        "grid": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "m_range": _RANGE,
                "m_step": {"type": "number", "exclusiveMinimum": 0},
                "b_range": _RANGE,
                "b_step": {"type": "number", "exclusiveMinimum": 0},
            },
        },
        "frequency": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "band_hz": _RANGE,
                "points": {"type": "integer", "minimum": 2},
                "nyquist_band_hz": _RANGE,
                "nyquist_points": {"type": "integer", "minimum": 2},
            },
        },
        "weighting": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "order": {"type": "integer", "minimum": 1},
                "cutoff_hz": {"type": "number", "exclusiveMinimum": 0},
            },
        },
        "weight_step": {"type": "number", "exclusiveMinimum": 0, "maximum": 1},
        "constraints": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "C_max": {"type": ["number", "null"]},
                "rho_min": {"type": ["number", "null"]},
                "omega_c_min_hz": {"type": ["number", "null"]},
                "k_e_eval": {"type": "number", "exclusiveMinimum": 0},
            },
        },
        "policy": {"type": "string", "enum": ["min_C", "max_rho", "by_weight"]},
        "policy_weight": {"type": "number", "minimum": 0, "maximum": 1},
        "output_dir": {"type": "string"},
        "downsample": {"type": "integer", "minimum": 1},
    },
}


def _deep_merge(base: dict, override: dict) -> dict:
    out = copy.deepcopy(base)
    for key, val in override.items():
        if isinstance(val, dict) and isinstance(out.get(key), dict):
            out[key] = _deep_merge(out[key], val)
        else:
            out[key] = copy.deepcopy(val)
    return out


def resolve_config(user: dict | None) -> dict:
    """Validate the user config, fill defaults, resolve derived values."""
    user = user or {}
    try:
        jsonschema.validate(user, CONFIG_SCHEMA)
    except jsonschema.ValidationError as exc:
        raise ConfigError(f"config schema violation: {exc.message}") from exc
    cfg = _deep_merge(DEFAULT_CONFIG, user)
    if not cfg["alphas"]:
        raise ConfigError("alphas must be non-empty")
    if cfg["k_eq"] is None:
        cfg["k_eq"] = _bounds_from_config(cfg).k_range[1]
    return cfg


def load_config(path: str | None) -> dict:
    if path is None:
        return resolve_config({})
    try:
        with open(path) as fh:
            user = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    if not isinstance(user, dict):
        raise ConfigError("config must be a JSON object")
    return resolve_config(user)


def _bounds_from_config(cfg: dict) -> metrics.ImpedanceBounds:
    scen = cfg["scenario"]
    if isinstance(scen, str):
        return metrics.SCENARIOS[scen]
    return metrics.ImpedanceBounds(
        tuple(scen["m_range"]), tuple(scen["b_range"]), tuple(scen["k_range"])
    )


def _plant_from_config(cfg: dict) -> freqresp.PlantModel:
    try:
        return freqresp.default_plant(cfg["plant"])
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def _grids_from_config(cfg: dict):
    freq_cfg = cfg["frequency"]
    two_pi = 2.0 * math.pi
    obj = freqresp.make_log_grid(
        two_pi * freq_cfg["band_hz"][0], two_pi * freq_cfg["band_hz"][1],
        freq_cfg["points"],
    )
    nyq = freqresp.make_log_grid(
        two_pi * freq_cfg["nyquist_band_hz"][0],
        two_pi * freq_cfg["nyquist_band_hz"][1],
        freq_cfg["nyquist_points"],
    )
    return obj, nyq


def _param_grid(cfg: dict, alpha: float) -> maps.ControllerGrid:
    g = cfg["grid"]
    return maps.make_param_grid(
        alpha, tuple(g["m_range"]), g["m_step"], tuple(g["b_range"]), g["b_step"]
    )


def _constraints_from_config(cfg: dict) -> selection.SelectionConstraints:
    c = cfg["constraints"]
    return selection.SelectionConstraints(
        C_max=c["C_max"],
        rho_min=c["rho_min"],
        omega_c_min_hz=c["omega_c_min_hz"],
        k_e_eval=c["k_e_eval"],
    )


# ---------------------------------------------------------------------------
# serialization


def _jsonable(obj):
    """Recursively convert to plain JSON types; non-finite floats become null."""
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [_jsonable(v) for v in obj.tolist()]
    if isinstance(obj, (np.floating, float)):
        f = float(obj)
        return f if math.isfinite(f) else None
    if isinstance(obj, (np.integer,)):
        return int(obj)
    return obj


def _dump_json(path: Path, obj) -> None:
    path.write_text(json.dumps(_jsonable(obj), indent=2, sort_keys=True) + "\n")


def _fmt(v) -> str:
    if v is None or (isinstance(v, float) and not math.isfinite(v)):
        return ""
    return repr(v) if isinstance(v, float) else str(v)


def _alpha_label(alpha: float) -> str:
    return f"{alpha:g}"


def _map_payload(cfg: dict, omap: maps.ObjectiveMap) -> dict:
    return {
        "config": cfg,
        "grid": {
            "alpha": omap.grid.alpha,
            "m_F": omap.grid.m_F_values,
            "b_F": omap.grid.b_F_values,
        },
        "kind": omap.kind,
        "values": omap.values,
    }


def _write_map_csv(path: Path, cfg: dict, omap: maps.ObjectiveMap) -> None:
    lines = ["# config: " + json.dumps(_jsonable(cfg), sort_keys=True)]
    lines.append("m_F,b_F,value")
    for i, m in enumerate(omap.grid.m_F_values):
        for j, b in enumerate(omap.grid.b_F_values):
            v = omap.values[i, j]
            lines.append(f"{_fmt(float(m))},{_fmt(float(b))},{_fmt(float(v))}")
    path.write_text("\n".join(lines) + "\n")


def _load_map(path: Path) -> maps.ObjectiveMap:
    data = json.loads(path.read_text())
    grid = maps.ControllerGrid(
        data["grid"]["alpha"],
        np.asarray(data["grid"]["m_F"], dtype=float),
        np.asarray(data["grid"]["b_F"], dtype=float),
    )
    values = np.asarray(
        [[math.nan if v is None else v for v in row] for row in data["values"]],
        dtype=float,
    )
    return maps.ObjectiveMap(grid, values, data["kind"])


def _point_record(p: pareto.ParetoPoint) -> dict:
    return {
        "alpha": p.alpha,
        "m_F": p.m_F,
        "b_F": p.b_F,
        "C": p.C,
        "rho": p.rho,
        "C_n": p.C_n,
        "rho_n": p.rho_n,
        "w": p.weight,
        "omega_c_hz": p.omega_c_hz,
        "omega_c_saturated": p.omega_c_saturated,
    }


def _point_from_record(rec: dict) -> pareto.ParetoPoint:
    return pareto.ParetoPoint(
        alpha=rec["alpha"],
        m_F=rec["m_F"],
        b_F=rec["b_F"],
        C=rec["C"],
        rho=rec["rho"],
        C_n=rec["C_n"],
        rho_n=rec["rho_n"],
        weight=rec.get("w"),
        omega_c_hz=rec.get("omega_c_hz"),
        omega_c_saturated=rec.get("omega_c_saturated", False),
    )


def _front_payload(cfg: dict, front: pareto.ParetoFront) -> dict:
    return {
        "config": cfg,
        "alpha": front.alpha,
        "C_max": front.C_max,
        "rho_max": front.rho_max,
        "points": [_point_record(p) for p in front.points],
    }


def _write_front_csv(path: Path, cfg: dict, front: pareto.ParetoFront) -> None:
    lines = ["# config: " + json.dumps(_jsonable(cfg), sort_keys=True)]
    lines.append("alpha,m_F,b_F,C,rho,w")
    for p in front.points:
        lines.append(
            ",".join(
                _fmt(v) for v in (p.alpha, p.m_F, p.b_F, p.C, p.rho, p.weight)
            )
        )
    path.write_text("\n".join(lines) + "\n")


def _load_front(path: Path) -> pareto.ParetoFront:
    data = json.loads(path.read_text())
    return pareto.ParetoFront(
        data["alpha"],
        tuple(_point_from_record(r) for r in data["points"]),
        data.get("C_max"),
        data.get("rho_max"),
    )


# ---------------------------------------------------------------------------
# stages


def _map_paths(out: Path, alpha: float):
    label = _alpha_label(alpha)
    return out / f"transparency_a{label}.json", out / f"robustness_a{label}.json"


def _front_path(out: Path, alpha: float) -> Path:
    return out / f"front_a{_alpha_label(alpha)}.json"


def _compute_maps(cfg: dict, alpha: float):
    plant = _plant_from_config(cfg)
    bounds = _bounds_from_config(cfg)
    obj_grid, nyq_grid = _grids_from_config(cfg)
    grid = _param_grid(cfg, alpha)
    W = metrics.WeightingFunction(
        cfg["weighting"]["order"], 2.0 * math.pi * cfg["weighting"]["cutoff_hz"]
    )
    c_map = maps.sweep_transparency(plant, grid, obj_grid, W)
    rho_map = maps.sweep_robustness(
        plant, grid, bounds, cfg["k_eq"], obj_grid, nyq_grid
    )
    return c_map, rho_map


def run_sweep(cfg: dict, out_dir: str | None = None, write_csv: bool = False):
    """Write per-alpha transparency and robustness maps; returns the paths."""
    out = Path(out_dir or cfg["output_dir"])
    out.mkdir(parents=True, exist_ok=True)
    written = []
    for alpha in cfg["alphas"]:
        c_map, rho_map = _compute_maps(cfg, alpha)
        c_path, rho_path = _map_paths(out, alpha)
        _dump_json(c_path, _map_payload(cfg, c_map))
        _dump_json(rho_path, _map_payload(cfg, rho_map))
        written += [c_path, rho_path]
        if write_csv:
            _write_map_csv(c_path.with_suffix(".csv"), cfg, c_map)
            _write_map_csv(rho_path.with_suffix(".csv"), cfg, rho_map)
    return written


def _front_for_alpha(cfg: dict, out: Path, alpha: float) -> pareto.ParetoFront | None:
    """Build the annotated front for one alpha; None when no stable cells."""
    c_path, rho_path = _map_paths(out, alpha)
    if c_path.exists() and rho_path.exists():
        c_map, rho_map = _load_map(c_path), _load_map(rho_path)
    else:
        c_map, rho_map = _compute_maps(cfg, alpha)
    c_map, rho_map = maps.align_sentinels(c_map, rho_map)
    try:
        pair_c, pair_rho = c_map, rho_map
        norm = maps.normalize_pair(pair_c, pair_rho)
        scan = pareto.weight_scan(norm, cfg["weight_step"])
        filtered = pareto.non_dominated_filter(pair_c, pair_rho)
        front = pareto.assemble_front(scan, filtered)
    except (pareto.EmptyFrontError, maps.NormalizationError):
        return None
    plant = _plant_from_config(cfg)
    return selection.annotate_cutoffs(
        front, plant, cfg["constraints"]["k_e_eval"]
    )


def run_front(cfg: dict, out_dir: str | None = None, write_csv: bool = True):
    """Write per-alpha Pareto fronts (JSON always, CSV by default)."""
    out = Path(out_dir or cfg["output_dir"])
    out.mkdir(parents=True, exist_ok=True)
    written = []
    for alpha in cfg["alphas"]:
        front = _front_for_alpha(cfg, out, alpha)
        path = _front_path(out, alpha)
        if front is None:
            _dump_json(path, {"config": cfg, "alpha": alpha, "empty": True,
                              "C_max": None, "rho_max": None, "points": []})
        else:
            _dump_json(path, _front_payload(cfg, front))
            if write_csv:
                _write_front_csv(path.with_suffix(".csv"), cfg, front)
        written.append(path)
    return written


def _selection_counts(front: pareto.ParetoFront, cons: selection.SelectionConstraints):
    counts = {"total": len(front.points), "by_C_max": 0, "by_rho_min": 0,
              "by_omega_c_min": 0}
    for p in front.points:
        if cons.C_max is not None and p.C > cons.C_max:
            counts["by_C_max"] += 1
        if cons.rho_min is not None and p.rho < cons.rho_min:
            counts["by_rho_min"] += 1
        if cons.omega_c_min_hz is not None and (
            p.omega_c_hz is None or p.omega_c_hz < cons.omega_c_min_hz
        ):
            counts["by_omega_c_min"] += 1
    return counts


def build_selection_report(cfg: dict, fronts: dict[float, pareto.ParetoFront | None]):
    """Apply constraints + policy per alpha; overall pick is the min-C chosen."""
    cons = _constraints_from_config(cfg)
    plant = _plant_from_config(cfg)
    per_alpha = []
    chosen_points = []
    for alpha in cfg["alphas"]:
        front = fronts.get(alpha)
        if front is None or not front.points:
            per_alpha.append({"alpha": alpha, "chosen": None,
                              "eliminated_counts": {"total": 0, "feasible": 0}})
            continue
        feasible = selection.apply_constraints(front, cons, plant)
        counts = _selection_counts(front, cons)
        counts["feasible"] = len(feasible.points)
        if feasible.points:
            point = selection.choose_design(
                feasible, cfg["policy"], cfg.get("policy_weight")
            )
            chosen_points.append(point)
            chosen = _point_record(point)
        else:
            chosen = None
        per_alpha.append(
            {"alpha": alpha, "chosen": chosen, "eliminated_counts": counts}
        )
    overall = None
    if chosen_points:
        best = min(chosen_points, key=lambda p: (p.C, p.m_F, p.b_F))
        overall = _point_record(best)
    return {
        "config": cfg,
        "constraints": {
            "C_max": cons.C_max,
            "rho_min": cons.rho_min,
            "omega_c_min_hz": cons.omega_c_min_hz,
            "k_e_eval": cons.k_e_eval,
        },
        "policy": cfg["policy"],
        "per_alpha": per_alpha,
        "chosen": overall,
    }


def _load_fronts(cfg: dict, out: Path, required: bool = True):
    fronts: dict[float, pareto.ParetoFront | None] = {}
    for alpha in cfg["alphas"]:
        path = _front_path(out, alpha)
        if not path.exists():
            if required:
                raise ComputationError(f"missing front artifact: {path}")
            fronts[alpha] = _front_for_alpha(cfg, out, alpha)
            continue
        front = _load_front(path)
        fronts[alpha] = front if front.points else None
    return fronts


def run_select(cfg: dict, out_dir: str | None = None) -> Path:
    out = Path(out_dir or cfg["output_dir"])
    out.mkdir(parents=True, exist_ok=True)
    fronts = _load_fronts(cfg, out, required=False)
    report = build_selection_report(cfg, fronts)
    path = out / "selection.json"
    _dump_json(path, report)
    if report["chosen"] is None:
        print("warning: no design satisfies the constraints", file=sys.stderr)
    return path


def _downsample_map(omap: maps.ObjectiveMap, k: int) -> dict:
    """Stride both axes so each has at most k samples (no interpolation)."""
    m = omap.grid.m_F_values
    b = omap.grid.b_F_values
    sm = max(1, -(-m.size // k))
    sb = max(1, -(-b.size // k))
    return {
        "alpha": omap.grid.alpha,
        "kind": omap.kind,
        "m_F": m[::sm],
        "b_F": b[::sb],
        "values": omap.values[::sm, ::sb],
    }


def export_bundle(cfg: dict, out_dir: str | None = None,
                  downsample: int | None = None) -> Path:
    out = Path(out_dir or cfg["output_dir"])
    out.mkdir(parents=True, exist_ok=True)
    k = downsample or cfg["downsample"]
    fronts_json = []
    maps_json = []
    for alpha in cfg["alphas"]:
        f_path = _front_path(out, alpha)
        if not f_path.exists():
            raise ComputationError(f"missing front artifact: {f_path}")
        fronts_json.append(json.loads(f_path.read_text()))
        c_path, rho_path = _map_paths(out, alpha)
        for p in (c_path, rho_path):
            if not p.exists():
                raise ComputationError(f"missing map artifact: {p}")
            maps_json.append(_downsample_map(_load_map(p), k))
    sel_path = out / "selection.json"
    if not sel_path.exists():
        raise ComputationError(f"missing selection artifact: {sel_path}")
    sel = json.loads(sel_path.read_text())
    bundle = {
        "version": BUNDLE_VERSION,
        "config": cfg,
        "fronts": [
            {k2: v for k2, v in f.items() if k2 != "config"} for f in fronts_json
        ],
        "maps": maps_json,
        "selection": {k2: v for k2, v in sel.items() if k2 != "config"},
    }
    path = out / "bundle.json"
    _dump_json(path, bundle)
    return path


# ---------------------------------------------------------------------------
# serve


def validate_bundle_file(path: Path) -> bytes:
    raw = path.read_bytes()
    try:
        data = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise ComputationError(f"malformed bundle {path}: {exc}") from exc
    for key in ("version", "config", "fronts", "maps", "selection"):
        if key not in data:
            raise ComputationError(f"bundle missing key {key!r}")
    if data["version"] != BUNDLE_VERSION:
        raise ComputationError(f"unsupported bundle version {data['version']!r}")
    return raw


def make_server(bundle_path: Path, port: int, static_dir: Path | None = None):
    """ThreadingHTTPServer with /api/bundle, /api/health and static assets."""
    bundle_bytes = validate_bundle_file(bundle_path)
    static = static_dir if static_dir is not None else _default_static_dir()

    class Handler(http.server.SimpleHTTPRequestHandler):
        def __init__(self, *args, **kwargs):
            super().__init__(*args, directory=str(static), **kwargs)

        def log_message(self, *args):
            pass

        def do_GET(self):
            if self.path == "/api/bundle":
                self._send(bundle_bytes, "application/json")
            elif self.path == "/api/health":
                self._send(b'{"status":"ok"}', "application/json")
            else:
                super().do_GET()

        def _send(self, payload: bytes, ctype: str):
            self.send_response(200)
            self.send_header("Content-Type", ctype)
            self.send_header("Content-Length", str(len(payload)))
            self.end_headers()
            self.wfile.write(payload)

    return http.server.ThreadingHTTPServer(("127.0.0.1", port), Handler)


def _default_static_dir() -> Path:
    candidate = Path(__file__).resolve().parents[2] / "frontend" / "dist"
    return candidate if candidate.is_dir() else Path(os.getcwd())


def run_serve(cfg: dict, out_dir: str | None, port: int,
              static_dir: str | None = None) -> int:
    out = Path(out_dir or cfg["output_dir"])
    bundle_path = out / "bundle.json"
    if not bundle_path.exists():
        raise ComputationError(f"missing bundle artifact: {bundle_path}")
    try:
        server = make_server(
            bundle_path, port, Path(static_dir) if static_dir else None
        )
    except OSError as exc:
        raise ComputationError(f"cannot bind port {port}: {exc}") from exc
    print(f"serving bundle on http://127.0.0.1:{port}/ (ctrl-c to stop)")
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.server_close()
    return 0


# ---------------------------------------------------------------------------
# entry point


def _parse_args(argv):
    parser = argparse.ArgumentParser(
        prog="phrictl",
        description="Transparency / robustness design maps, Pareto fronts and "
        "design selection for admittance controllers.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ("sweep", "front", "select", "bundle", "serve"):
        p = sub.add_parser(name)
        p.add_argument("--config", default=None, help="JSON config file")
        p.add_argument("--out", default=None, help="output directory")
        p.add_argument("--alphas", default=None,
                       help="comma-separated integration orders, e.g. 1,0.7,0.4")
        if name == "sweep":
            p.add_argument("--csv", action="store_true",
                           help="also write CSV map exports")
        if name == "bundle":
            p.add_argument("--downsample", type=int, default=None,
                           help="max samples per map axis in the bundle")
        if name == "serve":
            p.add_argument("--port", type=int, default=8490)
            p.add_argument("--static", default=None,
                           help="directory of explorer assets")
    return parser.parse_args(argv)


def main(argv=None) -> int:
    args = _parse_args(argv if argv is not None else sys.argv[1:])
    try:
        cfg = load_config(args.config)
        if args.alphas:
            alphas = [float(a) for a in args.alphas.split(",") if a]
            if not alphas or any(not (0 < a <= 1) for a in alphas):
                raise ConfigError("--alphas must list values in (0, 1]")
            cfg["alphas"] = alphas
    except (ConfigError, ValueError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 1
    try:
        if args.command == "sweep":
            run_sweep(cfg, args.out, write_csv=args.csv)
        elif args.command == "front":
            run_front(cfg, args.out)
        elif args.command == "select":
            run_select(cfg, args.out)
        elif args.command == "bundle":
            export_bundle(cfg, args.out, args.downsample)
        elif args.command == "serve":
            return run_serve(cfg, args.out, args.port, args.static)
    except ComputationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
