"""Regenerate the explorer parity fixtures.

Runs the full pipeline on a small grid, exports the bundle, and records the
CLI selection report for ten constraint triples.  The frontend test suite
replays the same triples against the bundle and must reproduce the counts
and reports exactly.

Usage: python3 scripts/make_explorer_fixture.py
"""

import json
import sys
import tempfile
from pathlib import Path

from phrictl import cli

FIXTURE_DIR = Path(__file__).resolve().parents[1] / "frontend" / "tests" / "fixtures"

CONFIG = {
    "alphas": [1.0, 0.7, 0.4],
    "grid": {
        "m_range": [0.5, 80.0],
        "m_step": 8.0,
        "b_range": [5.0, 450.0],
        "b_step": 50.0,
    },
    "frequency": {"band_hz": [0.01, 30.0], "points": 120},
    "weight_step": 0.005,
    "downsample": 10,
}

# (C_max, rho_min, omega_c_min_hz); None disables a bound
TRIPLES = [
    (None, None, None),
    (None, 0.55, None),
    (None, 0.55, 2.3),
    (None, 0.4, 1.0),
    (800.0, None, None),
    (800.0, 0.5, None),
    (600.0, 0.45, 1.5),
    (None, 0.99, None),
    (1.0, None, None),
    (1500.0, 0.3, 0.5),
]


def main() -> int:
    cfg = cli.resolve_config(CONFIG)
    with tempfile.TemporaryDirectory() as tmp:
        cli.run_sweep(cfg, tmp)
        cli.run_front(cfg, tmp)
        cli.run_select(cfg, tmp)
        bundle_path = cli.export_bundle(cfg, tmp)
        bundle_raw = bundle_path.read_text()

        cases = []
        fronts = cli._load_fronts(cfg, Path(tmp))
        for c_max, rho_min, wc_min in TRIPLES:
            case_cfg = dict(cfg)
            case_cfg["constraints"] = {
                "C_max": c_max,
                "rho_min": rho_min,
                "omega_c_min_hz": wc_min,
                "k_e_eval": cfg["constraints"]["k_e_eval"],
            }
            report = cli.build_selection_report(case_cfg, fronts)
            report.pop("config")
            cases.append(
                {
                    "constraints": report["constraints"],
                    "report": cli._jsonable(report),
                }
            )

    FIXTURE_DIR.mkdir(parents=True, exist_ok=True)
    (FIXTURE_DIR / "bundle.json").write_text(bundle_raw)
    (FIXTURE_DIR / "parity.json").write_text(
        json.dumps({"cases": cases}, indent=2, sort_keys=True) + "\n"
    )
    print(f"wrote {FIXTURE_DIR / 'bundle.json'}")
    print(f"wrote {FIXTURE_DIR / 'parity.json'} ({len(cases)} cases)")
    return 0


if __name__ == "__main__":
    sys.exit(main())
