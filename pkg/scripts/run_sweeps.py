"""Run the bundled scenarios and drop their CSVs under results/.

Usage: python scripts/run_sweeps.py [output_dir]
"""

from __future__ import annotations

import sys
from pathlib import Path

from forage.harness import load_scenario, run_scenario

REPO = Path(__file__).resolve().parent.parent
SCENARIOS = ("responsiveness.xml", "energy.xml")


def main() -> int:
    out_dir = Path(sys.argv[1]) if len(sys.argv) > 1 else REPO / "results"
    out_dir.mkdir(parents=True, exist_ok=True)
    for name in SCENARIOS:
        cfg = load_scenario(REPO / "scenarios" / name)
        out_path = out_dir / f"{cfg.name}.csv"
        rows = run_scenario(cfg, out_path=out_path)
        chosen = [r.decision for r in rows if r.strategy == "solver"]
        print(f"{cfg.name}: {len(rows)} rows -> {out_path}")
        print(f"  solver picks across the sweep: {', '.join(chosen)}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
