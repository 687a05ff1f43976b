"""Regenerate the absence-heralding sweeps (delta and T2 axes) as CSV and SVG.

Usage: python scripts/reproduce_fig2.py [outdir]
"""

import sys
from pathlib import Path

from wherald.cli import main

root = Path(__file__).resolve().parents[1]
out = Path(sys.argv[1]) if len(sys.argv) > 1 else root / "results"
out.mkdir(parents=True, exist_ok=True)

panels = [
    ("fig2_delta", "delta", "eta=0.1"),
    ("fig2_t2", "T2", "T1=10.0"),
]
for name, x, loss in panels:
    csv_path = out / f"{name}.csv"
    code = main(["analytic", "--config", str(root / "configs" / f"{name}.json"), "--out", str(csv_path)])
    if code:
        sys.exit(code)
    for y in ("P_analytic", "F_analytic"):
        svg = out / f"{name}_{y[0]}.svg"
        main(["plot", "--csv", str(csv_path), "--x", x, "--y", y, "--series", "n",
              "--where", "herald=absence", "--where", loss, "--out", str(svg)])
        print(f"wrote {svg}")
