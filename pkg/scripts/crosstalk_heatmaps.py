#!/usr/bin/env python3
"""Dump |output| heatmap CSVs for the 5-core demo channel over an alpha grid.

Same machinery as the demo-fig1 subcommand but with a configurable grid,
useful for exploring how dephasing strength trades coherence against the
crosstalk scrambling of the populations.
"""

import argparse
from pathlib import Path

import numpy as np

from mcfqc.channel import McfChannel, apply, verify_cptp
from mcfqc.presets import DEMO_CROSSTALK_5
from mcfqc.states import max_coherent


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--outdir", required=True)
    parser.add_argument(
        "--alphas", type=float, nargs="+", default=[0.0, -0.4, -0.8, -1.0, -1.2, -1.6]
    )
    args = parser.parse_args()

    outdir = Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    rho = max_coherent(5)
    for alpha in args.alphas:
        ch = McfChannel.with_uniform_dephasing(DEMO_CROSSTALK_5, alpha)
        out = apply(ch, rho, force=True)
        path = outdir / f"heatmap_alpha_{alpha:g}.csv"
        lines = [",".join(repr(float(x)) for x in row) for row in np.abs(out.mat)]
        path.write_text("\n".join(lines) + "\n", encoding="utf-8")
        tag = "CP" if verify_cptp(ch).cp_ok else "not CP"
        print(f"alpha={alpha:+.2f} ({tag}): wrote {path}")


if __name__ == "__main__":
    main()
