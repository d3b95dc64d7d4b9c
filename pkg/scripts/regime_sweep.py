"""Population curves over gamma with the analytic bands, numeric columns optional.

    python scripts/regime_sweep.py --numeric --eps1 1e-3 --out sweep.csv
"""
import argparse

from hardosc import cli

ap = argparse.ArgumentParser()
ap.add_argument("--gamma-max", type=float, default=1.0)
ap.add_argument("--steps", type=int, default=50)
ap.add_argument("--eps1", type=float, default=1e-3)
ap.add_argument("--numeric", action="store_true")
ap.add_argument("--out", default="regime_sweep.csv")
args = ap.parse_args()

records = cli.sweep(0.0, args.gamma_max, args.steps, args.eps1, args.numeric)
with open(args.out, "w", newline="") as fh:
    cli.write_sweep(records, fh)

prev = None
for r in records:
    if r.band != prev:
        print(f"gamma={r.gamma:.4f}  band {r.band}  analytic=({r.rho0_a:.4f}, {r.rho1_a:.4f}, {r.rho2_a:.4f})", end="")
        if r.rho0_n is not None:
            print(f"  numeric=({r.rho0_n:.4f}, {r.rho1_n:.4f}, {r.rho2_n:.4f})", end="")
        print()
        prev = r.band
print(f"wrote {args.out}")
