"""Export the Type I and Type II periodic solutions for plotting.

Writes the exact breakpoints (two return periods from h*) to CSV.  With
--plot and matplotlib installed, also draws both solutions next to the
coefficient a(t).
"""
import argparse
import sys

import numpy as np

from pcdde.analysis import fixed_point, return_period
from pcdde.coefficients import eval_a0, ingest_params
from pcdde.exact import HistoryFunction, integrate_exact

ROWS = {
    "I": (0.5, 0.1, -0.1, 3.0, 1.0, 0.5),
    "II": (0.5, 0.1, -0.1, 0.5, 1.0, 0.5),
}


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--prefix", default="solution")
    ap.add_argument("--returns", type=int, default=2)
    ap.add_argument("--plot", action="store_true")
    args = ap.parse_args()

    runs = {}
    for variant, row in ROWS.items():
        params = ingest_params(*row)
        h = fixed_point(params, variant).h_star
        t_end = args.returns * return_period(params, variant)
        traj, _ = integrate_exact(HistoryFunction.constant(h), params, t_end)
        path = f"{args.prefix}_type{variant}.csv"
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(traj.to_csv())
        print(f"type {variant}: h*={h:.6g} zeros={[round(z, 6) for z in traj.zeros]} -> {path}")
        runs[variant] = (params, h, traj)

    if args.plot:
        try:
            import matplotlib.pyplot as plt
        except ImportError:
            print("matplotlib not installed; skipping plot (pip install .[plots])")
            return 0
        fig, axes = plt.subplots(2, 1, figsize=(8, 6))
        for ax, (variant, (params, h, traj)) in zip(axes, runs.items()):
            ts = np.concatenate([[-1.0, 0.0], traj.times])
            xs = np.concatenate([[h, h], traj.values])
            ax.plot(ts, xs, label="x(t)")
            fine = np.linspace(0.0, traj.t_end, 2000)
            ax.step(fine, eval_a0(fine, params), where="post", alpha=0.5, label="a(t)")
            ax.axhline(0.0, color="k", lw=0.5)
            ax.set_title(f"type {variant}, h* = {h:.4g}")
            ax.legend(loc="upper right")
        fig.tight_layout()
        out = f"{args.prefix}.png"
        fig.savefig(out, dpi=120)
        print(f"plot: {out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
