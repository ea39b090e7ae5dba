"""Bias of the finite-coupling weak-value ratio against the true amplitude ratio.

    python scripts/bias_sweep.py --a 0.6 --b 0.8 --n 40 [--plot bias.png]

Prints alpha, |ratio - a/b| and the local log-log slope, which tends to 2
as alpha -> 0.
"""

import argparse
import math

import numpy as np

from weakpath.cli import parse_complex
from weakpath.hilbert import make_path_state
from weakpath.reconstruction import bias_sweep


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--a", default="0.6")
    parser.add_argument("--b", default="0.8")
    parser.add_argument("--n", type=int, default=30)
    parser.add_argument("--min-alpha", type=float, default=1e-3)
    parser.add_argument("--plot", default=None, help="write a log-log plot to this path")
    args = parser.parse_args()

    pi = make_path_state(parse_complex(args.a), parse_complex(args.b))
    alphas = np.geomspace(args.min_alpha, math.pi / 2, args.n)
    rows = bias_sweep(pi, alphas)
    dev = np.array([r.abs_deviation for r in rows])
    slope = np.gradient(np.log(dev), np.log(alphas))

    print(f"{'alpha':>12} {'|ratio - a/b|':>16} {'|dw|':>14} {'slope':>8}")
    for r, s in zip(rows, slope):
        print(f"{r.alpha:12.6g} {r.abs_deviation:16.8e} {r.weak_value_deviation:14.6e} {s:8.4f}")

    if args.plot:
        import matplotlib

        matplotlib.use("Agg")
        import matplotlib.pyplot as plt

        fig, ax = plt.subplots(figsize=(5, 4))
        ax.loglog(alphas, dev, "o-", ms=3, label="|ratio - a/b|")
        ax.loglog(alphas, dev[0] * (alphas / alphas[0]) ** 2, "k--", lw=0.8, label="alpha^2")
        ax.set_xlabel("coupling alpha (rad)")
        ax.set_ylabel("deviation")
        ax.legend()
        fig.tight_layout()
        fig.savefig(args.plot, dpi=150)
        print(f"wrote {args.plot}")


if __name__ == "__main__":
    main()
