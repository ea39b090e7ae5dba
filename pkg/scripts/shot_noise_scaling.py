"""Shot-noise scaling of the Bloch estimate for a post-selected spin.

    python scripts/shot_noise_scaling.py --seeds 200
"""

import argparse

import numpy as np

from weakpath.experiment import CouplingConfig, run
from weakpath.hilbert import SYMMETRIC, make_path_state
from weakpath.tomography import bloch_exact, measure


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--seeds", type=int, default=200)
    parser.add_argument("--alpha", type=float, default=0.8)
    args = parser.parse_args()

    spin = run(make_path_state(0.6, 0.8j), CouplingConfig("II", args.alpha), SYMMETRIC).conditional_spin
    exact = np.array(bloch_exact(spin).as_tuple())
    ns = np.array([10**2, 10**3, 10**4, 10**5, 10**6])
    rms, stderr = [], []
    for n in ns:
        est = [measure(spin, int(n), 3 * s)[1] for s in range(args.seeds)]
        values = np.array([e.value.as_tuple() for e in est])
        rms.append(np.sqrt(np.mean((values - exact) ** 2, axis=0)))
        stderr.append(np.mean([e.stderr for e in est], axis=0))
        print(f"N={n:>8d}  rms={np.round(rms[-1], 6)}  mean stderr={np.round(stderr[-1], 6)}")
    print("slope rms    :", np.round(np.polyfit(np.log(ns), np.log(rms), 1)[0], 4))
    print("slope stderr :", np.round(np.polyfit(np.log(ns), np.log(stderr), 1)[0], 4))


if __name__ == "__main__":
    main()
