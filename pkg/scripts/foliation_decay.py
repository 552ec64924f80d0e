"""Multimode vacuum-overlap decay versus mode count and deformation.

    python3 scripts/foliation_decay.py [--modes 1,10,100,1000] [--dim 64]
"""

import argparse

import numpy as np

from qweyl.foliation import closed_form_overlap, foliation_scan


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--modes", default="1,10,100,1000")
    ap.add_argument("--dim", type=int, default=64)
    ap.add_argument("--epsilons", default="0.05,0.1,0.25,0.5,1.0")
    args = ap.parse_args()
    modes = [int(m) for m in args.modes.split(",")]
    eps_list = [float(e) for e in args.epsilons.split(",")]

    print(f"{'eps':>6} {'per-mode':>12} {'closed form':>12} " + " ".join(f"{'M=' + str(m):>11}" for m in modes))
    for eps in eps_list:
        scan = foliation_scan(eps, modes, args.dim)
        row = " ".join(f"{p:>11.3e}" for p in scan.products)
        print(f"{eps:>6g} {scan.per_mode_overlap:>12.9f} {closed_form_overlap(eps):>12.9f} {row}")

    # modes needed to push the overlap below 1e-6
    print("\nM needed for overlap < 1e-6:")
    for eps in eps_list:
        per = foliation_scan(eps, [1], args.dim).per_mode_overlap
        print(f"  eps={eps:g}: M >= {int(np.ceil(np.log(1e-6) / np.log(per)))}")


if __name__ == "__main__":
    main()
