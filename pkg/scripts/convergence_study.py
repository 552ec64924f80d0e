"""Truncation convergence of the Bogoliubov and Weyl identities.

    python3 scripts/convergence_study.py [--epsilon 0.3] [--dims 16,32,64,128]
"""

import argparse

from qweyl.fock import BogoliubovCoefficients, equivalence_convergence
from qweyl.weyl import composition_convergence

POINTS = [0.0, 1.0, 1j, -0.6 + 0.8j, -0.5 - 0.5j]


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--epsilon", type=float, default=0.3)
    ap.add_argument("--dims", default="16,32,64,128")
    args = ap.parse_args()
    dims = tuple(int(d) for d in args.dims.split(","))

    c = BogoliubovCoefficients.from_epsilon(args.epsilon)
    print(f"Bogoliubov eps={args.epsilon}: u={c.u:.15g} v={c.v:.15g} |u^2-v^2-1|={c.symplectic_defect:.2e}")
    print(f"{'n':>6} {'S^-1 c S defect (block n/2)':>30}")
    for n, dev in equivalence_convergence(args.epsilon, dims):
        print(f"{n:>6} {dev:>30.3e}")

    print("\nWeyl composition, worst over the 5x5 point grid (block n/2)")
    print(f"{'n':>6} {'unscaled':>12} {'rho=0.5':>12} {'rho=2':>12}")
    cols = [composition_convergence(POINTS, dims)]
    cols += [composition_convergence(POINTS, dims, rho=r) for r in (0.5, 2.0)]
    for i, n in enumerate(dims):
        print(f"{n:>6} " + " ".join(f"{col[i][1]:>12.3e}" for col in cols))


if __name__ == "__main__":
    main()
