"""Residuals of every candidate solution against both PDE examples.

    python scripts/pde_candidates.py --n 21
"""

import argparse

from gfd import solver


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--n", type=int, default=21, help="points per axis")
    args = p.parse_args(argv)

    cases = [
        ("pde1", "corrected", solver.pde1_corrected_solution(), (0.5, 2.0)),
        ("pde1", "static", solver.pde1_static_solution(), (0.5, 2.0)),
        ("pde2", "separated", solver.pde2_separated_solution(), (1.0, 2.0)),
        ("pde2", "unscaled", solver.pde2_unscaled_solution(), (1.0, 2.0)),
        ("pde2", "rescaled", solver.pde2_rescaled_solution(), (1.0, 2.0)),
        ("pde2-original", "separated", solver.pde2_separated_solution(), (1.0, 2.0)),
    ]
    print("equation,candidate,domain,max_abs_residual,u")
    for eq, name, u, (lo, hi) in cases:
        rep = solver.pde_residual(eq, u, solver.square_grid(lo, hi, args.n))
        print(f"{eq},{name},[{lo};{hi}]^2,{rep.max_abs_residual:.3e},{u}")


if __name__ == "__main__":
    main()
