"""Empirical order of the midpoint-L1 Caputo scheme.

    python scripts/caputo_convergence.py --expr "t^2" --t 1
"""

import argparse
import math

from scipy.special import gamma

from gfd.expr import parse
from gfd.operators import caputo

# closed forms for power laws: Caputo of t^p is Gamma(p+1)/Gamma(p+1-alpha) t^(p-alpha)
POWERS = {"t": 1.0, "t^2": 2.0, "t^3": 3.0}


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--expr", default="t^2", choices=sorted(POWERS))
    p.add_argument("--t", type=float, default=1.0)
    p.add_argument("--alphas", default="0.25,0.5,0.75")
    p.add_argument("--steps", default="100,1000,10000")
    args = p.parse_args(argv)

    f, power = parse(args.expr), POWERS[args.expr]
    steps = [int(s) for s in args.steps.split(",")]
    print("alpha,n_steps,value,abs_error,order")
    for alpha in (float(a) for a in args.alphas.split(",")):
        exact = float(gamma(power + 1) / gamma(power + 1 - alpha) * args.t ** (power - alpha))
        prev = None
        for n in steps:
            err = abs(caputo(f, alpha, 0.0, args.t, n) - exact)
            order = "" if prev is None or err == 0 else f"{math.log(prev[1] / err) / math.log(n / prev[0]):.4f}"
            print(f"{alpha},{n},{exact!r},{err:.3e},{order}")
            prev = (n, err)


if __name__ == "__main__":
    main()
