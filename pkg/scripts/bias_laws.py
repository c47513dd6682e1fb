"""Monte Carlo check of the noisy-input expectation laws and the MSE gain of debiasing.

    python3 scripts/bias_laws.py --draws 1000000
"""
import argparse
import math

import numpy as np

from chaotic_modem import chaos


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--draws", type=int, default=10**6)
    p.add_argument("--seed", type=int, default=1)
    args = p.parse_args()
    rng = np.random.default_rng(args.seed)
    n = args.draws
    f0, f1 = chaos.quadratic(), chaos.trigonometric()

    print("sigma      x  map     empirical     law   z")
    for sigma in (0.05, 0.1, 0.2):
        for x in (-0.8, 0.5, 1.2):
            w = rng.normal(0.0, sigma, n)
            for m in (f0, f1):
                vals = chaos.iterate(m, x + w)
                law = chaos.predict_next_bias_corrected(m, x, sigma**2)
                z = (vals.mean() - law) / (vals.std(ddof=1) / math.sqrt(n))
                print(f"{sigma:5g} {x:6g}  {m.name[:5]:5s} {vals.mean():11.6f} {law:9.6f} {z:5.2f}")

    print("\nquadratic one-step prediction from a noisy sample")
    print("sigma   plain MSE   debiased MSE   gain   gain/sigma^4")
    x = chaos.orbit(f0, np.array([0.1]), n + 100)[0, 100:]
    for sigma in (0.05, 0.1, 0.2):
        r = x + rng.normal(0.0, sigma, n)
        target = chaos.iterate(f0, x)
        plain = np.mean((chaos.iterate(f0, r) - target) ** 2)
        fixed = np.mean((chaos.predict_next_debiased(f0, r, sigma**2) - target) ** 2)
        print(f"{sigma:5g} {plain:11.4e} {fixed:14.4e} {plain - fixed:9.3e} {(plain - fixed) / sigma**4:8.3f}")


if __name__ == "__main__":
    main()
