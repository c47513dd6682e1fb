"""BER of sync/unsync CSK and predictive FSK over Eb/N0, with theory overlays.

    python3 scripts/reproduce_ber_figure.py --bits 2000 --out results/quick
"""
import argparse
import time
from dataclasses import replace
from pathlib import Path

from chaotic_modem import analysis
from chaotic_modem.channel import NoiseConvention
from chaotic_modem.harness import ExperimentConfig, emit_plot, parse_grid, run_experiment, write_csv
from chaotic_modem.harness.config import worker_count


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--bits", type=int, default=100_000)
    p.add_argument("--ebno", default="0:14:2")
    p.add_argument("--noise-convention", choices=[c.value for c in NoiseConvention], default="literal")
    p.add_argument("--seed", type=int, default=2024)
    p.add_argument("--workers", type=int)
    p.add_argument("--out", default="results/figure")
    args = p.parse_args()

    config = replace(
        ExperimentConfig(), K=args.bits, ebno_grid_db=parse_grid(args.ebno),
        noise_convention=NoiseConvention(args.noise_convention), master_seed=args.seed,
    )
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)

    start = time.perf_counter()
    curves = run_experiment(config, workers=worker_count(args.workers))
    print(f"{config.K} bits per point in {time.perf_counter() - start:.1f} s")

    theory = analysis.theory_curves(config.ebno_grid_db, (), config.noise_convention)
    write_csv(curves, out / "ber.csv")
    emit_plot(curves, theory, out / "ber.svg", title=f"BER, N={config.N}, {config.noise_convention.value} noise")

    print("ebno_db " + " ".join(f"{c.label:>20s}" for c in curves))
    for i, e in enumerate(config.ebno_grid_db):
        print(f"{e:7g} " + " ".join(f"{c.points[i].ber:20.4g}" for c in curves))
    print(f"wrote {out / 'ber.csv'} and {out / 'ber.svg'}")


if __name__ == "__main__":
    main()
