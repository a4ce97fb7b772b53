#!/usr/bin/env python3
"""Sampled ensemble cardinalities and weight spectra against the closed forms.

Draws random pair ensembles (m uniform pairs of distinct matrix positions,
each tying two entries equal) and compares the sampled mean number of
satisfying permutation matrices with the expected-cardinality formula, then
does the same per codeword weight for a smaller degree.
"""

from __future__ import annotations

import argparse
from dataclasses import dataclass

from permlp import ensemble_experiment, ensemble_weight_experiment


@dataclass(frozen=True)
class Config:
    n: int
    m_values: tuple[int, ...]
    samples: int
    weight_n: int
    weight_m: int
    weight_samples: int
    seed: int
    threads: int


def run(cfg: Config) -> None:
    print(f"cardinality, n={cfg.n}, {cfg.samples} samples per m")
    print(f"{'m':>4} {'sample_mean':>12} {'std_err':>10} {'formula':>12} {'z':>7}")
    for m in cfg.m_values:
        res = ensemble_experiment(cfg.n, m, cfg.samples, seed=cfg.seed, threads=cfg.threads)
        z = (
            (res.sample_mean - res.formula_value) / res.standard_error
            if res.standard_error > 0
            else float("nan")
        )
        print(
            f"{m:4d} {res.sample_mean:12.4f} {res.standard_error:10.4f} "
            f"{res.formula_value:12.4f} {z:7.2f}"
        )

    print(
        f"\nweight spectrum, n={cfg.weight_n}, m={cfg.weight_m}, "
        f"{cfg.weight_samples} samples"
    )
    res = ensemble_weight_experiment(cfg.weight_n, cfg.weight_m, cfg.weight_samples, seed=cfg.seed)
    print(f"{'w':>4} {'sample_mean':>12} {'std_err':>10} {'formula':>12} {'z':>7}")
    for w in range(cfg.weight_n + 1):
        mean = res.sample_means[w]
        se = res.standard_errors[w]
        formula = res.formula_values[w]
        z = (mean - formula) / se if se > 0 else float("nan")
        print(f"{w:4d} {mean:12.5f} {se:10.5f} {formula:12.5f} {z:7.2f}")


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=10)
    ap.add_argument("--m", default="30,40,50", help="comma-separated row counts")
    ap.add_argument("--samples", type=int, default=100)
    ap.add_argument("--weight-n", type=int, default=6)
    ap.add_argument("--weight-m", type=int, default=10)
    ap.add_argument("--weight-samples", type=int, default=10_000)
    ap.add_argument("--seed", type=int, default=2026)
    ap.add_argument("--threads", type=int, default=1)
    args = ap.parse_args()
    cfg = Config(
        n=args.n,
        m_values=tuple(int(v) for v in args.m.split(",")),
        samples=args.samples,
        weight_n=args.weight_n,
        weight_m=args.weight_m,
        weight_samples=args.weight_samples,
        seed=args.seed,
        threads=args.threads,
    )
    run(cfg)


if __name__ == "__main__":
    main()
