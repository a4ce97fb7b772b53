"""AWGN channel simulation and random-ensemble experiments.

Noise is generated from a counter-based scheme: every trial owns a fresh
generator seeded by (seed, snr point index, trial index), so results are
bit-identical regardless of worker count or execution order.  The SNR of the
unit-energy-free convention used throughout is SNR_dB = 10 log10(1 / sigma^2).
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from . import bounds
from .codebook import Code, CodeSpec, build_code
from .constraints import sample_ensemble, satisfies_mask, theta
from .lp import lp_decode, ml_decode_detail
from .perm import BRUTE_FORCE_LIMIT, permutation_table


def sigma_from_snr_db(snr_db: float) -> float:
    return 10.0 ** (-snr_db / 20.0)


@dataclass(frozen=True)
class SnrPoint:
    snr_db: float
    sigma: float

    @classmethod
    def from_db(cls, snr_db: float) -> "SnrPoint":
        return cls(snr_db=float(snr_db), sigma=sigma_from_snr_db(snr_db))


def awgn(x: Sequence[float], sigma: float, rng: np.random.Generator) -> np.ndarray:
    """x plus i.i.d. zero-mean Gaussian noise of standard deviation sigma."""
    if sigma < 0:
        raise ValueError("sigma must be nonnegative")
    x = np.asarray(x, dtype=float)
    return x + rng.normal(0.0, sigma, x.shape)


@dataclass(frozen=True)
class TrialRecord:
    """Aggregated outcome of all trials at one SNR point."""

    snr_db: float
    sigma: float
    trials: int
    lp_errors: int
    lp_failures: int
    ml_errors: Optional[int]
    seed: int


def _trial_rng(seed: int, point: int, trial: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence((seed, point, trial)))


def _simulate_point(args) -> TrialRecord:
    spec, snr_db, point_idx, trials, seed, decoders, transmitted, limit = args
    sigma = sigma_from_snr_db(snr_db)
    s = np.asarray(spec.s, dtype=float)
    code: Optional[Code] = None
    if "ml" in decoders or transmitted is None:
        code = build_code(spec, limit)
        if len(code) == 0:
            raise ValueError("the code is empty; nothing to transmit")
    fixed = None if transmitted is None else np.asarray(transmitted, dtype=float)
    lp_errors = lp_failures = ml_errors = 0
    for t in range(trials):
        rng = _trial_rng(seed, point_idx, t)
        if fixed is None:
            sent = code.codewords[int(rng.integers(0, len(code)))]
        else:
            sent = fixed
        y = awgn(sent, sigma, rng)
        if "lp" in decoders:
            res = lp_decode(spec.cs, s, y)
            if not res.is_codeword:
                lp_failures += 1
                lp_errors += 1
            elif not np.array_equal(res.word, sent):
                lp_errors += 1
        if "ml" in decoders:
            _, word, _ = ml_decode_detail(code, y)
            if not np.array_equal(word, sent):
                ml_errors += 1
    return TrialRecord(
        snr_db=float(snr_db),
        sigma=sigma,
        trials=trials,
        lp_errors=lp_errors,
        lp_failures=lp_failures,
        ml_errors=ml_errors if "ml" in decoders else None,
        seed=seed,
    )


def simulate_bler(
    spec: CodeSpec,
    snr_db_list: Sequence[float],
    trials_per_point: int,
    seed: int,
    decoders: Sequence[str] = ("lp", "ml"),
    transmitted: Optional[Sequence[float]] = None,
    threads: int = 1,
    limit: int = BRUTE_FORCE_LIMIT,
) -> list[TrialRecord]:
    """Monte-Carlo block error rates per SNR point.

    ``transmitted`` fixes the sent codeword; None draws uniformly per trial
    (which requires an enumerable code, as does the ML decoder).
    """
    decoders = tuple(decoders)
    if not decoders or any(d not in ("lp", "ml") for d in decoders):
        raise ValueError("decoders must be a nonempty subset of {'lp', 'ml'}")
    if trials_per_point < 1:
        raise ValueError("need at least one trial per point")
    if transmitted is not None:
        word = np.asarray(tuple(transmitted), dtype=float)
        code = build_code(spec, limit)
        if not any(np.array_equal(word, w) for w in code.codewords):
            raise ValueError("transmitted word is not a codeword of this spec")
    jobs = [
        (spec, float(db), k, trials_per_point, seed, decoders, None if transmitted is None else tuple(transmitted), limit)
        for k, db in enumerate(snr_db_list)
    ]
    if threads > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(_simulate_point, jobs))
    return [_simulate_point(j) for j in jobs]


# ---------------------------------------------------------------------------
# Random sparse ensembles
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class EnsembleResult:
    """Satisfying-set sizes of sampled pair ensembles against the closed form."""

    n: int
    m: int
    samples: tuple[int, ...]
    sample_mean: float
    standard_error: float
    formula_value: float


def _ensemble_chunk(args) -> list[int]:
    n, m, seed, indices, limit = args
    table = permutation_table(n, limit)
    out = []
    for k in indices:
        rng = np.random.default_rng(np.random.SeedSequence((seed, k)))
        a = sample_ensemble(n, m, rng)
        mask = satisfies_mask(theta(a, n), table)
        out.append(int(mask.sum()))
    return out


def ensemble_experiment(
    n: int,
    m: int,
    num_samples: int,
    seed: int,
    threads: int = 1,
    limit: int = BRUTE_FORCE_LIMIT,
) -> EnsembleResult:
    """Sample satisfying-set sizes of random pair ensembles."""
    if num_samples < 1:
        raise ValueError("need at least one sample")
    indices = list(range(num_samples))
    if threads > 1:
        permutation_table(n, limit)  # build once before forking
        chunks = [indices[k::threads] for k in range(threads)]
        order: list[int] = [i for c in chunks for i in c]
        with ProcessPoolExecutor(max_workers=threads) as pool:
            nested = pool.map(_ensemble_chunk, [(n, m, seed, c, limit) for c in chunks])
        flat = [v for sub in nested for v in sub]
        counts = [0] * num_samples
        for i, v in zip(order, flat):
            counts[i] = v
    else:
        counts = _ensemble_chunk((n, m, seed, indices, limit))
    arr = np.asarray(counts, dtype=float)
    se = float(arr.std(ddof=1) / np.sqrt(num_samples)) if num_samples > 1 else float("nan")
    return EnsembleResult(
        n=n,
        m=m,
        samples=tuple(counts),
        sample_mean=float(arr.mean()),
        standard_error=se,
        formula_value=bounds.expected_cardinality(n, m),
    )


@dataclass(frozen=True)
class WeightEnsembleResult:
    """Per-weight codeword counts of sampled ensembles against the closed form."""

    n: int
    m: int
    sample_means: tuple[float, ...]  # index w = 0..n
    standard_errors: tuple[float, ...]
    formula_values: tuple[float, ...]
    num_samples: int


def ensemble_weight_experiment(
    n: int,
    m: int,
    num_samples: int,
    seed: int,
    limit: int = BRUTE_FORCE_LIMIT,
) -> WeightEnsembleResult:
    """Sample weight distributions of random pair ensembles.

    Weights are measured from the initial arrangement itself; with distinct
    initial entries the weight of a satisfying permutation is its degree minus
    its fixed-point count, so no explicit vector is needed.
    """
    if num_samples < 1:
        raise ValueError("need at least one sample")
    table = permutation_table(n, limit)
    weights = n - (table == np.arange(1, n + 1, dtype=table.dtype)).sum(axis=1)
    counts = np.zeros((num_samples, n + 1), dtype=np.int64)
    for k in range(num_samples):
        rng = np.random.default_rng(np.random.SeedSequence((seed, k)))
        a = sample_ensemble(n, m, rng)
        mask = satisfies_mask(theta(a, n), table)
        counts[k] = np.bincount(weights[mask], minlength=n + 1)
    means = counts.mean(axis=0)
    ses = (
        counts.std(axis=0, ddof=1) / np.sqrt(num_samples)
        if num_samples > 1
        else np.full(n + 1, np.nan)
    )
    formula = tuple(bounds.expected_weight(n, m, w) for w in range(n + 1))
    return WeightEnsembleResult(
        n=n,
        m=m,
        sample_means=tuple(float(v) for v in means),
        standard_errors=tuple(float(v) for v in ses),
        formula_values=formula,
        num_samples=num_samples,
    )
