"""Codebooks obtained by applying constrained permutation matrices to a vector.

A code is the image set { X s : X permutation matrix satisfying the
constraint system }.  Enumeration is exhaustive over the symmetric group with
a vectorized filter, so it is only meant for desk-scale degrees.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

import numpy as np

from .constraints import ConstraintSystem, satisfies_mask
from .perm import (
    BRUTE_FORCE_LIMIT,
    PermutationMatrix,
    hamming_distance,
    permutation_table,
    sq_euclidean_distance,
)


@dataclass(frozen=True)
class CodeSpec:
    """Degree, constraint system, and initial vector defining one code."""

    n: int
    cs: ConstraintSystem
    s: tuple[float, ...]

    def __post_init__(self) -> None:
        if self.cs.n != self.n:
            raise ValueError("constraint system degree does not match n")
        if len(self.s) != self.n:
            raise ValueError("initial vector length does not match n")


@dataclass(frozen=True)
class Code:
    """Enumerated code: matrices in lexicographic order and their images."""

    spec: CodeSpec
    matrices: tuple[PermutationMatrix, ...]
    singular: bool

    @property
    def n(self) -> int:
        return self.spec.n

    @cached_property
    def codewords(self) -> np.ndarray:
        """(num matrices, n) float array, row k the image of matrices[k]."""
        s = np.asarray(self.spec.s, dtype=float)
        out = np.empty((len(self.matrices), self.n), dtype=float)
        for k, x in enumerate(self.matrices):
            out[k] = x.apply(s)
        out.setflags(write=False)
        return out

    def __len__(self) -> int:
        return len(self.matrices)


def build_code(spec: CodeSpec, limit: int = BRUTE_FORCE_LIMIT) -> Code:
    """Filter the full symmetric group through the constraint system."""
    table = permutation_table(spec.n, limit)
    mask = satisfies_mask(spec.cs, table)
    matrices = tuple(
        PermutationMatrix(tuple(int(v) for v in table[k])) for k in np.flatnonzero(mask)
    )
    s = np.asarray(spec.s, dtype=float)
    images = {tuple(x.apply(s)) for x in matrices}
    singular = len(images) < len(matrices)
    return Code(spec=spec, matrices=matrices, singular=singular)


def min_hamming_distance(code: Code) -> int:
    """Smallest pairwise Hamming distance between distinct codewords."""
    if code.singular:
        raise ValueError("minimum distance of a singular code is undefined here")
    if len(code) < 2:
        raise ValueError("need at least two codewords")
    words = code.codewords
    best = code.n + 1
    for a, b in itertools.combinations(range(len(words)), 2):
        d = int(np.sum(words[a] != words[b]))
        if d < best:
            best = d
            if best == 1:
                break
    return best


@dataclass(frozen=True)
class DistanceEnumerator:
    """Multiset of Euclidean distances from one codeword to every codeword."""

    entries: tuple[tuple[float, int], ...]  # (distance, multiplicity), ascending

    def total(self) -> int:
        return sum(m for _, m in self.entries)

    def same_as(self, other: "DistanceEnumerator", tol: float = 1e-9) -> bool:
        if len(self.entries) != len(other.entries):
            return False
        return all(
            abs(d1 - d2) <= tol and m1 == m2
            for (d1, m1), (d2, m2) in zip(self.entries, other.entries)
        )


# Distances closer than this are treated as the same enumerator bin.
DISTANCE_BIN_TOL = 1e-9


def distance_enumerator(code: Code, x: PermutationMatrix) -> DistanceEnumerator:
    """Distances from the image of ``x`` to all codewords (self included)."""
    if code.singular:
        raise ValueError("distance profile of a singular code is undefined here")
    if x not in code.matrices:
        raise ValueError("center matrix is not in the code")
    s = np.asarray(code.spec.s, dtype=float)
    center = x.apply(s)
    dists = np.sort(np.sqrt(np.sum((code.codewords - center) ** 2, axis=1)))
    entries: list[tuple[float, int]] = []
    for d in dists:
        if entries and abs(d - entries[-1][0]) <= DISTANCE_BIN_TOL:
            entries[-1] = (entries[-1][0], entries[-1][1] + 1)
        else:
            entries.append((float(d), 1))
    return DistanceEnumerator(tuple(entries))


def weight_distribution(code: Code, origin: Sequence[float]) -> tuple[int, ...]:
    """Counts L_w of codewords at Hamming distance w from ``origin``, w = 0..n.

    The origin must be a permutation of the initial vector; it need not be a
    codeword.
    """
    o = np.asarray(origin, dtype=float)
    s = np.asarray(code.spec.s, dtype=float)
    if o.shape != s.shape or sorted(o.tolist()) != sorted(s.tolist()):
        raise ValueError("origin is not a permutation of the initial vector")
    counts = [0] * (code.n + 1)
    for word in code.codewords:
        counts[int(np.sum(word != o))] += 1
    return tuple(counts)


def block_min_sq_distance(
    n: int, nu: int, s: Sequence[float]
) -> tuple[float, float, float]:
    """Squared-distance parameters of the block permutation code.

    Returns (within-block delta1^2, cross-block delta2^2, overall minimum
    squared distance min(delta1^2, 2*delta2^2)) for the code built from
    nu-by-nu blocks over the initial vector split into n/nu segments.
    """
    if nu < 1 or n % nu != 0:
        raise ValueError(f"nu={nu} must divide the degree n={n}")
    s = np.asarray(s, dtype=float)
    if s.shape != (n,):
        raise ValueError("initial vector length does not match n")
    segments = [s[k * nu : (k + 1) * nu] for k in range(n // nu)]
    d1 = math.inf
    for seg in segments:
        for p in itertools.permutations(range(nu)):
            if p == tuple(range(nu)):
                continue
            d1 = min(d1, sq_euclidean_distance(seg, seg[list(p)]))
    d2 = math.inf
    for a, b in itertools.permutations(range(len(segments)), 2):
        for p in itertools.permutations(range(nu)):
            d2 = min(d2, sq_euclidean_distance(segments[a], segments[b][list(p)]))
    if d1 <= 0 or d2 <= 0:
        raise ValueError("degenerate initial vector: identical segment images")
    return float(d1), float(d2), float(min(d1, 2 * d2))
