"""Monte Carlo estimates of determinant moments.

Streams: chunk c of a run with seed s draws from
``Philox(SeedSequence(s, spawn_key=(c,)))``. Chunks have a fixed size, so the
set of streams depends only on (seed, samples). Per-chunk statistics are
merged in chunk order with the pairwise (Chan) update, which makes the
result bit-identical for any number of workers.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .moments import DistributionPreset

CHUNK_SIZE = 1 << 16
SAMPLEABLE = ("two-point", "finite-discrete", "exponential", "normal")


@dataclass(frozen=True)
class MCEstimate:
    mean: float
    standard_error: float
    samples: int
    seed: int
    workers: int

    def z_score(self, exact: float) -> float:
        if self.standard_error == 0:
            return 0.0 if self.mean == exact else math.inf
        return (self.mean - exact) / self.standard_error


def chunk_rng(seed: int, chunk: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(seed, spawn_key=(chunk,))))


def _check_sampleable(dist: DistributionPreset) -> None:
    if dist.sampler_kind not in SAMPLEABLE:
        raise ValueError(f"cannot sample distribution {dist.name!r} (kind {dist.sampler_kind!r})")


def sample_matrix(dist: DistributionPreset, n: int, p: int, rng: np.random.Generator, size: int | None = None) -> np.ndarray:
    """i.i.d. entries of shape (n, p), or (size, n, p) when size is given."""
    _check_sampleable(dist)
    shape = (n, p) if size is None else (size, n, p)
    if dist.sampler_kind == "exponential":
        (rate,) = dist.params
        # inverse CDF; 1 - U lies in (0, 1]
        return -np.log1p(-rng.random(shape)) / float(rate)
    if dist.sampler_kind == "normal":
        mu, sigma2 = (float(x) for x in dist.params)
        u1, u2 = rng.random(shape), rng.random(shape)
        z = np.sqrt(-2.0 * np.log1p(-u1)) * np.cos(2.0 * np.pi * u2)
        return mu + math.sqrt(sigma2) * z
    values = np.array([float(v) for v, _ in dist.params])
    cdf = np.cumsum([float(w) for _, w in dist.params])
    idx = np.searchsorted(cdf, rng.random(shape), side="right")
    return values[np.minimum(idx, len(values) - 1)]


def _moment_values(batch: np.ndarray, k: int) -> np.ndarray:
    _, n, p = batch.shape
    if n == p:
        return np.linalg.det(batch) ** k
    gram = np.swapaxes(batch, 1, 2) @ batch
    return np.linalg.det(gram) ** (k // 2)


def _chunk_stats(args: tuple) -> tuple[int, float, float]:
    dist, n, p, k, seed, chunk, count = args
    vals = _moment_values(sample_matrix(dist, n, p, chunk_rng(seed, chunk), size=count), k)
    mean = float(vals.mean())
    return count, mean, float(((vals - mean) ** 2).sum())


def _merge(a: tuple[int, float, float], b: tuple[int, float, float]) -> tuple[int, float, float]:
    na, ma, sa = a
    nb, mb, sb = b
    n = na + nb
    delta = mb - ma
    return n, ma + delta * nb / n, sa + sb + delta * delta * na * nb / n


def estimate_moment(
    dist: DistributionPreset,
    n: int,
    p: int | None = None,
    k: int = 4,
    samples: int = 100_000,
    seed: int = 0,
    workers: int = 1,
) -> MCEstimate:
    """Estimate E|U^T U|^(k/2), or E|A|^k when p = n."""
    p = n if p is None else p
    _check_sampleable(dist)
    if samples < 2:
        raise ValueError("need at least two samples")
    if k < 2 or k % 2:
        raise ValueError("k must be a positive even integer")
    if n < 0 or p < 0:
        raise ValueError("dimensions must be non-negative")
    if p == 0 or p > n:
        # |U^T U| is identically 1 (empty) or 0 (rank deficient)
        return MCEstimate(1.0 if p == 0 else 0.0, 0.0, samples, seed, workers)
    jobs = []
    for chunk, start in enumerate(range(0, samples, CHUNK_SIZE)):
        jobs.append((dist, n, p, k, seed, chunk, min(CHUNK_SIZE, samples - start)))
    if workers <= 1 or len(jobs) == 1:
        stats = [_chunk_stats(j) for j in jobs]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            stats = list(pool.map(_chunk_stats, jobs))
    acc = stats[0]
    for s in stats[1:]:
        acc = _merge(acc, s)
    count, mean, ss = acc
    se = math.sqrt(ss / (count - 1) / count)
    return MCEstimate(mean, se, count, seed, workers)
