"""Sieving, Chebyshev theta and log-weighted prime ranges."""

from __future__ import annotations

import math
import os
import struct
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

SEGMENT_THRESHOLD = 10**7
MAX_LIMIT = 10**9
CACHE_MAGIC = b"DLPT"
CACHE_VERSION = 1


class EmptyTableError(ValueError):
    pass


class OutOfTableError(ValueError):
    pass


def _simple_sieve(limit: int) -> np.ndarray:
    flags = np.ones(limit + 1, dtype=bool)
    flags[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if flags[p]:
            flags[p * p :: p] = False
    return flags


def _segmented_sieve(limit: int, segment: int = 1 << 22) -> np.ndarray:
    root = math.isqrt(limit)
    base = np.flatnonzero(_simple_sieve(root))
    flags = np.zeros(limit + 1, dtype=bool)
    flags[: root + 1] = _simple_sieve(root)
    lo = root + 1
    while lo <= limit:
        hi = min(lo + segment, limit + 1)
        seg = np.ones(hi - lo, dtype=bool)
        for p in base:
            p = int(p)
            start = max(p * p, -(-lo // p) * p)
            if start >= hi:
                continue
            seg[start - lo :: p] = False
        flags[lo:hi] = seg
        lo = hi
    return flags


def compensated_cumsum(values) -> np.ndarray:
    """Running Neumaier sum; each prefix is the correctly compensated total."""
    out = np.empty(len(values), dtype=np.float64)
    s = 0.0
    c = 0.0
    for i, v in enumerate(np.asarray(values, dtype=np.float64).tolist()):
        t = s + v
        if abs(s) >= abs(v):
            c += (s - t) + v
        else:
            c += (v - t) + s
        s = t
        out[i] = s + c
    return out


@dataclass(frozen=True, eq=False)
class PrimeTable:
    """Primes in [2, limit] with their log weights and theta prefix sums."""

    limit: int
    primes: np.ndarray
    logs: np.ndarray
    theta_prefix: np.ndarray = field(repr=False)

    @classmethod
    def from_flags(cls, limit: int, flags: np.ndarray) -> "PrimeTable":
        primes = np.flatnonzero(flags[: limit + 1]).astype(np.int64)
        logs = np.log(primes.astype(np.float64))
        prefix = compensated_cumsum(logs)
        for arr in (primes, logs, prefix):
            arr.setflags(write=False)
        return cls(limit, primes, logs, prefix)

    def __len__(self) -> int:
        return len(self.primes)

    def covers(self, x: float) -> bool:
        return x <= self.limit


def sieve(limit: int, segmented: bool | None = None) -> PrimeTable:
    """Exact prime table up to ``limit`` (segmented above 10**7 by default)."""
    limit = int(limit)
    if limit < 2:
        raise EmptyTableError(f"no primes below {limit}")
    if limit > MAX_LIMIT:
        raise ValueError(f"limit {limit} exceeds {MAX_LIMIT}")
    if segmented is None:
        segmented = limit > SEGMENT_THRESHOLD
    flags = _segmented_sieve(limit) if segmented else _simple_sieve(limit)
    return PrimeTable.from_flags(limit, flags)


def chebyshev_theta(x: float, table: PrimeTable) -> float:
    """theta(x) = sum of log p over p <= x (right-continuous)."""
    if x > table.limit:
        raise OutOfTableError(f"x={x} beyond table limit {table.limit}")
    n = int(np.searchsorted(table.primes, math.floor(x), side="right"))
    return float(table.theta_prefix[n - 1]) if n else 0.0


def theta_many(xs, table: PrimeTable) -> np.ndarray:
    """Vectorised theta for an array of arguments."""
    xs = np.asarray(xs, dtype=np.float64)
    if xs.size and xs.max() > table.limit:
        raise OutOfTableError(f"x={xs.max()} beyond table limit {table.limit}")
    idx = np.searchsorted(table.primes, np.floor(xs), side="right")
    padded = np.concatenate(([0.0], table.theta_prefix))
    return padded[idx]


@dataclass(frozen=True, eq=False)
class WeightedRange:
    lo: float
    hi: float
    members: np.ndarray
    weights: np.ndarray

    def __len__(self) -> int:
        return len(self.members)

    @property
    def total_weight(self) -> float:
        return math.fsum(self.weights.tolist())


def prime_range(lo: float, hi: float, table: PrimeTable) -> WeightedRange:
    """Primes p with lo <= p <= hi, weighted by log p."""
    if hi > table.limit:
        raise OutOfTableError(f"hi={hi} beyond table limit {table.limit}")
    i = int(np.searchsorted(table.primes, math.ceil(lo), side="left"))
    j = int(np.searchsorted(table.primes, math.floor(hi), side="right"))
    j = max(i, j)
    return WeightedRange(lo, hi, table.primes[i:j], table.logs[i:j])


def power_range(X: float, delta: float, k: float, table: PrimeTable) -> WeightedRange:
    """Primes with delta*X <= p**k <= X, membership decided on p**k itself."""
    lo, hi = (delta * X) ** (1.0 / k), X ** (1.0 / k)
    wide = prime_range(max(lo - 1.0, 0.0), min(hi + 1.0, table.limit), table)
    pk = wide.members.astype(np.float64) ** k
    keep = (pk >= delta * X) & (pk <= X)
    return WeightedRange(lo, hi, wide.members[keep], wide.weights[keep])


# -- binary cache ------------------------------------------------------------

def default_cache_dir() -> Path | None:
    d = os.environ.get("DIOPH_CACHE_DIR")
    return Path(d) if d else None


def save_cache(table: PrimeTable, path) -> None:
    """Write the table as magic, u32 version, u64 limit, packed bitset."""
    flags = np.zeros(table.limit + 1, dtype=bool)
    flags[table.primes] = True
    bits = np.packbits(flags, bitorder="little")
    with open(path, "wb") as fh:
        fh.write(CACHE_MAGIC)
        fh.write(struct.pack("<IQ", CACHE_VERSION, table.limit))
        fh.write(bits.tobytes())


def load_cache(path) -> PrimeTable:
    with open(path, "rb") as fh:
        magic = fh.read(4)
        if magic != CACHE_MAGIC:
            raise ValueError(f"{path}: bad magic {magic!r}")
        version, limit = struct.unpack("<IQ", fh.read(12))
        if version != CACHE_VERSION:
            raise ValueError(f"{path}: unsupported cache version {version}")
        raw = np.frombuffer(fh.read(), dtype=np.uint8)
    flags = np.unpackbits(raw, bitorder="little")[: limit + 1].astype(bool)
    if flags.size != limit + 1:
        raise ValueError(f"{path}: truncated bitset")
    return PrimeTable.from_flags(int(limit), flags)


def cached_sieve(limit: int, path=None) -> PrimeTable:
    """Load a cached table covering ``limit`` or sieve and store one."""
    if path is None:
        d = default_cache_dir()
        if d is None:
            return sieve(limit)
        d.mkdir(parents=True, exist_ok=True)
        path = d / "sieve.dlpt"
    path = Path(path)
    if path.exists():
        table = load_cache(path)
        if table.limit >= limit:
            return table
    table = sieve(limit)
    save_cache(table, path)
    return table
