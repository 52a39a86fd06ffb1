"""Brute-force ground truth on the ``s x N`` lattice with partial domain wall boundaries.

Conventions: rows ``j = 1..s`` run top to bottom and carry ``lambda_j``; columns
``k = 1..N`` run left to right and carry ``nu_k``. Lines enter on every row at the
left boundary, move right/up, and leave through the top boundary. Bottom and right
boundaries are empty.

Enumeration is a transfer over columns: the state between two columns is the bitmask
of occupied horizontal edges (bit ``j-1`` for row ``j``).
"""
from __future__ import annotations

import csv
import io
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterator, Optional, Sequence

import numpy as np

from .errors import DomainError, ResourceGuardError
from .scalar import as_scalar

MAX_N = 7
MAX_SITES = 30


def b_weight(lam, nu) -> Fraction:
    d = lam - nu
    if d == -1:
        raise DomainError("lambda - nu = -1 is a pole of the weights")
    return Fraction(d) / (d + 1)


def c_weight(lam, nu) -> Fraction:
    d = lam - nu
    if d == -1:
        raise DomainError("lambda - nu = -1 is a pole of the weights")
    return 1 / Fraction(d + 1)


@dataclass(frozen=True)
class LatticeSpec:
    """Lattice size plus weights.

    Either ``t`` is set (homogeneous model, ``b = t``, ``c = 1 - t``) or both
    ``lambdas`` (length ``s``) and ``nus`` (length ``N``) are.
    """

    s: int
    N: int
    t: Optional[Fraction] = None
    lambdas: tuple = field(default=())
    nus: tuple = field(default=())

    def __post_init__(self):
        if self.s < 1 or self.N < self.s:
            raise DomainError(f"need 1 <= s <= N, got s={self.s}, N={self.N}")
        if self.t is not None:
            t = as_scalar(self.t)
            object.__setattr__(self, "t", t)
            if not (0 <= t < 1):
                raise DomainError("homogeneous t must lie in [0, 1)")
            return
        lams = tuple(as_scalar(x) for x in self.lambdas)
        nus = tuple(as_scalar(x) for x in self.nus)
        if len(lams) != self.s or len(nus) != self.N:
            raise DomainError("need s lambdas and N nus")
        for lam in lams:
            for nu in nus:
                if lam - nu == -1:
                    raise DomainError("lambda_j - nu_k = -1 makes the weights singular")
        object.__setattr__(self, "lambdas", lams)
        object.__setattr__(self, "nus", nus)

    @classmethod
    def homogeneous(cls, s: int, N: int, t) -> "LatticeSpec":
        return cls(s, N, t=as_scalar(t))

    @classmethod
    def inhomogeneous(cls, lambdas: Sequence, nus: Sequence) -> "LatticeSpec":
        return cls(len(lambdas), len(nus), lambdas=tuple(lambdas), nus=tuple(nus))

    @classmethod
    def from_row_t(cls, ts: Sequence, N: int) -> "LatticeSpec":
        """Partially homogeneous model: ``nu_k = 0`` and ``lambda_j = t_j / (1 - t_j)``."""
        ts = [as_scalar(x) for x in ts]
        if any(not (0 <= x < 1) for x in ts):
            raise DomainError("row parameters t_j must lie in [0, 1)")
        return cls.inhomogeneous([x / (1 - x) for x in ts], [0] * N)

    def weights(self, j: int, k: int) -> tuple[Fraction, Fraction]:
        """``(b, c)`` at row ``j``, column ``k`` (both 1-based); ``a`` is always 1."""
        if self.t is not None:
            return self.t, 1 - self.t
        lam, nu = self.lambdas[j - 1], self.nus[k - 1]
        return b_weight(lam, nu), c_weight(lam, nu)


def _guard(spec: LatticeSpec):
    if spec.N > MAX_N or spec.s * spec.N > MAX_SITES:
        raise ResourceGuardError(
            f"brute force limited to N <= {MAX_N} and s*N <= {MAX_SITES} (got s={spec.s}, N={spec.N})"
        )


def _column_transitions(spec: LatticeSpec, k: int, mask: int) -> Iterator[tuple[int, int, Fraction]]:
    """Yield ``(out_mask, exits, weight)`` for every filling of column ``k``.

    ``exits`` is 1 when a line leaves through the top edge of this column.
    Vertices are processed bottom (row s) to top (row 1).
    """
    s = spec.s
    # partial: (vertical line entering current vertex from below, out mask, weight)
    partial = [(0, 0, Fraction(1))]
    for j in range(s, 0, -1):
        b, c = spec.weights(j, k)
        h_in = (mask >> (j - 1)) & 1
        bit = 1 << (j - 1)
        nxt = []
        for v_in, out, w in partial:
            if h_in == v_in:
                # a-vertex: empty or full crossing
                nxt.append((v_in, out | (bit if h_in else 0), w))
            elif h_in:
                nxt.append((0, out | bit, w * b))  # horizontal line continues
                nxt.append((1, out, w * c))  # turns up
            else:
                nxt.append((1, out, w * b))  # vertical line continues
                nxt.append((0, out | bit, w * c))  # turns right
        partial = nxt
    for v_top, out, w in partial:
        if w:
            yield out, v_top, w


def _transfer(spec: LatticeSpec, exit_rule: Callable[[int, int], bool]) -> Fraction:
    """Sum of configuration weights whose top exits satisfy ``exit_rule(column, exited)``."""
    _guard(spec)
    full = (1 << spec.s) - 1
    states = {full: Fraction(1)}
    for k in range(1, spec.N + 1):
        nxt: dict[int, Fraction] = {}
        for mask, w in states.items():
            for out, ex, wt in _column_transitions(spec, k, mask):
                if not exit_rule(k, ex):
                    continue
                nxt[out] = nxt.get(out, Fraction(0)) + w * wt
        states = nxt
    return states.get(0, Fraction(0))


def z_bruteforce(spec: LatticeSpec) -> Fraction:
    """Partition function by direct summation over all allowed configurations."""
    return _transfer(spec, lambda k, ex: True)


def z_exitpattern_bruteforce(spec: LatticeSpec, pattern: Sequence[int]) -> Fraction:
    """Partition function with the top exits pinned to the columns in ``pattern``."""
    pattern = tuple(pattern)
    check_pattern(pattern, spec.s, spec.N)
    cols = set(pattern)
    return _transfer(spec, lambda k, ex: ex == (k in cols))


def g_down_bruteforce(spec: LatticeSpec, m: int) -> Fraction:
    """Probability that a line leaves through the top edge of column ``m``."""
    if not 1 <= m <= spec.N:
        raise DomainError(f"column m={m} outside 1..{spec.N}")
    restricted = _transfer(spec, lambda k, ex: ex == 1 if k == m else True)
    return restricted / z_bruteforce(spec)


def check_pattern(pattern: Sequence[int], s: int, N: Optional[int] = None):
    if len(pattern) != s:
        raise DomainError(f"exit pattern needs {s} entries, got {len(pattern)}")
    if any(r < 1 for r in pattern) or any(a >= b for a, b in zip(pattern, pattern[1:])):
        raise DomainError("exit pattern must be strictly increasing positive columns")
    if N is not None and pattern[-1] > N:
        raise DomainError(f"exit pattern exceeds N={N}")


# ---------------------------------------------------------------------------
# Monte Carlo on the semi-infinite strip
# ---------------------------------------------------------------------------


@dataclass
class ExitHistogram:
    """Exit-column counts from the stochastic sampler.

    ``counts[m-1]`` is the number of valid samples with a line leaving column ``m``.
    """

    s: int
    t: float
    n_samples: int
    n_valid: int
    n_flagged: int
    counts: np.ndarray

    @property
    def columns(self) -> np.ndarray:
        return np.arange(1, len(self.counts) + 1)

    @property
    def estimate(self) -> np.ndarray:
        return self.counts / max(self.n_valid, 1)

    @property
    def stderr(self) -> np.ndarray:
        p = self.estimate
        return np.sqrt(p * (1 - p) / max(self.n_valid, 1))

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["m", "count", "estimate", "stderr"])
        for m, c, e, se in zip(self.columns, self.counts, self.estimate, self.stderr):
            w.writerow([int(m), int(c), f"{e:.12g}", f"{se:.12g}"])
        return buf.getvalue()


def column_cap(s: int, t: float) -> int:
    """Columns simulated before a sample is flagged as overflowing."""
    if t <= 0:
        return s
    return max(s, math.ceil(64 * s / -math.log2(t)))


def _simulate_chunk(s: int, t: float, n: int, seed: int, cap: int) -> tuple[np.ndarray, int]:
    rng = np.random.default_rng(seed)
    lines = np.ones((n, s), dtype=bool)  # horizontal line entering the column, row 0 = top
    exit_cols = np.zeros((n, s), dtype=np.int64)
    n_exit = np.zeros(n, dtype=np.int64)
    for col in range(1, cap + 1):
        if not lines.any():
            break
        vert = np.zeros(n, dtype=bool)
        for row in range(s - 1, -1, -1):
            h = lines[:, row]
            both = h & vert
            lone = h ^ vert
            stay = rng.random(n) < t  # single line keeps its direction (b-vertex)
            new_h = np.where(lone, np.where(h, stay, ~stay), both)
            vert = np.where(lone, ~new_h, both)
            lines[:, row] = new_h
        idx = np.nonzero(vert)[0]
        exit_cols[idx, n_exit[idx]] = col
        n_exit[idx] += 1
    valid = n_exit == s
    counts = np.bincount(exit_cols[valid].ravel(), minlength=cap + 1)[1:]
    return counts, int(n - valid.sum())


def mc_sample_exits(
    s: int,
    t: float,
    n_samples: int,
    seed: int = 0,
    n_workers: int = 4,
    cap: Optional[int] = None,
) -> ExitHistogram:
    """Sample exit columns of ``s`` lines on the semi-infinite strip.

    Uses stochasticity (``b + c = a = 1``): each vertex with a single incoming line
    keeps its direction with probability ``t``. Samples are split into ``n_workers``
    chunks, chunk ``i`` seeded with ``seed + i``; the result does not depend on how
    many threads run the chunks (``PDWBC_THREADS``).
    """
    if s < 1:
        raise DomainError("s must be >= 1")
    if not (0 <= t < 1):
        raise DomainError("t must lie in [0, 1)")
    cap = column_cap(s, t) if cap is None else cap
    n_workers = max(1, min(n_workers, n_samples))
    sizes = [n_samples // n_workers + (i < n_samples % n_workers) for i in range(n_workers)]
    threads = int(os.environ.get("PDWBC_THREADS", "0")) or n_workers
    jobs = [(s, t, size, seed + i, cap) for i, size in enumerate(sizes)]
    with ThreadPoolExecutor(max_workers=max(1, min(threads, n_workers))) as pool:
        results = list(pool.map(lambda a: _simulate_chunk(*a), jobs))
    counts = sum(r[0] for r in results)
    flagged = sum(r[1] for r in results)
    last = int(np.nonzero(counts)[0].max()) + 1 if counts.any() else 1
    return ExitHistogram(s, t, n_samples, n_samples - flagged, flagged, counts[:last].copy())
