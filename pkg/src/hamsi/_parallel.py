"""Shared-memory execution of per-subset gradient sweeps.

Binding a cover precomputes, for every unit of parallel work, the entry
coordinates in row-sorted and column-sorted layouts. The gradient kernel is
then pure vectorized numpy (gather, residual, segment-sum), which drops the
interpreter lock while it runs, so plain threads scale across cores.

Work layout per subset follows the cover: groups run one after another with
a join in between, the blocks of a group run concurrently, and chunkable
blocks are split into contiguous chunks, one per worker. Gradients land in a
shared flat buffer; within a group, concurrent units touch disjoint rows and
columns of the factor blocks (hogwild excepted, where lost updates are
accepted behavior).
"""

from concurrent.futures import ThreadPoolExecutor
from time import perf_counter

import numpy as np

from .model import EVAL_CHUNK

# below this many entries per worker, splitting a block is pure overhead
MIN_CHUNK = 1024


class _Unit:
    """One kernel invocation: entries presorted by row and by column."""

    __slots__ = ("rows", "cols", "vals", "urows", "rstarts",
                 "corder", "ucols", "cstarts")

    def __init__(self, rows, cols, vals):
        rorder = np.argsort(rows, kind="stable")
        self.rows = np.ascontiguousarray(rows[rorder])
        self.cols = np.ascontiguousarray(cols[rorder])
        self.vals = np.ascontiguousarray(vals[rorder])
        self.urows, self.rstarts = np.unique(self.rows, return_index=True)
        self.corder = np.argsort(self.cols, kind="stable")
        csorted = self.cols[self.corder]
        self.ucols, self.cstarts = np.unique(csorted, return_index=True)


class GradientEngine:
    """Bound executor for one (observations, cover, rank, threads) tuple.

    Owns the shared gradient buffer ``g`` and accumulates the wall-clock time
    spent inside gradient sweeps in ``gradient_seconds``.
    """

    def __init__(self, obs, cover, rank, threads=1):
        if threads < 1:
            raise ValueError("threads must be >= 1")
        self.obs = obs
        self.cover = cover
        self.rank = int(rank)
        self.threads = int(threads)
        self.num_params = self.rank * (obs.num_rows + obs.num_cols)
        self._split = obs.num_rows * self.rank
        self.g = np.zeros(self.num_params)
        self.gradient_seconds = 0.0
        self._pool = (ThreadPoolExecutor(max_workers=threads)
                      if threads > 1 else None)
        self._phases = []  # per subset: list of groups, group = list of units
        self._alpha = []   # per subset: (unique rows, unique cols)
        for k in range(cover.K):
            groups = []
            for group in cover.subsets[k]:
                units = []
                for block in group:
                    if block.size == 0:
                        continue
                    for chunk in self._chunks(block):
                        units.append(_Unit(obs.rows[chunk], obs.cols[chunk],
                                           obs.vals[chunk]))
                if units:
                    groups.append(units)
            self._phases.append(groups)
            entries = cover.subset_entries(k)
            self._alpha.append((np.unique(obs.rows[entries]),
                                np.unique(obs.cols[entries])))

    def _chunks(self, block):
        if (not self.cover.chunkable or self.threads == 1
                or block.size < 2 * MIN_CHUNK):
            return [block]
        parts = min(self.threads, -(-block.size // MIN_CHUNK))
        return np.array_split(block, parts)

    def close(self):
        if self._pool is not None:
            self._pool.shutdown(wait=True)
            self._pool = None

    def subset_alpha(self, k):
        """(unique row indices, unique col indices) touched by subset k."""
        return self._alpha[k]

    def _kernel(self, unit, x1, x2t, g1, g2t):
        x1r = x1[unit.rows]
        x2c = x2t[unit.cols]
        coef = -2.0 * (unit.vals - np.einsum("ij,ij->i", x1r, x2c))
        g1[unit.urows] += np.add.reduceat(coef[:, None] * x2c,
                                          unit.rstarts, axis=0)
        contrib = (coef[:, None] * x1r)[unit.corder]
        g2t[unit.ucols] += np.add.reduceat(contrib, unit.cstarts, axis=0)

    def subset_gradient(self, k, model):
        """Gradient of subset k's entries at the current model.

        Returns the engine-owned buffer: zeroed, then filled group by group
        with a join between groups. Valid until the next call.
        """
        t0 = perf_counter()
        g = self.g
        g[:] = 0.0
        g1 = g[:self._split].reshape(self.obs.num_rows, self.rank)
        g2t = g[self._split:].reshape(self.obs.num_cols, self.rank)
        x1 = model.x1
        x2t = model.x2t
        for units in self._phases[k]:
            if self._pool is not None and len(units) > 1:
                futures = [self._pool.submit(self._kernel, u, x1, x2t, g1, g2t)
                           for u in units]
                for f in futures:
                    f.result()
            else:
                for u in units:
                    self._kernel(u, x1, x2t, g1, g2t)
        self.gradient_seconds += perf_counter() - t0
        return g

    def _sse_chunk(self, model, lo, hi):
        obs = self.obs
        r = obs.vals[lo:hi] - model.predict(obs.rows[lo:hi], obs.cols[lo:hi])
        return float(r @ r)

    def rmse(self, model):
        """Training RMSE, chunk partials summed in fixed order.

        Matches model.rmse bitwise for any thread count: threading changes
        only where partials are computed, never the order they are added.
        """
        n = len(self.obs)
        bounds = [(lo, min(lo + EVAL_CHUNK, n)) for lo in range(0, n, EVAL_CHUNK)]
        if self._pool is not None and len(bounds) > 1:
            futures = [self._pool.submit(self._sse_chunk, model, lo, hi)
                       for lo, hi in bounds]
            partials = [f.result() for f in futures]
        else:
            partials = [self._sse_chunk(model, lo, hi) for lo, hi in bounds]
        total = 0.0
        for p in partials:
            total += p
        return float(np.sqrt(total / n))
