"""Sparse matrix factorization as a partially separable least-squares problem.

The objective is f(x) = sum_{(a,b) observed} (y_ab - x1[a,:] . x2[:,b])^2,
a sum of per-entry terms each touching only row a of X1 and column b of X2.
All parameters live in one flat vector: X1 row-major first, then X2
column-major, so the support of any single entry is two contiguous ranges.
"""

import numpy as np

__all__ = [
    "SparseObservations",
    "FactorModel",
    "alpha_of",
    "init_model",
    "residual",
    "block_gradient",
    "full_gradient",
    "sse",
    "rmse",
]

# Chunk length for streaming residual evaluation. Shared with the parallel
# evaluator so serial and threaded RMSE sum identical partials in identical
# order.
EVAL_CHUNK = 1 << 16


class SparseObservations:
    """Observed entries of a sparse matrix in coordinate form.

    Parameters
    ----------
    rows, cols : array-like of int
        Entry coordinates, 0-based.
    vals : array-like of float
        Observed values.
    num_rows, num_cols : int
        Matrix dimensions.

    Raises
    ------
    ValueError
        On empty input, mismatched lengths, or duplicate (row, col) pairs.
    IndexError
        On coordinates outside the stated dimensions.
    """

    def __init__(self, rows, cols, vals, num_rows, num_cols):
        rows = np.ascontiguousarray(rows, dtype=np.int64)
        cols = np.ascontiguousarray(cols, dtype=np.int64)
        vals = np.ascontiguousarray(vals, dtype=np.float64)
        if not (rows.size == cols.size == vals.size):
            raise ValueError("rows, cols, vals must have equal length")
        if rows.size == 0:
            raise ValueError("observation list is empty")
        num_rows = int(num_rows)
        num_cols = int(num_cols)
        if rows.min() < 0 or rows.max() >= num_rows:
            raise IndexError("row index out of range")
        if cols.min() < 0 or cols.max() >= num_cols:
            raise IndexError("col index out of range")
        key = rows * num_cols + cols
        if np.unique(key).size != key.size:
            raise ValueError("duplicate (row, col) observations")
        self.rows = rows
        self.cols = cols
        self.vals = vals
        self.num_rows = num_rows
        self.num_cols = num_cols

    def __len__(self):
        return self.rows.size

    def __repr__(self):
        return (
            f"SparseObservations({len(self)} entries, "
            f"{self.num_rows}x{self.num_cols})"
        )


class FactorModel:
    """Dense factor pair (X1, X2) stored in a single flat parameter vector.

    X1 is num_rows x rank, stored row-major at the front; X2 is
    rank x num_cols, stored column-major behind it. ``x1`` and ``x2t``
    are writable views into the flat vector ``x``; ``x2t`` holds X2
    transposed, so its row b is column b of X2.
    """

    def __init__(self, num_rows, num_cols, rank, x=None):
        self.num_rows = int(num_rows)
        self.num_cols = int(num_cols)
        self.rank = int(rank)
        if self.rank < 1 or self.num_rows < 1 or self.num_cols < 1:
            raise ValueError("dimensions and rank must be positive")
        self.num_params = self.rank * (self.num_rows + self.num_cols)
        if x is None:
            x = np.zeros(self.num_params)
        else:
            x = np.ascontiguousarray(x, dtype=np.float64)
            if x.shape != (self.num_params,):
                raise ValueError("parameter vector has wrong length")
        self.x = x
        split = self.num_rows * self.rank
        self.x1 = self.x[:split].reshape(self.num_rows, self.rank)
        self.x2t = self.x[split:].reshape(self.num_cols, self.rank)

    @property
    def x2(self):
        return self.x2t.T

    def copy(self):
        return FactorModel(self.num_rows, self.num_cols, self.rank, self.x.copy())

    def predict(self, rows, cols):
        """Model values at the given coordinates."""
        return np.einsum("ij,ij->i", self.x1[rows], self.x2t[cols])


def init_model(num_rows, num_cols, rank, rng):
    """Fresh model with entries uniform on [0, 1/sqrt(rank)).

    The scale keeps initial predictions O(1) for any rank.
    """
    model = FactorModel(num_rows, num_cols, rank)
    model.x[:] = rng.uniform(0.0, 1.0 / np.sqrt(rank), size=model.num_params)
    return model


def alpha_of(entry, rank, num_rows):
    """Global parameter indices touched by one observation.

    Parameters
    ----------
    entry : (row, col)
    rank : latent dimension
    num_rows : row count of the factorized matrix (fixes the X2 offset)

    Returns
    -------
    ndarray of 2*rank indices: row `row` of X1 followed by column `col` of X2.
    """
    row, col = entry
    if row < 0 or row >= num_rows:
        raise IndexError("row index out of range")
    if col < 0:
        raise IndexError("col index out of range")
    base1 = row * rank
    base2 = (num_rows + col) * rank
    k = np.arange(rank)
    return np.concatenate([base1 + k, base2 + k])


def residual(model, entry):
    """value - x1[row,:] . x2[:,col] for a single (row, col, value) entry."""
    row, col, value = entry
    return float(value) - float(model.x1[row] @ model.x2t[col])


def block_gradient(model, block, out):
    """Accumulate the gradient of a block of entries into ``out``.

    For each entry (a, b, y) with residual r, adds -2*r*x2[k,b] to the
    gradient of x1[a,k] and -2*r*x1[a,k] to that of x2[k,b]. The caller
    zeroes ``out`` on the block's support beforehand; accumulation makes the
    block sum equal the sum of per-entry gradients.

    Parameters
    ----------
    block : (rows, cols, vals) arrays of equal length
    out : flat accumulator of length model.num_params

    Returns
    -------
    out
    """
    rows, cols, vals = block
    rows = np.asarray(rows, dtype=np.int64)
    cols = np.asarray(cols, dtype=np.int64)
    vals = np.asarray(vals, dtype=np.float64)
    x1r = model.x1[rows]
    x2c = model.x2t[cols]
    coef = -2.0 * (vals - np.einsum("ij,ij->i", x1r, x2c))
    split = model.num_rows * model.rank
    g1 = out[:split].reshape(model.num_rows, model.rank)
    g2t = out[split:].reshape(model.num_cols, model.rank)
    np.add.at(g1, rows, coef[:, None] * x2c)
    np.add.at(g2t, cols, coef[:, None] * x1r)
    return out


def full_gradient(model, obs):
    """Gradient of the whole objective as a fresh flat vector."""
    out = np.zeros(model.num_params)
    return block_gradient(model, (obs.rows, obs.cols, obs.vals), out)


def sse(model, obs):
    """Sum of squared residuals, accumulated over fixed-size chunks.

    Chunk partial sums are added in index order, so the result is bitwise
    reproducible no matter how the chunks themselves are evaluated.
    """
    total = 0.0
    for lo in range(0, len(obs), EVAL_CHUNK):
        hi = min(lo + EVAL_CHUNK, len(obs))
        r = obs.vals[lo:hi] - model.predict(obs.rows[lo:hi], obs.cols[lo:hi])
        total += float(r @ r)
    return total


def rmse(model, obs):
    """Root mean squared residual over the observed entries."""
    n = len(obs)
    if n == 0:
        raise ValueError("rmse over zero entries")
    return float(np.sqrt(sse(model, obs) / n))
