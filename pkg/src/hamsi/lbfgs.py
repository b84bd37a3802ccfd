"""Compact limited-memory BFGS: correction-pair store and step direction.

The inverse-Hessian estimate is sigma*I + W N W^T with thin factors
W = [S, sigma*Y], where S and Y hold the last M iterate and gradient
differences. Pairs are written round-robin into fixed slots; the compact
middle matrix N is assembled in chronological pair order (the triangular
structure of R = triu(S^T Y) depends on it) and permuted back to slot order
so that products against the slot-ordered S and Y stay valid.
"""

import numpy as np
from scipy.linalg import cho_factor, cho_solve, solve_triangular

__all__ = [
    "LbfgsMemory",
    "update_memory",
    "apply_direction",
    "quadratic_min_oracle",
]


class LbfgsMemory:
    """Round-robin store of up to M correction pairs with compact factors.

    Parameters
    ----------
    num_params : int
        Flat parameter count.
    capacity : int
        Number of pairs retained (M).

    Attributes
    ----------
    S, Y : (num_params, M) slot-ordered difference matrices.
    sigma : scaling s.y / y.y of the newest accepted pair.
    N : (2M, 2M) middle matrix, valid against W = [S, sigma*Y] in slot order.
    cursor : next slot to overwrite.
    filled : number of pairs stored so far (saturates at M).
    """

    def __init__(self, num_params, capacity):
        if capacity < 1:
            raise ValueError("capacity must be >= 1")
        m = int(capacity)
        self.num_params = int(num_params)
        self.capacity = m
        self.S = np.zeros((self.num_params, m))
        self.Y = np.zeros((self.num_params, m))
        self.sigma = 1.0
        self.cursor = 0
        self.filled = 0
        # all of S^T Y and Y^T Y in slot order; triu is taken in
        # chronological order at rebuild time
        self._P = np.zeros((m, m))
        self._C = np.zeros((m, m))
        self.N = np.zeros((2 * m, 2 * m))

    def _chronological(self):
        if self.filled < self.capacity:
            return np.arange(self.filled)
        return (self.cursor + np.arange(self.capacity)) % self.capacity

    def _rebuild(self):
        order = self._chronological()
        m = order.size
        P = self._P[np.ix_(order, order)]
        C = self._C[np.ix_(order, order)]
        R = np.triu(P)
        d = np.diag(R)
        if not np.all(d > 0):
            raise np.linalg.LinAlgError("singular R: nonpositive diagonal")
        D = np.diag(d)
        E = solve_triangular(R, np.eye(m), lower=False)  # R^{ -1 }
        A = E.T @ (D + self.sigma * C) @ E
        n_small = np.zeros((2 * m, 2 * m))
        n_small[:m, :m] = A
        n_small[:m, m:] = -E.T
        n_small[m:, :m] = -E
        self.N[:] = 0.0
        idx = np.concatenate([order, self.capacity + order])
        self.N[np.ix_(idx, idx)] = n_small

    def update(self, s, y):
        """Offer a correction pair; store it only when s.y > 0.

        Returns True when the pair was stored. Rejected pairs leave every
        field bit-identical. Non-finite input raises ValueError.
        """
        s = np.asarray(s, dtype=np.float64)
        y = np.asarray(y, dtype=np.float64)
        if s.shape != (self.num_params,) or y.shape != (self.num_params,):
            raise ValueError("pair has wrong length")
        if not (np.isfinite(s).all() and np.isfinite(y).all()):
            raise ValueError("non-finite correction pair")
        with np.errstate(over="ignore"):
            sy = float(s @ y)
            yy = float(y @ y)
        if sy <= 0.0:
            return False
        sigma = sy / yy if yy > 0.0 else np.nan
        # finite inputs can still overflow the scalars; such pairs are as
        # unusable as guard failures and must not corrupt the store
        if not (np.isfinite(sy) and np.isfinite(yy) and np.isfinite(sigma)
                and sigma > 0.0):
            return False
        c = self.cursor
        self.S[:, c] = s
        self.Y[:, c] = y
        self.sigma = sigma
        self._P[c, :] = s @ self.Y
        self._P[:, c] = self.S.T @ y
        cy = self.Y.T @ y
        self._C[c, :] = cy
        self._C[:, c] = cy
        self.cursor = (c + 1) % self.capacity
        self.filled = min(self.filled + 1, self.capacity)
        self._rebuild()
        return True

    def apply(self, g, beta):
        """Step vector (1/beta) * (sigma*g + W N W^T g), right-to-left.

        While fewer than M pairs are stored this falls back to the plain
        gradient step g / beta.
        """
        if beta <= 0.0:
            raise ValueError("beta must be positive")
        if self.filled < self.capacity:
            return g / beta
        m = self.capacity
        u = np.concatenate([self.S.T @ g, self.sigma * (self.Y.T @ g)])
        v = self.N @ u
        step = self.sigma * g + self.S @ v[:m] + self.sigma * (self.Y @ v[m:])
        step /= beta
        return step


def update_memory(mem, s, y):
    """Operation form of LbfgsMemory.update."""
    return mem.update(s, y)


def apply_direction(mem, g, beta):
    """Operation form of LbfgsMemory.apply."""
    return mem.apply(g, beta)


def quadratic_min_oracle(x_hat, g, H, beta):
    """Exact minimizer of the damped local quadratic model.

    Q(z) = f_hat + g.(z - x_hat) + 0.5 (z - x_hat).(H + beta*I)(z - x_hat)
    has the unique minimizer x_hat - (H + beta*I)^{-1} g when H + beta*I is
    positive definite. Dense; intended as a small-scale reference solver.
    """
    x_hat = np.asarray(x_hat, dtype=np.float64)
    g = np.asarray(g, dtype=np.float64)
    H = np.asarray(H, dtype=np.float64)
    A = H + beta * np.eye(H.shape[0])
    try:
        factor = cho_factor(A)
    except np.linalg.LinAlgError as exc:
        raise ValueError("H + beta*I is not positive definite") from exc
    return x_hat - cho_solve(factor, g)
