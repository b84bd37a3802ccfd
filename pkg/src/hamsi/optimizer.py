"""Incremental second-order optimization over a cover, plus a mini-batch
gradient-descent baseline.

One epoch sweeps the subsets of the cover in a scheduled order. The
second-order method processes K+1 subsets per epoch, with the first and the
last being the same subset: the iterate and gradient snapshots taken at the
first visit, compared against the state after the K+1-th, yield a correction
pair (s, y) over gradients of the same component functions. Each subset
visit applies one lazy step x <- x - (1/beta_t) * (sigma*g + W N W^T g)
using the compact quasi-Newton factors (a plain gradient step until the
memory is full). The baseline applies x <- x - (1/beta_t) * g over K subsets
and keeps no memory.

beta_t = (eta * t)^gamma with gamma in (0.5, 1] grows without bound, which
damps the steps enough for the incremental noise to die out.
"""

from dataclasses import dataclass
from time import perf_counter

import numpy as np

from ._parallel import GradientEngine
from .lbfgs import LbfgsMemory
from .model import init_model

__all__ = [
    "Schedule",
    "RunConfig",
    "TraceRecord",
    "RunResult",
    "DivergenceError",
    "beta",
    "set_schedule",
    "hamsi_epoch",
    "mbgd_epoch",
    "run",
]


@dataclass
class Schedule:
    """Subset visit order for one epoch, 1-based ids.

    With ``wrap`` the order has K+1 entries and ends with its own first
    element (the snapshot subset is revisited); without it the order is a
    bare permutation of {1..K}.
    """

    order: np.ndarray
    wrap: bool = True

    @classmethod
    def initial(cls, K, wrap=True):
        core = np.concatenate([[K], np.arange(1, K)]).astype(np.int64)
        if wrap:
            return cls(np.append(core, core[0]), True)
        return cls(core, False)


def set_schedule(schedule, mode, rng=None):
    """Next epoch's visit order.

    mode "det" applies one cyclic left-shift to the first K entries; "stoc"
    draws a fresh random permutation. Either way a wrapped schedule ends with
    its new first element.
    """
    core = schedule.order[:-1] if schedule.wrap else schedule.order
    if mode == "det":
        core = np.roll(core, -1)
    elif mode == "stoc":
        if rng is None:
            raise ValueError("stochastic schedule needs an rng")
        core = rng.permutation(core)
    else:
        raise ValueError(f"unknown schedule mode {mode!r}")
    if schedule.wrap:
        return Schedule(np.append(core, core[0]), True)
    return Schedule(core, False)


def beta(t, eta, gamma):
    """Damping value (eta * t)^gamma for epoch t >= 1."""
    if t < 1:
        raise ValueError("epoch index starts at 1")
    if eta <= 0.0:
        raise ValueError("eta must be positive")
    return float((eta * t) ** gamma)


@dataclass
class RunConfig:
    """Everything a run needs besides the data and the cover."""

    algorithm: str = "hamsi"          # "hamsi" | "mbgd"
    rank: int = 50
    eta: float = 0.06
    gamma: float = 0.51
    memory: int = 8
    schedule: str = "det"             # "det" | "stoc"
    threads: int = 1
    max_epochs: int = None
    max_seconds: float = None
    seed: int = 1
    strict_blocks: bool = False
    count_rmse_time: bool = False

    def validate(self):
        if self.algorithm not in ("hamsi", "mbgd"):
            raise ValueError(f"unknown algorithm {self.algorithm!r}")
        if self.schedule not in ("det", "stoc"):
            raise ValueError(f"unknown schedule mode {self.schedule!r}")
        if not 0.5 < self.gamma <= 1.0:
            raise ValueError("gamma must lie in (0.5, 1]")
        if self.eta <= 0.0:
            raise ValueError("eta must be positive")
        if self.rank < 1 or self.memory < 1 or self.threads < 1:
            raise ValueError("rank, memory, threads must be >= 1")
        if self.max_epochs is None and self.max_seconds is None:
            raise ValueError("need max_epochs and/or max_seconds")


@dataclass
class TraceRecord:
    epoch: int
    seconds: float
    rmse: float
    beta: float


@dataclass
class RunResult:
    trace: list
    model: object
    gradient_seconds: float


class DivergenceError(RuntimeError):
    """Raised when a step produces non-finite parameters.

    Carries the partial trace and the last finite epoch count when raised
    out of ``run``.
    """

    def __init__(self, epoch, subset):
        super().__init__(
            f"non-finite parameters after epoch {epoch}, subset {subset}; "
            f"the step size is too aggressive for this problem (raise eta)")
        self.epoch = epoch
        self.subset = subset
        self.trace = []
        self.model = None


def _copy_support(src, dst, split, num_rows, num_cols, rank, urows, ucols):
    """dst <- src on the parameters of the given rows of X1 / cols of X2."""
    s1 = src[:split].reshape(num_rows, rank)
    d1 = dst[:split].reshape(num_rows, rank)
    s2 = src[split:].reshape(num_cols, rank)
    d2 = dst[split:].reshape(num_cols, rank)
    d1[urows] = s1[urows]
    d2[ucols] = s2[ucols]


def _step_support(x, step, split, num_rows, num_cols, rank, urows, ucols):
    """x <- x - step restricted to the given rows/cols."""
    x1 = x[:split].reshape(num_rows, rank)
    x2 = x[split:].reshape(num_cols, rank)
    t1 = step[:split].reshape(num_rows, rank)
    t2 = step[split:].reshape(num_cols, rank)
    x1[urows] -= t1[urows]
    x2[ucols] -= t2[ucols]


def hamsi_epoch(model, cover, mem, schedule, t, engine, config, rng,
                snapshots):
    """One outer epoch of the second-order method; returns the schedule used.

    Sweeps schedule.order (K+1 subsets, first == last). Snapshot of iterate
    and gradient on the first subset's support; one lazy step per subset;
    after the last sweep the differences s = x - xbar, y = g - gbar are
    offered to the pair memory (kept only when s.y > 0).
    """
    b = beta(t, config.eta, config.gamma)
    schedule = set_schedule(schedule, config.schedule, rng)
    xbar, gbar = snapshots
    split = model.num_rows * model.rank
    dims = (split, model.num_rows, model.num_cols, model.rank)
    for ell, k1 in enumerate(schedule.order):
        k = int(k1) - 1
        g = engine.subset_gradient(k, model)
        if ell == 0:
            urows, ucols = engine.subset_alpha(k)
            _copy_support(model.x, xbar, *dims, urows, ucols)
            _copy_support(g, gbar, *dims, urows, ucols)
        step = mem.apply(g, b)
        if config.strict_blocks:
            ur, uc = engine.subset_alpha(k)
            _step_support(model.x, step, *dims, ur, uc)
        else:
            model.x -= step
        if not np.isfinite(model.x).all():
            raise DivergenceError(t, k + 1)
    mem.update(model.x - xbar, engine.g - gbar)
    return schedule


def mbgd_epoch(model, cover, schedule, t, engine, config, rng):
    """One epoch of the gradient baseline; returns the schedule used."""
    b = beta(t, config.eta, config.gamma)
    schedule = set_schedule(schedule, config.schedule, rng)
    for k1 in schedule.order:
        k = int(k1) - 1
        g = engine.subset_gradient(k, model)
        model.x -= g / b
        if not np.isfinite(model.x).all():
            raise DivergenceError(t, k + 1)
    return schedule


def run(config, obs, cover):
    """Optimize from a fresh seeded model until the stop condition.

    Records one TraceRecord per epoch. The ``seconds`` column is the stop
    clock: it accumulates epoch time and, only when config.count_rmse_time
    is set, evaluation time. On divergence the partial trace and model are
    attached to the raised DivergenceError.
    """
    config.validate()
    rng = np.random.default_rng(config.seed)
    model = init_model(obs.num_rows, obs.num_cols, config.rank, rng)
    engine = GradientEngine(obs, cover, config.rank, config.threads)
    trace = []
    try:
        if config.algorithm == "hamsi":
            mem = LbfgsMemory(model.num_params, config.memory)
            snapshots = (model.x.copy(), np.zeros(model.num_params))
            schedule = Schedule.initial(cover.K, wrap=True)
        else:
            schedule = Schedule.initial(cover.K, wrap=False)
        seconds = 0.0
        last_epoch = 0.0
        t = 1
        while True:
            if config.max_epochs is not None and t > config.max_epochs:
                break
            # max_seconds is a cap, not a target: stop when the budget is
            # spent or the next epoch (estimated as 1.5x the previous one,
            # against timing jitter) would overrun it. The clock can exceed
            # the cap by strictly less than one epoch, never more.
            if config.max_seconds is not None and (
                    seconds + 1.5 * last_epoch > config.max_seconds):
                break
            t0 = perf_counter()
            try:
                if config.algorithm == "hamsi":
                    schedule = hamsi_epoch(model, cover, mem, schedule, t,
                                           engine, config, rng, snapshots)
                else:
                    schedule = mbgd_epoch(model, cover, schedule, t, engine,
                                          config, rng)
            except DivergenceError as err:
                err.trace = trace
                err.model = model
                raise
            last_epoch = perf_counter() - t0
            seconds += last_epoch
            t_eval = perf_counter()
            value = engine.rmse(model)
            if config.count_rmse_time:
                t_eval = perf_counter() - t_eval
                seconds += t_eval
                last_epoch += t_eval
            trace.append(TraceRecord(t, seconds, value,
                                     beta(t, config.eta, config.gamma)))
            t += 1
        return RunResult(trace, model, engine.gradient_seconds)
    finally:
        engine.close()
