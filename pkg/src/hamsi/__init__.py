"""Shared-memory parallel incremental optimization for sparse matrix
factorization: a compact quasi-Newton method, a gradient baseline, and five
partitioning schemes that trade synchronization against balance."""

from .model import (FactorModel, SparseObservations, alpha_of, block_gradient,
                    full_gradient, init_model, residual, rmse, sse)
from .partition import (Coloring, Cover, greedy_color, hogwild_cover,
                        pack_colors, par_work, stratify)
from .lbfgs import (LbfgsMemory, apply_direction, quadratic_min_oracle,
                    update_memory)
from .optimizer import (DivergenceError, RunConfig, RunResult, Schedule,
                        TraceRecord, beta, hamsi_epoch, mbgd_epoch, run,
                        set_schedule)
from .harness import (IdRemap, build_cover, dump_factors, load_ratings, main,
                      read_trace, write_trace)

__version__ = "0.1.0"
