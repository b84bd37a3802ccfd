"""Covers: partitions of the observation set that enable race-free sweeps.

A cover splits the entries into K subsets; a sweep processes one subset at a
time with a barrier in between. Within a subset, entries are organized into
groups and blocks:

  * groups run sequentially (barrier between groups),
  * blocks inside a group run concurrently and touch pairwise-disjoint
    parameters, so no synchronization is needed among them,
  * a block marked chunkable may additionally be split arbitrarily across
    workers (its entries are themselves pairwise parameter-disjoint, or, for
    hogwild, races are accepted behavior).

Scheme shapes:
  hogwild   1 group, 1 chunkable block per subset (random split, races allowed)
  color     1 group per color class, each class one chunkable block
  color-b   same, classes found with a randomized color choice
  strata    1 group of K blocks, one per (row interval, col interval) pair
  strata-b  same with per-dimension balanced interval boundaries
"""

import numpy as np

__all__ = [
    "Cover",
    "Coloring",
    "hogwild_cover",
    "greedy_color",
    "pack_colors",
    "stratify",
    "par_work",
    "SINGLETON_SCHEMES",
    "STRATA_SCHEMES",
]

SINGLETON_SCHEMES = ("hogwild", "color", "color-b")
STRATA_SCHEMES = ("strata", "strata-b")


class Cover:
    """Partition of entry indices into K subsets of race-free blocks.

    Attributes
    ----------
    scheme : str
    K : int
    subsets : list of subsets; each subset is a list of groups; each group a
        list of int64 index arrays (the blocks).
    chunkable : bool, whether blocks may be split further across workers.
    block_intervals : strata only; per subset, list of (row_iv, col_iv).
    row_bounds, col_bounds : strata only; interval boundary arrays (K+1,).
    """

    def __init__(self, scheme, K, subsets, chunkable, block_intervals=None,
                 row_bounds=None, col_bounds=None):
        self.scheme = scheme
        self.K = int(K)
        self.subsets = subsets
        self.chunkable = chunkable
        self.block_intervals = block_intervals
        self.row_bounds = row_bounds
        self.col_bounds = col_bounds

    def subset_entries(self, k):
        """All entry indices of subset k as one array."""
        blocks = [b for group in self.subsets[k] for b in group]
        if not blocks:
            return np.empty(0, dtype=np.int64)
        return np.concatenate(blocks)

    def subset_sizes(self):
        return [int(sum(b.size for g in self.subsets[k] for b in g))
                for k in range(self.K)]

    def block_sizes(self, k):
        """Sizes of the concurrent blocks of subset k (strata: the K blocks)."""
        return [int(b.size) for group in self.subsets[k] for b in group]

    def validate(self, obs):
        """Check the partition and disjointness invariants.

        Every entry index must appear exactly once across the cover. Within
        each group, blocks must touch pairwise-disjoint rows and columns;
        hogwild is exempt by construction (single block per subset anyway).
        Raises ValueError on violation.
        """
        seen = np.concatenate([self.subset_entries(k) for k in range(self.K)])
        if seen.size != len(obs) or not np.array_equal(
                np.sort(seen), np.arange(len(obs))):
            raise ValueError("cover is not a partition of the entry set")
        if self.scheme == "hogwild":
            return
        for k in range(self.K):
            for group in self.subsets[k]:
                rows_per_block = [np.unique(obs.rows[b]) for b in group]
                cols_per_block = [np.unique(obs.cols[b]) for b in group]
                all_rows = np.concatenate(rows_per_block) if rows_per_block else []
                all_cols = np.concatenate(cols_per_block) if cols_per_block else []
                if len(all_rows) != np.unique(all_rows).size:
                    raise ValueError(f"subset {k}: blocks share a row")
                if len(all_cols) != np.unique(all_cols).size:
                    raise ValueError(f"subset {k}: blocks share a column")
                if self.chunkable:
                    # chunkable blocks must be conflict-free internally
                    for b in group:
                        if (np.unique(obs.rows[b]).size != b.size
                                or np.unique(obs.cols[b]).size != b.size):
                            raise ValueError(
                                f"subset {k}: chunkable block has an internal conflict")

    def describe(self, P=None):
        """Human-readable summary: per-subset block sizes and work metric."""
        lines = [f"scheme {self.scheme}  K {self.K}"]
        for k in range(self.K):
            sizes = self.block_sizes(k)
            total = sum(sizes)
            if len(sizes) > 12:
                shown = ", ".join(str(s) for s in sizes[:12]) + ", ..."
            else:
                shown = ", ".join(str(s) for s in sizes)
            lines.append(f"subset {k + 1}: {total} entries in "
                         f"{len(sizes)} blocks [{shown}]")
        if P is not None:
            lines.append(f"parWork(P={P}) = {par_work(self, P)}")
        return "\n".join(lines)


def hogwild_cover(num_entries, K, rng):
    """Random split into K near-equal subsets; single-entry blocks, no
    disjointness guarantee (concurrent updates may race)."""
    if K < 1:
        raise ValueError("K must be >= 1")
    if K > num_entries:
        raise ValueError("K exceeds the number of entries")
    perm = rng.permutation(num_entries).astype(np.int64)
    parts = np.array_split(perm, K)
    subsets = [[[part]] for part in parts]
    return Cover("hogwild", K, subsets, chunkable=True)


class Coloring:
    """Color assignment over entries: conflicting entries (sharing a row or a
    column) always receive distinct colors."""

    def __init__(self, colors, num_colors, policy="first-fit"):
        self.colors = np.asarray(colors, dtype=np.int64)
        self.num_colors = int(num_colors)
        self.policy = policy

    def class_sizes(self):
        return np.bincount(self.colors, minlength=self.num_colors)


def greedy_color(obs, policy="first-fit", rng=None):
    """Greedy coloring of the entry conflict graph in input order.

    policy "first-fit" assigns the smallest feasible color index;
    "random-available" picks uniformly among already-open feasible colors and
    opens a new color only when every open color is in conflict.
    """
    if policy not in ("first-fit", "random-available"):
        raise ValueError(f"unknown policy {policy!r}")
    if policy == "random-available" and rng is None:
        raise ValueError("random-available policy needs an rng")
    n = len(obs)
    cap = 256
    row_used = np.zeros((obs.num_rows, cap), dtype=bool)
    col_used = np.zeros((obs.num_cols, cap), dtype=bool)
    colors = np.empty(n, dtype=np.int64)
    num_used = 0
    rows = obs.rows
    cols = obs.cols
    for i in range(n):
        a = rows[i]
        b = cols[i]
        forbidden = row_used[a] | col_used[b]
        if policy == "first-fit":
            c = int(np.argmin(forbidden))
            if forbidden[c]:
                c = cap  # every color in use, open beyond current capacity
        else:
            open_feasible = np.flatnonzero(~forbidden[:num_used])
            if open_feasible.size:
                c = int(open_feasible[rng.integers(open_feasible.size)])
            else:
                c = num_used
        if c >= cap:
            cap *= 2
            row_used = np.concatenate(
                [row_used, np.zeros_like(row_used)], axis=1)
            col_used = np.concatenate(
                [col_used, np.zeros_like(col_used)], axis=1)
        colors[i] = c
        row_used[a, c] = True
        col_used[b, c] = True
        if c >= num_used:
            num_used = c + 1
    return Coloring(colors, num_used, policy)


def pack_colors(coloring, K, num_entries):
    """First-fit pack color classes into K bins, forming one subset per bin.

    Classes are processed in decreasing-cardinality order; a bin accepts a
    class while its current size is below ceil(num_entries / K). If no bin is
    below the threshold the class goes into the last bin (overflow fallback).
    Within a subset, each class stays its own sequential group so concurrent
    work never mixes conflicting classes.
    """
    if K < 1:
        raise ValueError("K must be >= 1")
    sizes = coloring.class_sizes()
    # stable order: decreasing size, ties by class id
    order = np.lexsort((np.arange(sizes.size), -sizes))
    by_class = [np.flatnonzero(coloring.colors == c).astype(np.int64)
                for c in range(coloring.num_colors)]
    capacity = -(-num_entries // K)
    bins = [[] for _ in range(K)]
    fill = [0] * K
    for c in order:
        if sizes[c] == 0:
            continue
        for j in range(K):
            if fill[j] < capacity:
                break
        else:
            j = K - 1
        bins[j].append(by_class[c])
        fill[j] += int(sizes[c])
    subsets = [[[blk] for blk in bins[j]] for j in range(K)]
    scheme = "color-b" if coloring.policy == "random-available" else "color"
    return Cover(scheme, K, subsets, chunkable=True)


def _equilength_bounds(dim, K):
    step = -(-dim // K)
    bounds = np.minimum(np.arange(K + 1) * step, dim)
    return bounds.astype(np.int64)


def _balanced_bounds(counts, K, total):
    """Interval boundaries so each interval holds about total/K entries.

    An interval is extended while its entry count is below total/K; the index
    that reaches the target closes it. The last interval absorbs whatever
    remains, and intervals are forced to stay non-empty so exactly K remain.
    """
    dim = counts.size
    target = total / K
    bounds = [0]
    acc = 0
    i = 0
    for i in range(dim):
        acc += int(counts[i])
        intervals_left = K - len(bounds)
        if len(bounds) < K and acc >= target and (dim - i - 1) >= intervals_left:
            bounds.append(i + 1)
            acc = 0
        elif len(bounds) < K and (dim - i - 1) == intervals_left:
            # must close here or a later interval would be empty
            bounds.append(i + 1)
            acc = 0
    bounds.append(dim)
    return np.asarray(bounds, dtype=np.int64)


def stratify(obs, K, mode="balanced"):
    """Split rows and columns into K intervals and build the K diagonal-shift
    subsets: subset k holds the blocks (row interval r, col interval
    (r + k - 1) mod K), which are pairwise parameter-disjoint.

    mode "equilength" uses intervals of ceil(dim / K) indices; "balanced"
    grows each interval until it holds about 1/K of the entries.
    """
    if mode not in ("equilength", "balanced"):
        raise ValueError(f"unknown mode {mode!r}")
    if K < 1:
        raise ValueError("K must be >= 1")
    if K > min(obs.num_rows, obs.num_cols):
        raise ValueError("K exceeds a matrix dimension")
    n = len(obs)
    if mode == "equilength":
        row_bounds = _equilength_bounds(obs.num_rows, K)
        col_bounds = _equilength_bounds(obs.num_cols, K)
    else:
        row_counts = np.bincount(obs.rows, minlength=obs.num_rows)
        col_counts = np.bincount(obs.cols, minlength=obs.num_cols)
        row_bounds = _balanced_bounds(row_counts, K, n)
        col_bounds = _balanced_bounds(col_counts, K, n)
    row_iv = np.searchsorted(row_bounds, obs.rows, side="right") - 1
    col_iv = np.searchsorted(col_bounds, obs.cols, side="right") - 1
    subset_id = (col_iv - row_iv) % K
    order = np.lexsort((obs.cols, obs.rows, row_iv, subset_id))
    subsets = []
    intervals = []
    sid_sorted = subset_id[order]
    riv_sorted = row_iv[order]
    for k in range(K):
        span = order[sid_sorted == k]
        riv_span = riv_sorted[sid_sorted == k]
        blocks = []
        ivs = []
        for r in range(K):
            blocks.append(span[riv_span == r].astype(np.int64))
            ivs.append((r, (r + k) % K))
        subsets.append([blocks])
        intervals.append(ivs)
    scheme = "strata" if mode == "equilength" else "strata-b"
    return Cover(scheme, K, subsets, chunkable=False,
                 block_intervals=intervals,
                 row_bounds=row_bounds, col_bounds=col_bounds)


def par_work(cover, P):
    """Unit-cost model of one epoch's parallel gradient work.

    Single-function-block schemes spread each subset's entries over P
    workers: sum_k ceil(|S_k| / P). Strata schemes run one block per worker:
    sum_k max_b |S_{k,b}|.
    """
    if P < 1:
        raise ValueError("P must be >= 1")
    if cover.scheme in STRATA_SCHEMES:
        total = 0
        for k in range(cover.K):
            sizes = cover.block_sizes(k)
            total += max(sizes) if sizes else 0
        return total
    return sum(-(-s // P) for s in cover.subset_sizes())
