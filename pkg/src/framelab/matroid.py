"""Linear matroid of frame vectors and exact partition/packing certificates.

* :func:`min_independent_partition` splits the vectors into the fewest
  linearly independent sets (Edmonds' matroid partitioning: elements are
  inserted one at a time along shortest augmenting paths in the exchange
  graph, and a new set is opened only when no path exists).
* :func:`max_disjoint_spanning_sets` finds the largest number of pairwise
  disjoint spanning sets (base packing by matroid union over ``k`` copies).
* The ``brute_force_*`` functions are exhaustive oracles for small ground
  sets; they share only the independence oracle with the algorithms.

All indices are zero-based positions in the frame.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

import numpy as np

from . import linalg
from .errors import FrameError
from .frames import DEFAULT_TOLERANCES, Frame, HermitianOperator, Tolerances, zero_threshold

BRUTE_FORCE_LIMIT = 10
DUALITY_RANK_TOL = 1e-9


class LinearMatroid:
    """Independence structure of the columns of a frame.

    Vectors with norm at or below the frame's zero threshold are loops
    (rank 0).  Ranks of all other subsets come from a column-pivoted QR with
    relative tolerance ``rank_tol`` (default ``max(d, N) * eps``) and are
    cached by subset.
    """

    def __init__(self, frame: Frame, rank_tol: float | None = None, tol: Tolerances = DEFAULT_TOLERANCES):
        self.frame = frame
        if rank_tol is None:
            rank_tol = tol.rank
        if rank_tol is None:
            rank_tol = linalg.rank_tolerance_factor((frame.dimension, frame.size))
        self.rank_tol = float(rank_tol)
        norms = frame.norms
        self.loops = frozenset(int(i) for i in np.flatnonzero(norms <= zero_threshold(frame, tol)))
        self._vectors = frame.vectors
        self._cache: dict[int, int] = {}

    @property
    def size(self) -> int:
        return self.frame.size

    @property
    def ground_set(self) -> range:
        return range(self.size)

    def _mask_rank(self, mask: int, members) -> int:
        r = self._cache.get(mask)
        if r is None:
            cols = [i for i in members if i not in self.loops]
            r = linalg.numerical_rank(self._vectors[:, cols], self.rank_tol) if cols else 0
            self._cache[mask] = r
        return r

    def rank(self, subset) -> int:
        members = sorted(set(int(i) for i in subset))
        if members and (members[0] < 0 or members[-1] >= self.size):
            raise IndexError("subset is not contained in the ground set")
        mask = 0
        for i in members:
            mask |= 1 << i
        return self._mask_rank(mask, members)

    def is_independent(self, subset) -> bool:
        members = set(subset)
        if len(members) > self.frame.dimension:
            return False
        return self.rank(members) == len(members)

    def spans(self, subset) -> bool:
        return self.rank(subset) == self.full_rank

    @property
    def full_rank(self) -> int:
        return self.rank(self.ground_set)


@dataclass
class Partition:
    parts: list[list[int]]
    tolerance: float

    @property
    def count(self) -> int:
        return len(self.parts)

    def as_dict(self) -> dict:
        return {"parts": self.parts, "leftover": [], "count": self.count, "tolerance": self.tolerance}


@dataclass
class SpanningPacking:
    sets: list[list[int]]
    leftover: list[int]
    tolerance: float

    @property
    def count(self) -> int:
        return len(self.sets)

    def as_dict(self) -> dict:
        return {"parts": self.sets, "leftover": self.leftover, "count": self.count, "tolerance": self.tolerance}


def _augment(matroid: LinearMatroid, parts: list[set[int]], x: int) -> bool:
    """Insert ``x`` into one of ``parts`` along a shortest augmenting path.

    Exchange-graph edges run from ``u`` to ``y`` in part ``j`` (``u`` not in
    it) when ``part_j - y + u`` is independent; ``u`` is a sink for ``j``
    when ``part_j + u`` is independent.  Breadth-first search visits parts
    and elements in increasing order.  Returns False (leaving ``parts``
    untouched) when no path exists.
    """
    where = {y: j for j, part in enumerate(parts) for y in part}
    parent: dict[int, int | None] = {x: None}
    queue = deque([x])
    while queue:
        u = queue.popleft()
        home = where.get(u)
        for j, part in enumerate(parts):
            if j == home:
                continue
            if matroid.is_independent(part | {u}):
                moves = [(u, j)]
                cur = u
                while parent[cur] is not None:
                    prev = parent[cur]
                    moves.append((prev, where[cur]))
                    cur = prev
                for elem, _ in moves:
                    if elem in where:
                        parts[where[elem]].discard(elem)
                for elem, dest in moves:
                    parts[dest].add(elem)
                return True
            for y in sorted(part):
                if y not in parent and matroid.is_independent((part - {y}) | {u}):
                    parent[y] = u
                    queue.append(y)
    return False


def min_independent_partition(matroid: LinearMatroid) -> Partition:
    """Partition the ground set into the fewest independent sets.

    A new part is opened only when the current prefix of elements cannot be
    covered by the existing parts, so the final count is the minimum, which
    equals ``max_S ceil(|S| / rank(S))``.
    """
    if matroid.loops:
        raise FrameError(f"zero vectors at positions {sorted(matroid.loops)} cannot be in an independent set")
    parts: list[set[int]] = []
    for x in matroid.ground_set:
        if not _augment(matroid, parts, x):
            parts.append({x})
    return Partition([sorted(p) for p in parts], matroid.rank_tol)


def _union_cover(matroid: LinearMatroid, k: int) -> list[set[int]]:
    parts: list[set[int]] = [set() for _ in range(k)]
    for x in matroid.ground_set:
        if x not in matroid.loops:
            _augment(matroid, parts, x)
    return parts


def max_disjoint_spanning_sets(matroid: LinearMatroid) -> SpanningPacking:
    """Largest family of pairwise disjoint spanning sets.

    For a given ``k`` the union of ``k`` copies of the matroid is filled
    greedily with augmenting paths; ``k`` disjoint bases exist iff the
    cover reaches ``k * rank``.  The largest feasible ``k`` is found by
    binary search and its parts are returned (every part is a basis).
    """
    r = matroid.full_rank
    if r == 0:
        raise FrameError("rank-0 family has no spanning sets")
    usable = matroid.size - len(matroid.loops)
    lo, hi = 1, usable // r
    best = _union_cover(matroid, 1)
    while lo < hi:
        mid = (lo + hi + 1) // 2
        cover = _union_cover(matroid, mid)
        if sum(len(p) for p in cover) == mid * r:
            lo, best = mid, cover
        else:
            hi = mid - 1
    used = set().union(*best)
    leftover = sorted(set(matroid.ground_set) - used)
    return SpanningPacking([sorted(p) for p in best], leftover, matroid.rank_tol)


# ---------------------------------------------------------------- oracles


def _subset_tables(matroid: LinearMatroid):
    N = matroid.size
    if N > BRUTE_FORCE_LIMIT:
        raise FrameError(f"brute force is limited to N <= {BRUTE_FORCE_LIMIT}, got {N}")
    r_full = matroid.full_rank
    independent = [False] * (1 << N)
    spanning = [False] * (1 << N)
    for mask in range(1 << N):
        members = [i for i in range(N) if mask >> i & 1]
        r = matroid.rank(members)
        independent[mask] = r == len(members)
        spanning[mask] = r == r_full
    return independent, spanning


def _set_partitions(n: int):
    """All set partitions of ``range(n)`` as lists of bitmasks."""
    blocks: list[int] = []

    def rec(i):
        if i == n:
            yield list(blocks)
            return
        bit = 1 << i
        for b in range(len(blocks)):
            blocks[b] |= bit
            yield from rec(i + 1)
            blocks[b] &= ~bit
        blocks.append(bit)
        yield from rec(i + 1)
        blocks.pop()

    yield from rec(0)


def brute_force_min_partition(matroid: LinearMatroid) -> int:
    """Fewest independent parts, by enumerating every set partition."""
    if matroid.loops:
        raise FrameError("zero vectors cannot be partitioned into independent sets")
    independent, _ = _subset_tables(matroid)
    return min(
        len(blocks) for blocks in _set_partitions(matroid.size) if all(independent[b] for b in blocks)
    )


def brute_force_max_packing(matroid: LinearMatroid) -> int:
    """Most disjoint spanning sets, by enumerating every set partition.

    Leftover elements can always be merged into a spanning block, so the
    optimum is the largest number of spanning blocks in a set partition.
    """
    if matroid.full_rank == 0:
        raise FrameError("rank-0 family has no spanning sets")
    _, spanning = _subset_tables(matroid)
    return max(sum(spanning[b] for b in blocks) for blocks in _set_partitions(matroid.size))


# ---------------------------------------------------------------- projections


@dataclass
class DualityResult:
    subset: tuple[int, ...]
    spans_range: bool
    complement_independent: bool
    intersects_range: bool = field(default=False)
    complement_spans: bool = field(default=True)
    subset_dependent: bool = field(default=False)

    @property
    def holds(self) -> bool:
        return self.spans_range == self.complement_independent

    @property
    def corollary_holds(self) -> bool:
        return self.intersects_range == (not self.complement_spans) == self.subset_dependent

    def as_dict(self) -> dict:
        return {
            "subset": list(self.subset),
            "spans_range": self.spans_range,
            "complement_independent": self.complement_independent,
            "intersects_range": self.intersects_range,
            "complement_spans": self.complement_spans,
            "subset_dependent": self.subset_dependent,
            "holds": self.holds,
            "corollary_holds": self.corollary_holds,
        }


def _projection_matrix(P, m: int) -> np.ndarray:
    P = P.matrix if isinstance(P, HermitianOperator) else np.asarray(P)
    if P.shape != (m, m):
        raise FrameError(f"projection must be {m} x {m}, got {P.shape}")
    if np.max(np.abs(P - P.conj().T), initial=0.0) > 1e-10 or np.max(np.abs(P @ P - P), initial=0.0) > 1e-10:
        raise FrameError("P is not an orthogonal projection (self-adjoint and idempotent within 1e-10)")
    return P


def _abs_rank(A) -> int:
    # columns of P and I - P have norm <= 1, so an absolute threshold is meaningful
    return linalg.numerical_rank(A, DUALITY_RANK_TOL, ref=1.0)


def projection_duality_check(m: int, P, J) -> DualityResult:
    """Compare spanning of ``{P e_i : i in J}`` with independence of ``{(I-P) e_i : i not in J}``.

    Also evaluates the three equivalent conditions of the corollary for
    ``J``: ``span{e_i}_J`` meets ``P(H)`` nontrivially, ``{P e_i}`` over the
    complement fails to span ``P(H)``, and ``{(I-P) e_i}_J`` is dependent.
    """
    P = _projection_matrix(P, m)
    J = tuple(sorted(set(int(j) for j in J)))
    if any(j < 0 or j >= m for j in J):
        raise FrameError(f"subset must lie in 0..{m - 1}")
    Jc = [i for i in range(m) if i not in J]
    Jl = list(J)
    Q = np.eye(m) - P
    rank_P = _abs_rank(P)
    spans_range = _abs_rank(P[:, Jl]) == rank_P
    complement_independent = _abs_rank(Q[:, Jc]) == len(Jc)

    E_J = np.eye(m)[:, Jl]
    both = np.hstack([E_J, P]) if Jl else P
    intersection_dim = len(Jl) + rank_P - _abs_rank(both)
    return DualityResult(
        subset=J,
        spans_range=spans_range,
        complement_independent=complement_independent,
        intersects_range=intersection_dim > 0,
        complement_spans=_abs_rank(P[:, Jc]) == rank_P,
        subset_dependent=_abs_rank(Q[:, Jl]) < len(Jl),
    )


def duality_sweep(P) -> list[DualityResult]:
    """:func:`projection_duality_check` for every subset ``J`` of ``0..m-1``."""
    P = np.asarray(P.matrix if isinstance(P, HermitianOperator) else P)
    m = P.shape[0]
    return [
        projection_duality_check(m, P, [i for i in range(m) if mask >> i & 1]) for mask in range(1 << m)
    ]
