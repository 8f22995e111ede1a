"""Deterministic constructors for the concrete frames used throughout.

Randomized constructors draw from ``numpy.random.default_rng(seed)``
(PCG64), so a given ``(parameters, seed)`` pair yields bit-identical
frames on every platform numpy supports.
"""

from __future__ import annotations

import itertools
import math

import numpy as np

from . import linalg
from .errors import FrameError
from .frames import Frame

ILL_CONDITIONED_RATIO = 1e-10
MAX_DRAWS = 200


def _basis(n: int, i: int) -> np.ndarray:
    e = np.zeros(n)
    e[i] = 1.0
    return e


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise FrameError(message)


def _as_int(value, name: str) -> int:
    if isinstance(value, bool) or int(value) != value:
        raise FrameError(f"{name} must be an integer, got {value!r}")
    return int(value)


def onb(n: int) -> Frame:
    """Standard orthonormal basis of ``R^n``."""
    n = _as_int(n, "n")
    _require(n >= 1, "n must be >= 1")
    return Frame(np.eye(n), "real", [f"e{i + 1}" for i in range(n)])


def phi1(n: int) -> Frame:
    """Every basis vector twice: ``e1, e1, e2, e2, ..., en, en``."""
    n = _as_int(n, "n")
    _require(n >= 1, "n must be >= 1")
    vecs, labels = [], []
    for i in range(n):
        vecs += [_basis(n, i), _basis(n, i)]
        labels += [f"e{i + 1}", f"e{i + 1}"]
    return Frame.from_vectors(vecs, "real", labels)


def phi2(n: int) -> Frame:
    """``e1`` repeated ``n + 1`` times followed by ``e2, ..., en``."""
    n = _as_int(n, "n")
    _require(n >= 1, "n must be >= 1")
    vecs = [_basis(n, 0)] * (n + 1) + [_basis(n, i) for i in range(1, n)]
    labels = ["e1"] * (n + 1) + [f"e{i + 1}" for i in range(1, n)]
    return Frame.from_vectors(vecs, "real", labels)


def phi3(n: int) -> Frame:
    """Basis vectors interleaved with zeros: ``e1, 0, e2, 0, ..., en, 0``."""
    n = _as_int(n, "n")
    _require(n >= 1, "n must be >= 1")
    vecs, labels = [], []
    for i in range(n):
        vecs += [_basis(n, i), np.zeros(n)]
        labels += [f"e{i + 1}", "0"]
    return Frame.from_vectors(vecs, "real", labels)


def phi4(N: int, eps: float, M: int) -> Frame:
    """Frame concentrated around ``e1``, truncated to dimension ``M``.

    ``phi_1 = e1``, ``phi_i = sqrt(1 - eps^2) e1 + eps e_i`` for
    ``2 <= i <= N`` and ``phi_i = e_i`` for ``N < i <= M``.
    """
    N = _as_int(N, "N")
    M = _as_int(M, "M")
    _require(2 <= N <= M, f"phi4 needs 2 <= N <= M, got N={N}, M={M}")
    _require(0.0 < eps < 1.0, f"phi4 needs 0 < eps < 1, got {eps}")
    head = math.sqrt(1.0 - eps * eps)
    vecs = [_basis(M, 0)]
    for i in range(1, N):
        v = np.zeros(M)
        v[0] = head
        v[i] = eps
        vecs.append(v)
    vecs += [_basis(M, i) for i in range(N, M)]
    return Frame.from_vectors(vecs, "real")


def dft_matrix(m: int) -> np.ndarray:
    """Unitary DFT matrix ``F[j, k] = exp(-2 pi i j k / m) / sqrt(m)``."""
    j = np.arange(m)
    return np.exp(-2j * np.pi * np.outer(j, j) / m) / math.sqrt(m)


def _row_set(m: int, rows) -> list[int]:
    m = _as_int(m, "m")
    _require(m >= 1, "m must be >= 1")
    E = sorted({_as_int(r, "row") for r in rows})
    _require(len(E) > 0, "row set E must be nonempty")
    _require(all(0 <= r < m for r in E), f"rows must lie in 0..{m - 1}")
    return E


def dft_subset_parseval(m: int, rows, ambient: bool = False) -> Frame:
    """Equal-norm Parseval frame cut from the rows ``E`` of the DFT matrix.

    The frame vectors are the ``m`` columns of ``F[E, :]``; they live in
    ``C^|E|``, form a Parseval frame there and all have squared norm
    ``|E| / m``.  With ``ambient=True`` the unitarily equivalent family
    ``P e_k`` in ``C^m`` is returned instead, ``P = F[E,:]^* F[E,:]`` being
    the orthogonal projection onto the span of those rows; it is a Parseval
    frame for ``P(C^m)`` only.
    """
    E = _row_set(m, rows)
    FE = dft_matrix(m)[E, :]
    if ambient:
        P = FE.conj().T @ FE
        return Frame((P + P.conj().T) / 2, "complex")
    return Frame(FE, "complex")


def union_of_onbs(d: int, k: int, seed: int = 0) -> Frame:
    """``k`` orthonormal bases of ``R^d``, each scaled by ``1/sqrt(k)``.

    The first block is the standard basis; the others come from QR
    factorizations of seeded Gaussian matrices.  The result is Parseval and
    splits into ``k`` spanning blocks.  In finite dimensions the union can
    never be linearly independent as a whole.
    """
    d = _as_int(d, "d")
    k = _as_int(k, "k")
    _require(d >= 1 and k >= 1, "union_of_onbs needs d >= 1 and k >= 1")
    rng = np.random.default_rng(seed)
    blocks = [np.eye(d)]
    for _ in range(k - 1):
        Q, R = np.linalg.qr(rng.standard_normal((d, d)))
        signs = np.sign(np.diag(R))
        signs[signs == 0] = 1.0
        blocks.append(Q * signs)
    labels = [f"b{j + 1}.{i + 1}" for j in range(k) for i in range(d)]
    return Frame(np.hstack(blocks) / math.sqrt(k), "real", labels)


def notes_counterexample(N: int) -> Frame:
    """Parseval frame of ``3N - 2`` vectors in ``R^N``.

    Vectors are ``(e1 + e_i)/sqrt(2N)``, ``(e1 - e_i)/sqrt(2N)`` for
    ``i = 2..N`` (plus-family first, then minus-family), then ``e1/sqrt(N)``
    and ``sqrt(1 - 1/N) e_i`` for ``i = 2..N``.
    """
    N = _as_int(N, "N")
    _require(N >= 2, "notes_counterexample needs N >= 2")
    a = 1.0 / math.sqrt(2 * N)
    plus, minus = [], []
    for i in range(1, N):
        v = np.zeros(N)
        v[0], v[i] = a, a
        plus.append(v)
        w = np.zeros(N)
        w[0], w[i] = a, -a
        minus.append(w)
    tail = [_basis(N, 0) / math.sqrt(N)]
    b = math.sqrt(1.0 - 1.0 / N)
    tail += [b * _basis(N, i) for i in range(1, N)]
    labels = (
        [f"+{i + 1}" for i in range(1, N)]
        + [f"-{i + 1}" for i in range(1, N)]
        + [f"t{i + 1}" for i in range(N)]
    )
    return Frame.from_vectors(plus + minus + tail, "real", labels)


def notes_plus_minus_family(N: int) -> Frame:
    """The first ``2(N - 1)`` vectors of :func:`notes_counterexample`."""
    F = notes_counterexample(N)
    return F.subframe(range(2 * (N - 1)))


# ---------------------------------------------------------------- random frames


def is_well_conditioned(vectors, ratio: float = ILL_CONDITIONED_RATIO, rank_factor: float | None = None,
                        max_exhaustive: int = 12) -> bool:
    """True unless some column subset has a pivot in the ambiguous band.

    A pivot ratio in ``(rank_tol / 2, ratio)`` means a numerical rank
    decision on that subset could flip under a small change of tolerance.
    Families with more than ``max_exhaustive`` vectors are judged on the
    full column set only.
    """
    A = np.asarray(vectors)
    d, N = A.shape
    if rank_factor is None:
        rank_factor = linalg.rank_tolerance_factor((d, N))
    lo = rank_factor / 2

    def ambiguous(cols) -> bool:
        r = linalg.pivot_ratios(A[:, cols])
        return bool(np.any((r > lo) & (r < ratio)))

    if N > max_exhaustive:
        return not ambiguous(list(range(N)))
    for size in range(2, N + 1):
        for cols in itertools.combinations(range(N), size):
            if ambiguous(list(cols)):
                return False
    return True


def _draw_until(rng, draw, reject: bool, need_spanning: bool, d: int):
    for _ in range(MAX_DRAWS):
        A = draw()
        if need_spanning and linalg.numerical_rank(A) < d:
            continue
        if reject and not is_well_conditioned(A):
            continue
        return A
    raise FrameError(f"no acceptable draw in {MAX_DRAWS} attempts")


def random_frame(
    d: int,
    N: int,
    seed: int = 0,
    *,
    orthonormalize: bool = False,
    reject: bool = True,
    field: str = "real",
) -> Frame:
    """Seeded Gaussian frame of ``N`` vectors in dimension ``d``.

    With ``orthonormalize`` the ``d x N`` matrix is replaced by one with
    orthonormal rows (a Parseval frame; an orthonormal basis when
    ``N == d``).  With ``reject`` draws whose subsets have ambiguous
    numerical rank are discarded and redrawn from the same stream.
    """
    d = _as_int(d, "d")
    N = _as_int(N, "N")
    _require(N >= d >= 1, f"random_frame needs N >= d >= 1, got d={d}, N={N}")
    rng = np.random.default_rng(seed)

    def draw():
        A = rng.standard_normal((d, N))
        if field == "complex":
            A = A + 1j * rng.standard_normal((d, N))
        if orthonormalize:
            Q, R = np.linalg.qr(A.conj().T)
            signs = np.sign(np.real(np.diag(R)))
            signs[signs == 0] = 1.0
            A = (Q * signs).conj().T
        return A

    return Frame(_draw_until(rng, draw, reject, True, d), field)


def random_structured_frame(d: int, N: int, seed: int = 0, *, reject: bool = True) -> Frame:
    """Seeded spanning unit-norm frame with nontrivial linear dependencies.

    Vectors are Gaussian combinations of randomly chosen columns of a
    random Gaussian basis, with occasional (signed) repeats, so small
    subsets are often dependent.  Used to exercise the matroid algorithms
    beyond the general-position case.
    """
    d = _as_int(d, "d")
    N = _as_int(N, "N")
    _require(N >= d >= 1, f"random_structured_frame needs N >= d >= 1, got d={d}, N={N}")
    rng = np.random.default_rng(seed)

    def draw():
        B = rng.standard_normal((d, d))
        cols: list[np.ndarray] = []
        for _ in range(N):
            if cols and rng.random() < 0.25:
                cols.append(cols[int(rng.integers(len(cols)))] * float(rng.choice([-1.0, 1.0])))
                continue
            size = int(rng.integers(1, d + 1))
            support = rng.choice(d, size, replace=False)
            cols.append(B[:, support] @ rng.standard_normal(size))
        A = np.column_stack(cols)
        return A / np.linalg.norm(A, axis=0)

    return Frame(_draw_until(rng, draw, reject, True, d), "real")


def random_projection(m: int, seed: int = 0, rank: int | None = None, aligned: int = 0) -> np.ndarray:
    """Seeded orthogonal projection on ``R^m``.

    The range is spanned by ``aligned`` distinct standard basis vectors
    plus Gaussian vectors up to ``rank`` (drawn uniformly from ``0..m`` when
    ``None``), so ``aligned > 0`` plants exact coordinate vectors in the
    range.
    """
    m = _as_int(m, "m")
    _require(m >= 1, "m must be >= 1")
    rng = np.random.default_rng(seed)
    k = int(rng.integers(0, m + 1)) if rank is None else _as_int(rank, "rank")
    _require(0 <= k <= m, f"rank must lie in 0..{m}")
    aligned = min(_as_int(aligned, "aligned"), k)
    if k == 0:
        return np.zeros((m, m))
    cols = [np.eye(m)[:, i] for i in rng.choice(m, aligned, replace=False)]
    G = np.column_stack(cols + [rng.standard_normal(m) for _ in range(k - aligned)])
    Q, _ = np.linalg.qr(G)
    P = Q @ Q.T
    return (P + P.T) / 2


def projection_frame(m: int, seed: int = 0, rank: int | None = None) -> Frame:
    """The Parseval frame ``(P e_i)`` for the range of :func:`random_projection`."""
    return Frame(random_projection(m, seed, rank), "real")


GALLERY = {
    "phi1": (phi1, ("n",)),
    "phi2": (phi2, ("n",)),
    "phi3": (phi3, ("n",)),
    "phi4": (phi4, ("N", "eps", "M")),
    "dft": (dft_subset_parseval, ("m", "rows")),
    "onbs": (union_of_onbs, ("d", "k", "seed")),
    "notes": (notes_counterexample, ("N",)),
    "random": (random_frame, ("d", "N", "seed")),
    "onb": (onb, ("n",)),
    "projection": (projection_frame, ("m", "seed", "rank")),
}


def build(name: str, **params) -> Frame:
    """Construct a gallery frame by CLI name; unused parameters are ignored."""
    if name not in GALLERY:
        raise FrameError(f"unknown gallery frame {name!r}; choose from {sorted(GALLERY)}")
    fn, names = GALLERY[name]
    kwargs = {}
    for p in names:
        if params.get(p) is None:
            if p in ("seed", "rank"):
                continue
            raise FrameError(f"gallery frame {name!r} needs parameter --{p}")
        kwargs[p] = params[p]
    return fn(**kwargs)
