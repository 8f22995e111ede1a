"""Finite frames and their basic operators.

A :class:`Frame` is an ordered family of ``N`` vectors in ``R^d`` or
``C^d`` stored as the columns of a ``d x N`` synthesis matrix.  Inner
products are linear in the first slot and conjugate-linear in the second,
so the analysis operator maps ``x`` to ``(<x, phi_i>)_i``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

import numpy as np

from . import linalg
from .errors import (
    DimensionMismatchError,
    FrameError,
    FrameFormatError,
    NotSpanningError,
    ZeroFrameError,
)

FIELDS = ("real", "complex")


@dataclass(frozen=True)
class Tolerances:
    """Numerical thresholds behind every yes/no decision.

    ``zero`` is relative to the largest vector norm; ``rank`` is relative
    to the leading pivot and ``None`` selects ``max(d, N) * eps``.
    """

    zero: float = 1e-12
    zero_floor: float = 1e-300
    orth: float = 1e-8
    tight: float = 1e-8
    parseval: float = 1e-8
    equal_norm: float = 1e-8
    uniform: float = 1e-8
    rank: float | None = None

    def as_dict(self) -> dict:
        return {
            "zero": self.zero,
            "zero_floor": self.zero_floor,
            "orth": self.orth,
            "tight": self.tight,
            "parseval": self.parseval,
            "equal_norm": self.equal_norm,
            "uniform": self.uniform,
            "rank": self.rank,
        }


DEFAULT_TOLERANCES = Tolerances()


@dataclass(frozen=True, eq=False)
class Frame:
    """Ordered family of vectors; ``vectors[:, i]`` is the i-th frame vector."""

    vectors: np.ndarray
    field: str = "real"
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        if self.field not in FIELDS:
            raise FrameError(f"unknown scalar field {self.field!r}")
        dtype = np.complex128 if self.field == "complex" else np.float64
        arr = np.asarray(self.vectors)
        if self.field == "real" and np.iscomplexobj(arr):
            if np.any(arr.imag != 0):
                raise FrameError("complex entries in a real frame")
            arr = arr.real
        arr = np.array(arr, dtype=dtype)
        if arr.ndim != 2 or arr.shape[0] < 1:
            raise DimensionMismatchError("frame vectors must form a d x N array with d >= 1")
        if arr.shape[1] < 1:
            raise FrameError("a frame needs at least one vector")
        if not np.all(np.isfinite(arr)):
            raise FrameError("frame vectors must have finite entries")
        arr.setflags(write=False)
        object.__setattr__(self, "vectors", arr)
        if self.labels is not None:
            labels = tuple(str(s) for s in self.labels)
            if len(labels) != arr.shape[1]:
                raise DimensionMismatchError("one label per vector required")
            object.__setattr__(self, "labels", labels)

    @classmethod
    def from_vectors(cls, vectors: Sequence, field: str | None = None, labels=None) -> "Frame":
        """Build a frame from a list of vectors (each of length ``d``)."""
        vecs = [np.asarray(v) for v in vectors]
        if not vecs:
            raise FrameError("a frame needs at least one vector")
        lengths = {v.shape for v in vecs}
        if len(lengths) != 1 or vecs[0].ndim != 1:
            raise DimensionMismatchError(f"vectors have differing shapes {sorted(lengths)}")
        if field is None:
            field = "complex" if any(np.iscomplexobj(v) for v in vecs) else "real"
        return cls(np.column_stack(vecs), field, labels)

    @property
    def dimension(self) -> int:
        return self.vectors.shape[0]

    @property
    def size(self) -> int:
        return self.vectors.shape[1]

    def __len__(self) -> int:
        return self.size

    def __getitem__(self, i: int) -> np.ndarray:
        return self.vectors[:, i]

    @property
    def norms(self) -> np.ndarray:
        return np.linalg.norm(self.vectors, axis=0)

    def subframe(self, indices) -> "Frame":
        idx = list(indices)
        labels = None if self.labels is None else [self.labels[i] for i in idx]
        return Frame(self.vectors[:, idx], self.field, labels)

    def union(self, other: "Frame") -> "Frame":
        """Concatenation of two frames for the same space (self first)."""
        if other.dimension != self.dimension:
            raise DimensionMismatchError(
                f"cannot join frames of dimension {self.dimension} and {other.dimension}"
            )
        field_ = "complex" if "complex" in (self.field, other.field) else "real"
        labels = None
        if self.labels is not None and other.labels is not None:
            labels = self.labels + other.labels
        return Frame(np.hstack([self.vectors, other.vectors]), field_, labels)

    def transformed(self, T) -> "Frame":
        """The frame ``(T phi_i)_i`` for a ``d x d`` matrix ``T``."""
        T = np.asarray(T)
        if T.shape != (self.dimension, self.dimension):
            raise DimensionMismatchError(f"operator shape {T.shape} does not match d={self.dimension}")
        field_ = "complex" if (self.field == "complex" or np.iscomplexobj(T)) else "real"
        return Frame(T @ self.vectors, field_, self.labels)

    def __repr__(self) -> str:
        return f"Frame(d={self.dimension}, N={self.size}, field={self.field!r})"


@dataclass(frozen=True, eq=False)
class HermitianOperator:
    """Self-adjoint ``d x d`` matrix with a cached Jacobi eigen-decomposition."""

    matrix: np.ndarray
    _eig: list = field(default_factory=list, init=False, repr=False)

    def __post_init__(self):
        M = np.array(self.matrix)
        if M.ndim != 2 or M.shape[0] != M.shape[1]:
            raise DimensionMismatchError("Hermitian operator must be square")
        if not linalg.is_hermitian(M):
            raise FrameError("matrix is not self-adjoint within 1e-12 relative")
        M.setflags(write=False)
        object.__setattr__(self, "matrix", M)

    @property
    def dimension(self) -> int:
        return self.matrix.shape[0]

    def eigh(self):
        """Ascending eigenvalues and eigenvectors (columns)."""
        if not self._eig:
            self._eig.append(linalg.jacobi_eigh(self.matrix))
        return self._eig[0]

    @property
    def eigenvalues(self) -> np.ndarray:
        return self.eigh()[0]

    def quadratic_form(self, x) -> float:
        """``<M x, x>`` (real for Hermitian ``M``)."""
        x = np.asarray(x)
        return float(np.real(linalg.inner(self.matrix @ x, x)))

    def compress(self, Q) -> "HermitianOperator":
        """``Q^* M Q`` for an isometry ``Q`` (restriction to ``range(Q)``)."""
        Q = np.asarray(Q)
        C = Q.conj().T @ self.matrix @ Q
        return HermitianOperator((C + C.conj().T) / 2)


class FrameBounds(NamedTuple):
    lower: float
    upper: float


# ---------------------------------------------------------------- serialization


def _decode_entry(value, field_):
    if field_ == "complex":
        if isinstance(value, (int, float)) and not isinstance(value, bool):
            return complex(value, 0.0)
        if (
            isinstance(value, list)
            and len(value) == 2
            and all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in value)
        ):
            return complex(value[0], value[1])
        raise FrameFormatError(f"complex entries must be [re, im] pairs, got {value!r}")
    if isinstance(value, (int, float)) and not isinstance(value, bool):
        return float(value)
    raise FrameFormatError(f"real entries must be numbers, got {value!r}")


def frame_from_dict(doc: dict) -> Frame:
    if not isinstance(doc, dict):
        raise FrameFormatError("frame document must be a JSON object")
    field_ = doc.get("field")
    if field_ not in FIELDS:
        raise FrameFormatError(f"'field' must be one of {FIELDS}, got {field_!r}")
    dim = doc.get("dimension")
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
        raise FrameFormatError(f"'dimension' must be a positive integer, got {dim!r}")
    vectors = doc.get("vectors")
    if not isinstance(vectors, list):
        raise FrameFormatError("'vectors' must be a list")
    if not vectors:
        raise FrameFormatError("'vectors' is empty")
    decoded = []
    for i, vec in enumerate(vectors):
        if not isinstance(vec, list):
            raise FrameFormatError(f"vector {i} is not a list")
        if len(vec) != dim:
            raise DimensionMismatchError(f"vector {i} has length {len(vec)}, expected dimension {dim}")
        decoded.append([_decode_entry(v, field_) for v in vec])
    labels = doc.get("labels")
    if labels is not None and (not isinstance(labels, list) or len(labels) != len(vectors)):
        raise FrameFormatError("'labels' must be a list with one entry per vector")
    dtype = np.complex128 if field_ == "complex" else np.float64
    return Frame(np.array(decoded, dtype=dtype).T, field_, labels)


def load_frame(document) -> Frame:
    """Parse a JSON frame document (``bytes`` or ``str``).

    No normalization or zero-stripping is applied.
    """
    if isinstance(document, (bytes, bytearray)):
        document = document.decode("utf-8")
    try:
        doc = json.loads(document)
    except json.JSONDecodeError as exc:
        raise FrameFormatError(f"invalid JSON: {exc}") from exc
    return frame_from_dict(doc)


def encode_vector(v, field_: str) -> list:
    if field_ == "complex":
        return [[float(z.real), float(z.imag)] for z in np.asarray(v, dtype=np.complex128)]
    return [float(z) for z in np.real(v)]


def frame_to_dict(frame: Frame) -> dict:
    doc = {
        "field": frame.field,
        "dimension": frame.dimension,
        "vectors": [encode_vector(frame[i], frame.field) for i in range(frame.size)],
    }
    if frame.labels is not None:
        doc["labels"] = list(frame.labels)
    return doc


def dump_frame(frame: Frame, indent: int | None = 2) -> str:
    """Serialize to the JSON frame format; floats round-trip exactly."""
    return json.dumps(frame_to_dict(frame), indent=indent)


# ---------------------------------------------------------------- operators


def _check_vector(frame: Frame, x) -> np.ndarray:
    x = np.asarray(x)
    if x.shape != (frame.dimension,):
        raise DimensionMismatchError(f"vector of shape {x.shape} does not match d={frame.dimension}")
    return x


def analysis(frame: Frame, x) -> np.ndarray:
    """Frame coefficients ``(<x, phi_i>)_i``."""
    x = _check_vector(frame, x)
    return linalg.inner(x, frame.vectors)


def synthesis(frame: Frame, c) -> np.ndarray:
    """``sum_i c_i phi_i``."""
    c = np.asarray(c)
    if c.shape != (frame.size,):
        raise DimensionMismatchError(f"coefficient sequence of length {c.shape} for N={frame.size}")
    return frame.vectors @ c


def frame_operator(frame: Frame) -> HermitianOperator:
    """``S = sum_i phi_i phi_i^*``, i.e. ``x -> sum_i <x, phi_i> phi_i``."""
    F = frame.vectors
    S = F @ F.conj().T
    return HermitianOperator((S + S.conj().T) / 2)


def range_isometry(frame: Frame, tol: Tolerances = DEFAULT_TOLERANCES):
    """Orthonormal basis of ``span(phi_i)`` (as columns)."""
    return linalg.range_basis(frame.vectors, tol.rank)


def frame_bounds(
    frame: Frame, range_restricted: bool = False, tol: Tolerances = DEFAULT_TOLERANCES
) -> FrameBounds:
    """Optimal frame bounds, the extreme eigenvalues of the frame operator.

    With ``range_restricted`` the operator is first compressed to the span
    of the vectors, so ``lower`` is the smallest nonzero eigenvalue; this is
    the right notion for a frame of a proper subspace.
    """
    S = frame_operator(frame)
    if range_restricted:
        Q = range_isometry(frame, tol)
        if Q.shape[1] == 0:
            return FrameBounds(0.0, 0.0)
        S = S.compress(Q)
    w = S.eigenvalues
    return FrameBounds(max(float(w[0]), 0.0), float(w[-1]))


def _spanning_eigh(frame: Frame, tol: Tolerances):
    w, V = frame_operator(frame).eigh()
    if w[-1] <= 0.0 or w[0] <= tol.zero * w[-1]:
        raise NotSpanningError(
            f"frame operator is singular (eigenvalues {w[0]:.3e} .. {w[-1]:.3e}); "
            "the vectors do not span the space"
        )
    return w, V


def canonical_dual(frame: Frame, tol: Tolerances = DEFAULT_TOLERANCES) -> Frame:
    """``(S^{-1} phi_i)_i``."""
    w, V = _spanning_eigh(frame, tol)
    S_inv = (V * (1.0 / w)) @ V.conj().T
    return Frame(S_inv @ frame.vectors, frame.field, frame.labels)


def reconstruct(frame: Frame, x, tol: Tolerances = DEFAULT_TOLERANCES) -> np.ndarray:
    """``sum_i <x, S^{-1} phi_i> phi_i``, which returns ``x`` for any frame."""
    x = _check_vector(frame, x)
    dual = canonical_dual(frame, tol)
    return synthesis(frame, analysis(dual, x))


def canonical_parseval(frame: Frame, tol: Tolerances = DEFAULT_TOLERANCES) -> Frame:
    """``(S^{-1/2} phi_i)_i`` via the Hermitian eigen-decomposition of S.

    For an ill-conditioned S the first pass is only Parseval to about
    ``cond(S) * eps``.  One more pass with the (well-conditioned) frame
    operator of the result fixes that: the correction is a near-identity
    unitary, so the output stays the canonical Parseval frame up to the
    first-pass error while its frame operator is the identity to rounding.
    """
    w, V = _spanning_eigh(frame, tol)
    vectors = linalg.inverse_sqrt_psd(w, V) @ frame.vectors
    w, V = linalg.jacobi_eigh(vectors @ vectors.conj().T)
    vectors = linalg.inverse_sqrt_psd(w, V) @ vectors
    return Frame(vectors, frame.field, frame.labels)


def zero_threshold(frame: Frame, tol: Tolerances = DEFAULT_TOLERANCES) -> float:
    return max(tol.zero * float(np.max(frame.norms)), tol.zero_floor)


def strip_and_normalize(frame: Frame, tol: Tolerances = DEFAULT_TOLERANCES):
    """Drop (numerically) zero vectors and scale the rest to unit norm.

    Returns
    -------
    normalized : Frame
    dropped : tuple of int
        Zero-based positions of the removed vectors.
    """
    norms = frame.norms
    if np.max(norms) <= tol.zero_floor:
        raise ZeroFrameError("every frame vector is zero")
    keep = norms > zero_threshold(frame, tol)
    dropped = tuple(int(i) for i in np.flatnonzero(~keep))
    kept = np.flatnonzero(keep)
    labels = None if frame.labels is None else [frame.labels[i] for i in kept]
    normalized = Frame(frame.vectors[:, kept] / norms[kept], frame.field, labels)
    return normalized, dropped


@dataclass(frozen=True)
class FrameFlags:
    spanning: bool
    tight: bool
    parseval: bool
    equal_norm: bool
    unit_norm: bool
    orthogonal: bool

    def as_dict(self) -> dict:
        return dict(self.__dict__)


def is_orthogonal(frame: Frame, tol: Tolerances = DEFAULT_TOLERANCES) -> bool:
    """Pairwise orthogonal with no zero vectors (parallel duplicates fail)."""
    norms = frame.norms
    if np.any(norms <= zero_threshold(frame, tol)):
        return False
    G = np.abs(frame.vectors.conj().T @ frame.vectors)
    scale = np.outer(norms, norms)
    np.fill_diagonal(G, 0.0)
    return bool(np.all(G <= tol.orth * scale))


def classify(
    frame: Frame, range_restricted: bool = False, tol: Tolerances = DEFAULT_TOLERANCES
) -> FrameFlags:
    """Structural flags of a frame under the tolerances in ``tol``.

    ``spanning`` means spanning the ambient space, or, with
    ``range_restricted``, having a nonzero span; tightness and Parseval are
    then judged on that span.
    """
    rank = linalg.numerical_rank(frame.vectors, tol.rank)
    spanning = rank >= 1 if range_restricted else rank == frame.dimension
    A, B = frame_bounds(frame, range_restricted=range_restricted, tol=tol)
    tight = spanning and B > 0 and (B - A) <= tol.tight * B
    parseval = spanning and abs(A - 1.0) <= tol.parseval and abs(B - 1.0) <= tol.parseval
    norms = frame.norms
    nmin, nmax = float(np.min(norms)), float(np.max(norms))
    equal_norm = nmin > 0 and nmax / nmin <= 1.0 + tol.equal_norm
    unit_norm = equal_norm and abs(nmax - 1.0) <= tol.equal_norm and abs(nmin - 1.0) <= tol.equal_norm
    return FrameFlags(
        spanning=bool(spanning),
        tight=bool(tight),
        parseval=bool(parseval),
        equal_norm=bool(equal_norm),
        unit_norm=bool(unit_norm),
        orthogonal=is_orthogonal(frame, tol),
    )
