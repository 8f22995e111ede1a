"""Redundancy function and upper/lower redundancy of a frame.

The redundancy function at a unit vector ``x`` is
``R(x) = sum_i ||P_<phi_i> x||^2 = sum_i |<x, phi_i / ||phi_i||>|^2``,
i.e. the quadratic form of the frame operator of the normalized frame.
Its infimum and supremum over the sphere (the lower and upper
redundancy) are therefore the extreme eigenvalues of that operator and
are computed exactly, not by sampling.

The *alternative* redundancy applies the same construction to the
canonical Parseval frame ``(S^{-1/2} phi_i)``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Union

import numpy as np

from . import linalg
from .errors import DimensionMismatchError, FrameError
from .frames import (
    DEFAULT_TOLERANCES,
    Frame,
    HermitianOperator,
    Tolerances,
    canonical_parseval,
    classify,
    encode_vector,
    frame_operator,
    range_isometry,
    strip_and_normalize,
)

log = logging.getLogger(__name__)

UNIT_TOL = 1e-10
INVARIANCE_TOL = 1e-9
ALT_INVARIANCE_TOL = 1e-7
ADDITIVITY_TOL = 1e-9


def _unit(x, d: int) -> np.ndarray:
    x = np.asarray(x)
    if x.shape != (d,):
        raise DimensionMismatchError(f"point of shape {x.shape} does not match d={d}")
    nrm = np.linalg.norm(x)
    if nrm == 0.0:
        raise FrameError("redundancy is only defined on the unit sphere; got the zero vector")
    if abs(nrm - 1.0) > UNIT_TOL:
        log.info("normalizing evaluation point of norm %.6g", nrm)
        x = x / nrm
    return x


def redundancy_at(frame: Frame, x, tol: Tolerances = DEFAULT_TOLERANCES) -> float:
    """``R(x)`` by direct summation over the zero-stripped, normalized frame.

    ``x`` is rescaled to unit norm if it is off the sphere by more than
    ``1e-10``.
    """
    normalized, _ = strip_and_normalize(frame, tol)
    x = _unit(x, frame.dimension)
    coeffs = linalg.inner(x, normalized.vectors)
    return float(np.sum(np.abs(coeffs) ** 2))


def redundancy_operator(frame: Frame, tol: Tolerances = DEFAULT_TOLERANCES) -> HermitianOperator:
    """Frame operator of the normalized frame (zero vectors removed)."""
    normalized, _ = strip_and_normalize(frame, tol)
    return frame_operator(normalized)


def redundancy_quadratic_form(frame: Frame, x, tol: Tolerances = DEFAULT_TOLERANCES) -> float:
    """``<S_norm x, x>``; agrees with :func:`redundancy_at` on the sphere."""
    x = _unit(x, frame.dimension)
    return redundancy_operator(frame, tol).quadratic_form(x)


@dataclass
class RedundancyReport:
    lower: float
    upper: float
    uniform: bool
    argmin_vector: np.ndarray
    argmax_vector: np.ndarray
    samples: dict = field(default_factory=dict)
    eigenvalues: np.ndarray | None = None
    mode: str = "ambient"
    definition: str = "standard"
    dropped: tuple = ()
    scalar_field: str = "real"

    def as_dict(self) -> dict:
        doc = {
            "definition": self.definition,
            "lower": self.lower,
            "upper": self.upper,
            "uniform": self.uniform,
            "mode": self.mode,
            "dropped": list(self.dropped),
            "argmin_vector": encode_vector(self.argmin_vector, self.scalar_field),
            "argmax_vector": encode_vector(self.argmax_vector, self.scalar_field),
            "samples": dict(self.samples),
            "eigenvalues": [float(v) for v in self.eigenvalues] if self.eigenvalues is not None else None,
        }
        if self.definition == "alternative":
            doc["note"] = "frame bounds of the normalized canonical Parseval frame"
        return doc


def _report_from_normalized(
    frame: Frame,
    normalized: Frame,
    dropped,
    range_restricted: bool,
    definition: str,
    tol: Tolerances,
) -> RedundancyReport:
    S = frame_operator(normalized)
    if range_restricted:
        Q = range_isometry(normalized, tol)
        w, V = S.compress(Q).eigh()
        V = Q @ V
    else:
        w, V = S.eigh()
    lower = max(float(w[0]), 0.0)
    upper = float(w[-1])
    d = frame.dimension
    samples = {}
    for k in range(d):
        e = np.zeros(d, dtype=normalized.vectors.dtype)
        e[k] = 1.0
        samples[f"e{k + 1}"] = float(np.sum(np.abs(linalg.inner(e, normalized.vectors)) ** 2))
    return RedundancyReport(
        lower=lower,
        upper=upper,
        uniform=bool(upper - lower <= tol.uniform * upper),
        argmin_vector=V[:, 0],
        argmax_vector=V[:, -1],
        samples=samples,
        eigenvalues=w,
        mode="range" if range_restricted else "ambient",
        definition=definition,
        dropped=tuple(dropped),
        scalar_field="complex" if np.iscomplexobj(V) else "real",
    )


def redundancy_bounds(
    frame: Frame, range_restricted: bool = False, tol: Tolerances = DEFAULT_TOLERANCES
) -> RedundancyReport:
    """Lower/upper redundancy with extremal unit vectors.

    In ``range_restricted`` mode the normalized frame operator is compressed
    to the span of the vectors first, so a frame for a proper subspace gets
    a positive lower redundancy.
    """
    normalized, dropped = strip_and_normalize(frame, tol)
    return _report_from_normalized(frame, normalized, dropped, range_restricted, "standard", tol)


def is_uniform(frame: Frame, range_restricted: bool = False, tol: Tolerances = DEFAULT_TOLERANCES) -> bool:
    return redundancy_bounds(frame, range_restricted, tol).uniform


def range_canonical_parseval(frame: Frame, tol: Tolerances = DEFAULT_TOLERANCES) -> Frame:
    """Canonical Parseval frame of ``frame`` viewed as a frame for its span."""
    Q = range_isometry(frame, tol)
    coords_field = "complex" if np.iscomplexobj(Q) or frame.field == "complex" else "real"
    coords = Frame(Q.conj().T @ frame.vectors, coords_field)
    parseval = canonical_parseval(coords, tol)
    return Frame(Q @ parseval.vectors, frame.field, frame.labels)


def _canonical_parseval(frame, range_restricted, tol):
    if range_restricted:
        return range_canonical_parseval(frame, tol)
    return canonical_parseval(frame, tol)


def alt_redundancy_at(
    frame: Frame, x, range_restricted: bool = False, tol: Tolerances = DEFAULT_TOLERANCES
) -> float:
    """Redundancy function of the canonical Parseval frame at ``x``."""
    return redundancy_at(_canonical_parseval(frame, range_restricted, tol), x, tol)


def alt_redundancy_bounds(
    frame: Frame, range_restricted: bool = False, tol: Tolerances = DEFAULT_TOLERANCES
) -> RedundancyReport:
    """Upper/lower redundancy of the canonical Parseval frame.

    These are the frame bounds of the normalized canonical Parseval frame.
    Raises :class:`NotSpanningError` for non-spanning input unless
    ``range_restricted`` is set.
    """
    parseval = _canonical_parseval(frame, range_restricted, tol)
    normalized, dropped = strip_and_normalize(parseval, tol)
    return _report_from_normalized(frame, normalized, dropped, range_restricted, "alternative", tol)


def normalized_spectrum(frame: Frame, tol: Tolerances = DEFAULT_TOLERANCES) -> np.ndarray:
    """Sorted eigenvalues of the normalized frame operator."""
    return redundancy_operator(frame, tol).eigenvalues


def alt_normalized_spectrum(frame: Frame, tol: Tolerances = DEFAULT_TOLERANCES) -> np.ndarray:
    return redundancy_operator(canonical_parseval(frame, tol), tol).eigenvalues


# ---------------------------------------------------------------- invariance


@dataclass(frozen=True)
class Unitary:
    matrix: np.ndarray


@dataclass(frozen=True)
class Scaling:
    scalars: np.ndarray


@dataclass(frozen=True)
class Permutation:
    order: tuple


@dataclass(frozen=True)
class Invertible:
    matrix: np.ndarray


Transform = Union[Unitary, Scaling, Permutation, Invertible]


@dataclass
class InvarianceReport:
    kind: str
    definition: str
    before: np.ndarray
    after: np.ndarray
    deviation: float
    tolerance: float

    @property
    def holds(self) -> bool:
        return self.deviation <= self.tolerance

    def as_dict(self) -> dict:
        return {
            "kind": self.kind,
            "definition": self.definition,
            "deviation": self.deviation,
            "tolerance": self.tolerance,
            "holds": self.holds,
        }


def apply_transform(frame: Frame, transform: Transform) -> Frame:
    """Image of ``frame`` under ``transform`` after validating it."""
    d, N = frame.dimension, frame.size
    if isinstance(transform, Unitary):
        U = np.asarray(transform.matrix)
        if U.shape != (d, d) or np.max(np.abs(U.conj().T @ U - np.eye(d))) > 1e-10:
            raise FrameError("transform is not a unitary d x d matrix (tolerance 1e-10)")
        return frame.transformed(U)
    if isinstance(transform, Invertible):
        T = np.asarray(transform.matrix)
        if T.shape != (d, d) or linalg.numerical_rank(T) < d:
            raise FrameError("transform is not an invertible d x d matrix")
        return frame.transformed(T)
    if isinstance(transform, Scaling):
        c = np.asarray(transform.scalars)
        if c.shape != (N,) or np.any(c == 0):
            raise FrameError("scaling needs N nonzero scalars")
        field_ = "complex" if (frame.field == "complex" or np.iscomplexobj(c)) else "real"
        return Frame(frame.vectors * c, field_, frame.labels)
    if isinstance(transform, Permutation):
        order = tuple(int(i) for i in transform.order)
        if sorted(order) != list(range(N)):
            raise FrameError("permutation must reorder 0..N-1")
        return frame.subframe(order)
    raise FrameError(f"unsupported transform {transform!r}")


def check_invariance(
    frame: Frame, transform: Transform, tol: Tolerances = DEFAULT_TOLERANCES
) -> InvarianceReport:
    """Compare normalized-frame spectra before and after ``transform``.

    Unitaries, per-vector scalings and permutations are checked against the
    standard redundancy; invertible operators against the alternative one.
    ``deviation`` is the largest difference between the sorted spectra, so
    it bounds both the lower and the upper redundancy deviation.
    """
    image = apply_transform(frame, transform)
    if isinstance(transform, Invertible):
        before = alt_normalized_spectrum(frame, tol)
        after = alt_normalized_spectrum(image, tol)
        definition, limit = "alternative", ALT_INVARIANCE_TOL
    else:
        before = normalized_spectrum(frame, tol)
        after = normalized_spectrum(image, tol)
        definition, limit = "standard", INVARIANCE_TOL
    deviation = float(np.max(np.abs(before - after))) if before.size else 0.0
    return InvarianceReport(
        kind=type(transform).__name__.lower(),
        definition=definition,
        before=before,
        after=after,
        deviation=deviation,
        tolerance=limit,
    )


# ---------------------------------------------------------------- additivity


@dataclass
class Check:
    name: str
    applicable: bool
    holds: bool
    slack: float | None

    def as_dict(self) -> dict:
        return dict(self.__dict__)


@dataclass
class AdditivityReport:
    first: tuple[float, float]
    second: tuple[float, float]
    union: tuple[float, float]
    checks: list[Check]

    @property
    def holds(self) -> bool:
        return all(c.holds for c in self.checks if c.applicable)

    def as_dict(self) -> dict:
        return {
            "first": list(self.first),
            "second": list(self.second),
            "union": list(self.union),
            "checks": [c.as_dict() for c in self.checks],
            "holds": self.holds,
        }


def _is_onb(frame: Frame, range_restricted: bool, tol: Tolerances) -> bool:
    """Orthonormal basis of the ambient space (or, in range mode, of its span)."""
    flags = classify(frame, range_restricted, tol)
    size = linalg.numerical_rank(frame.vectors, tol.rank) if range_restricted else frame.dimension
    return frame.size == size and flags.orthogonal and flags.unit_norm


def additivity_check(
    frame: Frame,
    other: Frame,
    range_restricted: bool = False,
    tol: Tolerances = DEFAULT_TOLERANCES,
    atol: float = ADDITIVITY_TOL,
) -> AdditivityReport:
    """Sub/superadditivity of the redundancies under the union of two frames.

    Besides the two inequalities, checks the exact ``+1`` shift when
    ``other`` is an orthonormal basis and exact additivity when both frames
    have uniform redundancy.  Slacks are signed so that ``slack >= -atol``
    (inequalities) or ``slack <= atol`` (equalities) means the check holds.
    """
    if frame.dimension != other.dimension:
        raise DimensionMismatchError("frames must live in the same space")
    a = redundancy_bounds(frame, range_restricted, tol)
    b = redundancy_bounds(other, range_restricted, tol)
    u = redundancy_bounds(frame.union(other), range_restricted, tol)

    lower_slack = u.lower - (a.lower + b.lower)
    upper_slack = (a.upper + b.upper) - u.upper
    checks = [
        Check("lower_superadditive", True, lower_slack >= -atol, lower_slack),
        Check("upper_subadditive", True, upper_slack >= -atol, upper_slack),
    ]
    if _is_onb(other, range_restricted, tol):
        dev = max(abs(u.lower - a.lower - 1.0), abs(u.upper - a.upper - 1.0))
        checks.append(Check("onb_plus_one", True, dev <= atol, dev))
    else:
        checks.append(Check("onb_plus_one", False, True, None))
    if a.uniform and b.uniform:
        total = 0.5 * (a.lower + a.upper) + 0.5 * (b.lower + b.upper)
        dev = max(abs(u.lower - total), abs(u.upper - total))
        checks.append(Check("uniform_additive", True, dev <= atol, dev))
    else:
        checks.append(Check("uniform_additive", False, True, None))
    return AdditivityReport(
        first=(a.lower, a.upper),
        second=(b.lower, b.upper),
        union=(u.lower, u.upper),
        checks=checks,
    )
