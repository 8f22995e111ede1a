"""Executable checklist of the redundancy desiderata D0-D7.

:func:`desiderata_audit` evaluates every desideratum on one frame and
returns a :class:`DesiderataAudit` whose entries carry a status
(``pass``, ``fail`` or ``not-applicable``) and a JSON-ready witness.
Randomized witnesses (unitaries, scalings, permutations, companion
frames) are drawn from ``numpy.random.default_rng(seed)``; the seed is
stored with every entry.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import linalg
from .frames import (
    DEFAULT_TOLERANCES,
    Frame,
    Tolerances,
    classify,
    is_orthogonal,
    strip_and_normalize,
)
from .matroid import LinearMatroid, max_disjoint_spanning_sets, min_independent_partition
from .redundancy import (
    Permutation,
    RedundancyReport,
    Scaling,
    Unitary,
    additivity_check,
    check_invariance,
    redundancy_bounds,
)

PASS, FAIL, NA = "pass", "fail", "not-applicable"
INTEGER_SLACK = 1e-9
MATROID_SIZE_LIMIT = 128


@dataclass
class Desideratum:
    id: str
    status: str
    witness: dict
    seed: int | None = None

    def as_dict(self) -> dict:
        return {"id": self.id, "status": self.status, "witness": self.witness, "seed": self.seed}


@dataclass
class DesiderataAudit:
    mode: str
    seed: int
    redundancy: RedundancyReport
    desiderata: list[Desideratum] = field(default_factory=list)

    def __getitem__(self, key: str) -> Desideratum:
        for d in self.desiderata:
            if d.id == key:
                return d
        raise KeyError(key)

    @property
    def passed(self) -> bool:
        return all(d.status != FAIL for d in self.desiderata)

    def as_dict(self) -> dict:
        return {
            "mode": self.mode,
            "seed": self.seed,
            "lower": self.redundancy.lower,
            "upper": self.redundancy.upper,
            "uniform": self.redundancy.uniform,
            "samples": dict(self.redundancy.samples),
            "desiderata": [d.as_dict() for d in self.desiderata],
            "passed": self.passed,
        }


def random_unitary(d: int, rng, complex_field: bool = False) -> np.ndarray:
    A = rng.standard_normal((d, d))
    if complex_field:
        A = A + 1j * rng.standard_normal((d, d))
    Q, R = np.linalg.qr(A)
    phases = np.diag(R) / np.abs(np.diag(R))
    return Q * phases


def ceil_strict(value: float) -> int:
    """``ceil`` that does not round up values within ``1e-9`` of an integer."""
    return math.ceil(value - INTEGER_SLACK)


def floor_strict(value: float) -> int:
    """``floor`` that does not round down values within ``1e-9`` of an integer."""
    return math.floor(value + INTEGER_SLACK)


def _status(ok: bool) -> str:
    return PASS if ok else FAIL


def desiderata_audit(
    frame: Frame,
    seed: int = 0,
    range_restricted: bool | None = None,
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> DesiderataAudit:
    """Run D0-D7 on ``frame``.

    Zero vectors are removed first (D0) and every other check runs on the
    stripped frame.  ``range_restricted=None`` picks range mode exactly when
    the stripped frame does not span the ambient space.
    """
    rng = np.random.default_rng(seed)
    normalized, dropped = strip_and_normalize(frame, tol)
    stripped = frame.subframe([i for i in range(frame.size) if i not in set(dropped)])
    d = frame.dimension
    if range_restricted is None:
        range_restricted = linalg.numerical_rank(normalized.vectors, tol.rank) < d
    mode = "range" if range_restricted else "ambient"
    report = redundancy_bounds(stripped, range_restricted, tol)
    R_lo, R_hi = report.lower, report.upper
    audit = DesiderataAudit(mode=mode, seed=seed, redundancy=report)
    add = audit.desiderata.append

    full = redundancy_bounds(frame, range_restricted, tol)
    same = abs(full.lower - R_lo) <= 1e-12 * max(1.0, R_hi) and abs(full.upper - R_hi) <= 1e-12 * max(1.0, R_hi)
    add(Desideratum("D0", _status(same), {"dropped": list(dropped), "count": len(dropped)}, None))

    flags = classify(stripped, range_restricted, tol)
    if flags.equal_norm and flags.parseval:
        add(Desideratum("D1", _status(report.uniform), {"redundancy": R_hi, "uniform": report.uniform}))
    else:
        add(Desideratum("D1", NA, {"reason": "frame is not equal-norm Parseval"}))

    norm_tight = classify(normalized, range_restricted, tol).tight
    add(Desideratum("D2", _status(report.uniform == norm_tight),
                    {"uniform": report.uniform, "normalized_tight": norm_tight}))

    one = report.uniform and abs(R_hi - 1.0) <= tol.uniform and abs(R_lo - 1.0) <= tol.uniform
    orth = is_orthogonal(stripped, tol)
    add(Desideratum("D2'", _status(one == orth), {"redundancy_one": one, "orthogonal": orth}))

    ordered = 0.0 < R_lo and R_lo <= R_hi * (1.0 + tol.uniform) and math.isfinite(R_hi)
    add(Desideratum("D3", _status(ordered),
                    {"lower": R_lo, "upper": R_hi}))

    # D4: union with an orthonormal basis of the span, and with a random companion frame
    if range_restricted:
        Q = linalg.range_basis(normalized.vectors, tol.rank)
    else:
        Q = np.eye(d)
    complex_field = frame.field == "complex"
    basis = Frame(Q, "complex" if np.iscomplexobj(Q) or complex_field else "real")
    r = Q.shape[1]
    coeffs = rng.standard_normal((r, r + 1))
    if complex_field:
        coeffs = coeffs + 1j * rng.standard_normal((r, r + 1))
    companion = Frame(Q @ coeffs, basis.field)
    with_onb = additivity_check(stripped, basis, range_restricted, tol)
    with_random = additivity_check(stripped, companion, range_restricted, tol)
    add(Desideratum("D4", _status(with_onb.holds and with_random.holds),
                    {"onb": with_onb.as_dict(), "random": with_random.as_dict()}, seed))

    # D5: unitary, per-vector scaling, permutation
    N = stripped.size
    U = random_unitary(d, rng, complex_field)
    scalars = rng.uniform(0.5, 3.0, N) * rng.choice([-1.0, 1.0], N)
    order = tuple(int(i) for i in rng.permutation(N))
    checks = [
        check_invariance(stripped, Unitary(U), tol),
        check_invariance(stripped, Scaling(scalars), tol),
        check_invariance(stripped, Permutation(order), tol),
    ]
    add(Desideratum("D5", _status(all(c.holds for c in checks)),
                    {"checks": [c.as_dict() for c in checks]}, seed))

    if normalized.size > MATROID_SIZE_LIMIT:
        reason = {"reason": f"more than {MATROID_SIZE_LIMIT} vectors"}
        add(Desideratum("D6", NA, reason))
        add(Desideratum("D7", NA, reason))
        return audit

    matroid = LinearMatroid(normalized, tol=tol)
    kept = [i for i in range(frame.size) if i not in set(dropped)]

    def original(parts):
        return [[kept[i] for i in part] for part in parts]

    packing = max_disjoint_spanning_sets(matroid)
    need = floor_strict(R_lo)
    cert = packing.as_dict()
    cert["parts"] = original(packing.sets)
    cert["leftover"] = sorted([kept[i] for i in packing.leftover] + list(dropped))
    add(Desideratum("D6", _status(packing.count >= need), {"required": need, "certificate": cert}))

    partition = min_independent_partition(matroid)
    bound = ceil_strict(R_hi)
    cert = partition.as_dict()
    cert["parts"] = original(partition.parts)
    cert["leftover"] = list(dropped)
    add(Desideratum("D7", _status(partition.count <= bound), {"bound": bound, "certificate": cert}))
    return audit

