"""Redundancy along increasing truncations of infinite frame families.

A study evaluates one gallery family at a sequence of sizes and records
lower/upper redundancy, the alternative (canonical Parseval) redundancy
when the frame spans, and the partition/packing counts.  The divergence
flag is a heuristic only: it fires when the upper redundancy grows by a
factor of at least ``DIVERGENCE_RATIO`` between every pair of
consecutive sizes.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field

from . import gallery
from .errors import FrameError
from .frames import DEFAULT_TOLERANCES, Tolerances, strip_and_normalize
from .matroid import LinearMatroid, max_disjoint_spanning_sets, min_independent_partition
from .redundancy import alt_redundancy_bounds, redundancy_bounds

DIVERGENCE_RATIO = 1.5
MATROID_LIMIT = 64


def _phi4(size, eps=0.3, extra=4):
    return gallery.phi4(size, eps, size + extra)


def _dft(size, r=0.5):
    count = max(1, round(r * size))
    return gallery.dft_subset_parseval(size, range(count))


FAMILIES = {
    "phi1": (gallery.phi1, "n"),
    "phi2": (gallery.phi2, "n"),
    "phi4": (_phi4, "N"),
    "dft": (_dft, "m"),
    "notes": (gallery.notes_counterexample, "N"),
    "onbs": (lambda size, k=2, seed=0: gallery.union_of_onbs(size, k, seed), "d"),
}


@dataclass
class TruncationRow:
    size: int
    dimension: int
    vectors: int
    r_lower: float
    r_upper: float
    uniform: bool
    alt_lower: float | None
    alt_upper: float | None
    partition: int | None
    packing: int | None

    @property
    def flags(self) -> list[str]:
        out = []
        if self.uniform:
            out.append("uniform")
        if self.partition is None:
            out.append("matroid-skipped")
        return out

    def as_dict(self) -> dict:
        doc = dict(self.__dict__)
        doc["partition"] = "skipped" if self.partition is None else self.partition
        doc["packing"] = "skipped" if self.packing is None else self.packing
        doc["flags"] = self.flags
        return doc


@dataclass
class TruncationStudy:
    family: str
    parameters: dict
    sizes: list[int]
    rows: list[TruncationRow] = field(default_factory=list)
    partial: bool = False
    error: str | None = None

    @property
    def upper_deltas(self) -> list[float]:
        return [b.r_upper - a.r_upper for a, b in zip(self.rows, self.rows[1:])]

    @property
    def lower_deltas(self) -> list[float]:
        return [b.r_lower - a.r_lower for a, b in zip(self.rows, self.rows[1:])]

    @property
    def upper_increasing(self) -> bool:
        return all(delta > 0 for delta in self.upper_deltas)

    @property
    def alt_upper_increasing(self) -> bool:
        alts = [row.alt_upper for row in self.rows]
        if any(a is None for a in alts):
            return False
        return all(b > a for a, b in zip(alts, alts[1:]))

    @property
    def apparently_divergent(self) -> bool:
        if len(self.rows) < 2:
            return False
        return all(b.r_upper >= DIVERGENCE_RATIO * a.r_upper for a, b in zip(self.rows, self.rows[1:]))

    def diagnostics(self) -> dict:
        return {
            "upper_deltas": self.upper_deltas,
            "lower_deltas": self.lower_deltas,
            "upper_increasing": self.upper_increasing,
            "alt_upper_increasing": self.alt_upper_increasing,
            "apparently_divergent": self.apparently_divergent,
            "divergence_rule": f"heuristic: R+ ratio >= {DIVERGENCE_RATIO} between all consecutive sizes",
        }

    def as_dict(self) -> dict:
        return {
            "family": self.family,
            "parameters": dict(self.parameters),
            "sizes": list(self.sizes),
            "rows": [row.as_dict() for row in self.rows],
            "diagnostics": self.diagnostics(),
            "partial": self.partial,
            "error": self.error,
        }

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["size", "r_lower", "r_upper", "partition", "packing", "flags"])
        for row in self.rows:
            d = row.as_dict()
            writer.writerow([row.size, repr(row.r_lower), repr(row.r_upper), d["partition"], d["packing"],
                             ";".join(row.flags)])
        return buf.getvalue()


def _row(size, frame, tol, range_restricted) -> TruncationRow:
    rep = redundancy_bounds(frame, range_restricted, tol)
    try:
        alt = alt_redundancy_bounds(frame, range_restricted, tol)
        alt_lower, alt_upper = alt.lower, alt.upper
    except FrameError:
        alt_lower = alt_upper = None
    normalized, _ = strip_and_normalize(frame, tol)
    partition = packing = None
    if normalized.size <= MATROID_LIMIT:
        matroid = LinearMatroid(normalized, tol=tol)
        partition = min_independent_partition(matroid).count
        packing = max_disjoint_spanning_sets(matroid).count
    return TruncationRow(
        size=size,
        dimension=frame.dimension,
        vectors=frame.size,
        r_lower=rep.lower,
        r_upper=rep.upper,
        uniform=rep.uniform,
        alt_lower=alt_lower,
        alt_upper=alt_upper,
        partition=partition,
        packing=packing,
    )


def run_truncation_study(
    family: str,
    sizes,
    tol: Tolerances = DEFAULT_TOLERANCES,
    range_restricted: bool = False,
    **params,
) -> TruncationStudy:
    """Evaluate ``family`` at every size in ``sizes`` (strictly increasing).

    ``params`` are the family's fixed parameters (``eps``/``extra`` for
    phi4, ``r`` for dft, ``k``/``seed`` for onbs).  A constructor failure
    stops the study; rows computed so far are kept and ``partial`` is set.
    """
    if family not in FAMILIES:
        raise FrameError(f"unknown family {family!r}; choose from {sorted(FAMILIES)}")
    sizes = [int(s) for s in sizes]
    if not sizes:
        raise FrameError("at least one size is required")
    if any(b <= a for a, b in zip(sizes, sizes[1:])):
        raise FrameError("sizes must be strictly increasing")
    constructor, _ = FAMILIES[family]
    study = TruncationStudy(family, dict(params), sizes)
    for size in sizes:
        try:
            frame = constructor(size, **params)
        except (FrameError, TypeError) as exc:
            study.partial = True
            study.error = f"size {size}: {exc}"
            break
        study.rows.append(_row(size, frame, tol, range_restricted))
    return study
