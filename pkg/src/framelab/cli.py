"""``framelab`` command-line interface.

Every verb loads one frame (``--input`` file or ``--gallery`` constructor),
runs one analysis and writes a JSON report (CSV for ``truncate --csv``).
Exit status: 0 on success, 1 on domain errors, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import replace
from datetime import datetime, timezone

import numpy as np

from . import __version__, gallery
from .desiderata import desiderata_audit
from .errors import FrameError
from .frames import (
    DEFAULT_TOLERANCES,
    Frame,
    classify,
    dump_frame,
    frame_bounds,
    frame_to_dict,
    load_frame,
    strip_and_normalize,
)
from .linalg import numerical_rank
from .matroid import (
    LinearMatroid,
    duality_sweep,
    max_disjoint_spanning_sets,
    min_independent_partition,
    projection_duality_check,
)
from .redundancy import alt_redundancy_bounds, redundancy_bounds
from .truncation import FAMILIES, run_truncation_study

VERBS = ("analyze", "redundancy", "partition", "spanning", "desiderata", "duality", "gallery", "truncate")
DUALITY_EXHAUSTIVE_LIMIT = 12


class UsageError(Exception):
    pass


def _int_list(text: str) -> list[int]:
    """Parse ``"0,1,2"``, ``"0-3"`` (inclusive) or a mix such as ``"0-2,5"``."""
    out: list[int] = []
    for chunk in text.split(","):
        chunk = chunk.strip()
        if not chunk:
            continue
        if "-" in chunk:
            lo, hi = chunk.split("-", 1)
            out.extend(range(int(lo), int(hi) + 1))
        else:
            out.append(int(chunk))
    return out


def _int_list_arg(text: str) -> list[int]:
    try:
        return _int_list(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad index list {text!r}") from exc


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    src = common.add_argument_group("input")
    src.add_argument("--gallery", metavar="NAME", help="construct a gallery frame (or family for truncate)")
    src.add_argument("--input", metavar="PATH", help="read a JSON frame file")
    params = common.add_argument_group("gallery parameters")
    params.add_argument("--n", type=int)
    params.add_argument("--N", type=int)
    params.add_argument("--eps", type=float)
    params.add_argument("--M", type=int)
    params.add_argument("--m", type=int)
    params.add_argument("--rows", type=_int_list_arg, help="DFT row set, e.g. 0-3 or 0,2,5")
    params.add_argument("--d", type=int)
    params.add_argument("--k", type=int)
    params.add_argument("--rank", type=int, help="rank of a random projection")
    params.add_argument("--seed", type=int, default=0)
    params.add_argument("--ambient", action="store_true", help="dft: embed as P e_k in C^m")
    out = common.add_argument_group("output and tolerances")
    out.add_argument("--output", metavar="PATH")
    out.add_argument("--tol-rank", type=float, metavar="X", help="relative rank tolerance")
    out.add_argument("--tol-tight", type=float, metavar="X", help="relative tightness/uniformity tolerance")
    out.add_argument("--range-restricted", action="store_true", help="work on the span of the vectors")
    out.add_argument("--no-timestamp", action="store_true")

    parser = argparse.ArgumentParser(prog="framelab", description="Redundancy of finite frames.")
    parser.add_argument("--version", action="version", version=f"framelab {__version__}")
    sub = parser.add_subparsers(dest="verb", required=True, metavar="VERB")
    helps = {
        "analyze": "frame operator bounds and structural flags",
        "redundancy": "upper/lower redundancy (standard and canonical-Parseval)",
        "partition": "fewest linearly independent sets",
        "spanning": "most disjoint spanning sets",
        "desiderata": "audit of desiderata D0-D7",
        "duality": "spanning/independence duality for a Parseval frame's Gram projection",
        "gallery": "list gallery frames or emit one as a frame file",
        "truncate": "redundancy along increasing truncations of a family",
    }
    for verb in VERBS:
        p = sub.add_parser(verb, parents=[common], help=helps[verb])
        if verb == "gallery":
            p.add_argument("--emit", action="store_true", help="print the frame file only")
        if verb == "duality":
            p.add_argument("--subset", type=_int_list_arg, help="check a single index set J")
        if verb == "truncate":
            p.add_argument("--sizes", type=_int_list_arg, required=True)
            p.add_argument("--extra", type=int, help="phi4: M = N + extra (default 4)")
            p.add_argument("--r", type=float, help="dft: |E| = r * m (default 0.5)")
            p.add_argument("--csv", action="store_true")
    return parser


def _tolerances(args):
    tol = DEFAULT_TOLERANCES
    if args.tol_rank is not None:
        tol = replace(tol, rank=args.tol_rank)
    if args.tol_tight is not None:
        tol = replace(tol, tight=args.tol_tight, uniform=args.tol_tight)
    return tol


GALLERY_PARAMS = ("n", "N", "eps", "M", "m", "rows", "d", "k", "seed", "rank")


def _gallery_params(args) -> dict:
    return {p: getattr(args, p) for p in GALLERY_PARAMS if getattr(args, p, None) is not None}


def _load(args) -> tuple[Frame, dict]:
    if (args.gallery is None) == (args.input is None):
        raise UsageError("exactly one of --gallery and --input is required")
    if args.input is not None:
        try:
            with open(args.input, "rb") as fh:
                data = fh.read()
        except OSError as exc:
            raise UsageError(f"cannot read {args.input}: {exc}") from exc
        return load_frame(data), {"input": args.input}
    params = _gallery_params(args)
    try:
        if args.gallery == "dft" and args.ambient:
            frame = gallery.dft_subset_parseval(args.m, args.rows or [], ambient=True)
        else:
            frame = gallery.build(args.gallery, **params)
    except (FrameError, TypeError) as exc:
        raise UsageError(f"gallery {args.gallery!r}: {exc}") from exc
    info = {"gallery": args.gallery, **params}
    if args.ambient:
        info["ambient"] = True
    return frame, info


def _summary(frame: Frame) -> dict:
    return {"dimension": frame.dimension, "vectors": frame.size, "field": frame.field}


def _map_parts(parts, kept):
    return [[kept[i] for i in part] for part in parts]


def _matroid_for(frame, tol):
    normalized, dropped = strip_and_normalize(frame, tol)
    kept = [i for i in range(frame.size) if i not in set(dropped)]
    return LinearMatroid(normalized, tol=tol), kept, list(dropped)


def cmd_analyze(args, frame, tol):
    normalized, dropped = strip_and_normalize(frame, tol)
    A, B = frame_bounds(frame, tol=tol)
    Ar, Br = frame_bounds(frame, range_restricted=True, tol=tol)
    return {
        **_summary(frame),
        "rank": numerical_rank(frame.vectors, tol.rank),
        "norms": [float(v) for v in frame.norms],
        "dropped": list(dropped),
        "bounds": {"lower": A, "upper": B},
        "range_bounds": {"lower": Ar, "upper": Br},
        "flags": classify(frame, tol=tol).as_dict(),
        "range_flags": classify(frame, range_restricted=True, tol=tol).as_dict(),
        "redundancy": redundancy_bounds(frame, args.range_restricted, tol).as_dict(),
    }


def cmd_redundancy(args, frame, tol):
    doc = {**_summary(frame), **redundancy_bounds(frame, args.range_restricted, tol).as_dict()}
    try:
        doc["alternative"] = alt_redundancy_bounds(frame, args.range_restricted, tol).as_dict()
    except FrameError as exc:
        doc["alternative"] = None
        doc["alternative_error"] = str(exc)
    return doc


def cmd_partition(args, frame, tol):
    matroid, kept, dropped = _matroid_for(frame, tol)
    part = min_independent_partition(matroid)
    doc = part.as_dict()
    doc["parts"] = _map_parts(part.parts, kept)
    doc["dropped"] = dropped
    return {**_summary(frame), **doc}


def cmd_spanning(args, frame, tol):
    matroid, kept, dropped = _matroid_for(frame, tol)
    packing = max_disjoint_spanning_sets(matroid)
    doc = packing.as_dict()
    doc["parts"] = _map_parts(packing.sets, kept)
    doc["leftover"] = sorted([kept[i] for i in packing.leftover] + dropped)
    doc["dropped"] = dropped
    return {**_summary(frame), **doc}


def cmd_desiderata(args, frame, tol):
    audit = desiderata_audit(frame, seed=args.seed, range_restricted=True if args.range_restricted else None, tol=tol)
    return {**_summary(frame), **audit.as_dict()}


def cmd_duality(args, frame, tol):
    if not classify(frame, range_restricted=True, tol=tol).parseval:
        raise FrameError("duality needs a Parseval frame (for its span); its Gram matrix is then a projection")
    G = frame.vectors.conj().T @ frame.vectors
    G = (G + G.conj().T) / 2
    m = frame.size
    if args.subset is not None:
        res = projection_duality_check(m, G, args.subset)
        return {**_summary(frame), "checks": 1, "violations": int(not res.holds),
                "corollary_violations": int(not res.corollary_holds), "results": [res.as_dict()]}
    if m > DUALITY_EXHAUSTIVE_LIMIT:
        raise UsageError(f"exhaustive sweep limited to N <= {DUALITY_EXHAUSTIVE_LIMIT}; pass --subset")
    results = duality_sweep(G)
    bad = [r.as_dict() for r in results if not (r.holds and r.corollary_holds)]
    return {
        **_summary(frame),
        "checks": len(results),
        "violations": sum(not r.holds for r in results),
        "corollary_violations": sum(not r.corollary_holds for r in results),
        "failures": bad,
    }


def cmd_gallery(args, frame, tol):
    return {**_summary(frame), "flags": classify(frame, range_restricted=True, tol=tol).as_dict(),
            "frame": frame_to_dict(frame)}


def _envelope(args, verb, info, tol, result) -> dict:
    doc = {
        "tool": "framelab",
        "version": __version__,
        "command": verb,
        "parameters": info,
        "tolerances": tol.as_dict(),
        "seed": args.seed,
    }
    if not args.no_timestamp:
        doc["timestamp"] = datetime.now(timezone.utc).isoformat()
    doc.update(result)
    return doc


def _write(args, text: str) -> None:
    if not text.endswith("\n"):
        text += "\n"
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _run(args) -> int:
    tol = _tolerances(args)
    verb = args.verb

    if verb == "gallery" and args.gallery is None and args.input is None:
        listing = {name: list(entry[1]) for name, entry in gallery.GALLERY.items()}
        _write(args, json.dumps(_envelope(args, verb, {}, tol, {"gallery": listing}), indent=2))
        return 0

    if verb == "truncate":
        if args.gallery is None or args.input is not None:
            raise UsageError("truncate needs --gallery FAMILY")
        if args.gallery not in FAMILIES:
            raise UsageError(f"unknown family {args.gallery!r}; choose from {sorted(FAMILIES)}")
        fixed = {}
        for name, value in (("eps", args.eps), ("extra", args.extra), ("r", args.r), ("k", args.k)):
            if value is not None:
                fixed[name] = value
        if args.gallery == "onbs":
            fixed["seed"] = args.seed
        try:
            study = run_truncation_study(args.gallery, args.sizes, tol=tol,
                                         range_restricted=args.range_restricted, **fixed)
        except FrameError as exc:
            raise UsageError(str(exc)) from exc
        if args.csv:
            _write(args, study.to_csv())
        else:
            info = {"family": args.gallery, "sizes": args.sizes, **fixed}
            if args.range_restricted:
                info["range_restricted"] = True
            result = study.as_dict()
            del result["parameters"]
            _write(args, json.dumps(_envelope(args, verb, info, tol, result), indent=2))
        return 0

    frame, info = _load(args)
    if verb == "gallery" and args.emit:
        _write(args, dump_frame(frame))
        return 0
    handler = {
        "analyze": cmd_analyze,
        "redundancy": cmd_redundancy,
        "partition": cmd_partition,
        "spanning": cmd_spanning,
        "desiderata": cmd_desiderata,
        "duality": cmd_duality,
        "gallery": cmd_gallery,
    }[verb]
    if args.range_restricted:
        info["range_restricted"] = True
    result = handler(args, frame, tol)
    _write(args, json.dumps(_envelope(args, verb, info, tol, result), indent=2, default=_json_default))
    return 0


def _json_default(obj):
    if isinstance(obj, np.generic):
        return obj.item()
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _run(args)
    except UsageError as exc:
        print(f"framelab: usage error: {exc}", file=sys.stderr)
        return 2
    except FrameError as exc:
        print(f"framelab: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
