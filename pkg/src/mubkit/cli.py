"""Command-line entry point: construct, verify, search, moment, geometry.

Exit codes: 0 every check passed, 1 some check failed, 2 invalid input.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
import time
from pathlib import Path

import numpy as np

from mubkit import classes as cls_mod
from mubkit import geometry, moment, mub
from mubkit.gf import GFError
from mubkit.mols import latin, search
from mubkit.numerics import DEFAULT_TOLERANCE, TolerancePolicy
from mubkit.report import RunReport


class InputError(Exception):
    pass


def _config(path: str | None) -> dict:
    if not path:
        return {}
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read config {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise InputError("config must be a JSON object")
    return data


def _moduli(cfg: dict) -> dict:
    raw = cfg.get("moduli", {})
    return {int(k): [int(c) for c in v] for k, v in raw.items()}


def _tolerance(args) -> TolerancePolicy:
    base = TolerancePolicy.from_env(DEFAULT_TOLERANCE)
    if args.tol is not None:
        return TolerancePolicy(abs_tol=args.tol, rel_tol=base.rel_tol)
    return base


def _load_mub(ref: str, tol, cfg) -> mub.MubSet:
    """A MUB file path, or ``dimN`` to construct on the fly."""
    m = re.fullmatch(r"dim(\d+)", ref)
    if m and not Path(ref).exists():
        return mub.construct(int(m.group(1)), tol=tol, moduli=_moduli(cfg),
                             max_prime=cfg.get("max_prime", mub.DEFAULT_MAX_PRIME))
    try:
        return mub.load(ref, tol=tol)
    except OSError as exc:
        raise InputError(f"cannot read {ref}: {exc}") from exc


def _load_mols(ref: str, cfg) -> latin.MolsSet:
    """A MOLS file path, or ``orderN`` for the field construction."""
    m = re.fullmatch(r"order(\d+)", ref)
    if m and not Path(ref).exists():
        return latin.mols_from_field(int(m.group(1)), moduli=_moduli(cfg))
    try:
        return latin.load(ref)
    except OSError as exc:
        raise InputError(f"cannot read {ref}: {exc}") from exc


def _mub_checks(report: RunReport, s: mub.MubSet, tol) -> mub.MubSetReport:
    r = mub.verify_mub_set(s, tol)
    report.add("basis_count", s.size <= s.dim + 1, count=s.size)
    report.add("orthonormality", all(b.passed for b in r.bases), max_deviation=r.max_orthonormality)
    report.add("unbiasedness", tol.within(r.max_unbiased), max_deviation=r.max_unbiased)
    return r


# -- subcommands --------------------------------------------------------------


def cmd_construct(args, tol, cfg) -> RunReport:
    report = RunReport("construct", {"kind": args.kind, "size": args.size, "out": args.out})
    if args.kind == "mub":
        s = mub.construct(args.size, tol=tol, moduli=_moduli(cfg),
                          max_prime=cfg.get("max_prime", mub.DEFAULT_MAX_PRIME))
        r = _mub_checks(report, s, tol)
        report.add("complete", r.complete, count=s.size)
        if report.verdict == "pass":
            mub.save(s, args.out)
    else:
        m = latin.mols_from_field(args.size, moduli=_moduli(cfg))
        report.add("square_count", m.size == m.order - 1, count=m.size)
        report.add("pairwise_orthogonal", m.pairwise_orthogonal(), count=len(m.non_orthogonal_pairs()))
        if report.verdict == "pass":
            latin.save(m, args.out)
    return report


def cmd_verify(args, tol, cfg) -> RunReport:
    kind = args.kind
    report = RunReport("verify", {"kind": kind})
    if kind in ("mub", "classes", "moment"):
        ref = args.path or args.mub
        if not ref:
            raise InputError(f"verify {kind} needs a MUB file")
        report.inputs["mub"] = ref
        s = _load_mub(ref, tol, cfg)
        if kind == "mub":
            r = _mub_checks(report, s, tol)
            report.add("complete", r.complete, count=s.size)
        elif kind == "classes":
            classes = cls_mod.build_classes(s, tol)
            reps = [cls_mod.verify_class(c, tol) for c in classes]
            for key in ("identity_deviation", "unitarity", "trace", "commutator", "gram_deviation"):
                worst = max(getattr(r, key) for r in reps)
                report.add(f"class_{key}", tol.within(worst, s.dim if key == "gram_deviation" else 0.0),
                           max_deviation=worst)
            cross = cls_mod.verify_cross_orthogonality(classes, tol)
            report.add("cross_orthogonality", cross.passed, max_deviation=cross.max_inner)
            law = max(cls_mod.group_law_deviation(c) for c in classes)
            report.add("group_law", tol.within(law), max_deviation=law)
            masa = all(cls_mod.verify_masa_span(b, c, tol) for b, c in zip(s.bases, classes))
            report.add("masa_span", masa, count=len(classes))
            if s.size == s.dim + 1:
                ab = cls_mod.verify_abasis(classes, tol)
                report.add("abasis_rank", ab.passed, count=ab.rank, max_deviation=ab.gram_deviation)
        else:
            classes = cls_mod.build_classes(s, tol)
            ab = cls_mod.verify_abasis(classes, tol)
            report.add("abasis_rank", ab.passed, count=ab.rank, max_deviation=ab.gram_deviation)
            dec = moment.verify_decomposition(moment.canonical_coordinates(s.dim), s.dim)
            report.add("shared_vertex", dec.shared_vertex_ok)
            report.add("vertex_coincidence", dec.coincidence_ok)
            report.add("regularity", dec.regularity_ok)
            if s.dim <= 2:
                c = moment.count_shared_vertex_decompositions(s.dim)
                report.add("decomposition_count", c == s.dim**2, count=c)
    elif kind == "geometry":
        mub_ref = args.mub or args.path
        mols_ref = args.mols
        if not mub_ref or not mols_ref:
            raise InputError("verify geometry needs --mub and --mols")
        report.inputs.update({"mub": mub_ref, "mols": mols_ref})
        s = _load_mub(mub_ref, tol, cfg)
        m = _load_mols(mols_ref, cfg)
        try:
            p = geometry.build_polytope(s, tol)
        except geometry.GeometryError as exc:
            report.add("polytope", False, reason=str(exc))
            return report
        for c in geometry.polytope_report(p).as_checks(tol):
            report.checks.append(c)
        ins = geometry.inscribed_simplex_from_mols(p, m)
        report.add("inscribed_distance_spread", ins.report.spread <= geometry.REGULARITY_TOL,
                   max_deviation=ins.report.spread)
        report.add("inscribed_centroid", ins.report.centroid_norm <= tol.abs_tol,
                   max_deviation=ins.report.centroid_norm)
        report.add("omission_single_agreement", ins.single_agreement, count=len(ins.selections))
    elif kind == "mols":
        ref = args.path or args.mols
        if not ref:
            raise InputError("verify mols needs a MOLS file")
        report.inputs["mols"] = ref
        m = _load_mols(ref, cfg)
        bad = m.non_orthogonal_pairs()
        report.add("pairwise_orthogonal", not bad, count=len(bad))
        report.add("complete", m.size == m.order - 1, count=m.size)
        if m.is_complete:
            report.add("affine_plane", latin.two_points_one_line(latin.affine_plane(m)))
    return report


def cmd_search(args, tol, cfg) -> RunReport:
    report = RunReport("search", {"order": args.order, "mode": args.mode})
    if args.mode == "exhaustive":
        best = search.exhaustive_complete_search(args.order)
        expected = args.order - 1
        report.add("max_mols", True, count=best, complete_exists=best == expected)
    else:
        res = search.mate_sweep(args.order, workers=args.workers)
        report.add("reduced_squares", True, count=res.squares)
        report.add("squares_with_mate", True, count=res.with_mate)
    return report


def cmd_moment(args, tol, cfg) -> RunReport:
    d = args.dim
    imgs = moment.fixed_point_images(d)
    rows = [imgs]
    if args.random:
        rng = np.random.default_rng(args.seed)
        z = rng.standard_normal((args.random, d)) + 1j * rng.standard_normal((args.random, d))
        rows.append(np.array([moment.moment_map(v) for v in z]))
    _emit(moment.images_csv(np.vstack(rows)), args.out)
    report = RunReport("moment", {"dim": d, "random": args.random, "seed": args.seed})
    exact = moment.fixed_point_images_exact(d)
    report.add("fixed_points_exact", all(sorted(e) == [0] * (d - 1) + [moment.HALF] for e in exact), count=d)
    sums = np.vstack(rows).sum(axis=1)
    report.add("normalization", tol.within(float(np.max(np.abs(sums - 0.5)))),
               max_deviation=float(np.max(np.abs(sums - 0.5))))
    return report


def cmd_geometry(args, tol, cfg) -> RunReport:
    s = _load_mub(args.mub, tol, cfg)
    m = _load_mols(args.mols, cfg)
    p = geometry.build_polytope(s, tol)
    ins = geometry.inscribed_simplex_from_mols(p, m)
    _emit(geometry.points_csv(ins.centers), args.out)
    report = RunReport("geometry", {"mub": args.mub, "mols": args.mols})
    report.add("inscribed_distance_spread", ins.report.spread <= geometry.REGULARITY_TOL,
               max_deviation=ins.report.spread)
    report.add("inscribed_centroid", ins.report.centroid_norm <= tol.abs_tol,
               max_deviation=ins.report.centroid_norm)
    return report


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stderr.write(text)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=None, help="absolute tolerance override")
    common.add_argument("--workers", type=int, default=os.cpu_count() or 1)
    common.add_argument("--json", action="store_true", help="emit one JSON document")
    common.add_argument("--config", default=None, help="JSON config (moduli, max_prime)")

    ap = argparse.ArgumentParser(prog="mubkit", description=__doc__.splitlines()[0], parents=[common])
    sub = ap.add_subparsers(dest="command", required=True)

    c = sub.add_parser("construct", parents=[common])
    c.add_argument("kind", choices=["mub", "mols"])
    c.add_argument("size", type=int)
    c.add_argument("--out", required=True)

    v = sub.add_parser("verify", parents=[common])
    v.add_argument("kind", choices=["mub", "classes", "geometry", "moment", "mols"])
    v.add_argument("path", nargs="?")
    v.add_argument("--mub")
    v.add_argument("--mols")

    s = sub.add_parser("search", parents=[common])
    s.add_argument("order", type=int)
    s.add_argument("--mode", choices=["exhaustive", "mate-sweep"], default="exhaustive")

    m = sub.add_parser("moment", parents=[common], help="CSV of moment-map images (stdout: report, CSV: --out or stderr)")
    m.add_argument("dim", type=int, help="ambient dimension d of CP^(d-1)")
    m.add_argument("--random", type=int, default=0, help="also map this many random points")
    m.add_argument("--seed", type=int, default=0)
    m.add_argument("--out")

    g = sub.add_parser("geometry", parents=[common], help="CSV of MOLS-selected facet centers")
    g.add_argument("--mub", required=True)
    g.add_argument("--mols", required=True)
    g.add_argument("--out")
    return ap


COMMANDS = {
    "construct": cmd_construct,
    "verify": cmd_verify,
    "search": cmd_search,
    "moment": cmd_moment,
    "geometry": cmd_geometry,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    start = time.perf_counter()
    try:
        tol = _tolerance(args)
        cfg = _config(args.config)
        report = COMMANDS[args.command](args, tol, cfg)
    except (InputError, mub.MubError, latin.LatinSquareError, GFError, geometry.GeometryError,
            moment.MomentError, cls_mod.ClassError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    report.elapsed = time.perf_counter() - start
    sys.stdout.write(report.to_json() if args.json else report.to_text())
    return 0 if report.verdict == "pass" else 1


if __name__ == "__main__":
    sys.exit(main())
