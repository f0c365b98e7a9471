"""Command line checks for separability, covering, packing, and density."""

from __future__ import annotations

import argparse
import json
import math
import sys
import time

import numpy as np

from . import covering, lambda_density, packing, separability, spherical, svg
from .bodies import (
    ConvexBody,
    GeometryError,
    HomothetFamily,
    body_from_json,
    body_to_json,
    family_from_json,
)

EXIT_OK = 0
EXIT_VIOLATED = 1
EXIT_UNRESOLVED = 2
EXIT_INPUT = 3


def _load(path: str) -> dict:
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise GeometryError(f"cannot read {path}: {exc}") from exc


def _family(obj: dict) -> HomothetFamily:
    if "members" in obj:
        return family_from_json(obj)
    if "body" in obj and "centers" in obj:
        return HomothetFamily(
            reference=body_from_json(obj["body"]),
            centers=np.asarray(obj["centers"], dtype=float),
            ratios=np.asarray(obj["ratios"], dtype=float) if "ratios" in obj else None,
        )
    raise GeometryError('input needs either "members" or "body" plus "centers"')


def _caps(obj: dict) -> list[spherical.Cap]:
    try:
        return [spherical.Cap(np.asarray(c["center"], dtype=float), float(c["radius_rad"]))
                for c in obj["caps"]]
    except (KeyError, TypeError) as exc:
        raise GeometryError(f"malformed caps object: {exc}") from exc


def _jsonify(x):
    if isinstance(x, np.ndarray):
        return x.tolist()
    if isinstance(x, (np.floating, np.integer)):
        return x.item()
    if isinstance(x, dict):
        return {str(k): _jsonify(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonify(v) for v in x]
    return x


def _plane_json(plane) -> dict:
    return {"normal": plane.normal.tolist(), "offset": plane.offset}


def _emit(args, payload: dict, drawing=None) -> None:
    text = json.dumps(_jsonify(payload), sort_keys=True, indent=2)
    fmt = getattr(args, "format", "json")
    out = getattr(args, "out", None)
    if fmt in ("json", "both"):
        if out and fmt == "json":
            with open(out, "w") as fh:
                fh.write(text + "\n")
        else:
            print(text)
    if fmt in ("svg", "both"):
        if drawing is None:
            raise GeometryError("this command has no drawing; use --format json")
        body = drawing.to_svg()
        if out:
            path = out if fmt == "svg" else out + ".svg"
            with open(path, "w") as fh:
                fh.write(body)
        else:
            print(body)
    if fmt == "both" and out:
        with open(out + ".json", "w") as fh:
            fh.write(text + "\n")


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def cmd_check_ns(args) -> int:
    fam = _family(_load(args.input))
    dec = separability.is_non_separable(fam, samples=args.samples, tol=args.tolerance)
    payload = {
        "non_separable": dec.non_separable,
        "approximate": dec.approximate,
        "directions_checked": dec.directions_checked,
        "witness": None,
        "provenance": {"method": "direction-search", "samples": args.samples},
    }
    if dec.witness is not None:
        payload["witness"] = {
            "plane": _plane_json(dec.witness.plane),
            "left": list(dec.witness.left),
            "right": list(dec.witness.right),
            "margin": dec.witness.margin,
        }
    if args.sns:
        r = separability.is_sns(fam, tol=args.tolerance)
        payload["sns"] = {"is_sns": r.is_sns, "ordering": list(r.ordering or ())}
    _emit(args, payload, svg.family_drawing(fam))
    return EXIT_OK if dec.non_separable else EXIT_VIOLATED


def cmd_cover(args) -> int:
    fam = _family(_load(args.input))
    gg = covering.goodman_goodman_cover(fam, tol=args.tolerance)
    best = covering.min_cover_ratio(fam, tol=args.tolerance)
    payload = {
        "goodman_goodman": {
            "center": gg.center.tolist(), "ratio": gg.ratio,
            "normalized": gg.normalized, "contains_all": gg.contains_all,
        },
        "smallest": {
            "center": best.center.tolist(), "ratio": best.ratio,
            "normalized": best.normalized, "contains_all": best.contains_all,
        },
        "provenance": {"method": best.method},
    }
    from .bodies import Homothet

    cover_body = Homothet(best.center, best.ratio, fam.reference).as_body()
    _emit(args, payload, svg.family_drawing(fam, cover=cover_body))
    return EXIT_OK if gg.contains_all and best.contains_all else EXIT_VIOLATED


def cmd_verify_ts(args) -> int:
    fam = _family(_load(args.input))
    res = separability.is_ts_packing(fam.bodies(), tol=args.tolerance)
    payload = {
        "is_ts": res.is_ts,
        "lines_checked": res.lines_checked,
        "unresolved": [list(p) for p in res.unresolved],
        "certificates": {
            f"{i},{j}": _plane_json(cert.plane)
            for (i, j), cert in sorted(res.certificates.items())
        },
        "provenance": {"method": "tangent-line-search"},
    }
    _emit(args, payload, svg.family_drawing(fam))
    if res.is_ts:
        return EXIT_OK
    return EXIT_UNRESOLVED if res.unresolved else EXIT_VIOLATED


def cmd_verify_ls(args) -> int:
    fam = _family(_load(args.input))
    res = separability.is_ls_packing(fam.bodies(), tol=args.tolerance)
    payload = {
        "is_ls": res.is_ls,
        "failing_members": list(res.failing_members),
        "provenance": {"method": "neighbourhood-ts"},
    }
    _emit(args, payload, svg.family_drawing(fam))
    return EXIT_OK if res.is_ls else EXIT_VIOLATED


def cmd_rho_sep(args) -> int:
    obj = _load(args.input)
    fam = _family(obj)
    res = separability.is_rho_separable(fam.reference, fam.centers, args.rho, tol=args.tolerance)
    payload = {
        "separable": res.separable,
        "rho": res.rho,
        "failing_member": res.failing_member,
        "provenance": {"method": "neighbourhood-ts"},
    }
    _emit(args, payload, svg.family_drawing(fam))
    return EXIT_OK if res.separable else EXIT_VIOLATED


def cmd_oler(args) -> int:
    obj = _load(args.input)
    fam = _family(obj)
    if "loop" not in obj:
        raise GeometryError('input needs a "loop" list of center indices')
    rep = packing.oler_check(fam.reference, fam.centers, obj["loop"], tol=args.tolerance)
    payload = {
        "n": rep.n,
        "enclosed_area": rep.enclosed_area,
        "norm_length": rep.norm_length,
        "pgram_area": rep.pgram_area,
        "lhs": rep.lhs,
        "slack": rep.slack,
        "degenerate": rep.degenerate,
        "holds": rep.holds(),
        "provenance": {"method": "closed-form"},
    }
    dr = svg.family_drawing(fam)
    loop_pts = fam.centers[np.asarray(obj["loop"], dtype=int)]
    dr.polygon(loop_pts, stroke="#d62728", dash="on")
    _emit(args, payload, dr)
    return EXIT_OK if rep.holds() else EXIT_VIOLATED


def _named_body(name: str) -> ConvexBody:
    if name == "disk":
        return ConvexBody.disk((0.0, 0.0), 1.0)
    if name == "square":
        return ConvexBody.polygon([[1, 1], [-1, 1], [-1, -1], [1, -1]])
    if name == "triangle":
        return ConvexBody.polygon([[1, 0], [-0.5, math.sqrt(3) / 2], [-0.5, -math.sqrt(3) / 2]])
    if name.endswith(".json"):
        return body_from_json(_load(name))
    raise GeometryError("body must be disk, square, triangle, or a JSON file")


def cmd_density(args) -> int:
    body = _named_body(args.body)
    from .measures import area, min_area_parallelogram

    fit = min_area_parallelogram(body)
    payload = {
        "body": body_to_json(body),
        "area": area(body),
        "pgram_area": fit.area,
        "separable_density": packing.separable_packing_density(body),
        "provenance": {"method": "golden-search"},
    }
    _emit(args, payload)
    return EXIT_OK


def cmd_contact(args) -> int:
    fam = _family(_load(args.input))
    g = packing.contact_graph(fam.reference, fam.centers, tol=args.tolerance)
    n = len(fam)
    bound = packing.crystallization_bound(n) if n >= 1 else 0
    payload = {
        "n": n,
        "contacts": g.count,
        "degrees": g.degrees.tolist(),
        "edges": [list(e) for e in g.edges],
        "square_lattice_bound": bound,
        "within_bound": g.count <= bound,
        "provenance": {"method": "gauge-distance"},
    }
    _emit(args, payload, svg.family_drawing(fam, contacts=g.edges))
    return EXIT_OK if g.count <= bound else EXIT_VIOLATED


def cmd_lattice(args) -> int:
    payload: dict = {"n": args.n, "d": args.d}
    if args.d == 2:
        payload["max_contacts"] = packing.crystallization_bound(args.n)
        lb = packing.lattice_contact_bounds(2, args.n)
        payload["lattice_bounds"] = {"lower": lb.lower, "upper": lb.upper, "exact": lb.exact}
        payload["provenance"] = {"method": "closed-form"}
        if args.brute:
            if args.n > 12:
                raise GeometryError("exhaustive search is limited to 12 cells")
            res = packing.brute_force_lattice_contact(args.n)
            payload["brute_force_max"] = res.max_contacts
            payload["polyomino_counts"] = res.counts
            payload["provenance"] = {"method": "brute-force"}
    else:
        mode = args.mode or "hales"
        if mode == "rogers":
            est = packing.rogers_sigma(args.d, samples=args.samples, seed=args.seed)
            payload["simplex_density"] = {"value": est.value, "stderr": est.stderr}
            payload["max_contacts"] = packing.crystallization_bound(
                args.n, d=args.d, mode="rogers", density=est.value
            )
            payload["provenance"] = {
                "method": "monte-carlo", "samples": est.samples, "seed": est.seed,
            }
        else:
            payload["max_contacts"] = packing.crystallization_bound(args.n, d=args.d, mode="hales")
            payload["provenance"] = {"method": "closed-form"}
        lb = packing.lattice_contact_bounds(args.d, args.n)
        payload["lattice_bounds"] = {"lower": lb.lower, "upper": lb.upper, "exact": lb.exact}
    _emit(args, payload)
    return EXIT_OK


def cmd_kertesz(args) -> int:
    obj = _load(args.input)
    try:
        box = obj["box"]
        cuts = tuple(
            packing.PlaneCut(int(c["cell"]), np.asarray(c["normal"], dtype=float), float(c["offset"]))
            for c in obj["cuts"]
        )
        balls = tuple((np.asarray(b["center"], dtype=float), float(b["r"])) for b in obj["balls"])
        part = packing.GuillotinePartition(
            lo=np.asarray(box["lo"], dtype=float), hi=np.asarray(box["hi"], dtype=float),
            cuts=cuts, balls=balls,
        )
    except (KeyError, TypeError) as exc:
        raise GeometryError(f"malformed partition object: {exc}") from exc
    rep = packing.kertesz_check(part, tol=args.tolerance)
    payload = {
        "n_cells": rep.n_cells,
        "ball_radius": rep.ball_radius,
        "total_surface": rep.total_surface,
        "surface_bound": rep.surface_bound,
        "volume": rep.volume,
        "volume_bound": rep.volume_bound,
        "holds_surface": rep.holds_surface,
        "holds_volume": rep.holds_volume,
        "provenance": {"method": "halfspace-intersection"},
    }
    _emit(args, payload)
    return EXIT_OK if rep.holds_surface and rep.holds_volume else EXIT_VIOLATED


def cmd_caps(args) -> int:
    caps = _caps(_load(args.input))
    payload: dict = {"n": len(caps), "provenance": {"method": "pole-search", "samples": args.samples}}
    rc = EXIT_OK
    if args.check in ("ns", "all"):
        dec = spherical.caps_non_separable(caps, samples=args.samples, tol=args.tolerance)
        payload["non_separable"] = {
            "value": dec.non_separable,
            "approximate": dec.approximate,
            "margin": None if math.isinf(dec.margin) else dec.margin,
            "pole": None if dec.pole is None else dec.pole.tolist(),
        }
        if not dec.non_separable:
            rc = max(rc, EXIT_VIOLATED)
        elif dec.approximate:
            rc = max(rc, EXIT_UNRESOLVED)
    if args.check in ("ts", "all"):
        res = spherical.is_ts_cap_packing(caps, samples=args.samples, tol=args.tolerance)
        payload["totally_separable"] = {
            "value": res.is_ts,
            "unresolved": [list(p) for p in res.unresolved],
            "refuted": [list(p) for p in res.refuted],
            "poles_checked": res.poles_checked,
        }
        if res.refuted:
            rc = max(rc, EXIT_VIOLATED)
        elif not res.is_ts:
            rc = max(rc, EXIT_UNRESOLVED)
    if args.check in ("cover", "all"):
        try:
            rep = spherical.cap_cover_check(caps, samples=args.samples, tol=args.tolerance)
        except GeometryError as exc:
            if args.check == "cover":
                raise
            payload["cover"] = {"applicable": False, "reason": str(exc)}
        else:
            payload["cover"] = {
                "applicable": True,
                "total_radius": rep.total_radius,
                "center": rep.center.tolist(),
                "radius": rep.radius,
                "slack": rep.slack,
                "holds": rep.holds(),
            }
            if not rep.holds():
                rc = max(rc, EXIT_VIOLATED)
    _emit(args, payload, svg.caps_drawing(caps))
    return rc


def cmd_tammes(args) -> int:
    e = spherical.separable_tammes(args.k)
    payload = {
        "k": e.k,
        "radius": e.radius,
        "exact": e.exact,
        "lower": e.lower,
        "upper": e.upper,
        "note": e.note,
        "provenance": {"method": "closed-form"},
    }
    _emit(args, payload)
    return EXIT_OK


def cmd_lambda_density(args) -> int:
    geom = args.geometry
    if geom == "euclidean":
        bound = lambda_density.density_bound_euclid(args.lam)
    elif geom == "spherical":
        if args.rho is None:
            raise GeometryError("spherical bound needs --rho")
        bound = lambda_density.density_bound_sphere(args.rho, args.lam, samples=args.samples, seed=args.seed)
    else:
        if args.rho is None:
            raise GeometryError("hyperbolic bound needs --rho")
        bound = lambda_density.density_bound_hyper(args.rho, args.lam, samples=args.samples, seed=args.seed)
    dens = bound.density
    prov: dict = {"method": dens.method}
    if dens.method == "qmc":
        prov.update({"samples": args.samples, "seed": args.seed})
    payload = {
        "geometry": geom,
        "lambda": args.lam,
        "rho": bound.rho,
        "value": bound.value,
        "branch": bound.branch,
        "triangle_sides": list(dens.triangle.sides),
        "error": dens.error,
        "provenance": prov,
    }
    _emit(args, payload)
    return EXIT_OK


def cmd_extremal_3disks(args) -> int:
    rep = packing.three_disk_extrema(samples=args.samples)
    payload = {
        q: {
            "value": getattr(rep, q).value,
            "gamma": getattr(rep, q).gamma,
            "branch": getattr(rep, q).branch,
        }
        for q in ("area", "perimeter", "width", "inradius")
    }
    payload["flags"] = list(rep.flags)
    payload["provenance"] = {"method": "golden-search", "samples": args.samples}
    if args.centers:
        c = np.asarray(json.loads(args.centers), dtype=float)
        ns = packing.three_disk_non_separable(c)
        payload["triple"] = {"non_separable": ns}
        if ns:
            a, p, w, r = packing.three_disk_hull_metrics(c)
            payload["triple"].update({"area": a, "perimeter": p, "width": w, "inradius": r})
    _emit(args, payload)
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def _add_common(p, needs_input=True, samples=None):
    if needs_input:
        p.add_argument("input", help="input JSON file, or - for stdin")
    p.add_argument("--tolerance", type=float, default=1e-9)
    if samples is not None:
        p.add_argument("--samples", type=int, default=samples)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", help="output file (basename for --format both)")
    p.add_argument("--format", choices=("json", "svg", "both"), default="json")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="sepgeom",
        description="Verification toolkit for separability in discrete geometry.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check-ns", help="decide if a homothet family admits no splitting line")
    _add_common(p, samples=4096)
    p.add_argument("--sns", action="store_true", help="also search for a successive ordering")
    p.set_defaults(func=cmd_check_ns)

    p = sub.add_parser("cover", help="smallest concentric homothet covering a family")
    _add_common(p)
    p.set_defaults(func=cmd_cover)

    p = sub.add_parser("verify-ts", help="certify total separability of a packing")
    _add_common(p)
    p.set_defaults(func=cmd_verify_ts)

    p = sub.add_parser("verify-ls", help="certify local separability of a packing")
    _add_common(p)
    p.set_defaults(func=cmd_verify_ls)

    p = sub.add_parser("rho-sep", help="check rho-separability of a translate packing")
    _add_common(p)
    p.add_argument("--rho", type=float, required=True)
    p.set_defaults(func=cmd_rho_sep)

    p = sub.add_parser("oler", help="closed-curve norm inequality for a translate packing")
    _add_common(p)
    p.set_defaults(func=cmd_oler)

    p = sub.add_parser("density", help="separable packing density of a convex body")
    _add_common(p, needs_input=False)
    p.add_argument("--body", default="disk", help="disk, square, triangle, or a JSON file")
    p.set_defaults(func=cmd_density)

    p = sub.add_parser("contact", help="contact graph of a translate packing")
    _add_common(p)
    p.set_defaults(func=cmd_contact)

    p = sub.add_parser("lattice", help="contact-number bounds for lattice packings")
    _add_common(p, needs_input=False, samples=2_000_000)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, default=2)
    p.add_argument("--mode", choices=("hales", "rogers"))
    p.add_argument("--brute", action="store_true", help="exhaustive polyomino search (d=2, n<=12)")
    p.set_defaults(func=cmd_lattice)

    p = sub.add_parser("kertesz", help="surface and volume bounds for a cut cube with balls")
    _add_common(p)
    p.set_defaults(func=cmd_kertesz)

    p = sub.add_parser("caps", help="spherical cap checks: splitting circle, TS, cover")
    _add_common(p, samples=10000)
    p.add_argument("--check", choices=("ns", "ts", "cover", "all"), default="all")
    p.set_defaults(func=cmd_caps)

    p = sub.add_parser("tammes", help="separable Tammes radius for k caps")
    _add_common(p, needs_input=False)
    p.add_argument("--k", type=int, required=True)
    p.set_defaults(func=cmd_tammes)

    p = sub.add_parser("lambda-density", help="density bound for lambda-separable packings")
    _add_common(p, needs_input=False, samples=160_000)
    p.add_argument("--geometry", choices=("euclidean", "spherical", "hyperbolic"), required=True)
    p.add_argument("--lam", type=float, required=True)
    p.add_argument("--rho", type=float)
    p.set_defaults(func=cmd_lambda_density)

    p = sub.add_parser("extremal-3disks", help="extremal hulls of three non-separable unit disks")
    _add_common(p, needs_input=False, samples=4096)
    p.add_argument("--centers", help="JSON list of three centers to test")
    p.set_defaults(func=cmd_extremal_3disks)

    return ap


def main(argv=None) -> None:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        # argparse uses 2 for usage errors; keep 2 for unresolved results
        sys.exit(EXIT_INPUT if exc.code == 2 else exc.code)
    t0 = time.perf_counter()
    try:
        rc = args.func(args)
    except GeometryError as exc:
        print(f"error: {exc}", file=sys.stderr)
        sys.exit(EXIT_INPUT)
    print(f"elapsed {time.perf_counter() - t0:.3f}s", file=sys.stderr)
    sys.exit(rc)


if __name__ == "__main__":
    main()
