"""Command-line front end.

Exit codes: 0 success, 1 domain error (bad input, refused computation),
2 usage error (argparse).
"""

from __future__ import annotations

import argparse
import itertools
import os
import sys
from fractions import Fraction
from typing import Sequence

from . import catalog as cat
from .bounds import bound_report
from .cone import (
    DEFAULT_DIMENSION_CAP,
    configuration_cones,
    face_averages,
    face_lattice,
    face_polynomial,
    simpliciality_report,
    vertex_kinds,
)
from .config import (
    Configuration,
    DistanceMode,
    Verdict,
    build_ample_candidate,
    build_graph,
    enumerate_subsets,
    narrow_parts_search,
    surface_invariants,
    verify_narrow_parts,
)
from .errors import Infeasible, MoriConeError
from .lattice import nondegenerate_part, numerical_signature, signature
from .oriented import (
    OrientedDiagram,
    elliptic_by_face,
    oriented_distance,
    recognize_e_set,
    recognize_elliptic_family,
    step_a_check,
    theorem45_exception_flags,
)
from .serialize import export_dot, export_json, load_path, render_report


def resolve_input(target: str) -> tuple[Configuration | OrientedDiagram, str]:
    """An existing file path wins; otherwise the name is looked up in the catalog."""
    if os.path.isfile(target):
        return load_path(target), target
    try:
        entry = cat.load_catalog(target)
    except MoriConeError:
        raise MoriConeError(f"{target!r} is neither a readable file nor a catalog entry") from None
    if entry.kind == "reference":
        raise MoriConeError(f"catalog entry {target!r} holds reference data, not a configuration")
    return entry.payload, f"catalog:{target}"


def _emit(args, command: str, source: str, kind: str, report: dict, caveats: Sequence[str] = ()) -> None:
    doc = {"command": command, "input": source, "kind": kind, "report": report, "caveats": list(caveats)}
    sys.stdout.write(render_report(doc, args.format))


def _mode(args) -> DistanceMode:
    return DistanceMode(args.distance_mode)


# --- surfaces --------------------------------------------------------------------


def _surface_classify(c: Configuration, args) -> tuple[dict, list[str]]:
    graph = build_graph(c)
    inv = surface_invariants(c)
    enum = enumerate_subsets(c, None, args.max_subset)
    comps = graph.components()
    report = {
        "name": c.name,
        "curves": c.dim,
        "labels": list(c.labels),
        "invariants": {"rho": inv.rho, "delta": inv.delta, "p": inv.p},
        "signature": signature(c.gram),
        "numerical_signature": numerical_signature(c.gram),
        "graph": {
            "edges": graph.graph.number_of_edges(),
            "components": len(comps),
            "connected": len(comps) <= 1,
            "diameter": graph.diameter(None, _mode(args)),
        },
        "counts": {v.value: sum(1 for x in enum.items if x.verdict is v) for v in Verdict},
        "lanner": [list(x.subset) for x in enum.items if x.verdict is Verdict.LANNER],
        "subsets": [
            {"subset": list(x.subset), "verdict": x.verdict, "signature": x.signature, "connected": x.connected}
            for x in enum.items
        ],
        "max_subset": args.max_subset,
        "complete": enum.complete,
    }
    caveats = []
    if not enum.complete:
        caveats.append(f"subsets enumerated up to size {args.max_subset} of {c.dim}")
    if c.canonical is None:
        caveats.append("no K pairings supplied: arithmetic genera not computed")
    return report, caveats


def _cy3_inventory(d: OrientedDiagram, max_size: int) -> tuple[dict, list[str]]:
    top = min(max_size, d.size)
    step = step_a_check(d)
    dist = oriented_distance(d)
    fam = recognize_elliptic_family(d)
    eset = recognize_e_set(d)
    report = {
        "name": d.name,
        "rays": d.size,
        "labels": list(d.labels),
        "step_a": {
            "injective": step.injective,
            "collisions": [[d.labels[i], d.labels[j]] for i, j in step.collisions],
        },
        "single_arrows": [[d.labels[i], d.labels[j]] for i, j in d.single_arrows()],
        "distance": {
            "matrix": [list(r) for r in dist.matrix],
            "diameter": dist.diameter,
            "strongly_connected": dist.strongly_connected,
        },
        "family": {"verdict": fam.verdict, "name": fam.name, "reason": fam.reason},
        "e_set": {"verdict": eset.verdict, "name": eset.name, "reason": eset.reason},
    }
    caveats = []
    if not step.injective:
        caveats.append("divisor injectivity violated: distinct rays share a divisor")
    if d.rays is not None:
        fe = elliptic_by_face(d, max_size=top)
        report["elliptic_subsets"] = [list(s) for s, ok in fe.elliptic.items() if ok]
        report["e_sets"] = [list(s) for s in fe.e_sets]
        report["definition"] = "face containment in the realized cone"
        whole = tuple(range(d.size))
        if whole in fe.elliptic and fe.elliptic[whole] != (fam.verdict == "elliptic-family"):
            caveats.append("the face test and the diagram pattern disagree on the full set of rays")
    else:
        ell, es = [], []
        for k in range(1, top + 1):
            for s in itertools.combinations(range(d.size), k):
                sub = d.restrict(s)
                if recognize_elliptic_family(sub).verdict == "elliptic-family":
                    ell.append(list(s))
                elif recognize_e_set(sub).verdict == "e-set":
                    es.append(list(s))
        report["elliptic_subsets"] = ell
        report["e_sets"] = es
        report["definition"] = "diagram patterns"
    report["complete"] = top >= d.size
    if top < d.size:
        caveats.append(f"subsets enumerated up to size {max_size} of {d.size}")
    return report, caveats


def cmd_classify(args) -> int:
    obj, source = resolve_input(args.input)
    if isinstance(obj, Configuration):
        report, caveats = _surface_classify(obj, args)
        _emit(args, "classify", source, "surface", report, caveats)
    else:
        report, caveats = _cy3_inventory(obj, args.max_subset)
        _emit(args, "classify", source, "cy3", report, caveats)
    return 0


def cmd_cone(args) -> int:
    obj, source = resolve_input(args.input)
    if not isinstance(obj, Configuration):
        raise MoriConeError("the cone command needs a surface configuration")
    basis, _ = nondegenerate_part(obj.gram)
    if len(basis) > args.cap:
        raise MoriConeError(
            f"rank {len(basis)} exceeds the dimension cap {args.cap}; raise --cap to attempt it"
        )
    cones = configuration_cones(obj)
    kinds = vertex_kinds(cones.nef)
    report = {
        "basis": [obj.labels[i] for i in cones.basis],
        "rank": len(cones.basis),
        "nef_rays": [
            {"ray": list(v), "norm": n, "kind": k}
            for v, n, k in zip(cones.nef.generators, kinds.norms, kinds.kinds)
        ],
        "facets": list(cones.nef.normal_labels),
        "redundant_curves": list(cones.nef.redundant_normals),
        "finite_volume": kinds.finite_volume,
        "all_vertices_finite": kinds.all_finite,
    }
    caveats = []
    fl = face_lattice(cones.nef, cap=args.cap)
    report["face_counts"] = list(fl.cone_face_counts)
    report["alpha"] = list(fl.alpha)
    simp = simpliciality_report(fl, cones.nef)
    report["simpliciality"] = {
        "simple_at_vertices": simp.simple_at_vertices,
        "simplicial_in_edges": simp.simplicial_in_edges,
        "acute": simp.acute,
        "non_simple_vertices": len(simp.bad_vertices),
    }
    poly = face_polynomial(fl, kinds.all_finite)
    report["face_polynomial"] = {
        "R": str(poly),
        "coefficients": list(poly.coefficients),
        "reversible": poly.reversible,
        "positive_coeffs": poly.positive_coeffs,
        "advisory": poly.advisory,
    }
    if poly.advisory:
        caveats.append("vertices at infinity present: the face polynomial is advisory")
    if fl.n >= 3:
        av = face_averages(fl)
        report["face_averages"] = {
            "A02": av.a02, "bound02": av.bound02, "satisfied02": av.satisfied02,
            "A23": av.a23, "bound23": av.bound23, "satisfied23": av.satisfied23,
        }
    else:
        caveats.append(f"face averages need n >= 3 (n = {fl.n})")
    if not kinds.finite_volume:
        caveats.append("some nef rays have negative square: the polyhedron is not of finite volume")
    _emit(args, "cone", source, "surface", report, caveats)
    return 0


def cmd_narrow(args) -> int:
    obj, source = resolve_input(args.input)
    if not isinstance(obj, Configuration):
        raise MoriConeError("the narrow command needs a surface configuration")
    res = narrow_parts_search(obj, max_candidates=args.max_candidates)
    check = verify_narrow_parts(obj, res)
    report = {
        "success": res.success,
        "chosen": [obj.labels[i] for i in res.chosen],
        "rho": res.rho,
        "certificates": {
            "spans": check["spans"],
            "connected": check["connected"],
            "max_ratio": res.max_ratio,
            "ratio_below_3844": check["ratio"],
        },
        "failed_clauses": list(res.failed_clauses),
        "candidates_examined": res.candidates_examined,
        "exhaustive": res.exhaustive,
    }
    caveats = list(res.warnings)
    try:
        amp = build_ample_candidate(obj, res.chosen)
        report["ample_candidate"] = {
            "coefficients": list(amp.coefficients),
            "h_squared": amp.h_squared,
            "min_pairing": min(amp.pairings),
        }
    except Infeasible as exc:
        report["ample_candidate"] = None
        caveats.append(str(exc))
    _emit(args, "narrow", source, "surface", report, caveats)
    return 0


def cmd_bounds(args) -> int:
    obj, source = resolve_input(args.input)
    rep = bound_report(obj, args.max_subset, args.d, args.c1, args.c2, _mode(args))
    report = {
        "d": rep.d,
        "d_source": rep.d_source,
        "d_witness": None if rep.d_witness is None else list(rep.d_witness),
        "C1": rep.c1,
        "C2": rep.c2,
        "constants_source": rep.constants_source,
        "lemma2_bound": rep.lemma2_bound,
        "lemma3_bound": rep.lemma3_bound,
        "applicable_bound": rep.applicable_bound,
        "rho": rep.rho,
        "consistent": rep.consistent,
        "minimal_subsets": rep.minimal_count,
        "elliptic_subsets": rep.elliptic_count,
        "complete": rep.complete,
        "definition": rep.definition,
        "distance_mode": rep.distance_mode,
    }
    _emit(args, "bounds", source, rep.mode, report, rep.caveats)
    return 0


def cmd_cy3(args) -> int:
    obj, source = resolve_input(args.input)
    if not isinstance(obj, OrientedDiagram):
        raise MoriConeError("the cy3 command needs an oriented diagram (kind \"cy3\")")
    report, caveats = _cy3_inventory(obj, args.max_subset)
    flags = theorem45_exception_flags(
        has_small_ray=args.small_ray,
        has_low_kodaira_face=args.low_kodaira_face,
        has_nef_d_with_d3_zero=args.nef_d3_zero,
        cone_finite=not args.infinite_cone,
    )
    report["theorem_flags"] = {
        "fano_rho_bound": flags.fano_bound,
        "fano_applicable": flags.fano_applicable,
        "fano_exceptions": list(flags.fano_exceptions),
        "cy_rho_bound": flags.cy_bound,
        "cy_applicable": flags.cy_applicable,
        "cy_exceptions": list(flags.cy_exceptions),
    }
    _emit(args, "cy3", source, "cy3", report, caveats)
    return 0


def cmd_catalog(args) -> int:
    if args.name is None:
        rows = [{"name": n, "kind": cat.load_catalog(n).kind} for n in cat.catalog_names()]
        _emit(args, "catalog", "catalog", "index", {"entries": rows})
        return 0
    entry = cat.load_catalog(args.name)
    if entry.kind == "reference":
        ref = entry.payload
        report = {
            "k3_counts_rho": "3..>=20",
            "k3_counts": ",".join(str(x) for x in ref.k3_counts),
            "narrow_parts_ratio_bound": ref.narrow_parts_ratio_bound,
            "fano3fold_rho_bound": ref.fano3fold_rho_bound,
            "cy3_rho_bound": ref.cy3_rho_bound,
            "delpezzo_duval_rho_bound": ref.delpezzo_duval_rho_bound,
            "shokurov_k_range": list(ref.shokurov_k_range),
            "unevaluated_constants": {k: v for k, v in ref.unevaluated},
        }
        _emit(args, "catalog", f"catalog:{entry.name}", "reference", report,
              ["A(n), B(n) and C are named but never evaluated"])
        return 0
    if args.format == "json":
        # the entry itself, in the input format
        sys.stdout.write(export_json(entry.payload))
        return 0
    report = {"name": entry.name, "provenance": entry.provenance, "inferred": list(entry.inferred),
              "expected": entry.expected}
    _emit(args, "catalog", f"catalog:{entry.name}", entry.kind, report)
    return 0


def cmd_export(args) -> int:
    obj, _ = resolve_input(args.input)
    text = export_dot(obj) if args.format == "dot" else export_json(obj)
    if args.dot:
        with open(args.dot, "w", encoding="utf-8") as fh:
            fh.write(export_dot(obj))
    if not args.dot or args.format == "json":
        sys.stdout.write(text)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="moricone", description="Exact analysis of finite polyhedral Mori cones.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, subsets=True, distance=False):
        sp.add_argument("input", help="JSON file or catalog entry name")
        sp.add_argument("--format", choices=("text", "json"), default="text")
        if subsets:
            sp.add_argument("--max-subset", type=_positive, default=5, help="largest subset size enumerated")
        if distance:
            sp.add_argument("--distance-mode", choices=("induced", "ambient"), default="induced")

    sp = sub.add_parser("classify", help="invariants and subset classification")
    common(sp, distance=True)
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser("cone", help="nef cone, face lattice, face polynomial and averages")
    common(sp, subsets=False)
    sp.add_argument("--cap", type=_positive, default=DEFAULT_DIMENSION_CAP, help="largest cone dimension attempted")
    sp.set_defaults(func=cmd_cone)

    sp = sub.add_parser("narrow", help="narrow-parts search and ample candidate")
    common(sp, subsets=False)
    sp.add_argument("--max-candidates", type=_positive, default=200_000)
    sp.set_defaults(func=cmd_narrow)

    sp = sub.add_parser("bounds", help="diagram constants d, C1, C2 and Picard-number bounds")
    common(sp, distance=True)
    sp.add_argument("--d", type=_nonnegative, default=None, help="override the computed d")
    sp.add_argument("--c1", type=_rational, default=None, help="override C1 (p/q)")
    sp.add_argument("--c2", type=_rational, default=None, help="override C2 (p/q)")
    sp.set_defaults(func=cmd_bounds)

    sp = sub.add_parser("cy3", help="oriented diagram checks and conditional 3-fold bounds")
    common(sp)
    sp.add_argument("--small-ray", action="store_true", help="X has a small extremal ray")
    sp.add_argument("--low-kodaira-face", action="store_true", help="NE has a face of Kodaira dimension <= 2")
    sp.add_argument("--nef-d3-zero", action="store_true", help="some rational nef D has D^3 = 0")
    sp.add_argument("--infinite-cone", action="store_true", help="the Mori cone is not finite polyhedral")
    sp.set_defaults(func=cmd_cy3)

    sp = sub.add_parser("catalog", help="list built-in entries or show one")
    sp.add_argument("name", nargs="?")
    sp.add_argument("--format", choices=("text", "json"), default="text")
    sp.set_defaults(func=cmd_catalog)

    sp = sub.add_parser("export", help="write DOT (default) or canonical JSON")
    sp.add_argument("input", help="JSON file or catalog entry name")
    sp.add_argument("--format", choices=("dot", "json"), default="dot")
    sp.add_argument("--dot", metavar="PATH", help="write DOT to PATH")
    sp.set_defaults(func=cmd_export)
    return p


def _positive(s: str) -> int:
    v = int(s)
    if v < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return v


def _nonnegative(s: str) -> int:
    v = int(s)
    if v < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return v


def _rational(s: str) -> Fraction:
    try:
        v = Fraction(s)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"{s!r} is not a rational number") from None
    if v < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return v


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except MoriConeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
