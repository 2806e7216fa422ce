"""Command-line interface and the JSON document formats.

Representations and stability vectors travel as JSON with every numeric
entry given as an exact rational string ("a/b" or "a"), so a document
round-trips without precision loss.  Exit codes: 0 on success, 1 on a
domain error (the error class name goes to stderr), 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .errors import DomainError
from .fieldops import PrimeField, QQ
from .mckay import GroupSpec, build_mckay, verify_correspondence
from .quiverrep import (
    DimVector,
    FramedRep,
    framed_orbit_sum,
    framed_quiver,
    is_pi_bar_module,
    moment_defect,
)
from .rootsys import DynkinType, build_root_system
from .stability import ConeSpec, cone_membership, craw_wye_theta, make_theta
from .stabcheck import hn_filtration, stability_report, tangent_dimension
from .walls import SlicePlane, build_arrangement, figure_plane, render_slice


class DocumentError(DomainError):
    pass


# -- documents ----------------------------------------------------------------

def theta_to_doc(theta) -> dict:
    rs = theta.rs
    n = theta.context[0]  # delta[0] == 1, so the context determines n directly
    return {
        "type": rs.dynkin.label(),
        "n": n,
        "entries": {str(i): str(theta.entries[i]) for i in rs.vertices},
    }


def theta_from_doc(doc: dict):
    try:
        rs = build_root_system(DynkinType.parse(doc["type"]))
        n = int(doc["n"])
        entries = [Fraction(doc["entries"][str(i)]) for i in rs.vertices]
    except (KeyError, ValueError, TypeError) as exc:
        raise DocumentError(f"malformed stability document: {exc}") from None
    return make_theta(rs, tuple(n * d for d in rs.delta), entries)


def rep_to_doc(rep: FramedRep, n: int | None = None) -> dict:
    rs = rep.quiver.rs
    if n is None:
        n = max(rep.dims.v, default=0)
    doc = {
        "type": rs.dynkin.label(),
        "n": n,
        "field": "Fp" if isinstance(rep.field, PrimeField) else "Q",
        "dims": {"inf": rep.dims.r, **{str(i): rep.dims.v[i] for i in rs.vertices}},
        "matrices": {
            label: [[str(x) for x in row] for row in mat]
            for label, mat in sorted(rep.matrices.items())
        },
    }
    if isinstance(rep.field, PrimeField):
        doc["p"] = rep.field.p
    return doc


def rep_from_doc(doc: dict) -> FramedRep:
    try:
        rs = build_root_system(DynkinType.parse(doc["type"]))
        if doc["field"] == "Q":
            field = QQ
        elif doc["field"] == "Fp":
            field = PrimeField(int(doc["p"]))
        else:
            raise DocumentError(f"unknown field tag {doc['field']!r}")
        dims = DimVector(
            int(doc["dims"]["inf"]),
            tuple(int(doc["dims"][str(i)]) for i in rs.vertices),
        )
        matrices = {
            label: [[Fraction(x) for x in row] for row in mat]
            for label, mat in doc.get("matrices", {}).items()
        }
    except DocumentError:
        raise
    except (KeyError, ValueError, TypeError) as exc:
        raise DocumentError(f"malformed representation document: {exc}") from None
    return FramedRep(framed_quiver(rs), field, dims, matrices)


def _load_json(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise DocumentError(f"cannot read {path}: {exc}") from None


def _dump_json(doc: dict, path: str | None):
    text = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


# -- flag parsing helpers -----------------------------------------------------

def _parse_vertex_set(text: str) -> frozenset:
    text = text.strip()
    if not text:
        return frozenset()
    try:
        return frozenset(int(x) for x in text.split(","))
    except ValueError:
        raise DocumentError(f"bad vertex list {text!r}") from None


def _parse_field(tag: str):
    tag = tag.strip()
    if tag == "Q":
        return QQ
    if tag.startswith("F") and tag[1:].isdigit():
        return PrimeField(int(tag[1:]))
    raise DocumentError(f"unknown field {tag!r} (use Q or F<p>)")


def _parse_fractions(text: str):
    try:
        return tuple(Fraction(x) for x in text.split(","))
    except ValueError:
        raise DocumentError(f"bad rational list {text!r}") from None


def _parse_plane(text: str, n_vertices: int) -> SlicePlane:
    fields = {}
    for chunk in text.split(";"):
        if not chunk.strip():
            continue
        key, sep, val = chunk.partition("=")
        if not sep:
            raise DocumentError(f"bad plane chunk {chunk!r}")
        fields[key.strip()] = _parse_fractions(val)
    missing = {"base", "d1", "d2"} - set(fields)
    if missing:
        raise DocumentError(f"plane spec lacks {sorted(missing)}")
    for key in ("base", "d1", "d2"):
        if len(fields[key]) != n_vertices:
            raise DocumentError(f"plane {key} needs {n_vertices} entries")
    window = fields.get("window", (Fraction(-1), Fraction(1), Fraction(-1), Fraction(1)))
    if len(window) != 4:
        raise DocumentError("plane window needs 4 entries")
    return SlicePlane(
        base=fields["base"], d1=fields["d1"], d2=fields["d2"], window=tuple(window)
    )


def _parse_points(text: str):
    points = []
    for chunk in text.split(";"):
        if not chunk.strip():
            continue
        coords = _parse_fractions(chunk)
        if len(coords) != 2:
            raise DocumentError(f"point {chunk!r} is not planar")
        points.append(tuple(coords))
    if not points:
        raise DocumentError("no points given")
    return points


def _parse_label(text: str, n: int):
    parts = text.split(":")
    if len(parts) not in (3, 4):
        raise DocumentError(
            f"label {text!r} is not name:kind:K or name:kind:K:Kp"
        )
    name, kind = parts[0], parts[1]
    K = _parse_vertex_set(parts[2])
    Kp = _parse_vertex_set(parts[3]) if len(parts) == 4 else frozenset()
    return name, ConeSpec(kind=kind, n=n, K=K, Kp=Kp)


def _rs_of(type_text: str):
    return build_root_system(DynkinType.parse(type_text))


# -- subcommand bodies ---------------------------------------------------------

def _cmd_rootsys_show(args) -> int:
    rs = _rs_of(args.type)
    print(f"type {rs.dynkin.label()}")
    print(f"vertices {' '.join(str(v) for v in rs.vertices)}")
    print(f"delta {' '.join(str(d) for d in rs.delta)}")
    print(f"h {rs.h}")
    print(f"positive_roots {len(rs.positive_roots)}")
    print("affine_cartan")
    for row in rs.affine_cartan:
        print(" ".join(f"{x:3d}" for x in row))
    return 0


def _cmd_mckay_verify(args) -> int:
    spec = GroupSpec.parse(args.group)
    rs = _rs_of(args.type)
    data = build_mckay(spec)
    report = verify_correspondence(data, rs)
    print(f"group {spec.label()} order {data.order()}")
    print(f"type {rs.dynkin.label()}")
    print(f"sum_squares_ok {str(report.sum_squares_ok).lower()}")
    print(f"adjacency_ok {str(report.adjacency_ok).lower()}")
    print(f"dims_ok {str(report.dims_ok).lower()}")
    print("matching " + " ".join(f"{w}->{v}" for w, v in enumerate(report.matching)))
    return 0


def _cmd_theta_craw_wye(args) -> int:
    rs = _rs_of(args.type)
    J = _parse_vertex_set(args.J)
    theta = craw_wye_theta(rs, J, args.n)
    if args.out:
        _dump_json(theta_to_doc(theta), args.out)
    print(f"type {rs.dynkin.label()}")
    print(f"n {args.n}")
    for i in rs.vertices:
        print(f"{i} {theta.entries[i]}")
    print(f"inf {theta.theta_inf}")
    return 0


def _cmd_cone_check(args) -> int:
    theta = theta_from_doc(_load_json(args.theta))
    n = theta.context[0]
    cone = ConeSpec(
        kind=args.cone,
        n=n,
        K=_parse_vertex_set(args.K),
        Kp=_parse_vertex_set(args.Kp),
    )
    verdict = cone_membership(theta, cone, closed=args.closed)
    print(str(verdict).lower())
    return 0


def _cmd_walls_build(args) -> int:
    rs = _rs_of(args.type)
    arr = build_arrangement(rs, args.n)
    print(f"count {len(arr)}")
    for h in arr.hyperplanes:
        print(" ".join(str(c) for c in h.coeffs))
    return 0


def _cmd_walls_slice(args) -> int:
    rs = _rs_of(args.type)
    plane = (
        _parse_plane(args.plane, len(rs.vertices)) if args.plane else figure_plane(rs)
    )
    if args.label:
        labels = [_parse_label(text, args.n) for text in args.label]
    else:
        non_zero = [i for i in rs.vertices if i != 0]
        labels = []
        for mask in range(1 << len(non_zero)):
            K = frozenset(v for b, v in enumerate(non_zero) if mask >> b & 1)
            name = "C[" + ",".join(str(v) for v in sorted(K)) + "]"
            labels.append((name, ConeSpec(kind="C", n=args.n, K=K)))
        labels.sort(key=lambda pair: pair[0])
    result = render_slice(rs, args.n, plane, labels)
    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write(result.svg)
    if args.table:
        with open(args.table, "w", encoding="utf-8") as fh:
            fh.write(result.table)
    else:
        sys.stdout.write(result.table)
    labeled = sum(1 for cell in result.cells if cell.label != "-")
    print(f"cells {len(result.cells)} labeled {labeled}")
    return 0


def _cmd_rep_check(args) -> int:
    rep = rep_from_doc(_load_json(args.rep))
    defect = moment_defect(rep)
    for i in rep.quiver.rs.vertices:
        print(f"vertex {i}")
        mat = defect[i]
        if not mat:
            print("  (empty)")
        for row in mat:
            print("  " + " ".join(str(x) for x in row))
    print(f"module {str(is_pi_bar_module(rep)).lower()}")
    return 0


def _cmd_rep_orbit_sum(args) -> int:
    rs = _rs_of(args.type)
    field = _parse_field(args.field)
    points = _parse_points(args.points)
    if args.n is not None and args.n != len(points):
        raise DocumentError(f"-n {args.n} disagrees with {len(points)} points")
    rep = framed_orbit_sum(rs, points, field)
    _dump_json(rep_to_doc(rep, n=len(points)), args.out)
    return 0


def _cmd_stab_report(args) -> int:
    rep = rep_from_doc(_load_json(args.rep))
    theta = theta_from_doc(_load_json(args.theta))
    report = stability_report(rep, theta)
    print(f"semistable {str(report.semistable).lower()}")
    print(f"stable {str(report.stable).lower()}")
    if report.witness is None:
        print("witness -")
    else:
        dims = report.witness.dims
        print(
            "witness " + " ".join(str(x) for x in (dims.r,) + dims.v)
        )
    print(f"caveat {report.caveat}")
    return 0


def _cmd_stab_hn(args) -> int:
    rep = rep_from_doc(_load_json(args.rep))
    theta = theta_from_doc(_load_json(args.theta))
    filtration = hn_filtration(rep, theta)
    for k, layer in enumerate(filtration.layers):
        dims = " ".join(str(x) for x in (layer.dims.r,) + layer.dims.v)
        jh = ";".join(",".join(str(x) for x in key) for key in layer.jh_dims)
        print(f"layer {k} dims {dims} slope {layer.slope} jh {jh}")
    return 0


def _cmd_stab_tangent(args) -> int:
    rep = rep_from_doc(_load_json(args.rep))
    print(f"tangent {tangent_dimension(rep)}")
    return 0


# -- parser --------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="quiverstab",
        description="Exact chamber combinatorics and module stability checks "
        "for framed affine ADE quivers.",
    )
    sub = parser.add_subparsers(dest="group_cmd", required=True)

    p_root = sub.add_parser("rootsys", help="root system data")
    root_sub = p_root.add_subparsers(dest="cmd", required=True)
    p = root_sub.add_parser("show", help="print Cartan data for one type")
    p.add_argument("type")
    p.set_defaults(func=_cmd_rootsys_show)

    p_mckay = sub.add_parser("mckay", help="finite subgroups of SL(2, C)")
    mckay_sub = p_mckay.add_subparsers(dest="cmd", required=True)
    p = mckay_sub.add_parser("verify", help="check group data against a root system")
    p.add_argument("group", help="cyclic:<m>, bd:<m>, 2T, 2O, or 2I")
    p.add_argument("type")
    p.set_defaults(func=_cmd_mckay_verify)

    p_theta = sub.add_parser("theta", help="stability vectors")
    theta_sub = p_theta.add_subparsers(dest="cmd", required=True)
    p = theta_sub.add_parser("craw-wye", help="explicit chamber representative")
    p.add_argument("--type", required=True)
    p.add_argument("-n", type=int, required=True)
    p.add_argument("--J", required=True, help="comma list of vertices, must contain 0")
    p.add_argument("--out", help="also write a theta JSON document")
    p.set_defaults(func=_cmd_theta_craw_wye)

    p_cone = sub.add_parser("cone", help="cone membership")
    cone_sub = p_cone.add_subparsers(dest="cmd", required=True)
    p = cone_sub.add_parser("check", help="test a theta document against one cone")
    p.add_argument("--theta", required=True)
    p.add_argument("--cone", required=True, choices=["F", "C", "sigma", "sigmaKK"])
    p.add_argument("--K", default="", help="comma list of vertices")
    p.add_argument("--Kp", default="", help="comma list of vertices (sigmaKK only)")
    p.add_argument("--closed", action="store_true", help="test the closed cone")
    p.set_defaults(func=_cmd_cone_check)

    p_walls = sub.add_parser("walls", help="wall arrangements and slices")
    walls_sub = p_walls.add_subparsers(dest="cmd", required=True)
    p = walls_sub.add_parser("build", help="enumerate the wall normals")
    p.add_argument("--type", required=True)
    p.add_argument("-n", type=int, required=True)
    p.set_defaults(func=_cmd_walls_build)
    p = walls_sub.add_parser("slice", help="render a transversal slice")
    p.add_argument("--type", required=True)
    p.add_argument("-n", type=int, required=True)
    p.add_argument(
        "--plane",
        help="base=..;d1=..;d2=..[;window=smin,smax,tmin,tmax] with rational entries",
    )
    p.add_argument("--out", required=True, help="SVG output path")
    p.add_argument("--table", help="TSV cell table path (default: stdout)")
    p.add_argument(
        "--label",
        action="append",
        help="name:kind:K[:Kp], e.g. 'C+:C:1,2'; default labels every chamber",
    )
    p.set_defaults(func=_cmd_walls_slice)

    p_rep = sub.add_parser("rep", help="framed representations")
    rep_sub = p_rep.add_subparsers(dest="cmd", required=True)
    p = rep_sub.add_parser("check", help="print the relation defect of a document")
    p.add_argument("--rep", required=True)
    p.set_defaults(func=_cmd_rep_check)
    p = rep_sub.add_parser("orbit-sum", help="module of functions on free orbits")
    p.add_argument("--type", required=True)
    p.add_argument("-n", type=int, help="expected orbit count (checked against points)")
    p.add_argument("--points", required=True, help="x1,y1;x2,y2;...")
    p.add_argument("--field", default="Q", help="Q or F<p>")
    p.add_argument("--out", help="rep JSON output path (default: stdout)")
    p.set_defaults(func=_cmd_rep_orbit_sum)

    p_stab = sub.add_parser("stab", help="stability certification")
    stab_sub = p_stab.add_subparsers(dest="cmd", required=True)
    p = stab_sub.add_parser("report", help="(semi)stability with witness")
    p.add_argument("--rep", required=True)
    p.add_argument("--theta", required=True)
    p.set_defaults(func=_cmd_stab_report)
    p = stab_sub.add_parser("hn", help="Harder-Narasimhan filtration")
    p.add_argument("--rep", required=True)
    p.add_argument("--theta", required=True)
    p.set_defaults(func=_cmd_stab_hn)
    p = stab_sub.add_parser("tangent", help="moduli tangent dimension")
    p.add_argument("--rep", required=True)
    p.set_defaults(func=_cmd_stab_tangent)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except DomainError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
