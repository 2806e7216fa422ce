"""Wall hyperplanes, sign vectors, exact feasibility, and slice figures.

The arrangement collects the isotropic wall and every wall of the form
(m * delta +- alpha) for 0 <= m < n over the finite positive roots, as
primitive sign-normalized integer normals.  Feasibility of inequality
systems is decided by Fourier-Motzkin elimination over the rationals with
strictness tracking, which doubles as a witness generator for chamber and
cone membership.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from . import geom2d
from .errors import ContextMismatch, DegeneratePlane
from .fieldops import QQ, mat_coerce, nullspace
from .rootsys import RootLatticeVector, RootSystem, m_delta_plus_root
from .stability import StabilityVector, cone_membership, make_theta


@dataclass(frozen=True)
class Hyperplane:
    """A wall, stored as a primitive integer normal with normalized sign."""

    normal: RootLatticeVector

    @classmethod
    def from_coeffs(cls, rs: RootSystem, coeffs) -> "Hyperplane":
        coeffs = [int(c) for c in coeffs]
        content = 0
        for c in coeffs:
            content = gcd(content, abs(c))
        if content == 0:
            raise ValueError("zero normal vector")
        coeffs = [c // content for c in coeffs]
        lead = next(c for c in coeffs if c != 0)
        if lead < 0:
            coeffs = [-c for c in coeffs]
        return cls(RootLatticeVector(rs, tuple(coeffs)))

    @property
    def coeffs(self):
        return self.normal.coeffs


@dataclass(frozen=True)
class Arrangement:
    rs: RootSystem
    n: int
    hyperplanes: tuple

    def __len__(self):
        return len(self.hyperplanes)


def build_arrangement(rs: RootSystem, n: int) -> Arrangement:
    """Enumerate delta and m*delta +- alpha for 0 <= m < n, dedupe, sort."""
    if n < 1:
        raise ContextMismatch("n must be at least 1")
    normals = {Hyperplane.from_coeffs(rs, rs.delta)}
    for m in range(n):
        for alpha in rs.positive_roots:
            for sign in (1, -1):
                vec = m_delta_plus_root(rs, m, alpha, sign)
                normals.add(Hyperplane.from_coeffs(rs, vec.coeffs))
    ordered = sorted(normals, key=lambda h: h.coeffs)
    return Arrangement(rs=rs, n=n, hyperplanes=tuple(ordered))


def sign_vector(arr: Arrangement, theta: StabilityVector):
    """Signs of the pairings with every wall, in arrangement order."""
    expected = tuple(arr.n * d for d in arr.rs.delta)
    if theta.context != expected:
        raise ContextMismatch("stability context does not match the arrangement")
    out = []
    for h in arr.hyperplanes:
        val = theta.value(h.coeffs)
        out.append("+" if val > 0 else "-" if val < 0 else "0")
    return tuple(out)


def sign_string(signs) -> str:
    return "".join(signs)


# -- exact Fourier-Motzkin ----------------------------------------------------

def _normalize(coeffs, rel, rhs):
    denoms = [Fraction(c).denominator for c in coeffs] + [Fraction(rhs).denominator]
    scale = 1
    for d in denoms:
        scale = scale * d // gcd(scale, d)
    ints = [int(Fraction(c) * scale) for c in coeffs]
    rint = int(Fraction(rhs) * scale)
    content = abs(rint)
    for c in ints:
        content = gcd(content, abs(c))
    if content > 1:
        ints = [c // content for c in ints]
        rint //= content
    return (tuple(ints), rel, rint)


def _combine(lower, upper, var):
    cl, rl, bl = lower
    cu, ru, bu = upper
    lam, mu = -cu[var], cl[var]
    coeffs = tuple(lam * a + mu * b for a, b in zip(cl, cu))
    rhs = lam * bl + mu * bu
    rel = ">" if ">" in (rl, ru) else ">="
    return _normalize(coeffs, rel, rhs)


def _feasible_point(constraints, nvars):
    """A rational point satisfying all (coeffs, rel, rhs) rows, or None.

    Equalities are removed by substitution first, then the inequalities by
    Fourier-Motzkin; the witness is rebuilt by back-substitution and checked
    against every original row.
    """
    original = [_normalize(c, r, b) for c, r, b in constraints]
    rows = list(original)

    substitutions = []  # (var, pivot coeff, remaining coeffs, rhs)
    while True:
        eq = next(
            (row for row in rows if row[1] == "=" and any(row[0])), None
        )
        if eq is None:
            break
        rows.remove(eq)
        coeffs, _, rhs = eq
        var = next(i for i, c in enumerate(coeffs) if c != 0)
        substitutions.append((var, coeffs, rhs))
        new_rows = []
        for c, rel, b in rows:
            if c[var] == 0:
                new_rows.append((c, rel, b))
                continue
            # scale so the pivot cancels: coeffs[var] * row - c[var] * eq
            lam, mu = coeffs[var], c[var]
            merged = tuple(lam * x - mu * y for x, y in zip(c, coeffs))
            rhs2 = lam * b - mu * rhs
            if lam < 0:
                merged = tuple(-x for x in merged)
                rhs2 = -rhs2
            new_rows.append(_normalize(merged, rel, rhs2))
        rows = new_rows

    for c, rel, b in rows:
        if rel == "=" and not any(c) and b != 0:
            return None

    rows = [row for row in rows if row[1] != "="]

    def trivially(row):
        c, rel, b = row
        if any(c):
            return None
        if rel == ">":
            return b < 0
        return b <= 0

    stages = []
    pending = []
    for row in rows:
        t = trivially(row)
        if t is False:
            return None
        if t is None:
            pending.append(row)
    rows = sorted(set(pending))

    while True:
        active = sorted({i for c, _, _ in rows for i, x in enumerate(c) if x != 0})
        if not active:
            break
        # Chernikov rule: eliminate the variable with the fewest pairings
        def cost(v):
            pos = sum(1 for c, _, _ in rows if c[v] > 0)
            neg = sum(1 for c, _, _ in rows if c[v] < 0)
            return (pos * neg, v)

        var = min(active, key=cost)
        stages.append((var, rows))
        lowers = [row for row in rows if row[0][var] > 0]
        uppers = [row for row in rows if row[0][var] < 0]
        others = [row for row in rows if row[0][var] == 0]
        fresh = set(others)
        for lo in lowers:
            for up in uppers:
                row = _combine(lo, up, var)
                t = trivially(row)
                if t is False:
                    return None
                if t is None:
                    fresh.add(row)
        rows = sorted(fresh)

    values = [Fraction(0)] * nvars
    for var, system in reversed(stages):
        best_lo = None  # (value, strict)
        best_hi = None
        for c, rel, b in system:
            if c[var] == 0:
                continue
            rest = sum(
                (Fraction(x) * values[i] for i, x in enumerate(c) if i != var),
                Fraction(0),
            )
            bound = (Fraction(b) - rest) / c[var]
            strict = rel == ">"
            if c[var] > 0:
                if best_lo is None or bound > best_lo[0] or (
                    bound == best_lo[0] and strict
                ):
                    best_lo = (bound, strict)
            else:
                if best_hi is None or bound < best_hi[0] or (
                    bound == best_hi[0] and strict
                ):
                    best_hi = (bound, strict)
        if best_lo is None and best_hi is None:
            values[var] = Fraction(0)
        elif best_hi is None:
            values[var] = best_lo[0] + 1
        elif best_lo is None:
            values[var] = best_hi[0] - 1
        elif best_lo[0] < best_hi[0]:
            values[var] = (best_lo[0] + best_hi[0]) / 2
        else:
            if best_lo[0] > best_hi[0] or best_lo[1] or best_hi[1]:
                raise AssertionError("elimination certified an infeasible stage")
            values[var] = best_lo[0]

    for var, coeffs, rhs in reversed(substitutions):
        rest = sum(
            (Fraction(x) * values[i] for i, x in enumerate(coeffs) if i != var),
            Fraction(0),
        )
        values[var] = (Fraction(rhs) - rest) / coeffs[var]

    for c, rel, b in original:
        val = sum((Fraction(x) * values[i] for i, x in enumerate(c)), Fraction(0))
        ok = val > b if rel == ">" else val >= b if rel == ">=" else val == b
        if not ok:
            raise AssertionError("witness fails a constraint it was built from")
    return values


def _as_triples(constraints):
    out = []
    for row in constraints:
        if len(row) == 2:
            coeffs, rel = row
            rhs = 0
        else:
            coeffs, rel, rhs = row
        out.append((tuple(coeffs), rel, rhs))
    return out


def interior_point(rs: RootSystem, n: int, constraints):
    """Exact rational witness of a linear system over the vertex entries.

    Constraints are (coeffs, rel) or (coeffs, rel, rhs) with rel one of
    ">", ">=", "=".  Returns a stability vector with context n * delta, or
    None when the system is infeasible.
    """
    values = _feasible_point(_as_triples(constraints), len(rs.vertices))
    if values is None:
        return None
    return make_theta(rs, tuple(n * d for d in rs.delta), values)


def _equality_directions(rs, constraints):
    eqs = [tuple(c) for c, rel, _ in _as_triples(constraints) if rel == "="]
    if not eqs:
        from .fieldops import identity

        return identity(QQ, len(rs.vertices))
    return nullspace(QQ, mat_coerce(QQ, eqs), len(rs.vertices))


def _check_triples(theta: StabilityVector, triples) -> bool:
    for c, rel, b in triples:
        val = theta.value(c)
        ok = val > b if rel == ">" else val >= b if rel == ">=" else val == b
        if not ok:
            return False
    return True


def generic_relint_point(rs: RootSystem, n: int, constraints, avoid):
    """A witness whose pairing vanishes only where the system forces it.

    ``avoid`` is a list of coefficient vectors; the returned point pairs to
    zero exactly with those forced to zero on the whole solution set.
    Returns (theta, forced) or (None, ()) when infeasible.
    """
    triples = _as_triples(constraints)
    base = interior_point(rs, n, triples)
    if base is None:
        return None, ()
    dirs = _equality_directions(rs, triples)
    forced = tuple(
        tuple(c)
        for c in avoid
        if base.value(c) == 0
        and all(sum(Fraction(x) * d[i] for i, x in enumerate(c)) == 0 for d in dirs)
    )
    forced_set = set(forced)
    must_miss = [tuple(c) for c in avoid if tuple(c) not in forced_set]

    def zeros_ok(theta):
        return all(theta.value(c) != 0 for c in must_miss)

    if zeros_ok(base):
        return base, forced
    context = tuple(n * d for d in rs.delta)
    for t in range(1, 12):
        drift = [
            sum(Fraction(t) ** k * d[i] for k, d in enumerate(dirs))
            for i in range(len(rs.vertices))
        ]
        eps = Fraction(1, 2)
        for _ in range(40):
            cand = make_theta(
                rs,
                context,
                [e + eps * g for e, g in zip(base.entries, drift)],
            )
            if _check_triples(cand, triples) and zeros_ok(cand):
                return cand, forced
            eps /= 2
    raise AssertionError("could not move the witness off the avoided walls")


def sample_interior_points(rs: RootSystem, n: int, constraints, count: int, seed: int):
    """Deterministic list of distinct exact points of a feasible system.

    Perturbs a Fourier-Motzkin witness inside the solution set and keeps
    candidates that re-verify against every constraint exactly.
    """
    triples = _as_triples(constraints)
    base = interior_point(rs, n, triples)
    if base is None:
        return []
    dirs = _equality_directions(rs, triples)
    context = tuple(n * d for d in rs.delta)
    rng = random.Random(seed)
    out = [base]
    seen = {base.entries}
    scale = Fraction(1)
    failures = 0
    while len(out) < count:
        drift = [Fraction(0)] * len(rs.vertices)
        for d in dirs:
            w = Fraction(rng.randint(-9, 9), rng.randint(1, 9)) * scale
            drift = [x + w * y for x, y in zip(drift, d)]
        cand = make_theta(
            rs, context, [e + g for e, g in zip(base.entries, drift)]
        )
        if cand.entries not in seen and _check_triples(cand, triples):
            out.append(cand)
            seen.add(cand.entries)
            failures = 0
        else:
            failures += 1
            if failures > 20:
                scale /= 2
                failures = 0
        if scale < Fraction(1, 2 ** 40):
            raise AssertionError("sampler failed to find enough interior points")
    return out


# -- transversal slices -------------------------------------------------------

@dataclass(frozen=True)
class SlicePlane:
    """An affine 2-plane base + s*d1 + t*d2 with an (s, t) view window."""

    base: tuple
    d1: tuple
    d2: tuple
    window: tuple  # (smin, smax, tmin, tmax)

    def theta_entries(self, s: Fraction, t: Fraction):
        return tuple(
            Fraction(b) + s * Fraction(x) + t * Fraction(y)
            for b, x, y in zip(self.base, self.d1, self.d2)
        )


def figure_plane(rs: RootSystem) -> SlicePlane:
    """The standard simplex slice through the fundamental cone.

    The apex of the cone with all non-extending entries zero sits at the
    (s, t) origin, and the two extreme isotropic rays hit (1, 0) and (0, 1).
    """
    n_vertices = len(rs.vertices)
    margin = Fraction(1, 5)
    if n_vertices == 2:
        return SlicePlane(
            base=(Fraction(0), Fraction(0)),
            d1=(Fraction(1), Fraction(0)),
            d2=(Fraction(0), Fraction(1)),
            window=(-1 - margin, 1 + margin, -1 - margin, 1 + margin),
        )
    apex = tuple(Fraction(1 if i == 0 else 0) for i in range(n_vertices))
    top1 = [Fraction(-1)] + [Fraction(0)] * (n_vertices - 1)
    top2 = [Fraction(-1)] + [Fraction(0)] * (n_vertices - 1)
    top1[1] = Fraction(1)
    top2[n_vertices - 1] = Fraction(1)
    d1 = tuple(a - b for a, b in zip(top1, apex))
    d2 = tuple(a - b for a, b in zip(top2, apex))
    return SlicePlane(
        base=apex,
        d1=d1,
        d2=d2,
        window=(-margin, 1 + margin, -margin, 1 + margin),
    )


@dataclass(frozen=True)
class SliceCell:
    cell_id: int
    vertices: tuple
    theta: StabilityVector
    signs: tuple
    label: str


@dataclass(frozen=True)
class SliceResult:
    arrangement: Arrangement
    plane: SlicePlane
    cells: tuple
    svg: str
    table: str


_PALETTE = ("#f4a259", "#8cb369", "#5b8e7d", "#bc4b51", "#f4e285", "#a26769")


def render_slice(rs: RootSystem, n: int, plane: SlicePlane, labels) -> SliceResult:
    """Intersect the walls with the plane, fill labeled cells, emit SVG + TSV.

    ``labels`` is a sequence of (name, ConeSpec) pairs; each open cell gets
    the first label whose membership test passes at the cell's exact
    centroid.  The SVG canvas is fixed at 600 x 600 with three-decimal
    coordinates, so identical inputs give identical bytes.
    """
    arr = build_arrangement(rs, n)
    lines = []
    for h in arr.hyperplanes:
        a = sum(Fraction(c) * d for c, d in zip(h.coeffs, plane.d1))
        b = sum(Fraction(c) * d for c, d in zip(h.coeffs, plane.d2))
        c0 = sum(Fraction(c) * q for c, q in zip(h.coeffs, plane.base))
        if a == 0 and b == 0:
            if c0 == 0:
                raise DegeneratePlane(
                    f"wall {h.coeffs} contains the whole slice plane"
                )
            continue  # wall misses the plane entirely
        lines.append((a, b, c0))

    cycles = geom2d.arrangement_cells(lines, plane.window)
    context = tuple(n * d for d in rs.delta)
    cells = []
    for idx, cycle in enumerate(cycles):
        s, t = geom2d.centroid(cycle)
        theta = make_theta(rs, context, plane.theta_entries(s, t))
        signs = sign_vector(arr, theta)
        label = "-"
        for name, cone in labels:
            if cone_membership(theta, cone):
                label = name
                break
        cells.append(
            SliceCell(
                cell_id=idx,
                vertices=cycle,
                theta=theta,
                signs=signs,
                label=label,
            )
        )

    table_lines = ["cell\tsigns\tlabel"]
    for cell in cells:
        table_lines.append(
            f"{cell.cell_id}\t{sign_string(cell.signs)}\t{cell.label}"
        )
    table = "\n".join(table_lines) + "\n"

    svg = _slice_svg(plane, cells, [name for name, _ in labels])
    return SliceResult(
        arrangement=arr, plane=plane, cells=tuple(cells), svg=svg, table=table
    )


def _slice_svg(plane: SlicePlane, cells, label_names) -> str:
    smin, smax, tmin, tmax = (Fraction(x) for x in plane.window)
    size = 600

    def px(point):
        s, t = point
        x = float((s - smin) / (smax - smin)) * size
        y = size - float((t - tmin) / (tmax - tmin)) * size
        return f"{x:.3f},{y:.3f}"

    color_of = {
        name: _PALETTE[i % len(_PALETTE)] for i, name in enumerate(label_names)
    }
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{size}" height="{size}" viewBox="0 0 {size} {size}">',
        f'<rect width="{size}" height="{size}" fill="#ffffff"/>',
    ]
    for cell in cells:
        points = " ".join(px(p) for p in cell.vertices)
        fill = color_of.get(cell.label, "none")
        parts.append(
            f'<polygon points="{points}" fill="{fill}" '
            f'stroke="#333333" stroke-width="1"/>'
        )
    for cell in cells:
        if cell.label == "-":
            continue
        s, t = geom2d.centroid(cell.vertices)
        x = float((s - smin) / (smax - smin)) * size
        y = size - float((t - tmin) / (tmax - tmin)) * size
        parts.append(
            f'<text x="{x:.3f}" y="{y:.3f}" font-family="monospace" '
            f'font-size="14" text-anchor="middle">{cell.label}</text>'
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
