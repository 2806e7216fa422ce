"""Exhaustive submodule lattices and exact stability certification.

Over a small prime field every submodule of a framed representation is a
sum of cyclic submodules, and a cyclic submodule is determined by a seed
vector supported at a single vertex (the vertex idempotents belong to the
path algebra).  The lattice is therefore enumerated from the per-vertex
projective seed vectors and closed under pairwise sums, which keeps the
search exact and exhaustive at desk scale.

Stability verdicts, Harder-Narasimhan filtrations, and destabilizer
witnesses all come from walking that lattice.  The verdicts certify the
prime-field reduction only; the report says so explicitly.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    IndexMismatch,
    LatticeTooLarge,
    NoFraming,
    NotAModule,
    UnsupportedField,
)
from .fieldops import PrimeField, Rationals, mat_vec, rank, rref
from .quiverrep import DimVector, FramedRep, INF, is_pi_bar_module, moment_defect
from .stability import StabilityVector, pair_dim

DEFAULT_DIM_CAPS = {2: 12, 3: 8, 5: 6}
DEFAULT_NODE_CAP = 4096


def _vertex_order(rep: FramedRep):
    return (INF,) + rep.quiver.rs.vertices


def spin(rep: FramedRep, seeds):
    """Smallest arrow-invariant per-vertex subspace family containing seeds.

    ``seeds`` is an iterable of (vertex, coefficient vector) pairs; the
    result maps each vertex to the reduced echelon basis of its component.
    """
    field = rep.field
    by_tail = {}
    for a in rep.quiver.arrows:
        by_tail.setdefault(a.tail, []).append(a)

    bases = {v: ([], []) for v in _vertex_order(rep)}
    work = []
    for vertex, vec in seeds:
        if vertex not in bases or len(vec) != rep.dims.at(vertex):
            raise IndexMismatch(f"seed at {vertex!r} has the wrong length")
        work.append((vertex, tuple(field.coerce(x) for x in vec)))

    from .fieldops import echelon_insert

    while work:
        vertex, vec = work.pop()
        rows, pivots = bases[vertex]
        if not echelon_insert(field, rows, pivots, vec):
            continue
        for a in by_tail.get(vertex, ()):
            if rep.dims.at(a.head) == 0:
                continue
            work.append((a.head, mat_vec(field, rep.matrix(a.label), vec)))
    return {v: tuple(rows) for v, (rows, _) in bases.items()}


def _signature(rep, family):
    return tuple(family[v] for v in _vertex_order(rep))


def _dims_of(rep, family) -> DimVector:
    r = len(family[INF])
    v = tuple(len(family[i]) for i in rep.quiver.rs.vertices)
    return DimVector(r, v)


@dataclass(frozen=True)
class SubmoduleNode:
    """One submodule: reduced echelon bases per vertex plus its dimensions."""

    bases: tuple  # rows per vertex, in (inf, 0, 1, ...) order
    dims: DimVector

    def basis_at(self, rep: FramedRep, vertex):
        return self.bases[_vertex_order(rep).index(vertex)]


@dataclass(frozen=True)
class SubmoduleLattice:
    rep: FramedRep
    nodes: tuple
    relations: tuple  # pairs (i, j) with node i properly contained in node j

    def __len__(self):
        return len(self.nodes)


def _contained(field, small, big) -> bool:
    from .fieldops import reduce_against

    for rows_s, rows_b in zip(small, big):
        if not rows_s:
            continue
        pivots = [next(j for j, x in enumerate(row) if not field.is_zero(x)) for row in rows_b] if rows_b else []
        for row in rows_s:
            residue = reduce_against(field, list(rows_b), pivots, row)
            if any(not field.is_zero(x) for x in residue):
                return False
    return True


def submodule_lattice(rep: FramedRep, dim_caps=None, node_cap: int = DEFAULT_NODE_CAP) -> SubmoduleLattice:
    """All submodules of a representation over a small prime field.

    Refuses (LatticeTooLarge) rather than sampling whenever the total
    dimension exceeds the per-prime cap or the node count exceeds
    ``node_cap``, so a returned lattice is always complete.
    """
    field = rep.field
    if not isinstance(field, PrimeField):
        raise UnsupportedField("lattice enumeration requires a prime field")
    caps = dict(DEFAULT_DIM_CAPS)
    caps.update(dim_caps or {})
    cap = caps.get(field.p)
    if cap is None:
        raise LatticeTooLarge(f"no dimension cap configured for p = {field.p}")
    total = rep.dims.total()
    if total > cap:
        raise LatticeTooLarge(
            f"total dimension {total} exceeds the cap {cap} for p = {field.p}"
        )

    order = _vertex_order(rep)
    nodes = {}

    def add(family):
        sig = _signature(rep, family)
        if sig not in nodes:
            if len(nodes) >= node_cap:
                raise LatticeTooLarge(f"lattice exceeds {node_cap} nodes")
            nodes[sig] = family
            return sig
        return None

    add({v: () for v in order})
    fresh = []
    for vertex in order:
        d = rep.dims.at(vertex)
        for vec in itertools.product(range(field.p), repeat=d):
            lead = next((x for x in vec if x != 0), None)
            if lead != 1:  # one seed per line through the origin
                continue
            family = spin(rep, [(vertex, vec)])
            sig = add(family)
            if sig is not None:
                fresh.append(sig)

    def join(fam_a, fam_b):
        out = {}
        for v in order:
            rows, _ = rref(field, fam_a[v] + fam_b[v])
            out[v] = rows
        return out

    while fresh:
        frontier, fresh = fresh, []
        existing = list(nodes.keys())
        for sig_a in frontier:
            for sig_b in existing:
                joined = join(nodes[sig_a], nodes[sig_b])
                sig = add(joined)
                if sig is not None:
                    fresh.append(sig)

    families = sorted(
        nodes.values(),
        key=lambda fam: (_dims_of(rep, fam).total(), _dims_of(rep, fam).key(), _signature(rep, fam)),
    )
    node_objs = tuple(
        SubmoduleNode(bases=_signature(rep, fam), dims=_dims_of(rep, fam))
        for fam in families
    )
    relations = []
    for i, a in enumerate(node_objs):
        for j, b in enumerate(node_objs):
            if i == j or a.dims.total() > b.dims.total():
                continue
            if a.dims.total() == b.dims.total():
                continue
            if _contained(field, a.bases, b.bases):
                relations.append((i, j))
    return SubmoduleLattice(rep=rep, nodes=node_objs, relations=tuple(relations))


@dataclass(frozen=True)
class StabilityReport:
    semistable: bool
    stable: bool
    witness: object  # SubmoduleNode or None
    caveat: str


def stability_report(rep: FramedRep, theta: StabilityVector, dim_caps=None) -> StabilityReport:
    """Exhaustive (semi)stability check with a destabilizer witness.

    Semistable means every submodule pairs nonnegatively with theta;
    stable additionally requires strict positivity on proper nonzero
    submodules.  The witness is the first violating lattice node in
    (total dimension, dimension vector) order.
    """
    lattice = submodule_lattice(rep, dim_caps=dim_caps)
    whole = rep.dims.total()
    caveat = (
        f"verdict certifies the {rep.field.name}-reduction; "
        "characteristic-zero stability of a lift is not implied"
    )
    for node in lattice.nodes:
        if pair_dim(theta, node.dims) < 0:
            return StabilityReport(False, False, node, caveat)
    for node in lattice.nodes:
        if 0 < node.dims.total() < whole and pair_dim(theta, node.dims) == 0:
            return StabilityReport(True, False, node, caveat)
    return StabilityReport(True, True, None, caveat)


def is_framing_cyclic(rep: FramedRep) -> bool:
    """True when the framing line generates the whole representation."""
    if rep.dims.r != 1:
        raise NoFraming("the representation has no framing component")
    span = spin(rep, [(INF, (rep.field.one,))])
    return _dims_of(rep, span) == rep.dims


# -- subrepresentations and quotients (internal) ------------------------------

def _coords_in_rref(field, rows, vec):
    """Coordinates of vec in the span of reduced echelon rows (must lie in it)."""
    pivots = [next(j for j, x in enumerate(row) if not field.is_zero(x)) for row in rows]
    coords = tuple(vec[p] for p in pivots)
    residue = list(vec)
    for c, row in zip(coords, rows):
        residue = [field.sub(x, field.mul(c, y)) for x, y in zip(residue, row)]
    if any(not field.is_zero(x) for x in residue):
        raise AssertionError("vector is not in the subspace")
    return coords


def _subrep(rep: FramedRep, node: SubmoduleNode) -> FramedRep:
    field = rep.field
    order = _vertex_order(rep)
    basis = {v: node.bases[k] for k, v in enumerate(order)}
    dims = DimVector(node.dims.r, node.dims.v)
    matrices = {}
    for a in rep.quiver.arrows:
        rows_t = basis[a.tail]
        rows_h = basis[a.head]
        cols = []
        for row in rows_t:
            image = mat_vec(field, rep.matrix(a.label), row)
            cols.append(
                _coords_in_rref(field, rows_h, image) if rows_h else ()
            )
        matrices[a.label] = tuple(
            tuple(col[i] for col in cols) for i in range(len(rows_h))
        )
    return FramedRep(rep.quiver, field, dims, matrices)


def _quotient_rep(rep: FramedRep, node: SubmoduleNode):
    """Quotient representation and the per-vertex complement coordinates."""
    field = rep.field
    order = _vertex_order(rep)
    basis = {v: node.bases[k] for k, v in enumerate(order)}
    from .fieldops import reduce_against

    complements = {}
    for v in order:
        rows = basis[v]
        pivots = [next(j for j, x in enumerate(row) if not field.is_zero(x)) for row in rows]
        complements[v] = (
            [j for j in range(rep.dims.at(v)) if j not in set(pivots)],
            rows,
            pivots,
        )

    def project(v, vec):
        free, rows, pivots = complements[v]
        residue = reduce_against(field, list(rows), pivots, vec)
        return tuple(residue[j] for j in free)

    r = rep.dims.r - node.dims.r
    vq = tuple(
        rep.dims.v[i] - node.dims.v[i] for i in rep.quiver.rs.vertices
    )
    dims = DimVector(r, vq)
    matrices = {}
    for a in rep.quiver.arrows:
        free_t = complements[a.tail][0]
        cols = []
        for j in free_t:
            unit = tuple(
                field.one if k == j else field.zero
                for k in range(rep.dims.at(a.tail))
            )
            image = mat_vec(field, rep.matrix(a.label), unit)
            cols.append(project(a.head, image))
        m = dims.at(a.head)
        matrices[a.label] = tuple(
            tuple(col[i] for col in cols) for i in range(m)
        )
    return FramedRep(rep.quiver, field, dims, matrices)


# -- Harder-Narasimhan --------------------------------------------------------

@dataclass(frozen=True)
class HNLayer:
    dims: DimVector
    slope: Fraction
    jh_dims: tuple  # multiset of stable-factor dimension vectors, sorted


@dataclass(frozen=True)
class HNFiltration:
    layers: tuple

    def slopes(self):
        return tuple(layer.slope for layer in self.layers)


def _slope(theta: StabilityVector, dims: DimVector) -> Fraction:
    """Destabilization slope: the negated pairing per unit dimension.

    Semistability demands nonnegative pairings on submodules, so the
    destabilizing submodules are the ones with the most negative pairing;
    negating makes "larger slope = more destabilizing" and stable modules
    come out as a single filtration layer.
    """
    return Fraction(-pair_dim(theta, dims)) / dims.total()


def _max_destabilizer(lattice: SubmoduleLattice, theta: StabilityVector):
    best = None
    best_key = None
    for node in lattice.nodes:
        total = node.dims.total()
        if total == 0:
            continue
        key = (_slope(theta, node.dims), total, tuple(-x for x in node.dims.key()))
        if best_key is None or key > best_key:
            best, best_key = node, key
    return best


def _jh_dims(rep: FramedRep, theta: StabilityVector, slope: Fraction, dim_caps):
    """Dimension vectors of the stable factors of a semistable module."""
    out = []
    current = rep
    while current.dims.total() > 0:
        lattice = submodule_lattice(current, dim_caps=dim_caps)
        candidates = [
            node
            for node in lattice.nodes
            if node.dims.total() > 0 and _slope(theta, node.dims) == slope
        ]
        node = min(
            candidates, key=lambda n: (n.dims.total(), n.dims.key(), n.bases)
        )
        out.append(node.dims.key())
        current = _quotient_rep(current, node)
    return tuple(sorted(out))


def hn_filtration(rep: FramedRep, theta: StabilityVector, dim_caps=None) -> HNFiltration:
    """Harder-Narasimhan filtration by repeated maximal destabilization.

    Each step takes the submodule of maximal slope (negated pairing over
    total dimension), largest total dimension among ties, and recurses on
    the quotient, so slopes come out strictly decreasing and a stable
    module is a single layer.  Layers carry the dimension multiset of
    their stable factors.
    """
    layers = []
    current = rep
    while current.dims.total() > 0:
        lattice = submodule_lattice(current, dim_caps=dim_caps)
        node = _max_destabilizer(lattice, theta)
        slope = _slope(theta, node.dims)
        sub = _subrep(current, node)
        layers.append(
            HNLayer(
                dims=node.dims,
                slope=slope,
                jh_dims=_jh_dims(sub, theta, slope, dim_caps),
            )
        )
        current = _quotient_rep(current, node)
    return HNFiltration(layers=tuple(layers))


# -- tangent space ------------------------------------------------------------

def _defect_flat(rep: FramedRep):
    defect = moment_defect(rep)
    flat = []
    for i in rep.quiver.rs.vertices:
        for row in defect[i]:
            flat.extend(row)
    return flat


def tangent_dimension(rep: FramedRep) -> int:
    """Moduli tangent dimension at an exact module representation.

    Computes dim ker(relation linearization) minus the gauge dimension at
    the affine vertices plus the dimension of the joint stabilizer, all by
    exact rational elimination.
    """
    if not isinstance(rep.field, Rationals):
        raise UnsupportedField("tangent computation runs over the rationals")
    if not is_pi_bar_module(rep):
        raise NotAModule("relations do not vanish at this representation")
    field = rep.field

    labels = [a.label for a in rep.quiver.arrows]
    shapes = {
        a.label: (rep.dims.at(a.head), rep.dims.at(a.tail))
        for a in rep.quiver.arrows
    }
    base_flat = _defect_flat(rep)

    zeroed = FramedRep(rep.quiver, field, rep.dims, {})
    columns = []
    for label in labels:
        m, n = shapes[label]
        for i in range(m):
            for j in range(n):
                single = tuple(
                    tuple(
                        field.one if (r_, c_) == (i, j) else field.zero
                        for c_ in range(n)
                    )
                    for r_ in range(m)
                )
                bumped = [list(row) for row in rep.matrix(label)]
                bumped[i][j] = field.add(bumped[i][j], field.one)
                plus = rep.with_matrix(label, tuple(tuple(r) for r in bumped))
                pure = zeroed.with_matrix(label, single)
                # the relations are quadratic, so this difference is exactly
                # the directional derivative along the single-entry bump
                f_plus = _defect_flat(plus)
                f_pure = _defect_flat(pure)
                columns.append(
                    tuple(
                        field.sub(field.sub(p, b), q)
                        for p, b, q in zip(f_plus, base_flat, f_pure)
                    )
                )
    arrow_dim = len(columns)
    dmu_rank = rank(field, tuple(zip(*columns))) if columns else 0

    gauge_dim = sum(v * v for v in rep.dims.v)
    stab_cols = []
    for vertex in rep.quiver.rs.vertices:
        d = rep.dims.v[vertex]
        for i in range(d):
            for j in range(d):
                col = []
                for a in rep.quiver.arrows:
                    m, n = shapes[a.label]
                    x = rep.matrix(a.label)
                    block = [[field.zero] * n for _ in range(m)]
                    if a.head == vertex:
                        # (unit_ij @ x) has row i equal to row j of x
                        for c in range(n):
                            block[i][c] = field.add(block[i][c], x[j][c])
                    if a.tail == vertex:
                        # (x @ unit_ij) has column j equal to column i of x
                        for r in range(m):
                            block[r][j] = field.sub(block[r][j], x[r][i])
                    col.extend(v for row in block for v in row)
                stab_cols.append(tuple(col))
    stab_rank = rank(field, tuple(zip(*stab_cols))) if stab_cols else 0
    stab_dim = gauge_dim - stab_rank

    return (arrow_dim - dmu_rank) - gauge_dim + stab_dim
