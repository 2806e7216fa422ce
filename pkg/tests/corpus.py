"""Deterministic module corpus for stability tests.

Modules of dimension (1, n*delta) over F_3 for types A1 and A2, n <= 2,
built as gauge-conjugated combinations of orbit modules, broken-framing
variants, and zero-arrow summands.  Every module is produced from integer
data over the rationals first and reduced mod 3, so the construction also
exercises reduction.  The recipe is seeded and reproducible.
"""

from __future__ import annotations

import random

from quiverstab import (
    DimVector,
    DynkinType,
    FramedRep,
    build_root_system,
    direct_sum,
    framed_orbit_sum,
    framed_quiver,
    gauge_conjugate,
    reduce_rep,
)
from quiverstab.fieldops import QQ

P = 3

# integer points whose orbit invariants (x^m, x*y, y^m) stay pairwise
# distinct after reduction mod 3
POINT_POOL = {
    "A1": [(1, 0), (0, 1), (1, 1), (1, 2)],
    "A2": [(1, 0), (0, 1), (1, 1), (2, 1)],
}


def _rs(label):
    return build_root_system(DynkinType.parse(label))


def unframed_orbit(rs, point):
    """Orbit module with the framing stripped: dimension (0, delta) over Q."""
    framed = framed_orbit_sum(rs, [point], QQ)
    dims = DimVector(0, framed.dims.v)
    matrices = {
        label: mat
        for label, mat in framed.matrices.items()
        if label not in ("b", "b*")
    }
    return FramedRep(framed.quiver, QQ, dims, matrices)


def zero_summand(rs):
    """The zero representation of dimension (0, delta) over Q."""
    return FramedRep(framed_quiver(rs), QQ, DimVector(0, rs.delta), {})


def _random_gauge(rng, rep):
    field = rep.field
    gauge = {}
    for i in rep.quiver.rs.vertices:
        d = rep.dims.v[i]
        if d == 0:
            continue
        from quiverstab.fieldops import invert

        while True:
            g = tuple(
                tuple(rng.randrange(field.p) for _ in range(d)) for _ in range(d)
            )
            if invert(field, g) is not None:
                gauge[i] = g
                break
    return gauge


def build_corpus(count: int, seed: int = 20240615):
    """Return ``count`` tuples (label, type label, n, rep over F_3)."""
    rng = random.Random(seed)
    out = []
    idx = 0
    while len(out) < count:
        type_label = ("A1", "A2")[idx % 2]
        n = 1 + (idx // 2) % 2
        rs = _rs(type_label)
        pool = POINT_POOL[type_label]
        points = pool[: n]
        variant = idx % 5
        if variant == 0:
            rep_q = framed_orbit_sum(rs, points, QQ)
            label = "orbit"
        elif variant == 1:
            rep_q = framed_orbit_sum(rs, points, QQ)
            zero_b = tuple((0,) for _ in range(rep_q.dims.v[0]))
            rep_q = rep_q.with_matrix("b", zero_b)
            label = "broken-framing"
        elif variant == 2 and n == 2:
            rep_q = direct_sum(
                [framed_orbit_sum(rs, points[:1], QQ), unframed_orbit(rs, points[1])]
            )
            label = "framed-plus-unframed"
        elif variant == 3 and n == 2:
            rep_q = direct_sum(
                [framed_orbit_sum(rs, points[:1], QQ), zero_summand(rs)]
            )
            label = "framed-plus-zero"
        else:
            rep_q = framed_orbit_sum(rs, points, QQ)
            label = "orbit"
        rep = reduce_rep(rep_q, P)
        if idx % 3 == 1:
            rep = gauge_conjugate(rep, _random_gauge(rng, rep))
            label += "+gauge"
        out.append((label, type_label, n, rep))
        idx += 1
    return out
