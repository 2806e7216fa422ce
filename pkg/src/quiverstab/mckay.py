"""Finite subgroups of SL(2, C), their character tables, and McKay graphs.

Groups are enumerated as explicit 2x2 complex matrices generated from
fixed generator sets (floating point with ~15 significant digits; every
final integer output is recovered by rounding with a 1e-6 guard).
Character tables are computed from the class algebra: the class-sum
structure constants are exact integers, and the common eigenvectors of
the class-multiplication matrices give the central characters, hence the
irreducible characters after integrality normalization.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidRank, NoIsomorphism, RoundingFailure
from .rootsys import DynkinType, RootSystem

_KEY_DIGITS = 9
_MATCH_TOL = 1e-9
_INT_TOL = 1e-6

_FAMILIES = (
    "cyclic",
    "binary_dihedral",
    "binary_tetrahedral",
    "binary_octahedral",
    "binary_icosahedral",
)


@dataclass(frozen=True)
class GroupSpec:
    """One of the finite subgroups of SL(2, C), up to conjugacy."""

    family: str
    m: int = 0

    def __post_init__(self):
        if self.family not in _FAMILIES:
            raise InvalidRank(f"unknown group family {self.family!r}")
        if self.family == "cyclic" and self.m < 2:
            raise InvalidRank("cyclic groups need m >= 2")
        if self.family == "binary_dihedral" and self.m < 2:
            raise InvalidRank("binary dihedral groups need m >= 2")

    def order(self) -> int:
        return {
            "cyclic": self.m,
            "binary_dihedral": 4 * self.m,
            "binary_tetrahedral": 24,
            "binary_octahedral": 48,
            "binary_icosahedral": 120,
        }[self.family]

    def designated_dynkin(self) -> DynkinType:
        """The ADE type whose affine diagram should equal the McKay graph."""
        if self.family == "cyclic":
            return DynkinType("A", self.m - 1)
        if self.family == "binary_dihedral":
            return DynkinType("D", self.m + 2)
        return DynkinType(
            "E",
            {"binary_tetrahedral": 6, "binary_octahedral": 7, "binary_icosahedral": 8}[
                self.family
            ],
        )

    def label(self) -> str:
        if self.family == "cyclic":
            return f"cyclic:{self.m}"
        if self.family == "binary_dihedral":
            return f"bd:{self.m}"
        return {"binary_tetrahedral": "2T", "binary_octahedral": "2O", "binary_icosahedral": "2I"}[
            self.family
        ]

    @classmethod
    def parse(cls, text: str) -> "GroupSpec":
        text = text.strip()
        if text.lower().startswith("cyclic:"):
            return cls("cyclic", int(text.split(":", 1)[1]))
        if text.lower().startswith("bd:"):
            return cls("binary_dihedral", int(text.split(":", 1)[1]))
        named = {
            "2t": "binary_tetrahedral",
            "2o": "binary_octahedral",
            "2i": "binary_icosahedral",
        }
        if text.lower() in named:
            return cls(named[text.lower()])
        raise InvalidRank(f"cannot parse group spec {text!r}")


# -- matrices as ((a, b), (c, d)) complex tuples ------------------------------

def _mat_mul(x, y):
    return (
        (x[0][0] * y[0][0] + x[0][1] * y[1][0], x[0][0] * y[0][1] + x[0][1] * y[1][1]),
        (x[1][0] * y[0][0] + x[1][1] * y[1][0], x[1][0] * y[0][1] + x[1][1] * y[1][1]),
    )


def _mat_inv(x):
    # determinant one throughout, so the adjugate is the inverse
    return ((x[1][1], -x[0][1]), (-x[1][0], x[0][0]))


def _key(x):
    return tuple(
        (round(v.real, _KEY_DIGITS), round(v.imag, _KEY_DIGITS))
        for row in x
        for v in row
    )


def _close(x, y, tol):
    return all(
        abs(a - b) <= tol for ra, rb in zip(x, y) for a, b in zip(ra, rb)
    )


def _quat(a, b, c, d):
    """SU(2) matrix of the unit quaternion a + bi + cj + dk."""
    return ((complex(a, b), complex(c, d)), (complex(-c, d), complex(a, -b)))


def _generators(spec: GroupSpec):
    if spec.family == "cyclic":
        z = cmath.exp(2j * cmath.pi / spec.m)
        return [((z, 0), (0, 1 / z))]
    if spec.family == "binary_dihedral":
        z = cmath.exp(2j * cmath.pi / (2 * spec.m))
        return [((z, 0), (0, 1 / z)), ((0, 1), (-1, 0))]
    i_mat = _quat(0, 1, 0, 0)
    j_mat = _quat(0, 0, 1, 0)
    omega = _quat(-0.5, 0.5, 0.5, 0.5)
    if spec.family == "binary_tetrahedral":
        return [i_mat, j_mat, omega]
    if spec.family == "binary_octahedral":
        s = 1 / math.sqrt(2)
        return [i_mat, j_mat, omega, _quat(s, s, 0, 0)]
    phi = (1 + math.sqrt(5)) / 2
    return [i_mat, j_mat, omega, _quat(0, 0.5, 1 / (2 * phi), phi / 2)]


def _enumerate_group(spec: GroupSpec):
    gens = _generators(spec)
    seen = {_key(((1, 0), (0, 1))): ((complex(1), complex(0)), (complex(0), complex(1)))}
    boundary = list(seen.values())
    while boundary:
        fresh = []
        for g in gens:
            for x in boundary:
                y = _mat_mul(g, x)
                k = _key(y)
                if k not in seen:
                    seen[k] = y
                    fresh.append(y)
        boundary = fresh
        if len(seen) > 4 * spec.order():
            raise RoundingFailure("group closure did not terminate at the expected order")
    elements = sorted(seen.values(), key=_key)
    if len(elements) != spec.order():
        raise RoundingFailure(
            f"enumerated {len(elements)} elements, expected {spec.order()}"
        )
    for idx, g in enumerate(elements):
        det = g[0][0] * g[1][1] - g[0][1] * g[1][0]
        if abs(det - 1) > _INT_TOL:
            raise RoundingFailure("generator table produced a non-SL(2) element")
        for other in elements[idx + 1 :]:
            if _close(g, other, _INT_TOL):
                raise RoundingFailure("two enumerated elements are numerically equal")
    return elements


def _conjugacy_classes(elements):
    index_of = {_key(g): i for i, g in enumerate(elements)}
    unassigned = set(range(len(elements)))
    classes = []
    while unassigned:
        seed = min(unassigned, key=lambda i: _key(elements[i]))
        orbit = {seed}
        work = [seed]
        while work:
            i = work.pop()
            for h in elements:
                c = _mat_mul(_mat_mul(h, elements[i]), _mat_inv(h))
                j = index_of[_key(c)]
                if j not in orbit:
                    orbit.add(j)
                    work.append(j)
        classes.append(tuple(sorted(orbit)))
        unassigned -= orbit
    identity = ((1, 0), (0, 1))
    classes.sort(
        key=lambda cls: (
            not _close(elements[cls[0]], identity, _MATCH_TOL),
            len(cls),
            _key(elements[cls[0]]),
        )
    )
    return tuple(classes)


def _class_structure_constants(elements, classes):
    index_of = {_key(g): i for i, g in enumerate(elements)}
    class_of = {}
    for ci, cls in enumerate(classes):
        for i in cls:
            class_of[i] = ci
    r = len(classes)
    a = [[[0] * r for _ in range(r)] for _ in range(r)]
    for ci, ca in enumerate(classes):
        for cj, cb in enumerate(classes):
            count = [0] * r
            for i in ca:
                for j in cb:
                    z = _mat_mul(elements[i], elements[j])
                    count[class_of[index_of[_key(z)]]] += 1
            for ck in range(r):
                size = len(classes[ck])
                if count[ck] % size != 0:
                    raise RoundingFailure("class algebra structure constants are inconsistent")
                a[ci][cj][ck] = count[ck] // size
    return a


def _character_table(spec, elements, classes):
    """Irreducible characters as a (class x irrep) float-complex table."""
    order = len(elements)
    r = len(classes)
    sizes = [len(c) for c in classes]
    structure = _class_structure_constants(elements, classes)
    mats = [np.array(structure[i], dtype=float) for i in range(r)]

    chars = None
    for attempt in range(8):
        rng = np.random.default_rng(2024 + attempt)
        coeffs = rng.standard_normal(r)
        combined = sum(c * m for c, m in zip(coeffs, mats))
        eigvals, eigvecs = np.linalg.eig(combined)
        gaps = np.abs(eigvals[:, None] - eigvals[None, :]) + np.eye(r)
        if gaps.min() < 1e-7:
            continue
        columns = []
        for idx in range(r):
            u = eigvecs[:, idx]
            u = u / u[0]  # identity class is first; central character is 1 there
            norm = sum(abs(u[j]) ** 2 / sizes[j] for j in range(r))
            dim = math.sqrt(order / norm)
            if abs(dim - round(dim)) > _INT_TOL:
                columns = None
                break
            chi = [dim * u[j] / sizes[j] for j in range(r)]
            columns.append(tuple(chi))
        if columns is not None:
            chars = columns
            break
    if chars is None:
        raise RoundingFailure("character eigenproblem did not separate")

    def dim_of(col):
        return int(round(col[0].real))

    def is_trivial(col):
        return all(abs(v - 1) < _INT_TOL for v in col)

    trivial = [col for col in chars if is_trivial(col)]
    if len(trivial) != 1:
        raise RoundingFailure("could not locate the trivial character")
    rest = sorted(
        (col for col in chars if not is_trivial(col)),
        key=lambda col: (
            dim_of(col),
            tuple((round(v.real, 6), round(v.imag, 6)) for v in col),
        ),
    )
    ordered = trivial + rest
    # table indexed class x irrep
    return tuple(tuple(ordered[w][k] for w in range(r)) for k in range(r))


@dataclass(frozen=True)
class McKayData:
    """Enumerated group, character table, and McKay graph adjacency.

    Irrep index 0 is the trivial representation; ``characters`` is indexed
    (class, irrep); ``adjacency`` counts occurrences of irrep j inside
    (standard 2-dim rep) tensor (irrep i).
    """

    spec: GroupSpec
    elements: tuple
    conjugacy_classes: tuple
    irrep_dims: tuple
    characters: tuple
    adjacency: tuple

    def order(self) -> int:
        return len(self.elements)


def build_mckay(spec: GroupSpec) -> McKayData:
    """Enumerate the group and compute its McKay correspondence data."""
    elements = _enumerate_group(spec)
    classes = _conjugacy_classes(elements)
    sizes = [len(c) for c in classes]
    order = len(elements)
    table = _character_table(spec, elements, classes)
    r = len(classes)

    dims = []
    for w in range(r):
        d = table[0][w]
        if abs(d.imag) > _INT_TOL or abs(d.real - round(d.real)) > _INT_TOL:
            raise RoundingFailure("irrep dimension is not an integer")
        dims.append(int(round(d.real)))
    if sum(d * d for d in dims) != order:
        raise RoundingFailure("sum of squared dimensions misses the group order")

    std = [
        elements[cls[0]][0][0] + elements[cls[0]][1][1] for cls in classes
    ]
    adjacency = []
    for i in range(r):
        row = []
        for j in range(r):
            s = sum(
                sizes[k] * table[k][i] * std[k] * table[k][j].conjugate()
                for k in range(r)
            ) / order
            if abs(s.imag) > _INT_TOL or abs(s.real - round(s.real)) > _INT_TOL:
                raise RoundingFailure("tensor multiplicity is not an integer")
            row.append(int(round(s.real)))
        adjacency.append(tuple(row))

    return McKayData(
        spec=spec,
        elements=tuple(elements),
        conjugacy_classes=classes,
        irrep_dims=tuple(dims),
        characters=table,
        adjacency=tuple(adjacency),
    )


@dataclass(frozen=True)
class CorrespondenceReport:
    adjacency_ok: bool
    dims_ok: bool
    sum_squares_ok: bool
    matching: tuple  # matching[irrep index] = affine vertex


def _isomorphisms(adj_a, adj_b):
    """All vertex bijections with sigma(0) = 0 carrying adj_a onto adj_b."""
    n = len(adj_a)
    if adj_a[0][0] != adj_b[0][0]:
        return
    sigma = [0] + [-1] * (n - 1)
    used = [False] * n
    used[0] = True

    def consistent(u, v):
        if adj_a[u][u] != adj_b[v][v]:
            return False
        for w in range(u):
            if adj_a[u][w] != adj_b[v][sigma[w]]:
                return False
        return True

    def rec(u):
        if u == n:
            yield tuple(sigma)
            return
        for v in range(1, n):
            if not used[v] and consistent(u, v):
                sigma[u] = v
                used[v] = True
                yield from rec(u + 1)
                used[v] = False
                sigma[u] = -1

    yield from rec(1)


def verify_correspondence(data: McKayData, rs: RootSystem) -> CorrespondenceReport:
    """Match the McKay graph against ``2*Id - affine Cartan`` of ``rs``.

    The matching fixes the trivial representation at the extending vertex 0
    and is found by adjacency-preserving search; it is canonical only up to
    diagram automorphism, so the report carries the matching actually used.
    """
    n = len(rs.vertices)
    if len(data.irrep_dims) != n:
        raise NoIsomorphism(
            f"{len(data.irrep_dims)} irreps cannot match {n} affine vertices"
        )
    target = tuple(
        tuple((2 if i == j else 0) - rs.affine_cartan[i][j] for j in range(n))
        for i in range(n)
    )
    sum_squares_ok = sum(d * d for d in rs.delta) == data.order()

    best = None
    for sigma in _isomorphisms(data.adjacency, target):
        dims_ok = all(
            data.irrep_dims[w] == rs.delta[sigma[w]] for w in range(n)
        )
        best = CorrespondenceReport(True, dims_ok, sum_squares_ok, sigma)
        if dims_ok:
            return best
    if best is None:
        raise NoIsomorphism("no adjacency isomorphism fixing the trivial vertex")
    return best


def projective_mckay(dynkin: DynkinType):
    """The two-vertex subset {0, r} when -1 lies in the matching subgroup.

    Present exactly in types A_n with n odd, D_n, and E_n; the companion
    vertex r is the middle of the chain in type A and the trivalent vertex
    otherwise.  Returns None when the group has no central involution.
    """
    if dynkin.family == "A":
        if dynkin.rank % 2 == 0:
            return None
        return (0, (dynkin.rank + 1) // 2)
    if dynkin.family == "D":
        return (0, dynkin.rank - 2)
    return (0, 4)
