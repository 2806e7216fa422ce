"""Finite and affine ADE root-system data.

Vertex numbering follows the Bourbaki convention for the finite diagram
(chain 1..n for type A; chain 1..n-1 with n forking off n-2 for type D;
chain 1,3,4,..,n with 2 attached to 4 for type E) and the extending
vertex is always index 0.  Positive roots of the finite system are
generated by closing the simple roots under all simple reflections.
All arithmetic is exact: integer vectors, Fraction solves.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import InvalidRank, MismatchedRootSystem
from . import fieldops


@dataclass(frozen=True)
class DynkinType:
    """A simply-laced Dynkin family and rank, e.g. DynkinType('D', 4)."""

    family: str
    rank: int

    def __post_init__(self):
        if self.family not in ("A", "D", "E"):
            raise InvalidRank(f"unknown family {self.family!r}")
        if self.rank < 1:
            raise InvalidRank("rank must be positive")
        if self.family == "D" and self.rank < 4:
            raise InvalidRank("type D requires rank >= 4")
        if self.family == "E" and self.rank not in (6, 7, 8):
            raise InvalidRank("type E requires rank in {6, 7, 8}")

    @classmethod
    def parse(cls, text: str) -> "DynkinType":
        text = text.strip()
        if len(text) < 2 or not text[1:].isdigit():
            raise InvalidRank(f"cannot parse Dynkin type {text!r}")
        return cls(text[0].upper(), int(text[1:]))

    def label(self) -> str:
        return f"{self.family}{self.rank}"


def _finite_edges(dynkin: DynkinType):
    """Edges of the finite Dynkin diagram on vertices 1..rank."""
    n = dynkin.rank
    if dynkin.family == "A":
        return [(i, i + 1) for i in range(1, n)]
    if dynkin.family == "D":
        return [(i, i + 1) for i in range(1, n - 1)] + [(n - 2, n)]
    chain = [1, 3, 4, 5, 6, 7, 8][: n - 1]
    return [(a, b) for a, b in zip(chain, chain[1:])] + [(2, 4)]


@dataclass(frozen=True)
class RootSystem:
    """Cartan data of one affine ADE diagram.

    Fields: ``vertices`` is the index tuple (0, 1, .., rank) with 0 the
    extending vertex; ``finite_cartan`` is indexed by 1..rank (as a tuple
    of row tuples); ``affine_cartan`` by all of ``vertices``;
    ``positive_roots`` are integer coefficient tuples over 1..rank;
    ``delta`` is the primitive isotropic vector over ``vertices`` with
    delta[0] == 1; ``h`` is the sum of its entries.
    """

    dynkin: DynkinType
    vertices: tuple
    finite_cartan: tuple
    affine_cartan: tuple
    positive_roots: tuple
    delta: tuple
    h: int

    def __eq__(self, other):
        return isinstance(other, RootSystem) and self.dynkin == other.dynkin

    def __hash__(self):
        return hash(self.dynkin)

    @property
    def rank(self) -> int:
        return self.dynkin.rank

    def affine_edges(self):
        """Edges (i, j, multiplicity) with i < j of the affine diagram."""
        out = []
        n = len(self.vertices)
        for i in range(n):
            for j in range(i + 1, n):
                m = -self.affine_cartan[i][j]
                if m > 0:
                    out.append((i, j, m))
        return out


@dataclass(frozen=True)
class RootLatticeVector:
    """An integer vector over the affine vertex set, e.g. m*delta + alpha."""

    rs: RootSystem
    coeffs: tuple

    def __post_init__(self):
        if len(self.coeffs) != len(self.rs.vertices):
            raise MismatchedRootSystem("coefficient length != vertex count")


def _simple_reflection_closure(cartan, rank: int):
    """Close the simple roots under simple reflections; keep positive vectors."""
    simples = [
        tuple(1 if j == i else 0 for j in range(rank)) for i in range(rank)
    ]
    found = set(simples)
    work = list(simples)
    while work:
        beta = work.pop()
        # pairing <beta, alpha_i^vee> = (C beta)_i in the simply-laced case
        cb = [sum(cartan[i][j] * beta[j] for j in range(rank)) for i in range(rank)]
        for i in range(rank):
            refl = list(beta)
            refl[i] -= cb[i]
            refl = tuple(refl)
            if all(c >= 0 for c in refl) and refl not in found:
                found.add(refl)
                work.append(refl)
    return tuple(sorted(found))


def build_root_system(dynkin: DynkinType) -> RootSystem:
    """Construct the full finite + affine Cartan data for one ADE type."""
    rank = dynkin.rank
    cartan = [[2 if i == j else 0 for j in range(rank)] for i in range(rank)]
    for a, b in _finite_edges(dynkin):
        cartan[a - 1][b - 1] = -1
        cartan[b - 1][a - 1] = -1
    cartan = tuple(tuple(row) for row in cartan)

    positive = _simple_reflection_closure(cartan, rank)
    highest = max(positive, key=lambda r: (sum(r), r))

    # Affine extension: the new row/column pairs against the highest root.
    n = rank + 1
    affine = [[0] * n for _ in range(n)]
    affine[0][0] = 2
    for i in range(rank):
        for j in range(rank):
            affine[i + 1][j + 1] = cartan[i][j]
        pairing = sum(cartan[i][j] * highest[j] for j in range(rank))
        affine[0][i + 1] = -pairing
        affine[i + 1][0] = -pairing
    affine = tuple(tuple(row) for row in affine)

    # delta spans the kernel of the affine Cartan matrix; normalize delta[0] = 1.
    kernel = fieldops.nullspace(fieldops.QQ, fieldops.mat_coerce(fieldops.QQ, affine), n)
    if len(kernel) != 1:
        raise InvalidRank("affine Cartan matrix has wrong corank")
    vec = kernel[0]
    scaled = [Fraction(c) / vec[0] for c in vec]
    if any(c.denominator != 1 or c <= 0 for c in scaled):
        raise InvalidRank("kernel vector is not a positive integer vector")
    delta = tuple(int(c) for c in scaled)

    return RootSystem(
        dynkin=dynkin,
        vertices=tuple(range(n)),
        finite_cartan=cartan,
        affine_cartan=affine,
        positive_roots=positive,
        delta=delta,
        h=sum(delta),
    )


def delta_vector(rs: RootSystem) -> RootLatticeVector:
    return RootLatticeVector(rs, rs.delta)


def embed_finite_root(rs: RootSystem, root) -> RootLatticeVector:
    """Lift a finite-root coefficient tuple over 1..rank to the affine basis."""
    if len(root) != rs.rank:
        raise MismatchedRootSystem("finite root has wrong length")
    return RootLatticeVector(rs, (0,) + tuple(root))


def m_delta_plus_root(rs: RootSystem, m: int, root, sign: int) -> RootLatticeVector:
    """The lattice vector m*delta + sign*alpha for a finite root alpha."""
    coeffs = [m * d for d in rs.delta]
    for i, c in enumerate(root):
        coeffs[i + 1] += sign * c
    return RootLatticeVector(rs, tuple(coeffs))


def pair(theta, beta: RootLatticeVector) -> Fraction:
    """Pairing of a stability vector with a root-lattice vector.

    Returns sum_i coeffs[i] * theta[i] over the affine vertex set; the
    derived entry of theta at the framing vertex never enters.
    """
    if theta.rs != beta.rs:
        raise MismatchedRootSystem("stability vector and root disagree on type")
    return sum(
        (Fraction(c) * t for c, t in zip(beta.coeffs, theta.entries)),
        Fraction(0),
    )
