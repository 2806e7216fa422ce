"""Stability vectors and the explicit chamber/cone inequality systems.

A stability vector is a rational vector over the affine vertices together
with a derived framing entry that makes it orthogonal to the dimension
vector (1, v).  Membership in the fundamental cone F, the chambers C_K,
and the boundary cones sigma_K / sigma_{K,K'} is decided by evaluating
the defining inequality systems exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from .errors import BadSubset, ContextMismatch, IndexMismatch
from .quiverrep import DimVector
from .rootsys import RootSystem


@dataclass(frozen=True)
class StabilityVector:
    """Entries over the affine vertices plus the derived framing entry."""

    rs: RootSystem
    context: tuple  # dimension vector v over the affine vertices
    entries: tuple  # exact rationals over the affine vertices
    theta_inf: Fraction

    def value(self, coeffs) -> Fraction:
        """Pairing with an integer coefficient vector over the affine vertices."""
        return sum(
            (Fraction(c) * t for c, t in zip(coeffs, self.entries)), Fraction(0)
        )

    def delta_value(self) -> Fraction:
        return self.value(self.rs.delta)


def make_theta(rs: RootSystem, v, entries) -> StabilityVector:
    """Build a stability vector; the framing entry balances (1, v) to zero."""
    v = tuple(int(x) for x in v)
    if len(v) != len(rs.vertices) or len(entries) != len(rs.vertices):
        raise IndexMismatch("context and entries must cover the affine vertices")
    ent = tuple(Fraction(x) for x in entries)
    theta_inf = -sum((Fraction(c) * t for c, t in zip(v, ent)), Fraction(0))
    return StabilityVector(rs=rs, context=v, entries=ent, theta_inf=theta_inf)


def pair_dim(theta: StabilityVector, d: DimVector) -> Fraction:
    """Pairing r * theta_inf + sum_i v_i * theta_i with a dimension vector."""
    if len(d.v) != len(theta.entries):
        raise IndexMismatch("dimension vector does not match the vertex set")
    return d.r * theta.theta_inf + theta.value(d.v)


@dataclass(frozen=True)
class ConeSpec:
    """One of the regions F, C_K, sigma_K, sigma_{K,K'} for a fixed n.

    ``kind`` is "F", "C", "sigma", or "sigmaKK"; K omits vertex 0 and
    K' is only meaningful for kind "sigmaKK".  The sigma kinds denote
    relative interiors unless membership is asked for the closed cone.
    """

    kind: str
    n: int
    K: frozenset = dc_field(default_factory=frozenset)
    Kp: frozenset = dc_field(default_factory=frozenset)

    def __post_init__(self):
        if self.kind not in ("F", "C", "sigma", "sigmaKK"):
            raise BadSubset(f"unknown cone kind {self.kind!r}")
        if self.n < 1:
            raise BadSubset("n must be positive")
        if 0 in self.K:
            raise BadSubset("K may not contain vertex 0")
        if not self.Kp <= self.K:
            raise BadSubset("K' must be a subset of K")


def cone_constraints(rs: RootSystem, cone: ConeSpec, closed: bool = False):
    """The defining linear system as (coeffs over vertices, relation) pairs.

    Relations are ">", ">=", or "="; all right-hand sides are zero.  With
    ``closed`` every strict inequality is relaxed.
    """
    n_vertices = len(rs.vertices)
    K = sorted(cone.K)
    if any(k not in rs.vertices for k in K):
        raise BadSubset("K contains unknown vertices")
    J = [i for i in rs.vertices if i not in cone.K]
    delta = rs.delta

    def unit(i):
        return tuple(1 if j == i else 0 for j in range(n_vertices))

    def delta_restricted(subset):
        return tuple(delta[i] if i in subset else 0 for i in range(n_vertices))

    def minus_scaled_delta(i, factor):
        return tuple(
            (1 if j == i else 0) - factor * delta[j] for j in range(n_vertices)
        )

    gt = ">=" if closed else ">"
    out = []
    if cone.kind == "F":
        out.append((delta_restricted(rs.vertices), ">="))
        for i in rs.vertices[1:]:
            out.append((unit(i), ">="))
        return out
    if cone.kind == "C":
        out.append((delta_restricted(J), gt))
        for j in J:
            if j != 0:
                out.append((minus_scaled_delta(j, cone.n - 1), gt))
        for k in K:
            out.append((unit(k), gt))
        return out
    if cone.kind == "sigma":
        eq, rest = K, []
    else:
        eq, rest = sorted(cone.Kp), sorted(cone.K - cone.Kp)
    for k in eq:
        out.append((unit(k), "="))
    for k in rest:
        out.append((unit(k), gt))
    out.append((delta_restricted(rs.vertices), gt))
    for j in J:
        if j != 0:
            out.append((minus_scaled_delta(j, cone.n - 1), gt))
    return out


def _satisfies(value: Fraction, rel: str) -> bool:
    if rel == ">":
        return value > 0
    if rel == ">=":
        return value >= 0
    return value == 0


def cone_membership(theta: StabilityVector, cone: ConeSpec, closed: bool = False) -> bool:
    """Evaluate the defining system of the cone at ``theta`` exactly."""
    expected = tuple(cone.n * d for d in theta.rs.delta)
    if theta.context != expected:
        raise ContextMismatch(
            f"stability context {theta.context} is not {cone.n} * delta"
        )
    return all(
        _satisfies(theta.value(coeffs), rel)
        for coeffs, rel in cone_constraints(theta.rs, cone, closed=closed)
    )


def craw_wye_theta(rs: RootSystem, J, n: int) -> StabilityVector:
    """The explicit chamber representative with theta(delta) = h.

    Entries are n*h on J minus the zero vertex, 1 on the complement K, and
    the vertex-0 entry is solved from theta(delta) = h.  The result always
    lies in the chamber C_K for K the complement of J.
    """
    J = frozenset(J)
    if 0 not in J:
        raise BadSubset("J must contain vertex 0")
    if not J <= set(rs.vertices):
        raise BadSubset("J contains unknown vertices")
    h = rs.h
    entries = [Fraction(0)] * len(rs.vertices)
    for i in rs.vertices[1:]:
        entries[i] = Fraction(n * h) if i in J else Fraction(1)
    entries[0] = h - sum(rs.delta[i] * entries[i] for i in rs.vertices[1:])
    v = tuple(n * d for d in rs.delta)
    return make_theta(rs, v, entries)
