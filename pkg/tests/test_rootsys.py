"""Root system data against the classical tables and structural invariants."""

import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from quiverstab import DynkinType, build_root_system, make_theta, pair
from quiverstab.errors import InvalidRank, MismatchedRootSystem
from quiverstab.rootsys import RootLatticeVector, delta_vector, embed_finite_root

# (family, rank) -> (positive root count, delta in Bourbaki order with vertex 0 first)
CLASSICAL = {
    ("A", 1): (1, (1, 1)),
    ("A", 2): (3, (1, 1, 1)),
    ("A", 3): (6, (1, 1, 1, 1)),
    ("A", 4): (10, (1, 1, 1, 1, 1)),
    ("D", 4): (12, (1, 1, 2, 1, 1)),
    ("D", 5): (20, (1, 1, 2, 2, 1, 1)),
    ("E", 6): (36, (1, 1, 2, 2, 3, 2, 1)),
    ("E", 7): (63, (1, 2, 2, 3, 4, 3, 2, 1)),
    ("E", 8): (120, (1, 2, 3, 4, 6, 5, 4, 3, 2)),
}


@pytest.mark.parametrize("family,rank", sorted(CLASSICAL))
def test_tables(family, rank):
    rs = build_root_system(DynkinType(family, rank))
    count, delta = CLASSICAL[(family, rank)]
    assert len(rs.positive_roots) == count
    assert rs.delta == delta
    assert rs.h == sum(delta)


@pytest.mark.parametrize("family,rank", sorted(CLASSICAL))
def test_affine_cartan_invariants(family, rank):
    rs = build_root_system(DynkinType(family, rank))
    n = len(rs.vertices)
    c = rs.affine_cartan
    for i in range(n):
        assert c[i][i] == 2
        for j in range(n):
            assert c[i][j] == c[j][i]
            if i != j:
                assert c[i][j] in (0, -1, -2)
                if c[i][j] == -2:
                    assert (family, rank) == ("A", 1)
    # exact kernel relation and normalization
    assert rs.delta[0] == 1
    for i in range(n):
        assert sum(c[i][j] * rs.delta[j] for j in range(n)) == 0


@pytest.mark.parametrize("family,rank", sorted(CLASSICAL))
def test_positive_roots_closed_under_reflections(family, rank):
    rs = build_root_system(DynkinType(family, rank))
    roots = set(rs.positive_roots)
    rank_ = rs.rank
    simples = {tuple(1 if j == i else 0 for j in range(rank_)) for i in range(rank_)}
    assert simples <= roots
    for beta in roots:
        assert all(c >= 0 for c in beta)
        pairing = [
            sum(rs.finite_cartan[i][j] * beta[j] for j in range(rank_))
            for i in range(rank_)
        ]
        for i in range(rank_):
            refl = list(beta)
            refl[i] -= pairing[i]
            refl = tuple(refl)
            # a simple reflection sends a positive root to +- a positive root
            assert refl in roots or tuple(-x for x in refl) in roots


def test_affine_extension_shapes():
    a1 = build_root_system(DynkinType("A", 1))
    assert a1.affine_cartan[0][1] == -2
    a3 = build_root_system(DynkinType("A", 3))
    assert a3.affine_cartan[0][1] == -1 and a3.affine_cartan[0][3] == -1
    assert a3.affine_cartan[0][2] == 0
    d4 = build_root_system(DynkinType("D", 4))
    # the extending vertex joins the central vertex, giving the 4-valent star
    assert [d4.affine_cartan[0][j] for j in range(1, 5)] == [0, -1, 0, 0]
    assert sum(1 for j in d4.vertices if j != 2 and d4.affine_cartan[2][j] == -1) == 4


@pytest.mark.parametrize(
    "family,rank",
    [("A", 0), ("D", 3), ("E", 5), ("E", 9), ("X", 2)],
)
def test_invalid_ranks(family, rank):
    with pytest.raises(InvalidRank):
        DynkinType(family, rank)


def test_parse_labels():
    assert DynkinType.parse("D4") == DynkinType("D", 4)
    assert DynkinType.parse("e6") == DynkinType("E", 6)
    with pytest.raises(InvalidRank):
        DynkinType.parse("Q")


def test_pair_examples(rs_a2):
    theta = make_theta(rs_a2, (3, 3, 3), (-7, 9, 1))
    assert pair(theta, delta_vector(rs_a2)) == 3
    assert pair(theta, RootLatticeVector(rs_a2, (0, 0, 0))) == 0
    for i, root in ((1, (1, 0)), (2, (0, 1))):
        assert pair(theta, embed_finite_root(rs_a2, root)) == theta.entries[i]


def test_pair_mismatch(rs_a1, rs_a2):
    theta = make_theta(rs_a1, (1, 1), (1, 1))
    with pytest.raises(MismatchedRootSystem):
        pair(theta, delta_vector(rs_a2))


@given(
    c1=st.integers(-50, 50),
    c2=st.integers(-50, 50),
    coeffs=st.lists(st.integers(-9, 9), min_size=3, max_size=3),
    other=st.lists(st.integers(-9, 9), min_size=3, max_size=3),
)
def test_pair_is_bilinear(c1, c2, coeffs, other):
    rs = build_root_system(DynkinType("A", 2))
    theta = make_theta(rs, rs.delta, (Fraction(3, 7), Fraction(-2), Fraction(5, 3)))
    beta = RootLatticeVector(rs, tuple(coeffs))
    gamma = RootLatticeVector(rs, tuple(other))
    combo = RootLatticeVector(
        rs, tuple(c1 * a + c2 * b for a, b in zip(coeffs, other))
    )
    assert pair(theta, combo) == c1 * pair(theta, beta) + c2 * pair(theta, gamma)


def test_pair_linear_in_theta(rs_a3):
    rng = random.Random(11)
    for _ in range(25):
        e1 = [Fraction(rng.randint(-8, 8), rng.randint(1, 5)) for _ in rs_a3.vertices]
        e2 = [Fraction(rng.randint(-8, 8), rng.randint(1, 5)) for _ in rs_a3.vertices]
        beta = RootLatticeVector(
            rs_a3, tuple(rng.randint(-4, 4) for _ in rs_a3.vertices)
        )
        t1 = make_theta(rs_a3, rs_a3.delta, e1)
        t2 = make_theta(rs_a3, rs_a3.delta, e2)
        t_sum = make_theta(rs_a3, rs_a3.delta, [a + b for a, b in zip(e1, e2)])
        assert pair(t_sum, beta) == pair(t1, beta) + pair(t2, beta)
