import numpy as np
import pytest
from hypothesis import given, strategies as st

from heisenberg_sft.group import GEN, IDENTITY, GroupOverflow, INT_MAX, Site, commutator, inv, mul, neighbor

coord = st.integers(-10**6, 10**6)
site = st.builds(Site, coord, coord, coord)


def mat(s):
    # z^z y^y x^x as an upper unitriangular matrix
    x, y, z = s
    return np.array([[1, x, z], [0, 1, y], [0, 0, 1]], dtype=object)


def unmat(m):
    return Site(int(m[0, 1]), int(m[1, 2]), int(m[0, 2]))


def test_paper_examples():
    assert mul((1, 0, 0), (0, 1, 0)) == (1, 1, 1)
    assert mul((0, 1, 0), (1, 0, 0)) == (1, 1, 0)
    assert commutator(GEN["X"], GEN["Y"]) == GEN["Z"]
    assert mul(IDENTITY, (4, -2, 7)) == (4, -2, 7)
    assert inv((1, 0, 0)) == (-1, 0, 0)
    assert inv(IDENTITY) == IDENTITY
    assert inv((2, 3, 5)) == (-2, -3, 1)


def test_neighbors():
    assert neighbor((0, 3, 0), "X", 1) == (1, 3, 3)
    assert neighbor((2, -1, 4), "Y", -1) == (2, -2, 4)
    assert neighbor((5, 7, 1), "X", -1) == (4, 7, -6)
    h = Site(3, -4, 9)
    assert neighbor(neighbor(h, "Z", 1), "Z", -1) == h


@given(site, site)
def test_mul_matches_matrix_oracle(a, b):
    assert mul(a, b) == unmat(mat(a).dot(mat(b)))


@given(site, site, site)
def test_associative(a, b, c):
    assert mul(mul(a, b), c) == mul(a, mul(b, c))


@given(site)
def test_inverse_both_sides(a):
    assert mul(a, inv(a)) == IDENTITY == mul(inv(a), a)


@given(site)
def test_identity(a):
    assert mul(a, IDENTITY) == a == mul(IDENTITY, a)


@given(site, st.sampled_from("XYZ"), st.sampled_from([1, -1]))
def test_neighbor_is_left_mult(h, g, s):
    n = neighbor(h, g, s)
    gen = GEN[g] if s == 1 else inv(GEN[g])
    assert n == mul(gen, h)
    assert neighbor(n, g, -s) == h


def test_relators():
    x, y, z = GEN["X"], GEN["Y"], GEN["Z"]
    assert mul(x, z) == mul(z, x)
    assert mul(y, z) == mul(z, y)
    assert mul(mul(mul(x, y), inv(x)), inv(y)) == z
    assert mul(x, y) != mul(y, x)


def test_overflow_detected():
    with pytest.raises(GroupOverflow):
        mul((INT_MAX, 0, 0), (1, 0, 0))
    with pytest.raises(GroupOverflow):
        mul((2**40, 0, 0), (0, 2**40, 0))
    with pytest.raises(GroupOverflow):
        inv((-(2**63), 0, 0))
