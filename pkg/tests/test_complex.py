from itertools import product

import numpy as np
import pytest

from bikei import Bikei, ChainBasis, GuardExceeded, boundary_matrix, degenerate_generators, enumerate_bikei
from bikei import _accel
from bikei.intlinalg import in_lattice, matmul

SMALL = enumerate_bikei(1) + enumerate_bikei(2) + enumerate_bikei(3)


def naive_boundary(X, t):
    """Boundary of one generator as a dict tuple -> coefficient."""
    out = {}
    n = len(t)
    for k in range(n):
        sign = (-1) ** k
        head = t[:k] + t[k + 1 :]
        acted = tuple(X.under_op(v, t[k]) for v in t[:k]) + tuple(X.over_op(v, t[k]) for v in t[k + 1 :])
        out[head] = out.get(head, 0) + sign
        out[acted] = out.get(acted, 0) - sign
    return out


def test_degree_two_formula():
    X = Bikei([[2, 2], [1, 1]], [[2, 2], [1, 1]])
    d2 = boundary_matrix(X, 2)
    basis = ChainBasis(2, 1)
    for j, (x, y) in enumerate(ChainBasis(2, 2)):
        expect = [0, 0]
        expect[basis.index((y,))] += 1
        expect[basis.index((X.over_op(y, x),))] -= 1
        expect[basis.index((x,))] -= 1
        expect[basis.index((X.under_op(x, y),))] += 1
        assert list(d2[:, j]) == expect


@pytest.mark.parametrize("X", SMALL[:6])
@pytest.mark.parametrize("n", [2, 3])
def test_boundary_matches_naive(X, n):
    d = boundary_matrix(X, n)
    rows = ChainBasis(X.n, n - 1)
    for j, t in enumerate(ChainBasis(X.n, n)):
        col = [0] * rows.size
        for s, c in naive_boundary(X, t).items():
            col[rows.index(s)] += c
        assert list(d[:, j]) == col


@pytest.mark.parametrize("X", SMALL)
def test_boundary_squares_to_zero(X):
    for n in (2, 3, 4):
        a = boundary_matrix(X, n, dense=True)
        b = boundary_matrix(X, n + 1, dense=True)
        assert not (a @ b).any()


@pytest.mark.parametrize("X", SMALL)
@pytest.mark.parametrize("kind", ["bikei", "biquandle"])
def test_degenerate_subcomplex(X, kind):
    for n in (2, 3, 4):
        d = boundary_matrix(X, n)
        D = degenerate_generators(X, n, kind).matrix
        lower = degenerate_generators(X, n - 1, kind).matrix
        image = matmul(d, D)
        for col in image.T:
            assert in_lattice(list(col), lower)


def test_backends_agree():
    for X in SMALL[3:8]:
        for n in (2, 3, 4):
            a = _accel.boundary_dense(X.under0, X.over0, n, use_numba=True)
            b = _accel.boundary_dense(X.under0, X.over0, n, use_numba=False)
            assert np.array_equal(a, b)


def test_degenerate_counts():
    X = SMALL[1]
    assert degenerate_generators(X, 1).count == 2 * 2 * 2
    assert degenerate_generators(X, 1, "biquandle").count == 0
    assert degenerate_generators(X, 2).count == 2 + 3 * 4
    assert degenerate_generators(X, 3).count == sum(
        1 for t in product((1, 2), repeat=3) if t[0] == t[1] or t[1] == t[2]
    )


def test_degree_one_has_no_rows():
    assert boundary_matrix(SMALL[1], 1).shape == (0, 2)


def test_guards():
    with pytest.raises(GuardExceeded):
        boundary_matrix(SMALL[1], 6)
    with pytest.raises(GuardExceeded):
        degenerate_generators(SMALL[1], 5, max_degree=4)


def test_basis_indexing():
    B = ChainBasis(3, 2)
    assert list(B)[:4] == [(1, 1), (1, 2), (1, 3), (2, 1)]
    for i, t in enumerate(B):
        assert B.index(t) == i and B.tuple(i) == t
