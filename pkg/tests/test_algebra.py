import itertools
import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bikei import (
    Bikei,
    DomainError,
    GuardExceeded,
    MalformedTableError,
    ParseError,
    alexander_bikei,
    are_isomorphic,
    canonical_form,
    constant_action_bikei,
    enumerate_bikei,
    enumerate_homomorphisms,
    find_isomorphism,
    parse_bikei,
    relabel,
    render_bikei,
    verify_axioms,
)
from bikei import _accel
from oracles import axiom_failures, brute_bikei, brute_canonical

TRIVIAL2 = Bikei([[1, 1], [2, 2]], [[1, 1], [2, 2]])
SWAP2 = Bikei([[2, 2], [1, 1]], [[2, 2], [1, 1]])


def tables(n):
    row = st.lists(st.integers(1, n), min_size=n, max_size=n)
    return st.lists(row, min_size=n, max_size=n)


@st.composite
def table_pairs(draw):
    n = draw(st.integers(1, 3))
    return draw(tables(n)), draw(tables(n))


@given(table_pairs())
@settings(max_examples=300, deadline=None)
def test_axiom_scan_matches_direct_evaluation(pair):
    under, over = pair
    report = verify_axioms(Bikei(under, over))
    assert [tag for tag, _ in report.violations] == axiom_failures(under, over)


@given(table_pairs())
@settings(max_examples=100, deadline=None)
def test_axiom_backends_agree(pair):
    X = Bikei(*pair)
    a = _accel._axiom_witnesses_np(X.under0, X.over0)
    b = _accel._axiom_witnesses_py(X.under0, X.over0)
    assert np.array_equal(a, b)


def test_witness_is_lexicographically_first():
    X = alexander_bikei(8, 3, 1)
    report = verify_axioms(X)
    assert report.violations == (("ii.ii", (1, 2)), ("ii.iii", (1, 2)))
    # residues x=0, y=1: (x *_ y) *_ y = 4 != 0
    assert X.under_op(X.under_op(1, 2), 2) == 5


def test_two_element_examples_are_valid():
    assert verify_axioms(TRIVIAL2).valid
    assert verify_axioms(SWAP2).valid
    assert verify_axioms(SWAP2).describe() == "valid"


def test_malformed_tables():
    with pytest.raises(MalformedTableError):
        Bikei([[1, 3], [1, 1]], [[1, 1], [2, 2]])
    with pytest.raises(MalformedTableError):
        Bikei([[1, 1]], [[1]])


def test_constant_action():
    X = constant_action_bikei([2, 1])
    assert X.under == ((2, 2), (1, 1)) and X.over == X.under
    assert verify_axioms(X).valid
    with pytest.raises(DomainError):
        constant_action_bikei([2, 3, 1])


def test_alexander_ring_conditions():
    with pytest.raises(DomainError, match="s\\^2"):
        alexander_bikei(8, 2, 1)
    with pytest.raises(DomainError, match="\\(1-s\\)\\(1-t\\)"):
        alexander_bikei(8, 3, 3)
    X = alexander_bikei(8, 3, 1)
    # x *_ y = x + 2y, x *^ y = 3x on residues
    assert X.under_op(1 + 1, 1 + 2) == (1 + 2 * 2) % 8 + 1
    assert X.over_op(1 + 3, 1 + 5) == (3 * 3) % 8 + 1


def test_genuine_alexander_bikei():
    assert verify_axioms(alexander_bikei(8, 5, 1)).valid
    assert not verify_axioms(alexander_bikei(8, 3, 1)).valid


@pytest.mark.parametrize("N", range(2, 13))
def test_alexander_validity_criterion(N):
    # under the ring conditions the axioms hold exactly when 2(s-1) = 0
    for s, t in itertools.product(range(N), repeat=2):
        try:
            X = alexander_bikei(N, s, t)
        except DomainError:
            continue
        assert verify_axioms(X).valid == ((2 * (s - 1)) % N == 0), (N, s, t)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_search_matches_brute_force(n):
    labelled = brute_bikei(n)
    tables, _, aborted = _accel.search_tables(n, 10**7)
    assert not aborted
    found = {(tuple(map(tuple, t[0] + 1)), tuple(map(tuple, t[1] + 1))) for t in tables}
    assert found == {(tuple(map(tuple, u)), tuple(map(tuple, o))) for u, o in labelled}
    classes = {brute_canonical(u, o) for u, o in labelled}
    assert len(enumerate_bikei(n)) == len(classes)


def test_search_backends_agree():
    for n in (2, 3, 4):
        a, _, _ = _accel.search_tables(n, 10**7, use_numba=True)
        b, _, _ = _accel.search_tables(n, 10**7, use_numba=False)
        assert np.array_equal(a, b)


def test_census_counts():
    assert [len(enumerate_bikei(n)) for n in (1, 2, 3, 4)] == [1, 2, 10, 56]


def test_census_order_two_matches_known_matrices():
    found = enumerate_bikei(2)
    assert [X.matrix() for X in found] == [((1, 1, 1, 1), (2, 2, 2, 2)), ((2, 2, 2, 2), (1, 1, 1, 1))]
    assert all(verify_axioms(X).valid for X in enumerate_bikei(3))


def test_enumeration_guards():
    with pytest.raises(GuardExceeded):
        enumerate_bikei(5)
    with pytest.raises(GuardExceeded):
        enumerate_bikei(3, max_nodes=10)


@given(st.integers(0, 9), st.randoms(use_true_random=False))
@settings(max_examples=40, deadline=None)
def test_isomorphism_finds_relabelling(k, rnd):
    X = enumerate_bikei(3)[k]
    perm = list(range(1, 4))
    rnd.shuffle(perm)
    Y = relabel(X, perm)
    f = find_isomorphism(X, Y)
    assert f is not None
    assert relabel(X, f) == Y
    assert canonical_form(Y) == canonical_form(X)


def test_distinct_classes_not_isomorphic():
    reps = enumerate_bikei(3)
    for A, B in itertools.combinations(reps, 2):
        assert not are_isomorphic(A, B)


def brute_homs(X, Y):
    out = []
    for f in itertools.product(Y.elements, repeat=X.n):
        if all(
            f[X.under_op(a, b) - 1] == Y.under_op(f[a - 1], f[b - 1])
            and f[X.over_op(a, b) - 1] == Y.over_op(f[a - 1], f[b - 1])
            for a in X.elements
            for b in X.elements
        ):
            out.append(f)
    return out


def test_homomorphisms_match_brute_force():
    small = enumerate_bikei(2) + enumerate_bikei(3)[:5]
    for X in small:
        for Y in small:
            got = [h.map for h in enumerate_homomorphisms(X, Y)]
            assert got == brute_homs(X, Y)
            assert all(h.is_homomorphism() for h in enumerate_homomorphisms(X, Y))


def test_text_roundtrip():
    for X in enumerate_bikei(3):
        assert parse_bikei(render_bikei(X)) == X
    X = alexander_bikei(8, 5, 1)
    assert parse_bikei(render_bikei(X)) == X


def test_parse_errors_name_the_line():
    with pytest.raises(ParseError, match="f.txt:3:"):
        parse_bikei("2\n1 1 | 1 1\n2 2 | 2\n", source="f.txt")
    with pytest.raises(ParseError, match=":2:"):
        parse_bikei("2\n1 x 1 1\n2 2 2 2\n", source="g")
    with pytest.raises(ParseError):
        parse_bikei("# nothing\n")
    with pytest.raises(ParseError, match="outside"):
        parse_bikei("2\n1 3 | 1 1\n2 2 | 2 2\n")


def test_relabel_preserves_validity():
    rng = random.Random(3)
    X = alexander_bikei(8, 5, 1)
    perm = list(range(1, 9))
    rng.shuffle(perm)
    assert verify_axioms(relabel(X, perm)).valid
