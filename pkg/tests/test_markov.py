import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from kmarkov.errors import InvalidInputError
from kmarkov.markov import (
    FareyLabel,
    SequenceKind,
    distance,
    markov_number,
    markov_residual,
    markov_via_tree,
    multiple_closed_form,
    multiple_recurrence,
    named_sequence,
    vieta_tree,
)
from kmarkov.monotonicity import thresholds

GOLDEN = [
    (3, 2, 1, 217),
    (3, 2, 0, 29),
    (5, 2, 0, 194),
    (25, 11, 0, 48795987025021),
    (29, 6, 0, 46127828641049),
    (25, 11, 1, 9998020960587781820161),
    (29, 6, 1, 11854846326279367099921),
    (8, 7, 0, 195025),
    (13, 1, 0, 196418),
    (8, 7, 3, 1394214913321),
    (13, 1, 3, 1108609632005),
]


@pytest.mark.parametrize("p,q,k,value", GOLDEN)
def test_golden_values_both_routes(p, q, k, value):
    assert markov_number(p, q, k) == value
    assert markov_via_tree(FareyLabel(q, p), k) == value


def test_8_7_at_k3_solves_the_equation():
    # the neighbours of 7/8 in the Farey tree are 1/1 and 6/7
    x, y, z = markov_number(7, 6, 3), markov_number(8, 7, 3), markov_number(1, 1, 3)
    assert markov_residual(x, y, z, 3) == 0


def test_value_at_4_2_is_1001():
    assert markov_number(4, 2, 1) == 1001
    assert multiple_recurrence(2, 1, 1, 2) == 1001


def test_distance():
    assert distance((0, 0), (3, 2), 1) == 217
    assert distance((2, 5), (2, 5), 3) == 0
    assert distance((1, 1), (5, 3), 1) == 1001


@given(st.integers(-6, 6), st.integers(-6, 6), st.integers(-6, 6), st.integers(-6, 6), st.integers(0, 2))
def test_distance_translation_and_symmetry(ax, ay, bx, by, k):
    a, b = (ax, ay), (bx, by)
    assert distance(a, b, k) == distance(b, a, k)
    assert distance(a, b, k) == distance((0, 0), (bx - ax, by - ay), k)


def test_markov_number_rejects_zero():
    with pytest.raises(InvalidInputError):
        markov_number(0, 0, 0)


def test_tree_k0_depth3():
    triples = [(t.x, t.y, t.z) for t in vieta_tree(0, 3)]
    assert len(triples) == 9
    assert triples[:5] == [(1, 1, 1), (1, 2, 1), (1, 5, 2), (1, 13, 5), (5, 29, 2)]
    assert sorted(t[1] for t in triples) == [1, 2, 5, 13, 29, 34, 169, 194, 433]


def test_tree_labels_for_29_and_194():
    labels = {str(t.label[1]): t.y for t in vieta_tree(0, 3)}
    assert labels["2/3"] == 29
    assert labels["2/5"] == 194


@pytest.mark.parametrize("k", range(5))
def test_tree_root_and_equation(k):
    triples = vieta_tree(k, 4)
    assert (triples[0].x, triples[0].y, triples[0].z) == (1, 1, 1)
    assert all(t.residual(k) == 0 for t in triples)


def test_tree_k1():
    triples = [(t.x, t.y, t.z) for t in vieta_tree(1, 1)]
    assert triples[1] == (1, 3, 1)
    assert triples[2] == (1, 13, 3)


def test_tree_depth_validation():
    with pytest.raises(InvalidInputError):
        vieta_tree(0, -1)


def test_tree_descent_examples():
    assert markov_via_tree(FareyLabel(2, 3), 1) == 217
    assert markov_via_tree(FareyLabel(1, 13), 0) == 196418
    assert markov_via_tree(FareyLabel(6, 29), 1) == 11854846326279367099921
    assert markov_via_tree(FareyLabel(0, 1), 2) == 1


def test_label_validation():
    with pytest.raises(InvalidInputError):
        FareyLabel(2, 4)
    with pytest.raises(InvalidInputError):
        markov_via_tree(FareyLabel(3, 2), 0)


@pytest.mark.parametrize("k", range(4))
def test_route_agreement(k):
    for p in range(1, 21):
        for q in range(1, p + 1):
            if math.gcd(p, q) == 1:
                assert markov_number(p, q, k) == markov_via_tree(FareyLabel(q, p), k), (p, q, k)


def test_named_sequence_examples():
    for k in range(4):
        assert named_sequence(SequenceKind.FIB, k, 1) == k + 2
    assert named_sequence(SequenceKind.EDGE0, 0, 3) == 8
    assert named_sequence(SequenceKind.PELL, 0, 2) == 29
    assert [named_sequence(SequenceKind.EDGE0, 0, n) for n in range(1, 6)] == [1, 3, 8, 21, 55]
    assert [named_sequence(SequenceKind.EDGE1, 0, n) for n in range(1, 5)] == [2, 12, 70, 408]
    assert [named_sequence(SequenceKind.EDGE1, 1, n) for n in range(1, 4)] == [3, 51, 864]


@pytest.mark.parametrize("k", range(4))
def test_named_sequences_match_geometry(k):
    for n in range(1, 31):
        assert named_sequence(SequenceKind.FIB, k, n) == markov_number(n, 1, k)
        assert named_sequence(SequenceKind.PELL, k, n) == markov_number(n + 1, n, k)
        assert named_sequence(SequenceKind.EDGE0, k, n) == markov_number(n, 0, k)
        assert named_sequence(SequenceKind.EDGE1, k, n) == markov_number(n, n, k)


def test_multiple_recurrence_examples():
    assert multiple_recurrence(2, 1, 1, 2) == 1001
    assert multiple_recurrence(1, 1, 0, 2) == 12
    assert multiple_recurrence(3, 2, 2, 0) == 0
    with pytest.raises(InvalidInputError):
        multiple_recurrence(2, 2, 0, 1)


@pytest.mark.parametrize("k", range(4))
def test_multiples_match_geometry(k):
    for p in range(-4, 5):
        for q in range(-4, 5):
            if (p, q) == (0, 0) or math.gcd(p, q) != 1:
                continue
            for n in range(1, 5):
                assert markov_number(n * p, n * q, k) == multiple_recurrence(p, q, k, n), (p, q, k, n)


def test_closed_form():
    assert multiple_closed_form(2, 1, 1, 2) == pytest.approx(1001, rel=1e-6)
    assert multiple_closed_form(2, 1, 1, 0) == 0
    assert multiple_closed_form(3, 2, 1, 1) == pytest.approx(217, rel=1e-9)
    assert multiple_closed_form(3, 2, 1, 100000) == math.inf


def test_squared_relation():
    for p in range(1, 31):
        for q in range(0, p + 1):
            if math.gcd(p, q) == 1:
                assert markov_number(p, q, 2) == markov_number(p, q, 0) ** 2


@pytest.mark.parametrize("k", range(4))
def test_intertwining(k):
    m = lambda p, q: 0 if (p, q) == (0, 0) else markov_number(p, q, k)  # noqa: E731
    for n in range(1, 31):
        assert m(n, 1) == (k + 1) * m(n, 0) + m(n - 1, 1)
        assert m(n + 1, n) == 2 * (k + 1) * m(n, n) + m(n, n - 1)


def test_edge_identity_k0():
    for p in range(2, 31):
        assert markov_number(p + 1, 0, 0) * markov_number(p - 1, 0, 0) - markov_number(p, 0, 0) ** 2 == -1


@pytest.mark.parametrize("k", range(4))
def test_fib_asymptotics(k):
    t = thresholds(k)
    assert markov_number(60, 1, k) / (t.bigA * t.fib_growth**60) == pytest.approx(1, abs=1e-6)


@pytest.mark.parametrize("k", range(3))
def test_lattice_direction_symmetry_observed(k):
    # not a stated identity; checked empirically on the torus directions
    for n in range(1, 12):
        assert markov_number(n, -n, k) == markov_number(n, 0, k) == markov_number(0, n, k)
