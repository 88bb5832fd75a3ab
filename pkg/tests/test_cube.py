import pytest
from hypothesis import given, strategies as st

from usolcp.cube import (
    Subcube,
    all_vertices,
    cyclic_shift,
    enumerate_subcubes,
    flip,
    hamming,
    pack,
    unpack,
    vertex_from_string,
    vertex_to_string,
)


def test_flip_single_bit():
    assert flip((0, 0, 0), {1}) == (1, 0, 0)


def test_flip_pivot_example():
    assert flip((1, 0, 1, 1, 0), {3}) == (1, 0, 0, 1, 0)


def test_flip_empty_set_is_identity():
    v = (1, 0, 1)
    assert flip(v, frozenset()) == v


def test_flip_out_of_range():
    with pytest.raises(ValueError):
        flip((0, 1), {3})
    with pytest.raises(ValueError):
        flip((0, 1), {0})


vertices = st.integers(1, 8).flatmap(
    lambda n: st.tuples(*([st.sampled_from([0, 1])] * n))
)


@given(vertices, st.data())
def test_flip_involution(v, data):
    coords = data.draw(st.sets(st.integers(1, len(v))))
    assert flip(flip(v, coords), coords) == v


@given(vertices, st.data())
def test_flip_disjoint_composition(v, data):
    n = len(v)
    i_set = data.draw(st.sets(st.integers(1, n)))
    j_set = data.draw(st.sets(st.integers(1, n)).filter(lambda s: not s & i_set))
    assert flip(flip(v, i_set), j_set) == flip(v, i_set | j_set)


@pytest.mark.parametrize("n,count", [(1, 3), (2, 9), (3, 27), (4, 81)])
def test_subcube_count(n, count):
    subs = list(enumerate_subcubes(n))
    assert len(subs) == count
    assert len(set(subs)) == count


def test_subcube_count_matches_power_up_to_8():
    for n in range(1, 9):
        assert sum(1 for _ in enumerate_subcubes(n)) == 3 ** n


def test_subcube_vertices():
    s = Subcube((1, 0, 1), frozenset({2}))
    assert list(s.vertices()) == [(1, 0, 1), (1, 1, 1)]
    assert s.dimension == 1


def test_subcube_base_canonicalized():
    a = Subcube((1, 1, 0), frozenset({1}))
    b = Subcube((0, 1, 0), frozenset({1}))
    assert a == b and a.base == (0, 1, 0)


def test_cyclic_shift_examples():
    assert cyclic_shift((1, 0, 0), 1) == (0, 1, 0)
    assert cyclic_shift((1, 0, 1, 1, 0), 0) == (1, 0, 1, 1, 0)
    assert cyclic_shift((0, 1, 1), 2) == (1, 1, 0)


@given(vertices, st.integers(-10, 10), st.integers(-10, 10))
def test_cyclic_shift_composition(v, a, b):
    assert cyclic_shift(cyclic_shift(v, a), b) == cyclic_shift(v, a + b)
    assert cyclic_shift(v, len(v)) == v


@given(vertices)
def test_pack_unpack_roundtrip(v):
    assert unpack(pack(v), len(v)) == v


def test_text_form():
    assert vertex_to_string((1, 0, 1)) == "101"
    assert vertex_from_string("101") == (1, 0, 1)
    with pytest.raises(ValueError):
        vertex_from_string("10x")
    with pytest.raises(ValueError):
        vertex_from_string("")


def test_all_vertices_lexicographic():
    seen = [vertex_to_string(v) for v in all_vertices(3)]
    assert seen == sorted(seen)
    assert len(seen) == 8
    assert seen[0] == "000" and seen[-1] == "111"


def test_hamming():
    assert hamming((0, 0, 0), (1, 1, 1)) == 3
    assert hamming((1, 0, 1), (1, 0, 1)) == 0
