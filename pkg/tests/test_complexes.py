from __future__ import annotations

import itertools
import random
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from matroid_oseq.bits import elements_of
from matroid_oseq.complexes import (
    ComplexError,
    SimplicialComplex,
    ci_degrees,
    circuit_exchange_holds,
    circuit_lists,
    coloops,
    cone,
    deletion,
    f_from_h,
    f_vector,
    from_circuits,
    from_facets,
    full_simplex,
    h_from_f,
    h_vector,
    init_degree,
    is_complete_intersection,
    is_cone,
    is_matroid,
    is_pure,
    join,
    link,
    nonzero_part,
    parallel_classes,
    restriction_purity,
    series_classes,
    simplex_boundary,
    skeleton,
    tutte_h,
)
from matroid_oseq.sweeps import matroid_stream

import oracles


def sets(c):
    return [set(f) for f in c.facet_lists()]


def test_from_facets_keeps_maximal_sets():
    c = from_facets(4, [[1, 2], [2], [3, 4]])
    assert c.facet_lists() == [[1, 2], [3, 4]]
    assert elements_of(c.loops) == []


def test_from_facets_records_loops():
    assert elements_of(from_facets(5, [[1, 2], [3, 4]]).loops) == [5]


def test_triangle_boundary(triangle):
    assert len(triangle.facets) == 3 and triangle.loops == 0


def test_from_facets_errors():
    with pytest.raises(ComplexError, match="empty complex family"):
        from_facets(3, [])
    with pytest.raises(ComplexError):
        from_facets(3, [[1, 4]])


def test_empty_face_complex():
    c = from_facets(0, [[]])
    assert h_vector(c) == [1] and c.dim == -1


def test_circuits_of_square(square):
    assert circuit_lists(square) == [[1, 3], [2, 4]]


def test_full_simplex_has_no_circuits():
    assert circuit_lists(full_simplex(3)) == []


def test_example_round_trips(example_complex):
    given_circuits = [[1, 2, 3, 4], [1, 2, 5, 6], [3, 4, 5, 6]]
    assert circuit_lists(example_complex) == given_circuits
    assert len(example_complex.facets) == 12 == sum(h_vector(example_complex))
    assert all(len(f) == 4 for f in example_complex.facet_lists())


def test_from_circuits_matches_brute_force():
    for n, cs in [(4, [[1, 3], [2, 4]]), (5, [[1, 2, 3], [3, 4]]), (6, [[1, 2, 5, 6], [1, 2, 3, 4], [3, 4, 5, 6]])]:
        faces = oracles.faces_avoiding(n, cs)
        expected = sorted(sorted(f) for f in oracles.facets_of(faces))
        assert from_circuits(n, cs).facet_lists() == expected


def test_from_circuits_empty_gives_simplex():
    assert from_circuits(3, []) == full_simplex(3)


def test_from_circuits_rejects_non_antichain():
    with pytest.raises(ComplexError):
        from_circuits(4, [[1, 2], [1, 2, 3]])


def test_f_vectors(triangle, square):
    assert f_vector(triangle) == [1, 3, 3]
    assert f_vector(simplex_boundary(4)) == [1, 4, 6, 4]
    assert f_vector(square) == [1, 4, 4]


def test_h_vectors(triangle, square, example_complex):
    assert h_vector(triangle) == [1, 1, 1]
    assert h_vector(square) == [1, 2, 1]
    assert h_vector(example_complex) == [1, 2, 3, 4, 2]


def test_h_formula_against_polynomial_oracle():
    rng = random.Random(3)
    for _ in range(200):
        d = rng.randint(0, 6)
        f = [1] + [rng.randint(0, 30) for _ in range(d)]
        assert h_from_f(f) == oracles.h_by_polynomial(f, d)


random_complex = st.integers(1, 6).flatmap(
    lambda n: st.lists(st.integers(0, (1 << n) - 1), min_size=1, max_size=8).map(
        lambda masks: SimplicialComplex._make(n, masks)
    )
)


@settings(max_examples=200, deadline=None)
@given(random_complex)
def test_f_h_round_trip(c):
    assert f_from_h(h_vector(c)) == f_vector(c)


@settings(max_examples=200, deadline=None)
@given(random_complex)
def test_circuits_match_brute_force(c):
    expected = [sorted(s) for s in oracles.minimal_nonfaces(c.n, sets(c))]
    assert circuit_lists(c) == expected


@settings(max_examples=150, deadline=None)
@given(random_complex)
def test_matroid_recognisers_agree(c):
    expected = oracles.restriction_pure(c.n, [frozenset(f) for f in sets(c)])
    assert is_matroid(c) == expected == restriction_purity(c) == circuit_exchange_holds(c)


def test_is_pure_examples(triangle):
    assert is_pure(triangle)
    assert not is_pure(from_facets(3, [[1, 2], [3]]))


def test_is_matroid_examples(square, example_complex):
    assert is_matroid(square)
    assert not is_matroid(from_facets(4, [[1, 2], [3, 4]]))
    assert is_matroid(example_complex)
    # a cone over two parallel points, so a matroid after all
    assert is_matroid(from_facets(3, [[1, 2], [2, 3]]))


def test_circuit_exchange_examples(square):
    assert circuit_exchange_holds(square)
    assert not circuit_exchange_holds(from_facets(4, [[1, 2], [3, 4]]))
    assert circuit_exchange_holds(from_circuits(4, [[1, 2], [3, 4]]))


def test_deletion_and_link_of_square(square):
    d = deletion(square, 1)
    assert d.facet_lists() == [[2, 3], [3, 4]] and elements_of(d.loops) == [1]
    lk = link(square, 1)
    assert lk.facet_lists() == [[2], [4]] and elements_of(lk.loops) == [1, 3]


def test_deletion_keeps_cone_apex(square):
    c = cone(square)
    assert 5 in coloops(deletion(c, 2))


def test_link_of_simplex():
    assert link(full_simplex(4), 2).facet_lists() == [[1, 3, 4]]


def test_link_errors():
    c = from_facets(3, [[1, 2]])
    with pytest.raises(ComplexError, match="link of a loop"):
        link(c, 3)
    with pytest.raises(ComplexError):
        deletion(c, 4)


def test_coloops(square, example_complex):
    assert coloops(cone(square)) == [5]
    assert coloops(square) == [] and coloops(example_complex) == []


def test_skeleton():
    tet = simplex_boundary(4)
    k4 = skeleton(tet, 1)
    assert k4.facet_lists() == [list(p) for p in itertools.combinations(range(1, 5), 2)]
    assert skeleton(tet, tet.dim) == tet
    with pytest.raises(ComplexError):
        skeleton(tet, 3)


def test_series_classes(square, octahedron):
    assert series_classes(square) == [[1, 3], [2, 4]]
    assert series_classes(full_simplex(3)) == [[1, 2, 3]]
    assert series_classes(octahedron) == [[1, 2], [3, 4], [5, 6]]


def test_parallel_classes():
    assert parallel_classes(from_circuits(3, [[1, 2], [1, 3], [2, 3]])) == [[1, 2, 3]]
    assert parallel_classes(simplex_boundary(4)) == [[1], [2], [3], [4]]
    triples = [list(t) for t in itertools.combinations(range(3, 7), 3)]
    exceptional = from_circuits(6, [[1, 2]] + triples)
    assert parallel_classes(exceptional) == [[1, 2], [3], [4], [5], [6]]


def test_complete_intersection(square, example_complex):
    assert is_complete_intersection(square) and ci_degrees(square) == [2, 2]
    assert not is_complete_intersection(example_complex)
    assert is_complete_intersection(full_simplex(3)) and ci_degrees(full_simplex(3)) == []
    with pytest.raises(ComplexError):
        ci_degrees(example_complex)


def test_init_degree(square):
    assert init_degree(square) == 2
    assert init_degree(full_simplex(2)) is None


def test_tutte(square, example_complex):
    assert tutte_h(square) == [1, 2, 1]
    assert tutte_h(full_simplex(3)) == [1, 0, 0, 0]
    assert tutte_h(example_complex) == [1, 2, 3, 4, 2]
    with pytest.raises(ComplexError):
        tutte_h(from_facets(4, [[1, 2], [3, 4]]))


def test_join_and_cone(square, triangle):
    c = cone(square)
    assert is_cone(c)
    assert nonzero_part(h_vector(c)) == nonzero_part(h_vector(square))
    j = join(triangle, triangle)
    assert is_complete_intersection(j) and ci_degrees(j) == [3, 3]


def bell(n):
    row = [1]
    for _ in range(n):
        nxt = [row[-1]]
        for x in row:
            nxt.append(nxt[-1] + x)
        row = nxt
    return row[0]


def test_all_matroid_invariants_small():
    for c in matroid_stream(6):
        h = h_vector(c)
        assert is_matroid(c)
        assert f_from_h(h) == f_vector(c)
        assert sum(h) == len(c.facets)
        assert tutte_h(c) == h
        assert (h[-1] != 0) == (not is_cone(c))
        assert nonzero_part(h_vector(cone(c))) == nonzero_part(h)
        for v in elements_of(c.vertices):
            d, lk = deletion(c, v), link(c, v)
            assert is_matroid(d) and is_matroid(lk)
            if v not in coloops(c):
                hd, hl = h_vector(d), h_vector(lk)
                for i in range(len(h)):
                    assert h[i] == hd[i] + (hl[i - 1] if 0 < i <= len(hl) else 0)


def test_skeleton_consecutive_sums_and_commutation():
    rng = random.Random(11)
    for _ in range(300):
        n = rng.randint(2, 7)
        masks = [rng.randrange(1 << n) for _ in range(rng.randint(1, 6))]
        c = SimplicialComplex._make(n, masks)
        if not is_pure(c) or c.dim < 1:
            continue
        for j in range(0, c.dim):
            lower, upper = h_vector(skeleton(c, j)), h_vector(skeleton(c, j + 1))
            for i in range(min(3, len(lower))):
                assert lower[i] == upper[i] + (lower[i - 1] if i else 0)
        for v in elements_of(c.vertices):
            for j in range(0, c.dim + 1):
                sk = skeleton(c, j)
                assert skeleton(deletion(c, v), min(j, deletion(c, v).dim)) == deletion(sk, v)
                lk = link(c, v)
                if j >= 1 and j - 1 <= lk.dim:
                    assert skeleton(lk, j - 1) == link(sk, v)


def test_parallel_class_closed_forms():
    # every 2-subset of each class W_j is a circuit; three free elements keep
    # the rank high enough for the h_2 formulas to apply
    for widths in [(2,), (3,), (2, 2), (3, 2), (2, 2, 2), (4, 2), (3, 3)]:
        n, start, cs = sum(widths) + 3, 1, []
        blocks = []
        for w in widths:
            block = list(range(start, start + w))
            blocks.append(block)
            cs += [list(p) for p in itertools.combinations(block, 2)]
            start += w
        gamma = from_circuits(n, cs)
        s = n - gamma.rank
        v = blocks[0][0]
        w1, rest = widths[0], widths[1:]
        hl, hd = h_vector(link(gamma, v)), h_vector(deletion(gamma, v))
        assert hl[1] == s - w1 + 1
        assert hd[1] == s - 1
        assert hl[2] == comb(s - w1 + 2, 2) - sum(comb(w, 2) for w in rest)
        assert hd[2] == comb(s, 2) - comb(w1 - 1, 2) - sum(comb(w, 2) for w in rest)
