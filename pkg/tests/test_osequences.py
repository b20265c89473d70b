from __future__ import annotations

import itertools
from math import ceil, comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from matroid_oseq.orderideals import (
    OrderIdeal,
    downward_closure,
    lex_segment_holds,
    lex_segment_ideal,
    monomials_of_degree,
    rank_vector,
)
from matroid_oseq.osequences import (
    e2_closed_form,
    first_difference,
    first_half,
    icp_interval_test,
    is_differentiable,
    is_flawless,
    is_O_sequence,
    is_pure_O_sequence,
    least_differentiable_middle,
    macaulay_next_bound,
    macaulay_representation,
    max_differentiable_last,
    pure_witness_search,
    rrrt_closed_form,
    shifted_sum,
)
from matroid_oseq.search import SearchCapExceeded, Budget, find_pure_maxima, pure_table

import oracles


def test_downward_closure_examples():
    x = downward_closure(2, [(1, 1)])
    assert x.monomials == {(0, 0), (1, 0), (0, 1), (1, 1)} and x.rank_vector() == [1, 2, 1]
    lemma = downward_closure(3, [(0, 0, 3), (2, 0, 1), (1, 1, 1), (0, 2, 1)])
    assert lemma.rank_vector() == [1, 3, 6, 4]
    assert downward_closure(1, [(5,)]).rank_vector() == [1] * 6


def test_order_ideal_validation():
    with pytest.raises(ValueError):
        OrderIdeal(2, frozenset({(0, 0), (1, 1)}))
    with pytest.raises(ValueError):
        OrderIdeal(1, frozenset({(1,)}))


def test_rank_vector_examples():
    assert rank_vector(downward_closure(1, [(2,)])) == [1, 1, 1]
    assert rank_vector(downward_closure(3, monomials_of_degree(3, 2))) == [1, 3, 6]


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 4).flatmap(lambda r: st.tuples(st.just(r), st.lists(st.lists(st.integers(0, 3), min_size=r, max_size=r), min_size=1, max_size=5))))
def test_closure_is_closed_and_pure_flag(data):
    r, gens = data
    x = downward_closure(r, gens)
    for m in x.monomials:
        for j in range(r):
            if m[j]:
                assert m[:j] + (m[j] - 1,) + m[j + 1 :] in x.monomials
    assert x.is_pure == (len({sum(m) for m in x.maxima}) == 1)
    assert OrderIdeal.from_json(x.to_json()) == x


def test_macaulay_examples():
    assert macaulay_next_bound(2, 1) == 3
    assert macaulay_next_bound(6, 2) == 10
    assert macaulay_next_bound(0, 4) == 0
    assert macaulay_representation(6, 2) == [(4, 2)]


def test_macaulay_representation_is_valid():
    for i in range(1, 6):
        for value in range(1, 300):
            rep = macaulay_representation(value, i)
            assert sum(comb(a, k) for a, k in rep) == value
            tops = [a for a, _ in rep]
            assert all(x > y for x, y in zip(tops, tops[1:]))
            assert all(a >= k for a, k in rep)


def test_macaulay_bound_is_attained_by_order_ideals():
    # brute force over every order ideal in 2 variables up to degree 3
    seen = oracles.order_ideal_rank_vectors(2, 3)
    for h in seen:
        for i in range(1, 3):
            assert h[i + 1] <= macaulay_next_bound(h[i], i)
    for h2 in range(1, 4):
        best = max(h[3] for h in seen if h[1] == 2 and h[2] == h2)
        assert best == macaulay_next_bound(h2, 2)


def test_is_O_sequence_examples():
    assert is_O_sequence((1, 3, 6, 10))
    assert not is_O_sequence((1, 2, 4))
    assert is_O_sequence((1, 7, 9, 12))


def test_macaulay_agrees_with_lex_oracle_small():
    for e in range(1, 4):
        for tail in itertools.product(range(0, 12), repeat=e):
            h = (1,) + tail
            if h[1] <= 3:
                assert is_O_sequence(h) == lex_segment_holds(h)


def test_lex_segment_ideal_examples():
    assert lex_segment_ideal((1, 2, 2)).monomials == {(0, 0), (1, 0), (0, 1), (1, 1), (0, 2)}
    assert lex_segment_ideal((1, 1, 1)).rank_vector() == [1, 1, 1]
    assert lex_segment_ideal((1, 3, 6)).rank_vector() == [1, 3, 6]
    with pytest.raises(ValueError):
        lex_segment_ideal((1, 2, 4))


def test_first_difference_and_differentiable():
    assert first_difference((1, 7, 9, 12)) == [1, 6, 2, 3]
    assert not is_differentiable((1, 7, 9, 12))
    assert first_difference((1, 3, 6, 10)) == [1, 2, 3, 4]
    assert is_differentiable((1, 3, 6, 10))
    assert is_differentiable((1, 1))
    assert not is_differentiable((1, 3, 2))


def test_flawless_examples():
    assert not is_flawless((1, 4, 2, 4))
    assert is_flawless((1, 2, 3, 2))


def test_shifted_sum_examples():
    assert shifted_sum((1, 6, 6, 6), (1, 3, 6)) == [1, 7, 9, 12]
    assert shifted_sum((1, 1, 1), (1, 1)) == [1, 2, 2]
    with pytest.raises(ValueError):
        shifted_sum((1, 2), (1, 2))


def test_shifted_sum_lemma_sweep():
    # O-sequences h, h' with h'_i <= h_i for i <= e-1 give an O-sequence
    seqs = [s for s in ((1,) + t for t in itertools.product(range(5), repeat=3)) if is_O_sequence(s)]
    shorter = [s for s in ((1,) + t for t in itertools.product(range(5), repeat=2)) if is_O_sequence(s)]
    for h in seqs:
        for h2 in shorter:
            if all(h2[i] <= h[i] for i in range(3)):
                assert is_O_sequence(shifted_sum(h, h2))


def test_differentiable_proposition_sweep():
    for r in range(2, 7):
        for a, b in itertools.product(range(r - 1, 25), repeat=2):
            h = (1, r - 1, a, b)
            if not is_differentiable(h):
                continue
            dh = first_difference(h)
            for r2 in range(1, r):
                for c in range(r2, comb(r2 + 1, 2) + 1):
                    h2 = (1, r2, c)
                    if not is_differentiable(h2):
                        continue
                    d2 = first_difference(h2)
                    if all(d2[i] <= dh[i] for i in range(3)):
                        assert is_differentiable(shifted_sum(h, h2))


def test_purity_examples():
    v = is_pure_O_sequence((1, 3, 6))
    assert v.passed and v.decided_by == "closed_form_e2"
    assert v.witness.rank_vector() == [1, 3, 6]
    bad = is_pure_O_sequence((1, 7, 9, 12))
    assert bad.outcome is False and bad.decided_by == "search"
    assert is_pure_O_sequence((1, 3, 1)).decided_by == "closed_form_e2"
    assert not is_pure_O_sequence((1, 3, 1)).passed
    assert is_pure_O_sequence((1,)).passed
    assert is_pure_O_sequence((1, 2, 1, 0, 0)).passed


def test_purity_json():
    out = is_pure_O_sequence((1, 2, 1)).to_json("pure")
    assert out["pure"] is True and out["witness"] == {"r": 2, "maxima": [[1, 1]]}


def test_witness_search_examples():
    assert pure_witness_search((1, 2, 1)).witness.maxima == [(1, 1)]
    w = pure_witness_search((1, 3, 6, 4)).witness
    assert w.is_pure and w.rank_vector() == [1, 3, 6, 4]
    w = pure_witness_search((1, 6, 6, 6)).witness
    assert len(w.maxima) == 6 and w.rank_vector() == [1, 6, 6, 6]


def test_cap_gives_undecided():
    v = pure_witness_search((1, 7, 9, 12), cap=50)
    assert v.outcome is None and v.undecided
    assert is_pure_O_sequence((1, 7, 9, 12), cap=50).to_json("pure")["pure"] == "undecided"
    with pytest.raises(SearchCapExceeded):
        find_pure_maxima((1, 7, 9, 12), Budget(10))


@pytest.mark.parametrize("r,e", [(1, 3), (2, 2), (2, 3), (2, 4), (3, 2), (3, 3), (4, 2), (2, 5)])
def test_pure_tables_match_brute_force(r, e):
    assert set(pure_table(r, e)) == oracles.brute_pure_sequences(r, e)


def test_pure_table_witnesses():
    for (r, e) in [(3, 3), (4, 3), (3, 4)]:
        for h, maxima in pure_table(r, e).items():
            x = downward_closure(r, maxima)
            assert x.is_pure and tuple(x.rank_vector()) == h


def test_search_agrees_with_tables():
    for (r, e) in [(3, 3), (4, 3), (3, 4)]:
        table = pure_table(r, e)
        for h in itertools.product(*[range(1, comb(r + i - 1, i) + 1) for i in range(2, e + 1)]):
            seq = (1, r) + h
            if not is_O_sequence(seq):
                continue
            v = pure_witness_search(seq)
            assert (v.outcome is True) == (seq in table)


def test_hausel_hibi_on_tables():
    for r in range(1, 5):
        for e in range(1, 5):
            if (r, e) == (4, 4):
                continue
            for h in pure_table(r, e):
                assert is_flawless(h) and is_differentiable(first_half(h))


def test_differentiable_implies_pure_on_tables():
    for r in range(1, 5):
        for e in range(1, 4):
            table = pure_table(r, e)
            for tail in itertools.product(range(1, 25), repeat=e - 1):
                h = (1, r) + tail
                if is_differentiable(h):
                    assert h in table


def test_closed_forms_match_tables():
    for r in range(1, 7):
        table = pure_table(r, 2)
        for a in range(0, comb(r + 1, 2) + 2):
            assert e2_closed_form((1, r, a)) == ((1, r, a) in table)
        table3 = pure_table(r, 3)
        for t in range(1, r + 3):
            assert rrrt_closed_form((1, r, r, t)) == ((1, r, r, t) in table3)
        assert ceil(r / 2) == min(a for (_, _, a) in table)


def test_layered_verdict_matches_tables():
    for r in range(1, 5):
        for e in range(2, 4):
            table = pure_table(r, e)
            for tail in itertools.product(range(1, comb(r + 1, 2) + 3), repeat=e - 1):
                h = (1, r) + tail
                assert is_pure_O_sequence(h).passed == (h in table)


def test_b_and_a0_helpers():
    assert max_differentiable_last((1, 3, 6)) == 10
    assert max_differentiable_last((1, 3, 4)) == 5
    assert max_differentiable_last((1, 7, 9)) == 11
    assert is_differentiable((1, 7, 9, 11)) and not is_differentiable((1, 7, 9, 12))
    assert least_differentiable_middle(3, 6) == 5
    for r in range(2, 6):
        for top in range(r, 20):
            a0 = least_differentiable_middle(r, top)
            if a0 is not None:
                assert is_differentiable((1, r, a0, top))
                assert not any(is_differentiable((1, r, a, top)) for a in range(r, a0))


def test_icp_interval():
    v = icp_interval_test((1, 3, 3, 1), (1, 3, 3, 3), 3)
    assert v.passed and v.details["checked"] == 1
    assert icp_interval_test((1, 3, 3, 2), (1, 3, 3, 2), 3).passed
    with pytest.raises(ValueError):
        icp_interval_test((1, 3, 3, 1), (1, 3, 4, 3), 3)
    with pytest.raises(ValueError):
        icp_interval_test((1, 3, 1), (1, 3, 3), 2)
