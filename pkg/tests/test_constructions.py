"""Constructive packings: rotations, K4 closures, merges, ladders, replay."""

from __future__ import annotations

import math

import pytest

from cyclepack.constructions import (
    LADDER_TEMPLATES,
    choose_coprime_shift,
    cross_packing_33_6,
    divide_and_pack,
    embedding_from_red_edges,
    k4_embedding,
    ladder_extend,
    merge_components,
    merge_until_connected,
    pack_some,
    replay_trace,
    rotate_embedding,
    triangle_list_packing,
    two_distinct_embeddings,
    unique_packing,
)
from cyclepack.embedding import CycleType, make_sum, realize, recognize_two_factor
from cyclepack.graph import connected_components
from cyclepack.invariants import contains_k4, is_bipartite
from cyclepack.oracle import (
    NOT_EMBEDDABLE_TYPES,
    UNIQUE_TYPES,
    census_types,
    invariant_value,
)


def sum_graph(e):
    return make_sum(e).sum


# ---------------------------------------------------------------- rotations


def test_rotate_embedding_red_edges_are_chords():
    e = rotate_embedding(7, 2)
    assert e.red_graph().edges() == [
        (0, 2), (0, 5), (1, 3), (1, 6), (2, 4), (3, 5), (4, 6),
    ]
    assert recognize_two_factor(e.red_graph()) == CycleType((7,))


def test_rotate_embedding_rejects_bad_shifts():
    with pytest.raises(ValueError):
        rotate_embedding(2, 2)
    for r in (0, 1, 6, 7):
        with pytest.raises(ValueError):
            rotate_embedding(7, r)
    with pytest.raises(ValueError):
        rotate_embedding(9, 3)  # gcd 3


def test_choose_coprime_shift_values_and_bounds():
    # n -> n - p for the largest prime p with n/2 < p <= n-3
    frozen = {8: 3, 10: 3, 12: 5, 14: 3, 16: 3, 18: 5, 20: 3}
    for n, want in frozen.items():
        r = choose_coprime_shift(n)
        assert r == want
        assert 3 <= r <= n // 2 - 1
        assert math.gcd(r, n) == 1
    for bad in (6, 7, 9):
        with pytest.raises(ValueError):
            choose_coprime_shift(bad)


def test_shift2_sums_have_no_k4():
    for n in (7, 9, 11, 13):
        e = rotate_embedding(n, 2)
        assert contains_k4(sum_graph(e)) is None


# -------------------------------------------------------------- K4 closure


def test_k4_embedding_places_a_k4():
    for lengths in [(8,), (4, 7), (3, 3, 7)]:
        e = k4_embedding(CycleType(lengths))
        quad = contains_k4(sum_graph(e))
        assert quad is not None, lengths


def test_k4_embedding_cycle_index_and_offset():
    ct = CycleType((3, 3, 7))
    base = k4_embedding(ct)
    shifted = k4_embedding(ct, cycle_index=2, offset=3)
    assert contains_k4(sum_graph(shifted)) is not None
    assert base.graph == shifted.graph
    with pytest.raises(ValueError):
        k4_embedding(ct, cycle_index=0)  # length-3 cycle


def test_k4_embedding_names_impossible_remainders():
    with pytest.raises(ValueError, match="K1,2"):
        k4_embedding(CycleType((7,)))
    with pytest.raises(ValueError, match="K1,1"):
        k4_embedding(CycleType((6,)))


# ------------------------------------------------------------------ merges


def test_merge_components_step_by_step():
    e = divide_and_pack(CycleType((3, 3, 5, 5)), ((3, 5), (3, 5)))
    red_type = recognize_two_factor(e.red_graph())
    comps = len(connected_components(sum_graph(e)))
    assert comps == 2
    merged = merge_components(e)
    assert len(connected_components(sum_graph(merged))) == comps - 1
    assert recognize_two_factor(merged.red_graph()) == red_type
    assert merged.graph == e.graph
    assert merged.trace[-1].op == "merge"


def test_merge_until_connected():
    e = divide_and_pack(CycleType((3, 3, 3, 5)), ((3, 3, 3), (5,)))
    connected = merge_until_connected(e)
    assert len(connected_components(sum_graph(connected))) == 1
    assert recognize_two_factor(connected.red_graph()) == CycleType((3, 3, 3, 5))


def test_merge_requires_disconnected_sum():
    with pytest.raises(ValueError):
        merge_components(unique_packing(CycleType((5,))))


# ------------------------------------------------------- explicit packings


def test_unique_packings_cover_all_six():
    for lengths in sorted(UNIQUE_TYPES):
        e = unique_packing(CycleType(lengths))
        assert recognize_two_factor(e.red_graph()) == CycleType(lengths)


def test_triangle_list_variants_for_five_triangles():
    a = triangle_list_packing(CycleType((3, 3, 3, 3, 3)), "A")
    b = triangle_list_packing(CycleType((3, 3, 3, 3, 3)), "B")
    assert a.perm != b.perm
    with pytest.raises(ValueError):
        triangle_list_packing(CycleType((3, 3, 3, 3, 3)), "C")
    with pytest.raises(ValueError):
        triangle_list_packing(CycleType((3, 4)))


def test_cross_packing_33_6_is_disconnected():
    e = cross_packing_33_6()
    assert len(connected_components(sum_graph(e))) == 2


def test_bxy_variants():
    from cyclepack.constructions import bxy_packing

    for lengths in [(4, 4), (4, 4, 4)]:
        bip = bxy_packing(CycleType(lengths), "bipartite")
        non = bxy_packing(CycleType(lengths), "nonbipartite")
        assert is_bipartite(sum_graph(bip)).bipartite
        assert not is_bipartite(sum_graph(non)).bipartite


def test_divide_and_pack_split_control():
    e = divide_and_pack(CycleType((3, 4, 5)), ((3, 4), (5,)))
    assert len(connected_components(sum_graph(e))) >= 2
    with pytest.raises(ValueError):
        divide_and_pack(CycleType((7,)))
    with pytest.raises(ValueError):
        divide_and_pack(CycleType((3, 4, 5)), ((3, 5), (4,)))  # C4 part not embeddable
    with pytest.raises(ValueError):
        divide_and_pack(CycleType((3, 4, 5)), ((3, 3), (5,)))  # not a split of the multiset


def test_divide_and_pack_needs_an_embeddable_split():
    # every split of C3+C3+C4 leaves an unembeddable part
    with pytest.raises(ValueError):
        divide_and_pack(CycleType((3, 3, 4)))


# ------------------------------------------------------------------ ladders


def test_ladder_extend_basics():
    t = LADDER_TEMPLATES["c3c6-planar"]
    base_len = max(t.base_type)
    for l in (1, 2):
        e = ladder_extend("c3c6-planar", l)
        want = CycleType((3, base_len + 2 * l))
        assert recognize_two_factor(e.graph) == want
        assert e.graph == realize(want)
        assert invariant_value(sum_graph(e), "planar") is True
        assert e.trace[0].op == "ladder"


def test_ladder_extend_respects_min_l():
    t = LADDER_TEMPLATES["c4c5-planar"]
    assert t.min_l == 2
    with pytest.raises(ValueError):
        ladder_extend("c4c5-planar", 1)
    with pytest.raises(ValueError):
        ladder_extend("no-such-template", 1)
    with pytest.raises(ValueError):
        ladder_extend("c3c6-planar", 0)


def test_ladder_extend_preserves_nonplanarity():
    e = ladder_extend("c3c7-nonplanar", 1)
    assert invariant_value(sum_graph(e), "planar") is False


def test_ladder_extend_preserves_k4_freeness():
    e = ladder_extend("c3c3c7-k4free", 1)
    assert invariant_value(sum_graph(e), "k4") is False


# --------------------------------------------------------- replay and sweep


def embeddable_types(n_max: int) -> list[CycleType]:
    return [ct for ct in census_types(n_max) if ct.lengths not in NOT_EMBEDDABLE_TYPES]


def test_pack_some_and_replay_all_types_to_11():
    for ct in embeddable_types(11):
        e = pack_some(ct)
        assert e.graph == realize(ct)
        assert recognize_two_factor(e.red_graph()) == ct
        rebuilt = replay_trace(ct, e.trace)
        assert rebuilt.perm == e.perm, ct
    with pytest.raises(ValueError):
        pack_some(CycleType((3, 3)))


def test_two_distinct_embeddings_to_10():
    for ct in embeddable_types(10):
        if ct.lengths in UNIQUE_TYPES:
            with pytest.raises(ValueError):
                two_distinct_embeddings(ct)
            continue
        pair = two_distinct_embeddings(ct)
        assert pair.cycle_type == ct
        s1, s2 = sum_graph(pair.first), sum_graph(pair.second)
        from cyclepack.invariants import canonical_form

        assert canonical_form(s1) != canonical_form(s2), ct
        for e in (pair.first, pair.second):
            rebuilt = replay_trace(ct, e.trace)
            assert rebuilt.perm == e.perm, (ct, pair.invariant)


def test_embedding_from_red_edges_rejects_wrong_image():
    ct = CycleType((3, 4))
    with pytest.raises(ValueError):
        embedding_from_red_edges(ct, realize(CycleType((7,))))


def test_replay_trace_error_paths():
    from cyclepack.constructions import TraceStep

    with pytest.raises(ValueError):
        replay_trace(CycleType((5,)), ())
    with pytest.raises(ValueError):
        replay_trace(CycleType((5,)), (TraceStep("merge", {}),))
    with pytest.raises(ValueError):
        replay_trace(CycleType((5,)), (TraceStep("levitate", {}),))
    # a valid trace replayed against the wrong target type must fail
    e = pack_some(CycleType((5,)))
    with pytest.raises(ValueError):
        replay_trace(CycleType((6,)), e.trace)


def test_trace_steps_are_json_serializable():
    import json

    for ct in [CycleType((5,)), CycleType((9,)), CycleType((3, 3, 4)), CycleType((4, 4))]:
        e = pack_some(ct)
        blob = json.dumps([{"op": s.op, "params": s.params} for s in e.trace])
        assert json.loads(blob)
