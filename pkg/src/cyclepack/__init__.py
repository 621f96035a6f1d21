"""Edge-disjoint self-packings of 2-factors: constructions, exhaustive
search, and the complete classification of the uniquely packable types."""

from __future__ import annotations

from .constructions import (
    LADDER_TEMPLATES,
    DistinctPair,
    LadderTemplate,
    TraceStep,
    choose_coprime_shift,
    divide_and_pack,
    k4_embedding,
    ladder_extend,
    merge_components,
    merge_until_connected,
    pack_some,
    replay_trace,
    rotate_embedding,
    two_distinct_embeddings,
)
from .embedding import (
    CycleType,
    Embedding,
    EmbeddingViolation,
    PackingSum,
    are_distinct,
    check_embedding,
    make_sum,
    parse_cycle_type,
    realize,
    recognize_two_factor,
)
from .graph import (
    Graph,
    Permutation,
    apply_permutation,
    build_graph,
    complement,
    connected_components,
    disjoint_union,
    edge_sum,
)
from .invariants import (
    are_isomorphic,
    canonical_form,
    contains_k4,
    is_bipartite,
    is_planar,
)
from .oracle import (
    Classification,
    SearchConstraints,
    Verdict,
    census,
    classify_by_oracle,
    classify_by_theorem,
    enumerate_embeddings,
    find_embedding,
    sum_classes,
)

__all__ = [
    "LADDER_TEMPLATES",
    "Classification",
    "CycleType",
    "DistinctPair",
    "Embedding",
    "EmbeddingViolation",
    "Graph",
    "LadderTemplate",
    "PackingSum",
    "Permutation",
    "SearchConstraints",
    "TraceStep",
    "Verdict",
    "apply_permutation",
    "are_distinct",
    "are_isomorphic",
    "build_graph",
    "canonical_form",
    "census",
    "check_embedding",
    "choose_coprime_shift",
    "classify_by_oracle",
    "classify_by_theorem",
    "complement",
    "connected_components",
    "contains_k4",
    "disjoint_union",
    "divide_and_pack",
    "edge_sum",
    "enumerate_embeddings",
    "find_embedding",
    "is_bipartite",
    "is_planar",
    "k4_embedding",
    "ladder_extend",
    "make_sum",
    "merge_components",
    "merge_until_connected",
    "pack_some",
    "parse_cycle_type",
    "realize",
    "recognize_two_factor",
    "replay_trace",
    "rotate_embedding",
    "sum_classes",
    "two_distinct_embeddings",
]
