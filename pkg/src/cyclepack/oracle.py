"""Exhaustive self-embedding search and the classification it certifies.

The enumerator assigns images vertex by vertex in label order and prunes
a branch the moment a fully-mapped edge lands on an edge of the host
graph, so no invalid permutation is ever visited.  Visitation order is
deterministic (ascending candidate images).

For a canonically realized union of cycles the search can quotient away
the host's automorphisms ("reduced" mode): within each cycle block the
first vertex must receive the smallest image of its block and the second
vertex a smaller image than the last one, and equal-length blocks must
receive images with ascending minima.  Each edge-disjoint image edge set
is then visited through exactly one permutation, which divides the raw
count by the automorphism order without affecting the set of sum
isomorphism classes.

Classification compares this oracle against the closed-form verdict
table: embeddability fails exactly for C3, C4 and C3+C3; of the
embeddable types exactly C5, C6, C3+C4, C3+C5, C3+C3+C3 and
C3+C3+C3+C3 admit a single sum class; everything else admits at least
two.
"""

from __future__ import annotations

import os
import time
from dataclasses import dataclass, field, replace
from enum import Enum

from .embedding import CycleType, Embedding, make_sum, realize, recognize_two_factor
from .graph import Graph, Permutation, bits, connected_components, analyze_connectivity
from .invariants import (
    canonical_form,
    contains_k4,
    has_p4_neighborhood_vertex,
    is_bipartite,
    is_planar,
)

SOFT_VERTEX_LIMIT = 14
SOFT_CENSUS_LIMIT = 13
_ENV_OVERRIDE = "CYCLEPACK_ALLOW_LARGE"

NOT_EMBEDDABLE_TYPES = {(3,), (4,), (3, 3)}
UNIQUE_TYPES = {(5,), (6,), (3, 4), (3, 5), (3, 3, 3), (3, 3, 3, 3)}


def _large_allowed(allow_large: bool) -> bool:
    return allow_large or bool(os.environ.get(_ENV_OVERRIDE))


class Verdict(str, Enum):
    NOT_EMBEDDABLE = "not-embeddable"
    UNIQUE = "uniquely-embeddable"
    MULTIPLE = "multiply-embeddable"


@dataclass(frozen=True)
class SearchConstraints:
    """Leaf filters (tri-state: True/False/None=don't care) and stop rules."""

    require_k4: bool | None = None
    require_bipartite: bool | None = None
    require_planar: bool | None = None
    require_connected: bool | None = None
    require_cut_vertex: bool | None = None
    limit: int | None = None
    class_limit: int | None = None

    def is_exhaustive(self) -> bool:
        return self.limit is None and self.class_limit is None

    def has_filters(self) -> bool:
        return not (
            self.require_k4 is None
            and self.require_bipartite is None
            and self.require_planar is None
            and self.require_connected is None
            and self.require_cut_vertex is None
        )

    def matches(self, e: Embedding) -> bool:
        if not self.has_filters():
            return True
        s = make_sum(e).sum
        if self.require_connected is not None:
            if (len(connected_components(s)) == 1) != self.require_connected:
                return False
        if self.require_cut_vertex is not None:
            _, cuts = analyze_connectivity(s)
            if bool(cuts) != self.require_cut_vertex:
                return False
        if self.require_bipartite is not None:
            if is_bipartite(s).bipartite != self.require_bipartite:
                return False
        if self.require_k4 is not None:
            if (contains_k4(s) is not None) != self.require_k4:
                return False
        if self.require_planar is not None:
            if is_planar(s).planar != self.require_planar:
                return False
        return True


@dataclass
class SearchOutcome:
    """What an enumeration run saw and whether it ran to completion."""

    exhausted: bool
    visited: int  # embeddings that passed the constraints
    leaves: int  # all valid embeddings encountered
    classes: dict[bytes, Embedding] = field(default_factory=dict)


def _reduction_bounds(ct: CycleType) -> list[int | None]:
    """lb[v] = earlier vertex whose image must stay below image[v], else None."""
    lb: list[int | None] = [None] * ct.total
    prev_start: int | None = None
    prev_len: int | None = None
    for start, m in ct.blocks():
        if prev_len == m:
            lb[start] = prev_start
        for v in range(start + 1, start + m - 1):
            lb[v] = start
        lb[start + m - 1] = start + 1
        prev_start, prev_len = start, m
    return lb


def enumerate_embeddings(
    g: Graph,
    constraints: SearchConstraints | None = None,
    visit=None,
    *,
    reduced: bool = False,
    track_classes: bool = False,
    allow_large: bool = False,
) -> SearchOutcome:
    """Backtracking enumeration of all self-embeddings of g.

    visit(e) is called for each embedding passing the constraints; a
    False return stops the search.  reduced=True requires g to be the
    canonical realization of its cycle type and then visits one
    permutation per image edge set.
    """
    constraints = constraints or SearchConstraints()
    if constraints.is_exhaustive() and g.n > SOFT_VERTEX_LIMIT and not _large_allowed(allow_large):
        raise ValueError(
            f"exhaustive enumeration of n={g.n} exceeds the soft limit "
            f"{SOFT_VERTEX_LIMIT}; pass allow_large=True or set {_ENV_OVERRIDE}=1"
        )
    lb: list[int | None] = [None] * g.n
    if reduced:
        ct = recognize_two_factor(g)
        if ct is None or realize(ct) != g:
            raise ValueError("reduced mode requires the canonical realization of a cycle type")
        lb = _reduction_bounds(ct)

    n = g.n
    adj = g.adj
    nbrs_before = [[u for u in bits(adj[v]) if u < v] for v in range(n)]
    full = (1 << n) - 1
    image = [0] * n
    track = track_classes or constraints.class_limit is not None
    out = SearchOutcome(exhausted=True, visited=0, leaves=0)

    def leaf() -> bool:
        out.leaves += 1
        e = Embedding(g, Permutation(tuple(image)))
        if not constraints.matches(e):
            return True
        out.visited += 1
        if track:
            cf = canonical_form(make_sum(e).sum)
            if cf not in out.classes:
                out.classes[cf] = e
                if constraints.class_limit is not None and len(out.classes) >= constraints.class_limit:
                    return False
        if visit is not None and visit(e) is False:
            return False
        return not (constraints.limit is not None and out.visited >= constraints.limit)

    def rec(v: int, used: int) -> bool:
        if v == n:
            return leaf()
        allowed = full & ~used
        for u in nbrs_before[v]:
            allowed &= ~adj[image[u]]
        b = lb[v]
        if b is not None:
            allowed &= -(2 << image[b])
        while allowed:
            low = allowed & -allowed
            allowed ^= low
            w = low.bit_length() - 1
            image[v] = w
            if not rec(v + 1, used | low):
                return False
        return True

    if not rec(0, 0):
        out.exhausted = False
    return out


def find_embedding(
    g: Graph,
    constraints: SearchConstraints | None = None,
    *,
    reduced: bool = False,
) -> Embedding | None:
    """First embedding in deterministic search order satisfying the constraints."""
    base = constraints or SearchConstraints()
    limited = replace(base, limit=1, class_limit=None)
    hit: list[Embedding] = []
    enumerate_embeddings(g, limited, visit=hit.append, reduced=reduced)
    return hit[0] if hit else None


def sum_classes(
    g: Graph,
    *,
    reduced: bool | None = None,
    class_limit: int | None = None,
    allow_large: bool = False,
) -> SearchOutcome:
    """Isomorphism classes of packing sums with one witness embedding each.

    Exhausts the embedding space unless class_limit stops it early; the
    classes dict maps canonical forms to first-found witnesses in
    deterministic order.  reduced=None picks reduced mode automatically
    when g is a canonical cycle-type realization.
    """
    if reduced is None:
        ct = recognize_two_factor(g)
        reduced = ct is not None and realize(ct) == g
    constraints = SearchConstraints(class_limit=class_limit)
    return enumerate_embeddings(
        g, constraints, reduced=reduced, track_classes=True, allow_large=allow_large
    )


@dataclass(frozen=True)
class Classification:
    """Verdict for one cycle type, with up to two witness embeddings."""

    cycle_type: CycleType
    verdict: Verdict
    witnesses: tuple[Embedding, ...] = ()
    class_count: int | None = None
    exhausted: bool | None = None
    reduced_leaves: int | None = None

    @property
    def raw_leaves(self) -> int | None:
        """Total valid permutations, derived from the reduced count when exhausted."""
        if self.exhausted and self.reduced_leaves is not None:
            return self.reduced_leaves * self.cycle_type.automorphism_count()
        return None


def classify_by_theorem(ct: CycleType) -> Classification:
    """Closed-form verdict from the characterization table; no search."""
    if ct.lengths in NOT_EMBEDDABLE_TYPES:
        return Classification(ct, Verdict.NOT_EMBEDDABLE)
    if ct.lengths in UNIQUE_TYPES:
        return Classification(ct, Verdict.UNIQUE)
    return Classification(ct, Verdict.MULTIPLE)


def classify_by_oracle(
    ct: CycleType, *, class_limit: int = 2, allow_large: bool = False
) -> Classification:
    """Verdict by exhaustive (reduced) search, stopping once class_limit
    distinct sum classes are witnessed."""
    if ct.total > SOFT_VERTEX_LIMIT and not _large_allowed(allow_large):
        raise ValueError(
            f"oracle classification of {ct} (n={ct.total}) exceeds the soft limit; "
            f"set {_ENV_OVERRIDE}=1 to override"
        )
    g = realize(ct)
    out = sum_classes(g, class_limit=class_limit, allow_large=True)
    count = len(out.classes)
    if count == 0:
        verdict = Verdict.NOT_EMBEDDABLE
    elif count == 1:
        verdict = Verdict.UNIQUE
    else:
        verdict = Verdict.MULTIPLE
    return Classification(
        ct,
        verdict,
        witnesses=tuple(out.classes.values())[:2],
        class_count=count,
        exhausted=out.exhausted,
        reduced_leaves=out.leaves,
    )


_INVARIANT_ORDER = ("k4", "bipartite", "planar", "cut-vertex", "p4-neighborhood")


def invariant_value(g: Graph, name: str):
    if name == "k4":
        return contains_k4(g) is not None
    if name == "bipartite":
        return is_bipartite(g).bipartite
    if name == "planar":
        return is_planar(g).planar
    if name == "cut-vertex":
        return bool(analyze_connectivity(g)[1])
    if name == "p4-neighborhood":
        return has_p4_neighborhood_vertex(g) is not None
    if name == "connected":
        return len(connected_components(g)) == 1
    raise ValueError(f"unknown invariant {name!r}")


def first_distinguishing_invariant(g1: Graph, g2: Graph) -> tuple[str, bool, bool] | None:
    """First invariant in fixed order that separates the two graphs, if any."""
    for name in _INVARIANT_ORDER:
        v1, v2 = invariant_value(g1, name), invariant_value(g2, name)
        if v1 != v2:
            return name, v1, v2
    return None


@dataclass(frozen=True)
class CensusRow:
    cycle_type: CycleType
    theorem: Verdict
    oracle: Verdict
    agree: bool
    class_count: int
    exhausted: bool
    reduced_leaves: int
    raw_leaves: int | None
    certificate: str | None
    seconds: float


@dataclass(frozen=True)
class CensusReport:
    n_max: int
    rows: tuple[CensusRow, ...]
    disagreements: int


def partitions_with_min_part(n: int, min_part: int = 3) -> list[tuple[int, ...]]:
    """All multisets of parts >= min_part summing to n, ascending, lex order."""
    out: list[tuple[int, ...]] = []

    def rec(remaining: int, least: int, acc: tuple[int, ...]):
        if remaining == 0:
            out.append(acc)
            return
        for part in range(least, remaining + 1):
            rest = remaining - part
            if rest == 0 or rest >= part:
                rec(rest, part, acc + (part,))

    rec(n, min_part, ())
    return out


def census_types(n_max: int) -> list[CycleType]:
    """Every cycle type with 3 <= total <= n_max, ordered by total then parts."""
    types = []
    for n in range(3, n_max + 1):
        for parts in partitions_with_min_part(n):
            types.append(CycleType(parts))
    return types


def _census_row(ct: CycleType) -> CensusRow:
    start = time.perf_counter()
    theo = classify_by_theorem(ct)
    orac = classify_by_oracle(ct, allow_large=True)
    certificate = None
    if len(orac.witnesses) == 2:
        s1 = make_sum(orac.witnesses[0]).sum
        s2 = make_sum(orac.witnesses[1]).sum
        sep = first_distinguishing_invariant(s1, s2)
        certificate = (
            f"{sep[0]}: {sep[1]} vs {sep[2]}" if sep is not None else "canonical only"
        )
    return CensusRow(
        cycle_type=ct,
        theorem=theo.verdict,
        oracle=orac.verdict,
        agree=theo.verdict == orac.verdict,
        class_count=orac.class_count or 0,
        exhausted=bool(orac.exhausted),
        reduced_leaves=orac.reduced_leaves or 0,
        raw_leaves=orac.raw_leaves,
        certificate=certificate,
        seconds=time.perf_counter() - start,
    )


def census(n_max: int, *, jobs: int = 1, allow_large: bool = False) -> CensusReport:
    """Theorem-vs-oracle comparison across every cycle type up to n_max vertices."""
    if n_max > SOFT_CENSUS_LIMIT + 1 and not _large_allowed(allow_large):
        raise ValueError(
            f"census beyond n_max={SOFT_CENSUS_LIMIT + 1} needs {_ENV_OVERRIDE}=1"
        )
    types = census_types(n_max)
    if jobs > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = tuple(pool.map(_census_row, types))
    else:
        rows = tuple(_census_row(ct) for ct in types)
    disagreements = sum(1 for r in rows if not r.agree)
    return CensusReport(n_max=n_max, rows=rows, disagreements=disagreements)
