"""Materialization of G(n, r, s): vertices, ranks, adjacency, and edge stream.

A vertex is a strictly increasing tuple of r integers from {1..n}.  The total
order on vertices is colexicographic rank, which has a simple closed form and
fixes every determinism guarantee downstream (edge order, canonical cycles,
trial indexing).  Nothing here materializes an adjacency matrix; all iteration
is generated on demand.
"""
from __future__ import annotations

import math
from itertools import combinations
from typing import Iterator

from .combinatorics import GraphParams
from .errors import ParameterError

__all__ = [
    "Vertex",
    "rank_vertex",
    "unrank_vertex",
    "all_vertices",
    "vertex_mask",
    "validate_vertex",
    "intersection_size",
    "adjacent",
    "neighbors",
    "partition_class",
    "edges",
    "edge_rank_pairs",
    "format_vertex",
]

Vertex = tuple[int, ...]


def rank_vertex(v: Vertex) -> int:
    """Colex rank of a sorted r-subset of {1..n}: sum of C(v[k]-1, k+1)."""
    return sum(math.comb(e - 1, k + 1) for k, e in enumerate(v))


def unrank_vertex(rank: int, r: int) -> Vertex:
    """Inverse of rank_vertex for subsets of size r (independent of n)."""
    if rank < 0 or r < 1:
        raise ParameterError(f"need rank >= 0 and r >= 1, got rank={rank}, r={r}")
    out = [0] * r
    remaining = rank
    for k in range(r, 0, -1):
        # largest c with C(c, k) <= remaining gives the (k-1)-th element c + 1
        c = k - 1
        while math.comb(c + 1, k) <= remaining:
            c += 1
        remaining -= math.comb(c, k)
        out[k - 1] = c + 1
    return tuple(out)


def all_vertices(params: GraphParams) -> Iterator[Vertex]:
    """All N vertices in rank order."""
    for rk in range(params.vertex_count):
        yield unrank_vertex(rk, params.r)


def vertex_mask(v: Vertex) -> int:
    """Packed bitmask with bit e-1 set for each element e."""
    m = 0
    for e in v:
        m |= 1 << (e - 1)
    return m


def validate_vertex(params: GraphParams, v: Vertex) -> None:
    if len(v) != params.r or len(set(v)) != params.r:
        raise ParameterError(f"vertex {v} is not an r={params.r}-subset")
    if any(not 1 <= e <= params.n for e in v):
        raise ParameterError(f"vertex {v} has elements outside [1, {params.n}]")
    if tuple(sorted(v)) != tuple(v):
        raise ParameterError(f"vertex {v} is not sorted ascending")


def intersection_size(x: Vertex, y: Vertex) -> int:
    if len(x) != len(y):
        raise ParameterError(f"vertices of different sizes: {x} vs {y}")
    return len(set(x) & set(y))


def adjacent(params: GraphParams, x: Vertex, y: Vertex) -> bool:
    """Edge rule of G(n, r, s): |x intersect y| = s."""
    return intersection_size(x, y) == params.s


def neighbors(params: GraphParams, x: Vertex) -> Iterator[Vertex]:
    """The N1 vertices meeting x in exactly s elements, in a fixed order.

    Constructed by choosing s elements inside x and r - s outside, both in
    lexicographic order of the choices.
    """
    outside = [e for e in range(1, params.n + 1) if e not in set(x)]
    keep = params.s
    add = params.r - params.s
    for inside_part in combinations(x, keep):
        for outside_part in combinations(outside, add):
            yield tuple(sorted(inside_part + outside_part))


def partition_class(params: GraphParams, y: Vertex, j: int) -> Iterator[Vertex]:
    """All vertices whose intersection with y has exactly j elements.

    The classes j = 0..r partition the vertex set; class j = s is the
    neighborhood of y and class j = r is {y} itself.
    """
    if not 0 <= j <= params.r:
        raise ParameterError(f"j must lie in [0, r={params.r}], got {j}")
    outside = [e for e in range(1, params.n + 1) if e not in set(y)]
    for inside_part in combinations(y, j):
        for outside_part in combinations(outside, params.r - j):
            yield tuple(sorted(inside_part + outside_part))


def edge_rank_pairs(params: GraphParams) -> Iterator[tuple[int, int]]:
    """Every edge once, as a rank pair (a, b) with a < b, in (a, b) order.

    This stream order is the canonical edge indexing used by the percolation
    sampler; one uniform draw is attached to each position.
    """
    for ra in range(params.vertex_count):
        a = unrank_vertex(ra, params.r)
        higher = sorted(
            rb for rb in (rank_vertex(z) for z in neighbors(params, a)) if rb > ra
        )
        for rb in higher:
            yield (ra, rb)


def edges(params: GraphParams) -> Iterator[tuple[Vertex, Vertex]]:
    """Every edge once as a vertex pair, rank(a) < rank(b), in (a, b) rank order."""
    for ra, rb in edge_rank_pairs(params):
        yield (unrank_vertex(ra, params.r), unrank_vertex(rb, params.r))


def format_vertex(v: Vertex) -> str:
    """Human-facing rendering: sorted elements in braces, e.g. ``{1,3,7}``."""
    return "{" + ",".join(str(e) for e in v) + "}"
