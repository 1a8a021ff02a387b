"""Extremal constructions, closed forms, and ratio-increasing transforms.

The three graphs D1/D2/D3 attain the maximum principal ratio over all
strongly connected n-vertex digraphs.  All three share the vertex chain
v_1 -> v_2 -> ... -> v_n plus every backward edge among the first n-1
vertices; they differ only in the out-edges of v_n.  This module also
builds the two counterexample families showing that neither a degree
condition nor a discrepancy condition alone keeps the ratio small, and
the edge-addition / edge-deletion transforms that strictly increase the
ratio on suitable labeled-path graphs.
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .digraph import (
    Digraph,
    bfs_distances,
    build_digraph,
    is_strongly_connected,
    require_strongly_connected,
    set_distance,
)
from .errors import NoLabeledPathError, NotInFamilyError, StationarityError
from .perron import solve_exact, vmax_vmin


class ExtremalVariant(enum.Enum):
    """The three extremal graphs, tagged by the out-edges of the last vertex."""

    D1 = "d1"  # (v_n, v_1)
    D2 = "d2"  # (v_n, v_2)
    D3 = "d3"  # (v_n, v_1) and (v_n, v_2)


_LAST_VERTEX_TARGETS = {
    ExtremalVariant.D1: (0,),
    ExtremalVariant.D2: (1,),
    ExtremalVariant.D3: (0, 1),
}


def _chain_with_back_edges(n: int) -> list[tuple[int, int]]:
    """Chain 0 -> 1 -> ... -> n-1 plus all backward edges among 0..n-2."""
    edges = [(i, i + 1) for i in range(n - 1)]
    edges += [(j, i) for j in range(1, n - 1) for i in range(j)]
    return edges


def construct_extremal(n: int, variant: ExtremalVariant) -> Digraph:
    """Build D1, D2 or D3 on n >= 3 vertices with the natural labeling."""
    if n < 3:
        raise ValueError(f"extremal constructions need n >= 3, got {n}")
    edges = _chain_with_back_edges(n)
    edges += [(n - 1, t) for t in _LAST_VERTEX_TARGETS[variant]]
    return build_digraph(n, edges)


def extremal_ratio(n: int) -> Fraction:
    """The exact maximum principal ratio over strongly connected n-vertex graphs.

    Closed form: (2/3) * (n/(n-1) + (sum_{i=1}^{n-3} i!)/(n-1)!) * (n-1)!;
    the sum is empty for n = 3.
    """
    if n < 3:
        raise ValueError(f"maximum ratio formula needs n >= 3, got {n}")
    tail = sum(factorial(i) for i in range(1, n - 2))
    return Fraction(2, 3) * (
        Fraction(n, n - 1) + Fraction(tail, factorial(n - 1))
    ) * factorial(n - 1)


def d1_closed_form(n: int) -> tuple[Fraction, ...]:
    """Unscaled stationary vector of D1(n) with last entry 1.

    x_1 = n(n-2)!/2 + (1/2) sum_{i=0}^{n-3} i!, and for 2 <= k <= n-1
    x_k = a_k x_1 - b_k with a_k = 2k/((k+1)(k-1)!) and
    b_k = k/((k+1)(k-1)!) * sum_{i=0}^{k-2} i!.
    """
    if n < 3:
        raise ValueError(f"closed form needs n >= 3, got {n}")
    x1 = Fraction(n * factorial(n - 2), 2) + Fraction(
        sum(factorial(i) for i in range(n - 2)), 2
    )
    xs = [x1]
    for k in range(2, n):
        a_k = Fraction(2 * k, (k + 1) * factorial(k - 1))
        b_k = Fraction(k, (k + 1) * factorial(k - 1)) * sum(
            factorial(i) for i in range(k - 1)
        )
        xs.append(a_k * x1 - b_k)
    xs.append(Fraction(1))
    return tuple(xs)


# ---------------------------------------------------------------------------
# Labeled-path graphs and the induced coefficient vector


@dataclass(frozen=True)
class LabeledPathGraph:
    """A graph together with a labeling v_1..v_n forming a shortest path.

    labeling[i] is the vertex playing the role of v_{i+1}.  The labeled
    chain must use n-1 edges and admit no shortcut (v_i, v_j) with
    j >= i+2, which makes it a shortest path from v_1 to v_n.
    """

    graph: Digraph
    labeling: tuple[int, ...]

    def __post_init__(self):
        g, lab = self.graph, self.labeling
        if sorted(lab) != list(range(g.n)):
            raise NoLabeledPathError("labeling is not a permutation of the vertices")
        pos = {v: i for i, v in enumerate(lab)}
        for i in range(g.n - 1):
            if not g.has_edge(lab[i], lab[i + 1]):
                raise NoLabeledPathError(
                    f"consecutive labeled vertices v_{i + 1}, v_{i + 2} are not an edge"
                )
        for u in range(g.n):
            for v in g.out_adj[u]:
                if pos[v] >= pos[u] + 2:
                    raise NoLabeledPathError(
                        f"shortcut edge v_{pos[u] + 1} -> v_{pos[v] + 1} "
                        "violates the shortest-path property"
                    )

    @property
    def n(self) -> int:
        return self.graph.n

    def vertex(self, i: int) -> int:
        """Vertex playing the role of v_i (1-indexed)."""
        return self.labeling[i - 1]

    def out_degree_of(self, i: int) -> int:
        return self.graph.out_degree(self.vertex(i))

    @classmethod
    def from_digraph(cls, g: Digraph) -> "LabeledPathGraph":
        """Find a shortest path of length n-1 and label along it.

        Such a path exists from start u iff the BFS levels from u are a
        bijection onto 0..n-1, and then the path is unique.  The smallest
        admissible start gives the lexicographically least sequence.
        """
        require_strongly_connected(g)
        for u in range(g.n):
            dist = bfs_distances(g, u)
            by_level: dict[int, int] = {}
            ok = True
            for v, d in enumerate(dist):
                if d is None or d in by_level:
                    ok = False
                    break
                by_level[d] = v
            if ok and len(by_level) == g.n:
                labeling = tuple(by_level[d] for d in range(g.n))
                return cls(g, labeling)
        raise NoLabeledPathError("no Hamiltonian shortest path of length n-1 exists")

    def with_graph(self, g: Digraph) -> "LabeledPathGraph":
        """Same labeling on a modified graph (used by the edge transforms)."""
        return LabeledPathGraph(g, self.labeling)


@dataclass(frozen=True)
class PathCoefficients:
    """Coefficients f with phi(v_i) = f_i * phi(v_n), so f_n = 1.

    values[i] is f_{i+1}.  Each f_k satisfies the stationarity recursion
    f_k = f_{k-1}/d+(v_{k-1}) + sum over backward edges v_i -> v_k of
    f_i/d+(v_i).
    """

    values: tuple[Fraction, ...]

    def f(self, i: int) -> Fraction:
        """f_i, 1-indexed."""
        return self.values[i - 1]


def path_coefficients(lp: LabeledPathGraph) -> PathCoefficients:
    """Rescale the exact stationary vector so the last labeled entry is 1."""
    g = lp.graph
    phi = solve_exact(g)
    last = phi[lp.vertex(g.n)]
    values = tuple(phi[lp.vertex(i)] / last for i in range(1, g.n + 1))
    _check_coefficient_recursion(lp, values)
    return PathCoefficients(values)


def _check_coefficient_recursion(
    lp: LabeledPathGraph, values: tuple[Fraction, ...]
) -> None:
    g = lp.graph
    pos = {v: i + 1 for i, v in enumerate(lp.labeling)}
    for k in range(2, g.n + 1):
        expected = values[k - 2] / lp.out_degree_of(k - 1)
        for u in g.in_adj[lp.vertex(k)]:
            i = pos[u]
            if i >= k + 1:
                expected += values[i - 1] / g.out_degree(u)
        if expected != values[k - 1]:
            raise StationarityError(f"coefficient recursion fails at index {k}")


# ---------------------------------------------------------------------------
# The two labeled-path families and their edge transforms


@dataclass(frozen=True)
class FamilyReport:
    """Membership verdict plus the truth value of each defining property."""

    member: bool
    properties: dict[str, bool]

    def __bool__(self) -> bool:
        return self.member


def _extremal_position(lp: LabeledPathGraph) -> bool:
    """v_2 in V_max, v_n in V_min, and dist(V_max, V_min) = n - 2.

    Always decided in exact arithmetic: the position property is an
    exact-equality condition and floats could misclassify ties.
    """
    g = lp.graph
    vmax, vmin = vmax_vmin(solve_exact(g))
    if lp.vertex(2) not in vmax or lp.vertex(g.n) not in vmin:
        return False
    return set_distance(g, vmax, vmin) == g.n - 2


def check_addition_family(lp: LabeledPathGraph) -> FamilyReport:
    """Membership in the family closed under the edge-addition transform.

    Properties: the labeled chain is a shortest path of length n-1;
    d+(v_2) = 2 and d+(v_3) = 3; d+(v_i) >= floor(2i/3) for
    4 <= i <= n-1; the extremal-position property; and some backward
    edge (v_j, v_i) with 4 <= j <= n-1 is missing.
    """
    g = lp.graph
    require_strongly_connected(g)
    n = g.n
    props = {
        # guaranteed by LabeledPathGraph validation, reported for completeness
        "shortest_path": True,
        "head_degrees": lp.out_degree_of(2) == 2
        and (n < 4 or lp.out_degree_of(3) == 3),
        "degree_floors": all(lp.out_degree_of(i) >= (2 * i) // 3 for i in range(4, n)),
        "extremal_position": _extremal_position(lp),
        "missing_backward_edge": any(
            not g.has_edge(lp.vertex(j), lp.vertex(i))
            for j in range(4, n)
            for i in range(1, j)
        ),
    }
    return FamilyReport(all(props.values()), props)


def check_deletion_family(lp: LabeledPathGraph) -> FamilyReport:
    """Membership in the family closed under the edge-deletion transform.

    Properties: the labeled chain is a shortest path; d+(v_i) = i for
    every 2 <= i <= n-1 (all backward edges present); the
    extremal-position property; d+(v_n) >= 2; and the out-neighborhood
    of v_n is not exactly {v_1, v_2}.
    """
    g = lp.graph
    require_strongly_connected(g)
    n = g.n
    last = lp.vertex(n)
    props = {
        "shortest_path": True,
        "interior_degrees": all(lp.out_degree_of(i) == i for i in range(2, n)),
        "extremal_position": _extremal_position(lp),
        "last_degree": g.out_degree(last) >= 2,
        "last_targets": set(g.out_adj[last]) != {lp.vertex(1), lp.vertex(2)},
    }
    return FamilyReport(all(props.values()), props)


def add_edge_transform(lp: LabeledPathGraph) -> Digraph:
    """Add the single backward edge (v_t, v_s) selected by the family rule.

    t is the smallest index in 4..n missing some backward edge, and s the
    largest target below it; on family members this strictly increases
    the principal ratio.
    """
    g = lp.graph
    for t in range(4, g.n + 1):
        vt = lp.vertex(t)
        for s in range(t - 1, 0, -1):
            vs = lp.vertex(s)
            if not g.has_edge(vt, vs):
                return g.add_edge(vt, vs)
    raise NotInFamilyError("no backward edge (v_t, v_s) with t >= 4 is missing")


def delete_edge_transform(lp: LabeledPathGraph) -> Digraph:
    """Delete (v_n, v_t) for the largest 3 <= t <= n-1 with that edge present.

    On members of the deletion family this strictly increases the
    principal ratio and preserves strong connectivity.
    """
    g = lp.graph
    last = lp.vertex(g.n)
    for t in range(g.n - 1, 2, -1):
        vt = lp.vertex(t)
        if g.has_edge(last, vt):
            result = g.remove_edge(last, vt)
            if not is_strongly_connected(result):
                raise NotInFamilyError("deletion would disconnect the graph")
            return result
    raise NotInFamilyError("v_n has no out-edge (v_n, v_t) with 3 <= t <= n-1")


# ---------------------------------------------------------------------------
# Rejection samplers for the two families


def sample_addition_family(
    n: int, rng: random.Random, max_tries: int = 10000
) -> LabeledPathGraph:
    """Draw a random member of the addition family on n >= 6 vertices.

    Starts from the dense chain-plus-all-backward-edges graph with a
    random out-neighborhood for v_n, deletes a few random admissible
    backward edges, and rejects until the full membership check passes.
    The extremal-position property needs an exact solve, so rejection
    sampling is the only practical generator.
    """
    if n < 6:
        raise ValueError("family sampling needs n >= 6")
    for _ in range(max_tries):
        edges = set(_chain_with_back_edges(n))
        k = rng.randint(1, max(1, min(4, n - 4)))
        deletable = [(j, i) for j in range(3, n - 1) for i in range(j)]
        deleted = 0
        for j, i in rng.sample(deletable, min(len(deletable), 3 * k)):
            if deleted == k:
                break
            floor = (2 * (j + 1)) // 3
            degree = sum(1 for e in edges if e[0] == j)
            if degree - 1 >= floor and (j, i) in edges:
                edges.discard((j, i))
                deleted += 1
        if deleted == 0:
            continue
        targets = rng.sample(range(n - 1), rng.randint(1, min(3, n - 1)))
        edges.update((n - 1, t) for t in targets)
        g = build_digraph(n, sorted(edges))
        if not is_strongly_connected(g):
            continue
        lp = LabeledPathGraph(g, tuple(range(n)))
        if check_addition_family(lp).member:
            return lp
    raise NotInFamilyError(f"no addition-family member found in {max_tries} tries")


def sample_deletion_family(
    n: int, rng: random.Random, max_tries: int = 10000
) -> LabeledPathGraph:
    """Draw a random member of the deletion family on n >= 6 vertices.

    The chain and all backward edges are forced by the degree property,
    so only the out-neighborhood of v_n varies: a random subset of size
    >= 2 other than {v_1, v_2}, rejected until the position check passes.
    """
    if n < 6:
        raise ValueError("family sampling needs n >= 6")
    for _ in range(max_tries):
        size = rng.randint(2, n - 1)
        targets = set(rng.sample(range(n - 1), size))
        if targets == {0, 1}:
            continue
        edges = _chain_with_back_edges(n) + [(n - 1, t) for t in sorted(targets)]
        g = build_digraph(n, edges)
        lp = LabeledPathGraph(g, tuple(range(n)))
        if check_deletion_family(lp).member:
            return lp
    raise NotInFamilyError(f"no deletion-family member found in {max_tries} tries")


# ---------------------------------------------------------------------------
# Counterexample constructions


def construct_degree_counterexample(n: int) -> Digraph:
    """Two complete digraphs bridged through a middle vertex.

    Layout on 2n+1 vertices: indices 0..n-1 are the first complete part
    with distinguished vertex e = n-1; index n is the middle vertex b;
    indices n+1..2n are the second complete part with distinguished
    vertex d = 2n.  Every first-part vertex points to b, b points to
    every second-part vertex, and (d, e) closes the loop.  All degrees
    are n-1 or n, yet the principal ratio is exactly n+1.
    """
    if n < 2:
        raise ValueError(f"degree counterexample needs n >= 2, got {n}")
    edges = []
    for u in range(n):
        for v in range(n):
            if u != v:
                edges.append((u, v))
    for u in range(n + 1, 2 * n + 1):
        for v in range(n + 1, 2 * n + 1):
            if u != v:
                edges.append((u, v))
    b = n
    edges += [(u, b) for u in range(n)]
    edges += [(b, v) for v in range(n + 1, 2 * n + 1)]
    edges.append((2 * n, n - 1))  # (d, e)
    return build_digraph(2 * n + 1, edges)


def degree_counterexample_profile(n: int) -> tuple[Fraction, ...]:
    """The unscaled stationary vector of the bridged construction.

    By role: first-part vertices 1, e = 2, b = (n+1)/n, second-part
    vertices (n+1)^2 (n-1)/n^2, d = n+1, in the layout of
    construct_degree_counterexample.
    """
    if n < 2:
        raise ValueError(f"degree counterexample needs n >= 2, got {n}")
    c_value = Fraction((n + 1) ** 2 * (n - 1), n**2)
    return (
        (Fraction(1),) * (n - 1)
        + (Fraction(2),)
        + (Fraction(n + 1, n),)
        + (c_value,) * (n - 1)
        + (Fraction(n + 1),)
    )


def chain_graph(m: int) -> Digraph:
    """Directed m-cycle plus back-edges (v_j, v_1) for j = 2..m-1.

    The walk halves its mass at each of v_2..v_m-1, so the stationary
    vector decays geometrically along the chain; the exact principal
    ratio is 2^(m-2).
    """
    if m < 2:
        raise ValueError(f"chain graph needs m >= 2, got {m}")
    edges = [(i, i + 1) for i in range(m - 1)]
    edges.append((m - 1, 0))
    edges += [(j, 0) for j in range(1, m - 1)]
    return build_digraph(m, edges)


def construct_discrepancy_counterexample(m: int, n: int) -> Digraph:
    """Chain graph joined to a complete digraph through its head vertex.

    Layout on m+n vertices: indices 0..m-1 are the chain (head v_1 = 0),
    indices m..m+n-1 the complete part with entry vertex u = m, joined
    by the edges (0, m) and (m, 0).  The entry edge raises the head's
    out-degree to 2, so inside the composite the chain decays by a
    factor 2^(m-1) and the principal ratio is at least 2^(m-1), while
    the dense part keeps the discrepancy condition satisfied.
    """
    if m < 2 or n < 2:
        raise ValueError(f"discrepancy counterexample needs m, n >= 2, got ({m}, {n})")
    edges = list(chain_graph(m).edges)
    for u in range(m, m + n):
        for v in range(m, m + n):
            if u != v:
                edges.append((u, v))
    edges += [(0, m), (m, 0)]
    return build_digraph(m + n, edges)
