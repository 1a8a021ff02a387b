"""Immutable simple directed graphs and structural algorithms.

Vertices are the integers 0..n-1.  Where the literature writes v_1..v_n,
vertex v_i is index i-1 here; that mapping is stated once and used
everywhere.  Unreachable distances are represented by ``None``.
"""

from __future__ import annotations

from collections import deque
from collections.abc import Iterable
from math import gcd

from .errors import (
    DuplicateEdgeError,
    EdgeListFormatError,
    LoopEdgeError,
    NotStronglyConnectedError,
    VertexRangeError,
)


class Digraph:
    """A simple directed graph with sorted out-adjacency lists.

    Instances are immutable after construction; all transformations
    return new graphs, so values can be shared freely across workers.
    """

    __slots__ = ("n", "out_adj", "in_adj", "_edge_set")

    def __init__(self, n: int, out_adj: Iterable[Iterable[int]]):
        adj = tuple(tuple(neighbors) for neighbors in out_adj)
        if n <= 0:
            raise VertexRangeError(f"vertex count must be positive, got {n}")
        if len(adj) != n:
            raise VertexRangeError(f"expected {n} adjacency lists, got {len(adj)}")
        for u, neighbors in enumerate(adj):
            seen: set[int] = set()
            for v in neighbors:
                if not 0 <= v < n:
                    raise VertexRangeError(f"edge ({u}, {v}) leaves vertex range [0, {n})")
                if v == u:
                    raise LoopEdgeError(f"loop edge ({u}, {u}) is not allowed")
                if v in seen:
                    raise DuplicateEdgeError(f"duplicate edge ({u}, {v})")
                seen.add(v)
            if tuple(sorted(neighbors)) != neighbors:
                raise VertexRangeError(f"adjacency list of {u} is not sorted")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "out_adj", adj)
        incoming: list[list[int]] = [[] for _ in range(n)]
        for u, neighbors in enumerate(adj):
            for v in neighbors:
                incoming[v].append(u)
        object.__setattr__(self, "in_adj", tuple(tuple(vs) for vs in incoming))
        object.__setattr__(
            self, "_edge_set", frozenset((u, v) for u in range(n) for v in adj[u])
        )

    def __setattr__(self, name, value):
        raise AttributeError("Digraph is immutable")

    @property
    def edges(self) -> tuple[tuple[int, int], ...]:
        """All edges in lexicographic order."""
        return tuple((u, v) for u in range(self.n) for v in self.out_adj[u])

    @property
    def m(self) -> int:
        return sum(len(neighbors) for neighbors in self.out_adj)

    def has_edge(self, u: int, v: int) -> bool:
        return (u, v) in self._edge_set

    def out_degree(self, u: int) -> int:
        return len(self.out_adj[u])

    def in_degree(self, v: int) -> int:
        return len(self.in_adj[v])

    def add_edge(self, u: int, v: int) -> "Digraph":
        """Return a new graph with edge (u, v) added."""
        if self.has_edge(u, v):
            raise DuplicateEdgeError(f"edge ({u}, {v}) already present")
        adj = [list(neighbors) for neighbors in self.out_adj]
        adj[u] = sorted(adj[u] + [v])
        return Digraph(self.n, adj)

    def remove_edge(self, u: int, v: int) -> "Digraph":
        """Return a new graph with edge (u, v) removed."""
        if not self.has_edge(u, v):
            raise VertexRangeError(f"edge ({u}, {v}) not present")
        adj = [list(neighbors) for neighbors in self.out_adj]
        adj[u].remove(v)
        return Digraph(self.n, adj)

    def relabel(self, perm: Iterable[int]) -> "Digraph":
        """Return the graph with vertex u renamed to perm[u]."""
        p = tuple(perm)
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for u in range(self.n):
            adj[p[u]] = sorted(p[v] for v in self.out_adj[u])
        return Digraph(self.n, adj)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Digraph)
            and self.n == other.n
            and self.out_adj == other.out_adj
        )

    def __hash__(self) -> int:
        return hash((self.n, self.out_adj))

    def __repr__(self) -> str:
        return f"Digraph(n={self.n}, m={self.m})"


def build_digraph(n: int, edges: Iterable[tuple[int, int]]) -> Digraph:
    """Build a graph from an edge list; adjacency comes out sorted.

    Raises LoopEdgeError, DuplicateEdgeError or VertexRangeError for
    invalid input, each as a distinct error type.
    """
    adj: list[list[int]] = [[] for _ in range(max(n, 0))]
    if n <= 0:
        raise VertexRangeError(f"vertex count must be positive, got {n}")
    seen: set[tuple[int, int]] = set()
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise VertexRangeError(f"edge ({u}, {v}) leaves vertex range [0, {n})")
        if u == v:
            raise LoopEdgeError(f"loop edge ({u}, {u}) is not allowed")
        if (u, v) in seen:
            raise DuplicateEdgeError(f"duplicate edge ({u}, {v})")
        seen.add((u, v))
        adj[u].append(v)
    return Digraph(n, [sorted(neighbors) for neighbors in adj])


def complete_digraph(n: int) -> Digraph:
    """The complete simple digraph: every ordered pair of distinct vertices."""
    return Digraph(n, [[v for v in range(n) if v != u] for u in range(n)])


def _reachable(adj: tuple[tuple[int, ...], ...], start: int) -> set[int]:
    seen = {start}
    stack = [start]
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return seen


def is_strongly_connected(g: Digraph) -> bool:
    """True iff every vertex reaches every other along directed paths."""
    if g.n == 1:
        return True
    return (
        len(_reachable(g.out_adj, 0)) == g.n
        and len(_reachable(g.in_adj, 0)) == g.n
    )


def require_strongly_connected(g: Digraph) -> None:
    if not is_strongly_connected(g):
        raise NotStronglyConnectedError("graph is not strongly connected")


def bfs_distances(g: Digraph, source: int) -> list[int | None]:
    """Shortest directed distances from source; None marks unreachable."""
    dist: list[int | None] = [None] * g.n
    dist[source] = 0
    queue = deque([source])
    while queue:
        u = queue.popleft()
        base = dist[u]
        assert base is not None
        for v in g.out_adj[u]:
            if dist[v] is None:
                dist[v] = base + 1
                queue.append(v)
    return dist


def distance(g: Digraph, u: int, v: int) -> int | None:
    """Edge count of a shortest directed path u -> v, or None."""
    return bfs_distances(g, u)[v]


def all_distances(g: Digraph) -> list[list[int | None]]:
    return [bfs_distances(g, u) for u in range(g.n)]


def set_distance(g: Digraph, sources: Iterable[int], targets: Iterable[int]) -> int | None:
    """Minimum distance over ordered pairs (s, t) with s in sources, t in targets."""
    src = sorted(set(sources))
    tgt = set(targets)
    if not src or not tgt:
        raise VertexRangeError("set_distance requires nonempty vertex sets")
    best: int | None = None
    for s in src:
        dist = bfs_distances(g, s)
        for t in tgt:
            d = dist[t]
            if d is not None and (best is None or d < best):
                best = d
    return best


def diameter(g: Digraph) -> int:
    """Largest finite distance over ordered pairs; requires strong connectivity."""
    require_strongly_connected(g)
    worst = 0
    for u in range(g.n):
        for d in bfs_distances(g, u):
            assert d is not None
            worst = max(worst, d)
    return worst


def is_aperiodic(g: Digraph) -> bool:
    """True iff the gcd of all directed cycle lengths is 1.

    Computed from BFS levels: the period equals the gcd of
    level(u) + 1 - level(v) over all edges (u, v); a gcd of 0 means
    no cycle closes, which we treat as periodic.
    """
    require_strongly_connected(g)
    levels = bfs_distances(g, 0)
    period = 0
    for u in range(g.n):
        lu = levels[u]
        assert lu is not None
        for v in g.out_adj[u]:
            lv = levels[v]
            assert lv is not None
            period = gcd(period, abs(lu + 1 - lv))
    return period == 1


def is_eulerian(g: Digraph) -> bool:
    """True iff in-degree equals out-degree at every vertex."""
    require_strongly_connected(g)
    return all(g.out_degree(v) == g.in_degree(v) for v in range(g.n))


def serialize_edge_list(g: Digraph) -> str:
    """Canonical text form: header "n m", then one "u v" line per edge."""
    lines = [f"{g.n} {g.m}"]
    lines.extend(f"{u} {v}" for u, v in g.edges)
    return "\n".join(lines) + "\n"


def parse_edge_list(text: str) -> Digraph:
    """Parse the edge-list format emitted by serialize_edge_list."""
    lines = [line for line in text.splitlines() if line.strip()]
    if not lines:
        raise EdgeListFormatError("empty edge list")
    header = lines[0].split()
    if len(header) != 2:
        raise EdgeListFormatError(f"malformed header: {lines[0]!r}")
    try:
        n, m = int(header[0]), int(header[1])
    except ValueError:
        raise EdgeListFormatError(f"malformed header: {lines[0]!r}") from None
    if len(lines) - 1 != m:
        raise EdgeListFormatError(
            f"header announces {m} edges but {len(lines) - 1} edge lines follow"
        )
    edges = []
    for line in lines[1:]:
        parts = line.split()
        if len(parts) != 2:
            raise EdgeListFormatError(f"malformed edge line: {line!r}")
        try:
            edges.append((int(parts[0]), int(parts[1])))
        except ValueError:
            raise EdgeListFormatError(f"malformed edge line: {line!r}") from None
    return build_digraph(n, edges)


def to_dot(g: Digraph) -> str:
    """DOT text for visualization: one "u -> v;" line per edge."""
    lines = ["digraph {"]
    lines.extend(f"  {u} -> {v};" for u, v in g.edges)
    lines.append("}")
    return "\n".join(lines) + "\n"
