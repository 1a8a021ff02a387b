"""Stationary distributions, principal ratios, and circulations.

The exact path works entirely in rational arithmetic: principal ratios
grow factorially, so floating point cannot certify extremality.  The
float path is a lazy-walk power iteration used for cross-validation and
as a cheap escape hatch on larger graphs.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm

import numpy as np

from .digraph import Digraph, require_strongly_connected
from .errors import (
    CirculationDomainError,
    ConvergenceError,
    DistributionError,
    PeriodicGraphError,
    SinkVertexError,
    StationarityError,
)

ZERO = Fraction(0)


@dataclass(frozen=True)
class StochasticMatrix:
    """Sparse row-stochastic transition matrix of the simple random walk.

    rows[u] holds (v, 1/out_degree(u)) for each edge (u, v); every row
    sums to exactly 1.
    """

    n: int
    rows: tuple[tuple[tuple[int, Fraction], ...], ...]

    def row(self, u: int) -> tuple[tuple[int, Fraction], ...]:
        return self.rows[u]

    def left_multiply(self, vec: list[Fraction]) -> list[Fraction]:
        """Exact vec @ P for a length-n rational vector."""
        out = [ZERO] * self.n
        for u in range(self.n):
            x = vec[u]
            if x:
                for v, p in self.rows[u]:
                    out[v] += x * p
        return out

    def to_float_array(self) -> np.ndarray:
        dense = np.zeros((self.n, self.n))
        for u in range(self.n):
            for v, p in self.rows[u]:
                dense[u, v] = float(p)
        return dense


def transition_matrix(g: Digraph) -> StochasticMatrix:
    """P(u, v) = 1/out_degree(u) on edges; raises on sink vertices."""
    rows = []
    for u in range(g.n):
        d = g.out_degree(u)
        if d == 0:
            raise SinkVertexError(f"vertex {u} has no out-edges")
        p = Fraction(1, d)
        rows.append(tuple((v, p) for v in g.out_adj[u]))
    return StochasticMatrix(g.n, tuple(rows))


@dataclass(frozen=True)
class RationalDistribution:
    """Exact stationary vector: strictly positive entries summing to 1."""

    entries: tuple[Fraction, ...]

    def __post_init__(self):
        if any(x <= 0 for x in self.entries):
            raise DistributionError("distribution entries must be strictly positive")
        if sum(self.entries) != 1:
            raise DistributionError("distribution entries must sum to exactly 1")

    @property
    def n(self) -> int:
        return len(self.entries)

    def __getitem__(self, i: int) -> Fraction:
        return self.entries[i]


@dataclass(frozen=True)
class FloatDistribution:
    """Floating stationary vector plus the L1 residual of phi P - phi."""

    entries: tuple[float, ...]
    residual: float

    @property
    def n(self) -> int:
        return len(self.entries)

    def __getitem__(self, i: int) -> float:
        return self.entries[i]


def stationary_residual(g: Digraph, entries: list[Fraction]) -> list[Fraction]:
    """Exact phi P - phi, computed from in-neighborhoods."""
    res = []
    for v in range(g.n):
        acc = -entries[v]
        for u in g.in_adj[v]:
            acc += entries[u] / g.out_degree(u)
        res.append(acc)
    return res


def solve_exact(g: Digraph) -> RationalDistribution:
    """The unique exact stationary distribution of the walk on g.

    Solves (P^T - I) phi = 0 with the first equation replaced by
    sum(phi) = 1.  Rows are scaled to integers and eliminated
    fraction-free (Bareiss) with partial pivoting by magnitude; the
    result is verified by substitution before it is returned.
    """
    require_strongly_connected(g)
    n = g.n
    if n == 1:
        raise SinkVertexError("single vertex has no out-edges")
    degs = [g.out_degree(u) for u in range(n)]
    if min(degs) == 0:
        raise SinkVertexError("graph has a sink vertex")

    # Augmented integer matrix: row 0 is the normalization, rows 1..n-1
    # the stationarity equations scaled by the lcm of incoming degrees.
    a = [[0] * (n + 1) for _ in range(n)]
    a[0] = [1] * n + [1]
    for v in range(1, n):
        scale = lcm(*(degs[u] for u in g.in_adj[v]))
        row = a[v]
        for u in g.in_adj[v]:
            row[u] += scale // degs[u]
        row[v] -= scale

    prev = 1
    for col in range(n):
        pivot_row = max(range(col, n), key=lambda r: abs(a[r][col]))
        if a[pivot_row][col] == 0:
            raise StationarityError("stationarity system is singular")
        if pivot_row != col:
            a[col], a[pivot_row] = a[pivot_row], a[col]
        pivot = a[col][col]
        for r in range(col + 1, n):
            factor = a[r][col]
            row_r, row_c = a[r], a[col]
            for k in range(col + 1, n + 1):
                row_r[k] = (pivot * row_r[k] - factor * row_c[k]) // prev
            row_r[col] = 0
        prev = pivot

    phi: list[Fraction] = [ZERO] * n
    for i in range(n - 1, -1, -1):
        acc = Fraction(a[i][n])
        for j in range(i + 1, n):
            acc -= a[i][j] * phi[j]
        phi[i] = acc / a[i][i]

    if any(x <= 0 for x in phi) or sum(phi) != 1:
        raise StationarityError("solver produced an invalid distribution")
    if any(r != 0 for r in stationary_residual(g, phi)):
        raise StationarityError("solver output fails phi P = phi")
    return RationalDistribution(tuple(phi))


def solve_power(
    g: Digraph, tol: float = 1e-13, max_iter: int = 10**6
) -> FloatDistribution:
    """Power iteration on the lazy walk (P + I)/2 from the uniform vector.

    The lazy walk converges even on periodic graphs and has the same
    stationary vector as P.  Iteration stops once the L1 norm of
    phi P - phi drops below tol; non-convergence raises, carrying the
    last residual.
    """
    require_strongly_connected(g)
    if tol <= 0:
        raise ValueError("tol must be positive")
    if max_iter <= 0:
        raise ValueError("max_iter must be positive")
    dense = transition_matrix(g).to_float_array()
    x = np.full(g.n, 1.0 / g.n)
    residual = float("inf")
    for _ in range(max_iter):
        y = x @ dense
        residual = float(np.abs(y - x).sum())
        if residual < tol:
            return FloatDistribution(tuple(float(v) for v in x), residual)
        x = (x + y) / 2.0
        x /= x.sum()
    raise ConvergenceError(
        f"power iteration did not reach tol={tol} in {max_iter} steps "
        f"(residual {residual:.3e})",
        residual=residual,
    )


def principal_ratio(dist: RationalDistribution | FloatDistribution):
    """max(phi)/min(phi); exact Fraction for exact input, float otherwise."""
    entries = dist.entries
    if any(x <= 0 for x in entries):
        raise DistributionError("principal ratio requires positive entries")
    return max(entries) / min(entries)


def vmax_vmin(
    dist: RationalDistribution | FloatDistribution, tol: float | Fraction = 0
) -> tuple[frozenset[int], frozenset[int]]:
    """Argmax and argmin vertex sets of the distribution.

    For exact distributions tol must be 0 (only exact ties count).  For
    float distributions membership is decided within relative tol of the
    extremum; 1e-9 separates ties from rounding noise at desk scale.
    """
    entries = dist.entries
    if isinstance(dist, RationalDistribution):
        if tol != 0:
            raise ValueError("exact distributions take tol=0")
        hi, lo = max(entries), min(entries)
        return (
            frozenset(v for v, x in enumerate(entries) if x == hi),
            frozenset(v for v, x in enumerate(entries) if x == lo),
        )
    if tol == 0:
        tol = 1e-9
    hi, lo = max(entries), min(entries)
    return (
        frozenset(v for v, x in enumerate(entries) if x >= hi * (1 - tol)),
        frozenset(v for v, x in enumerate(entries) if x <= lo * (1 + tol)),
    )


@dataclass(frozen=True)
class Circulation:
    """Nonnegative edge flow with per-vertex conservation."""

    flow: dict[tuple[int, int], Fraction]

    def __post_init__(self):
        if any(value < 0 for value in self.flow.values()):
            raise CirculationDomainError("circulation values must be nonnegative")

    def __getitem__(self, edge: tuple[int, int]) -> Fraction:
        return self.flow[edge]


def circulation_of(g: Digraph, dist: RationalDistribution) -> Circulation:
    """The circulation F(v, w) = phi(v)/out_degree(v) induced by phi.

    Requires dist to be the exact stationary distribution of g; the
    conservation identity (in-flow = phi(v) = out-flow at each v) is
    checked before returning.
    """
    entries = list(dist.entries)
    if len(entries) != g.n or any(r != 0 for r in stationary_residual(g, entries)):
        raise StationarityError("distribution is not stationary for this graph")
    flow = {
        (u, v): entries[u] / g.out_degree(u) for u in range(g.n) for v in g.out_adj[u]
    }
    circ = Circulation(flow)
    for v in range(g.n):
        inflow = sum((flow[(u, v)] for u in g.in_adj[v]), ZERO)
        outflow = sum((flow[(v, w)] for w in g.out_adj[v]), ZERO)
        if not (inflow == entries[v] == outflow):
            raise StationarityError("circulation conservation failed")
    return circ


def verify_circulation(g: Digraph, circ: Circulation) -> bool:
    """True iff in-flow equals out-flow exactly at every vertex.

    The flow must be defined on exactly the edge set of g.
    """
    edges = set(g.edges)
    if set(circ.flow) != edges:
        raise CirculationDomainError("flow is not defined on exactly the edge set")
    for v in range(g.n):
        inflow = sum((circ.flow[(u, v)] for u in g.in_adj[v]), ZERO)
        outflow = sum((circ.flow[(v, w)] for w in g.out_adj[v]), ZERO)
        if inflow != outflow:
            return False
    return True


def walk_profile(g: Digraph, start: int, steps: int) -> list[float]:
    """Total-variation distances of f P^k to stationarity, k = 0..steps.

    f is the point mass at start.  Requires aperiodicity (on periodic
    graphs the plain walk need not converge).
    """
    from .digraph import is_aperiodic

    require_strongly_connected(g)
    if not is_aperiodic(g):
        raise PeriodicGraphError("walk profile requires an aperiodic graph")
    if not 0 <= start < g.n:
        raise ValueError(f"start vertex {start} out of range")
    if steps <= 0:
        raise ValueError("steps must be positive")
    phi = np.array([float(x) for x in solve_exact(g).entries])
    dense = transition_matrix(g).to_float_array()
    f = np.zeros(g.n)
    f[start] = 1.0
    profile = []
    for _ in range(steps + 1):
        profile.append(float(np.abs(f - phi).sum()) / 2.0)
        f = f @ dense
    return profile
