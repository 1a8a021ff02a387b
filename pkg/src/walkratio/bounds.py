"""Upper bounds on the principal ratio and the two-condition certificate.

Every comparison that certifies an inequality runs in exact rational
arithmetic; the quantities involved reach factorial scale, where floats
would silently saturate.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .digraph import (
    Digraph,
    bfs_distances,
    diameter,
    require_strongly_connected,
    set_distance,
)
from .errors import CertificateParamError, NoLabeledPathError, VertexRangeError
from .extremal import LabeledPathGraph
from .perron import principal_ratio, solve_exact, vmax_vmin


def path_product_bound(g: Digraph, path: list[int]) -> tuple[int, bool]:
    """Upper bound phi(first)/phi(last) <= product of out-degrees along a walk.

    Returns the product over all but the last vertex and a flag asserting
    the inequality against the exact stationary distribution.
    """
    if not path:
        raise VertexRangeError("path must be nonempty")
    for a, b in zip(path, path[1:]):
        if not g.has_edge(a, b):
            raise VertexRangeError(f"({a}, {b}) is not an edge; path is not a walk")
    bound = 1
    for v in path[:-1]:
        bound *= g.out_degree(v)
    phi = solve_exact(g)
    holds = phi[path[0]] / phi[path[-1]] <= bound
    return bound, holds


def falling_factorial(n: int, k: int) -> int:
    """The product (n-1)(n-2)...(n-k); empty product 1 for k = 0."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    result = 1
    for i in range(1, k + 1):
        result *= n - i
    return result


def falling_factorial_bound(g: Digraph, u: int, v: int) -> tuple[int, bool]:
    """phi(u)/phi(v) <= (n-1)_k where k = dist(u, v).

    Returns the bound and a flag asserting it against the exact solve.
    Raises if v is unreachable from u.
    """
    k = bfs_distances(g, u)[v]
    if k is None:
        raise VertexRangeError(f"vertex {v} unreachable from {u}")
    bound = falling_factorial(g.n, k)
    phi = solve_exact(g)
    holds = phi[u] / phi[v] <= bound
    return bound, holds


def degree_diameter_bound(g: Digraph) -> int:
    """k^d with k the maximum out-degree and d the directed diameter."""
    require_strongly_connected(g)
    k = max(g.out_degree(v) for v in range(g.n))
    return k ** diameter(g)


def universal_ratio_bound(n: int) -> int:
    """(n-1)^(n-1): the degree-free envelope valid for every n-vertex graph."""
    if n < 2:
        raise ValueError(f"universal bound needs n >= 2, got {n}")
    return (n - 1) ** (n - 1)


@dataclass(frozen=True)
class StructureReport:
    """Distance and degree structure of a graph relative to its extremes.

    max_min_distance is dist(V_max, V_min); it can never exceed n-2.
    When it is at most n-3 the half-factorial bound gamma <= (n-1)!/2
    applies.  The degree conclusions (v_2 and v_3 out-neighborhoods,
    floor(2i/3) degree floors, v_2 the sole out-neighbor of v_1) apply
    only to graphs with a Hamiltonian shortest-path labeling whose ratio
    exceeds (2/3)(n-1)!; inapplicable checks are reported as None.
    """

    n: int
    gamma: Fraction
    max_min_distance: int
    distance_bound_ok: bool
    half_factorial_applicable: bool
    half_factorial_ok: bool | None
    degree_checks_applicable: bool
    head_neighborhoods_ok: bool | None
    degree_floors_ok: bool | None
    sole_out_neighbor_applicable: bool
    sole_out_neighbor_ok: bool | None


def extremal_structure_report(g: Digraph) -> StructureReport:
    """Evaluate the distance/degree structure facts on one graph."""
    require_strongly_connected(g)
    n = g.n
    phi = solve_exact(g)
    gamma = principal_ratio(phi)
    vmax, vmin = vmax_vmin(phi)
    dist = set_distance(g, vmax, vmin)
    assert dist is not None
    distance_bound_ok = dist <= n - 2

    half_applicable = dist <= n - 3
    half_ok = gamma <= Fraction(factorial(n - 1), 2) if half_applicable else None

    try:
        lp = LabeledPathGraph.from_digraph(g)
    except NoLabeledPathError:
        lp = None
    big_ratio = gamma > Fraction(2 * factorial(n - 1), 3)
    degree_applicable = (
        lp is not None
        and n >= 4
        and big_ratio
        and lp.vertex(2) in vmax
        and lp.vertex(n) in vmin
    )
    head_ok: bool | None = None
    floors_ok: bool | None = None
    if degree_applicable:
        assert lp is not None
        head_ok = set(g.out_adj[lp.vertex(2)]) == {lp.vertex(1), lp.vertex(3)} and set(
            g.out_adj[lp.vertex(3)]
        ) == {lp.vertex(1), lp.vertex(2), lp.vertex(4)}
        floors_ok = all(lp.out_degree_of(i) >= (2 * i) // 3 for i in range(4, n))

    sole_applicable = degree_applicable and dist == n - 2
    sole_ok: bool | None = None
    if sole_applicable:
        assert lp is not None
        v1, v2 = lp.vertex(1), lp.vertex(2)
        sole_ok = (
            g.has_edge(v1, v2)
            and g.has_edge(v2, v1)
            and set(g.out_adj[v1]) == {v2}
        )

    return StructureReport(
        n=n,
        gamma=gamma,
        max_min_distance=dist,
        distance_bound_ok=distance_bound_ok,
        half_factorial_applicable=half_applicable,
        half_factorial_ok=half_ok,
        degree_checks_applicable=degree_applicable,
        head_neighborhoods_ok=head_ok,
        degree_floors_ok=floors_ok,
        sole_out_neighbor_applicable=sole_applicable,
        sole_out_neighbor_ok=sole_ok,
    )


# ---------------------------------------------------------------------------
# Degree + discrepancy certificate


@dataclass(frozen=True)
class CertificateParams:
    """Constants (a, b, c, d, eps) of the bounded-ratio certificate.

    The degree condition requires (a-eps)n <= d+(v), d-(v) <= (a+eps)n
    for every vertex; the discrepancy condition requires
    |E(S, T)| >= b|S||T| for all disjoint S, T with |S| >= cn and
    |T| >= dn.  a > 5*eps is needed for the certified bound to be
    positive; b, c, d must lie in (0, 1].
    """

    a: Fraction
    b: Fraction
    c: Fraction
    d: Fraction
    eps: Fraction

    def __post_init__(self):
        for name in ("a", "b", "c", "d", "eps"):
            value = getattr(self, name)
            object.__setattr__(self, name, Fraction(value))
        if any(
            getattr(self, name) <= 0 for name in ("a", "b", "c", "d", "eps")
        ):
            raise CertificateParamError("all certificate parameters must be positive")
        for name in ("b", "c", "d"):
            if getattr(self, name) > 1:
                raise CertificateParamError(f"parameter {name} must lie in (0, 1]")
        if self.a <= 5 * self.eps:
            raise CertificateParamError(
                "a <= 5*eps makes the certified constant nonpositive"
            )

    def constant(self) -> Fraction:
        """C = b (a - 5 eps)(a - eps) / (4 (a + eps)^2); the bound is 1/C."""
        return (
            self.b
            * (self.a - 5 * self.eps)
            * (self.a - self.eps)
            / (4 * (self.a + self.eps) ** 2)
        )


@dataclass(frozen=True)
class CertificateReport:
    """Outcome of the two-condition check on one graph."""

    degree_ok: bool
    discrepancy_ok: bool
    discrepancy_mode: str  # "exhaustive" or "sampled(<trials>)"
    constant: Fraction
    ratio_bound: Fraction
    degree_witness: tuple[int, int, int] | None  # (vertex, out-degree, in-degree)
    discrepancy_witness: tuple[tuple[int, ...], tuple[int, ...]] | None
    gamma: Fraction | None
    gamma_within_bound: bool | None

    @property
    def certified(self) -> bool:
        return (
            self.degree_ok
            and self.discrepancy_ok
            and self.discrepancy_mode == "exhaustive"
        )


EXHAUSTIVE_STATE_LIMIT = 10**8  # exhaustive iff 3^n stays below this


def _check_degree_condition(
    g: Digraph, params: CertificateParams
) -> tuple[bool, tuple[int, int, int] | None]:
    n = g.n
    lo, hi = (params.a - params.eps) * n, (params.a + params.eps) * n
    for v in range(n):
        dout, din = g.out_degree(v), g.in_degree(v)
        if not (lo <= dout <= hi and lo <= din <= hi):
            return False, (v, dout, din)
    return True, None


def _edge_count(g: Digraph, sources: tuple[int, ...], targets: set[int]) -> int:
    return sum(1 for u in sources for v in g.out_adj[u] if v in targets)


def _min_set_size(threshold: Fraction, n: int) -> int:
    """Smallest integer k with k >= threshold * n."""
    bound = threshold * n
    k = int(bound)
    return k if k == bound else k + 1


def _discrepancy_exhaustive(
    g: Digraph, params: CertificateParams
) -> tuple[bool, tuple[tuple[int, ...], tuple[int, ...]] | None]:
    """Exact decision of the discrepancy condition over all (S, T) pairs.

    For a fixed S the deficit of |E(S, T)| - b|S||T| is additive over the
    members of T, so the worst T of each admissible size consists of the
    vertices with the smallest in-count from S.  Scanning prefix sums of
    the sorted in-counts therefore decides the full 3^n pair space
    exactly, one subset S at a time.
    """
    n = g.n
    s_min = _min_set_size(params.c, n)
    t_min = _min_set_size(params.d, n)
    if s_min > n or t_min > n:
        return True, None
    p, q = params.b.numerator, params.b.denominator
    for s_mask in range(1, 1 << n):
        size_s = s_mask.bit_count()
        if size_s < s_min or n - size_s < t_min:
            continue
        sources = tuple(v for v in range(n) if s_mask >> v & 1)
        outside = [v for v in range(n) if not s_mask >> v & 1]
        # scaled weight: q * |E(S, {t})| - p * |S|, so sums over T compare to 0
        weights = sorted(
            q * sum(1 for u in g.in_adj[t] if s_mask >> u & 1) - p * size_s
            for t in outside
        )
        prefix = 0
        for k, w in enumerate(weights, start=1):
            prefix += w
            if k >= t_min and prefix < 0:
                # rebuild the witness T: the k vertices of smallest in-count
                keyed = sorted(
                    outside,
                    key=lambda t: sum(1 for u in g.in_adj[t] if s_mask >> u & 1),
                )
                return False, (sources, tuple(sorted(keyed[:k])))
    return True, None


def discrepancy_holds_on_pair(
    g: Digraph, params: CertificateParams, sources: tuple[int, ...], targets: tuple[int, ...]
) -> bool:
    """|E(S, T)| >= b|S||T| for one concrete disjoint pair."""
    count = _edge_count(g, sources, set(targets))
    return count >= params.b * len(sources) * len(targets)


def _discrepancy_sampled(
    g: Digraph, params: CertificateParams, trials: int, seed: int
) -> tuple[bool, tuple[tuple[int, ...], tuple[int, ...]] | None]:
    n = g.n
    s_min = _min_set_size(params.c, n)
    t_min = _min_set_size(params.d, n)
    if s_min + t_min > n:
        return True, None
    rng = random.Random(seed)
    vertices = list(range(n))
    for _ in range(trials):
        size_s = rng.randint(s_min, n - t_min)
        sources = tuple(sorted(rng.sample(vertices, size_s)))
        rest = [v for v in vertices if v not in set(sources)]
        size_t = rng.randint(t_min, len(rest))
        targets = tuple(sorted(rng.sample(rest, size_t)))
        if not discrepancy_holds_on_pair(g, params, sources, targets):
            return False, (sources, targets)
    return True, None


def check_certificate(
    g: Digraph,
    params: CertificateParams,
    mode: str = "auto",
    trials: int = 10**5,
    seed: int = 0,
) -> CertificateReport:
    """Check the degree and discrepancy conditions and certify gamma <= 1/C.

    The degree condition is always checked exhaustively over vertices.
    The discrepancy condition is decided exactly when 3^n does not
    exceed the state limit (or mode="exhaustive" forces it), otherwise
    a seeded uniform sample of qualifying pairs is tried; a sampled pass
    means "not falsified", never a proof, and no gamma claim is made.
    """
    require_strongly_connected(g)
    if mode not in ("auto", "exhaustive", "sampled"):
        raise ValueError(f"unknown mode {mode!r}")
    if mode == "auto":
        mode = "exhaustive" if 3**g.n <= EXHAUSTIVE_STATE_LIMIT else "sampled"

    degree_ok, degree_witness = _check_degree_condition(g, params)
    if mode == "exhaustive":
        discrepancy_ok, disc_witness = _discrepancy_exhaustive(g, params)
        mode_label = "exhaustive"
    else:
        discrepancy_ok, disc_witness = _discrepancy_sampled(g, params, trials, seed)
        mode_label = f"sampled({trials})"

    constant = params.constant()
    ratio_bound = 1 / constant
    gamma = None
    within = None
    if degree_ok and discrepancy_ok and mode_label == "exhaustive":
        gamma = principal_ratio(solve_exact(g))
        within = gamma <= ratio_bound
    return CertificateReport(
        degree_ok=degree_ok,
        discrepancy_ok=discrepancy_ok,
        discrepancy_mode=mode_label,
        constant=constant,
        ratio_bound=ratio_bound,
        degree_witness=degree_witness,
        discrepancy_witness=disc_witness,
        gamma=gamma,
        gamma_within_bound=within,
    )


def propose_degree_params(g: Digraph) -> tuple[Fraction, Fraction]:
    """Tightest (a, eps) degree envelope for g.

    a = (dmax + dmin)/(2n) and eps = (dmax - dmin)/(2n) over both degree
    sequences; for regular graphs eps degenerates to 0, so a half-unit
    margin keeps it positive.  The pair may still violate a > 5*eps on
    irregular graphs; callers must validate via CertificateParams.
    """
    degs = [g.out_degree(v) for v in range(g.n)] + [g.in_degree(v) for v in range(g.n)]
    dmax, dmin = max(degs), min(degs)
    if dmax == dmin:
        return Fraction(dmax, g.n), Fraction(1, 2 * g.n)
    return Fraction(dmax + dmin, 2 * g.n), Fraction(dmax - dmin, 2 * g.n)


def discrepancy_pairs_bruteforce(g: Digraph, params: CertificateParams) -> bool:
    """Literal triple loop over all disjoint (S, T) pairs; cross-check only.

    Enumerates every subset pair meeting the size thresholds and tests
    the density inequality directly.  Exponentially slower than the
    production scan but independent of it.
    """
    n = g.n
    s_min = _min_set_size(params.c, n)
    t_min = _min_set_size(params.d, n)
    for s_mask in range(1 << n):
        if s_mask.bit_count() < s_min:
            continue
        sources = tuple(v for v in range(n) if s_mask >> v & 1)
        outside = [v for v in range(n) if not s_mask >> v & 1]
        for t_pick in range(1 << len(outside)):
            if t_pick.bit_count() < t_min:
                continue
            targets = tuple(
                outside[i] for i in range(len(outside)) if t_pick >> i & 1
            )
            if not discrepancy_holds_on_pair(g, params, sources, targets):
                return False
    return True


__all__ = [
    "CertificateParams",
    "CertificateReport",
    "StructureReport",
    "check_certificate",
    "degree_diameter_bound",
    "discrepancy_pairs_bruteforce",
    "extremal_structure_report",
    "falling_factorial",
    "falling_factorial_bound",
    "path_product_bound",
    "propose_degree_params",
    "universal_ratio_bound",
]
