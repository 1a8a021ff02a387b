"""Brute-force ground truth by exhaustive enumeration of labeled digraphs.

Each simple digraph on n vertices is an n(n-1)-bit mask over the ordered
non-diagonal vertex pairs in row-major order, so the whole space can be
swept in mask order, filtered for strong connectivity, and solved
exactly.  n = 5 already means 2^20 masks; the sweep partitions mask
ranges across worker processes and merges maxima associatively, so the
result is independent of the worker count.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from .digraph import Digraph, is_strongly_connected
from .errors import EnumerationGuardError
from .extremal import ExtremalVariant, construct_extremal, extremal_ratio
from .perron import principal_ratio, solve_exact

ENUMERATION_GUARD = 5  # 2^(n(n-1)) masks; n = 6 is 2^30 and needs explicit opt-in


def _ordered_pairs(n: int) -> list[tuple[int, int]]:
    return [(u, v) for u in range(n) for v in range(n) if u != v]


def digraph_from_mask(n: int, mask: int) -> Digraph:
    """Decode a row-major edge bitmask into a graph."""
    pairs = _ordered_pairs(n)
    adj: list[list[int]] = [[] for _ in range(n)]
    for bit, (u, v) in enumerate(pairs):
        if mask >> bit & 1:
            adj[u].append(v)
    return Digraph(n, [sorted(neighbors) for neighbors in adj])


def mask_of_digraph(g: Digraph) -> int:
    mask = 0
    for bit, (u, v) in enumerate(_ordered_pairs(g.n)):
        if g.has_edge(u, v):
            mask |= 1 << bit
    return mask


def _check_enumeration_guard(n: int, force: bool, what: str) -> None:
    if force:
        if n < 2:
            raise EnumerationGuardError(f"{what} needs n >= 2, got {n}")
        return
    if not 3 <= n <= ENUMERATION_GUARD:
        raise EnumerationGuardError(
            f"{what} is guarded to 3 <= n <= {ENUMERATION_GUARD}; "
            f"got n={n} (force=True overrides, at hours-scale cost for n >= 6)"
        )


def enumerate_strongly_connected(n: int, force: bool = False) -> Iterator[Digraph]:
    """Yield every strongly connected labeled simple digraph, in mask order."""
    _check_enumeration_guard(n, force, "enumeration")
    for mask in range(1 << (n * (n - 1))):
        g = digraph_from_mask(n, mask)
        if is_strongly_connected(g):
            yield g


@dataclass(frozen=True)
class EnumerationReport:
    """Result of the exhaustive max-ratio sweep at one size."""

    n: int
    total_digraphs: int
    strongly_connected_count: int
    max_ratio: Fraction
    witness_masks: tuple[int, ...]
    witness_iso_classes: int

    @property
    def witness_graphs(self) -> tuple[Digraph, ...]:
        return tuple(digraph_from_mask(self.n, m) for m in self.witness_masks)


def _sweep_range(args: tuple[int, int, int]) -> tuple[int, Fraction, list[int]]:
    """Worker: scan masks in [lo, hi); return (sc_count, best ratio, witnesses)."""
    n, lo, hi = args
    chunk_bits = n - 1
    chunk_mask = (1 << chunk_bits) - 1
    full = (1 << n) - 1
    # per-vertex lookups: chunk value -> (sorted out-neighbor list, vertex bitmask)
    lists: list[list[list[int]]] = []
    masks: list[list[int]] = []
    for u in range(n):
        others = [v for v in range(n) if v != u]
        per_list, per_mask = [], []
        for chunk in range(1 << chunk_bits):
            neighbors = [others[i] for i in range(chunk_bits) if chunk >> i & 1]
            per_list.append(neighbors)
            per_mask.append(sum(1 << v for v in neighbors))
        lists.append(per_list)
        masks.append(per_mask)

    sc_count = 0
    best: Fraction | None = None
    witnesses: list[int] = []
    for mask in range(lo, hi):
        out_masks = []
        for u in range(n):
            chunk = (mask >> (u * chunk_bits)) & chunk_mask
            if chunk == 0:
                break
            out_masks.append(masks[u][chunk])
        if len(out_masks) < n:
            continue  # sink vertex
        # forward reachability from 0 over vertex bitmasks
        reach = 1
        frontier = [0]
        while frontier:
            u = frontier.pop()
            new = out_masks[u] & ~reach
            while new:
                low = new & -new
                reach |= low
                frontier.append(low.bit_length() - 1)
                new ^= low
        if reach != full:
            continue
        in_masks = [0] * n
        for u in range(n):
            m = out_masks[u]
            while m:
                low = m & -m
                in_masks[low.bit_length() - 1] |= 1 << u
                m ^= low
        reach = 1
        frontier = [0]
        while frontier:
            u = frontier.pop()
            new = in_masks[u] & ~reach
            while new:
                low = new & -new
                reach |= low
                frontier.append(low.bit_length() - 1)
                new ^= low
        if reach != full:
            continue
        sc_count += 1
        adj = [lists[u][(mask >> (u * chunk_bits)) & chunk_mask] for u in range(n)]
        ratio = principal_ratio(solve_exact(Digraph(n, adj)))
        if best is None or ratio > best:
            best, witnesses = ratio, [mask]
        elif ratio == best:
            witnesses.append(mask)
    return sc_count, best if best is not None else Fraction(0), witnesses


def max_principal_ratio_brute(
    n: int, jobs: int = 1, force: bool = False
) -> EnumerationReport:
    """Exhaustive exact maximum of the principal ratio at size n.

    Splits the mask space into contiguous ranges, one per worker, and
    merges (count, max, witnesses) triples by exact comparison.
    """
    _check_enumeration_guard(n, force, "brute-force search")
    total = 1 << (n * (n - 1))
    jobs = max(1, jobs)
    if jobs == 1:
        parts = [_sweep_range((n, 0, total))]
    else:
        step = -(-total // (4 * jobs))
        ranges = [(n, lo, min(lo + step, total)) for lo in range(0, total, step)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(_sweep_range, ranges))

    sc_count = 0
    best: Fraction | None = None
    witnesses: list[int] = []
    for count, ratio, masks in parts:
        sc_count += count
        if not masks:
            continue
        if best is None or ratio > best:
            best, witnesses = ratio, list(masks)
        elif ratio == best:
            witnesses.extend(masks)
    assert best is not None and witnesses
    witnesses.sort()
    classes = _isomorphism_classes(n, witnesses)
    return EnumerationReport(
        n=n,
        total_digraphs=total,
        strongly_connected_count=sc_count,
        max_ratio=best,
        witness_masks=tuple(witnesses),
        witness_iso_classes=len(classes),
    )


def are_isomorphic(g1: Digraph, g2: Digraph) -> bool:
    """Brute-force isomorphism with degree-signature pruning; n <= 8 only."""
    if g1.n > 8 or g2.n > 8:
        raise EnumerationGuardError("isomorphism check is guarded to n <= 8")
    if g1.n != g2.n or g1.m != g2.m:
        return False
    n = g1.n
    sig1 = sorted((g1.out_degree(v), g1.in_degree(v)) for v in range(n))
    sig2 = sorted((g2.out_degree(v), g2.in_degree(v)) for v in range(n))
    if sig1 != sig2:
        return False
    edges2 = set(g2.edges)
    for perm in itertools.permutations(range(n)):
        if all(
            (g1.out_degree(v), g1.in_degree(v))
            == (g2.out_degree(perm[v]), g2.in_degree(perm[v]))
            for v in range(n)
        ) and all((perm[u], perm[v]) in edges2 for u, v in g1.edges):
            return True
    return False


def _isomorphism_classes(n: int, masks: list[int]) -> list[list[int]]:
    classes: list[tuple[Digraph, list[int]]] = []
    for mask in masks:
        g = digraph_from_mask(n, mask)
        for rep, members in classes:
            if are_isomorphic(g, rep):
                members.append(mask)
                break
        else:
            classes.append((g, [mask]))
    return [members for _, members in classes]


@dataclass(frozen=True)
class CharacterizationReport:
    """Comparison of the brute-force sweep against the three constructions."""

    n: int
    max_ratio: Fraction
    formula_value: Fraction
    witness_count: int
    class_sizes: dict[str, int]  # variant tag -> labeled witnesses in its class
    unmatched_witnesses: int
    ok: bool


def verify_extremal_characterization(
    n: int, jobs: int = 1, force: bool = False
) -> CharacterizationReport:
    """Check that the exhaustive maximum and its attaining graphs are as claimed.

    Passes iff the swept maximum equals the closed-form value and the
    witness set splits into exactly three isomorphism classes, one per
    construction variant.
    """
    report = max_principal_ratio_brute(n, jobs=jobs, force=force)
    formula = extremal_ratio(n)
    references = {
        variant.value: construct_extremal(n, variant) for variant in ExtremalVariant
    }
    class_sizes = {tag: 0 for tag in references}
    unmatched = 0
    for mask in report.witness_masks:
        g = digraph_from_mask(n, mask)
        for tag, ref in references.items():
            if are_isomorphic(g, ref):
                class_sizes[tag] += 1
                break
        else:
            unmatched += 1
    ok = (
        report.max_ratio == formula
        and unmatched == 0
        and all(size > 0 for size in class_sizes.values())
        and report.witness_iso_classes == 3
    )
    return CharacterizationReport(
        n=n,
        max_ratio=report.max_ratio,
        formula_value=formula,
        witness_count=len(report.witness_masks),
        class_sizes=class_sizes,
        unmatched_witnesses=unmatched,
        ok=ok,
    )
