"""Seeded random strongly connected digraphs for property testing."""

from __future__ import annotations

import random

from .digraph import Digraph, build_digraph, is_strongly_connected


def random_digraph(rng: random.Random, n: int, p: float) -> Digraph:
    """Each of the n(n-1) possible edges appears independently with probability p."""
    edges = [
        (u, v)
        for u in range(n)
        for v in range(n)
        if u != v and rng.random() < p
    ]
    return build_digraph(n, edges)


def random_strongly_connected(
    rng: random.Random, n: int, p: float | None = None, max_tries: int = 10000
) -> Digraph:
    """Rejection-sample a strongly connected graph; p defaults to a random density."""
    for _ in range(max_tries):
        density = p if p is not None else rng.uniform(0.2, 0.9)
        g = random_digraph(rng, n, density)
        if is_strongly_connected(g):
            return g
    raise RuntimeError(f"no strongly connected graph found in {max_tries} tries")


def corpus(seed: int, count: int, min_n: int = 2, max_n: int = 10) -> list[Digraph]:
    """A reproducible list of random strongly connected graphs of mixed sizes."""
    rng = random.Random(seed)
    graphs = []
    for _ in range(count):
        n = rng.randint(min_n, max_n)
        graphs.append(random_strongly_connected(rng, n))
    return graphs
