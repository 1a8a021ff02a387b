import itertools
import random

import pytest

from walkratio.digraph import build_digraph, is_strongly_connected
from walkratio.errors import EnumerationGuardError
from walkratio.extremal import (
    ExtremalVariant,
    construct_extremal,
    d1_closed_form,
    extremal_ratio,
)
from walkratio.oracle import (
    are_isomorphic,
    digraph_from_mask,
    enumerate_strongly_connected,
    mask_of_digraph,
    max_principal_ratio_brute,
    verify_extremal_characterization,
)
from walkratio.perron import principal_ratio, solve_exact
from walkratio.randgraph import random_strongly_connected


def independent_sc_count(n):
    """Strong-connectivity count via boolean matrix closure, written
    independently of the bitmask enumerator."""
    count = 0
    cells = [(u, v) for u in range(n) for v in range(n) if u != v]
    for choice in itertools.product([0, 1], repeat=len(cells)):
        adj = [[0] * n for _ in range(n)]
        for bit, (u, v) in zip(choice, cells):
            adj[u][v] = bit
        closure = [row[:] for row in adj]
        for _ in range(n):
            closure = [
                [
                    1 if closure[i][j] or any(closure[i][k] and closure[k][j] for k in range(n)) else 0
                    for j in range(n)
                ]
                for i in range(n)
            ]
        if all(closure[i][j] for i in range(n) for j in range(n) if i != j):
            count += 1
    return count


class TestEnumeration:
    def test_n3_count_matches_independent_filter(self):
        graphs = list(enumerate_strongly_connected(3))
        assert len(graphs) == 18
        assert len(graphs) == independent_sc_count(3)

    def test_all_yielded_graphs_strongly_connected(self):
        for g in enumerate_strongly_connected(3):
            assert is_strongly_connected(g)

    def test_yields_each_graph_once_in_mask_order(self):
        masks = [mask_of_digraph(g) for g in enumerate_strongly_connected(3)]
        assert masks == sorted(set(masks))

    def test_guard(self):
        with pytest.raises(EnumerationGuardError):
            list(enumerate_strongly_connected(2))
        with pytest.raises(EnumerationGuardError):
            next(enumerate_strongly_connected(6))
        # relaxed: the 2-vertex case has exactly one strongly connected graph
        graphs = list(enumerate_strongly_connected(2, force=True))
        assert graphs == [build_digraph(2, [(0, 1), (1, 0)])]

    def test_mask_round_trip(self):
        rng = random.Random(12)
        for _ in range(30):
            g = random_strongly_connected(rng, rng.randint(2, 6))
            assert digraph_from_mask(g.n, mask_of_digraph(g)) == g


class TestBruteForce:
    def test_n3(self):
        report = max_principal_ratio_brute(3)
        assert report.total_digraphs == 64
        assert report.strongly_connected_count == 18
        assert report.max_ratio == 2 == extremal_ratio(3)
        assert len(report.witness_masks) == 15
        assert report.witness_iso_classes == 3

    def test_n4(self):
        report = max_principal_ratio_brute(4)
        assert report.total_digraphs == 4096
        assert report.max_ratio == 6 == extremal_ratio(4)
        assert report.witness_iso_classes == 3

    def test_worker_count_does_not_change_output(self):
        single = max_principal_ratio_brute(4, jobs=1)
        parallel = max_principal_ratio_brute(4, jobs=2)
        assert single == parallel

    def test_witness_ratios_reverify_against_closed_form(self):
        report = max_principal_ratio_brute(4)
        xs = d1_closed_form(4)
        closed_form_ratio = xs[1] / xs[-1]
        for g in report.witness_graphs:
            assert principal_ratio(solve_exact(g)) == closed_form_ratio


class TestIsomorphism:
    def test_reflexive(self):
        g = construct_extremal(5, ExtremalVariant.D3)
        assert are_isomorphic(g, g)

    def test_d1_vs_d2(self):
        a = construct_extremal(4, ExtremalVariant.D1)
        b = construct_extremal(4, ExtremalVariant.D2)
        assert not are_isomorphic(a, b)

    def test_random_relabeling(self):
        rng = random.Random(31)
        g = construct_extremal(4, ExtremalVariant.D1)
        perm = list(range(4))
        rng.shuffle(perm)
        assert are_isomorphic(g, g.relabel(perm))

    def test_equivalence_relation_spot_checks(self):
        rng = random.Random(44)
        graphs = [random_strongly_connected(rng, 4) for _ in range(8)]
        for g in graphs:
            assert are_isomorphic(g, g)
        for a in graphs:
            for b in graphs:
                assert are_isomorphic(a, b) == are_isomorphic(b, a)
        for a in graphs:
            for b in graphs:
                for c in graphs:
                    if are_isomorphic(a, b) and are_isomorphic(b, c):
                        assert are_isomorphic(a, c)

    def test_size_guard(self):
        g = construct_extremal(9, ExtremalVariant.D1)
        with pytest.raises(EnumerationGuardError):
            are_isomorphic(g, g)


class TestCharacterization:
    def test_n3(self):
        report = verify_extremal_characterization(3)
        assert report.ok
        assert report.max_ratio == report.formula_value == 2
        assert report.witness_count == 15
        assert report.class_sizes == {"d1": 6, "d2": 3, "d3": 6}
        assert report.unmatched_witnesses == 0

    def test_n4(self):
        report = verify_extremal_characterization(4)
        assert report.ok
        assert report.max_ratio == 6
        assert report.class_sizes == {"d1": 24, "d2": 24, "d3": 24}
