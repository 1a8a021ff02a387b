"""Acceptance suite: every headline guarantee at its pinned tolerance.

Each test prints as one pass/fail line under ``pytest -v``.  Everything
is exact rational arithmetic unless a float tolerance is stated
explicitly.  Two assertions are knowingly red; see the assertion
messages for the exact arithmetic that contradicts the claimed values.
"""

import os
import random
from fractions import Fraction
from math import factorial

from walkratio.bounds import (
    CertificateParams,
    check_certificate,
    degree_diameter_bound,
    falling_factorial,
    propose_degree_params,
    universal_ratio_bound,
)
from walkratio.digraph import (
    build_digraph,
    complete_digraph,
    is_eulerian,
    set_distance,
)
from walkratio.errors import CertificateParamError
from walkratio.extremal import (
    ExtremalVariant,
    add_edge_transform,
    chain_graph,
    construct_degree_counterexample,
    construct_discrepancy_counterexample,
    construct_extremal,
    d1_closed_form,
    degree_counterexample_profile,
    delete_edge_transform,
    extremal_ratio,
    sample_addition_family,
    sample_deletion_family,
)
from walkratio.oracle import verify_extremal_characterization
from walkratio.perron import (
    principal_ratio,
    solve_exact,
    solve_power,
    transition_matrix,
    vmax_vmin,
)

JOBS = min(4, os.cpu_count() or 1)


def test_exhaustive_search_confirms_extremal_characterization():
    # sweep every labeled digraph on 3, 4 and 5 vertices: the maximum
    # principal ratio must equal the closed form (2, 6, 22) and be
    # attained by exactly the three constructions, up to isomorphism
    expected = {3: Fraction(2), 4: Fraction(6), 5: Fraction(22)}
    for n in (3, 4, 5):
        report = verify_extremal_characterization(n, jobs=JOBS if n == 5 else 1)
        assert report.max_ratio == expected[n]
        assert report.formula_value == expected[n]
        assert report.ok, report


def test_closed_form_agrees_with_exact_solver_through_n12():
    for n in range(3, 13):
        xs = d1_closed_form(n)
        total = sum(xs)
        g = construct_extremal(n, ExtremalVariant.D1)
        assert solve_exact(g).entries == tuple(x / total for x in xs)
        assert transition_matrix(g).left_multiply(list(xs)) == list(xs)


def test_closed_form_strict_ordering_through_n12():
    # KNOWN RED at n = 3: the exact vector is (2, 2, 1), so the first
    # comparison of the claimed strict chain x2 > x1 > x3 > ... > xn is
    # an equality (x2 = x1 = 2).  The chain is strict for every n >= 4.
    for n in range(3, 13):
        xs = d1_closed_form(n)
        chain = [xs[1], xs[0]] + list(xs[2:])
        for a, b in zip(chain, chain[1:]):
            assert a > b, (
                f"n={n}: strict ordering fails, {a} > {b} is false "
                f"(exact vector {tuple(xs)})"
            )


def test_three_variants_attain_the_formula_ratio_through_n12():
    for n in range(3, 13):
        target = extremal_ratio(n)
        for variant in ExtremalVariant:
            ratio = principal_ratio(solve_exact(construct_extremal(n, variant)))
            assert ratio == target


def test_edge_transforms_strictly_increase_ratio_on_sampled_members():
    # 100 members of each family, drawn across sizes 6..10 with a fixed
    # seed; the add-edge and delete-edge transforms must strictly
    # increase the exact principal ratio on every single member
    rng = random.Random(271828)
    addition_checked = 0
    deletion_checked = 0
    for n in range(6, 11):
        for _ in range(20):
            member = sample_addition_family(n, rng)
            before = principal_ratio(solve_exact(member.graph))
            after = principal_ratio(solve_exact(add_edge_transform(member)))
            assert after > before, (n, member.graph.edges)
            addition_checked += 1
        for _ in range(20):
            member = sample_deletion_family(n, rng)
            before = principal_ratio(solve_exact(member.graph))
            after = principal_ratio(solve_exact(delete_edge_transform(member)))
            assert after > before, (n, member.graph.edges)
            deletion_checked += 1
    assert addition_checked >= 100 and deletion_checked >= 100


def test_bridged_complete_graphs_reproduce_linear_ratio():
    for n in range(3, 21):
        g = construct_degree_counterexample(n)
        phi = solve_exact(g)
        assert principal_ratio(phi) == n + 1
        profile = degree_counterexample_profile(n)
        total = sum(profile)
        assert phi.entries == tuple(x / total for x in profile)


def test_chain_counterexample_standalone_ratio():
    # KNOWN RED: the loop-free chain graph halves the walk's mass at the
    # m-2 interior vertices v_2..v_{m-1}, so its exact principal ratio
    # is 2^(m-2), not 2^(m-1), for every m (at m=3 the graph coincides
    # with the extremal construction of ratio 2, and 2^(m-1) = 4 would
    # exceed the proven n=3 maximum).  The factor 2^(m-1) belongs to the
    # composite graph, where the head vertex gains a second out-edge.
    for m in range(3, 21):
        ratio = principal_ratio(solve_exact(chain_graph(m)))
        assert ratio == 2 ** (m - 1), (
            f"m={m}: standalone chain ratio is exactly {ratio} = 2^(m-2); "
            f"the claimed 2^(m-1) = {2 ** (m - 1)} is attained only inside "
            "the composite graph"
        )


def test_chain_counterexample_composite_ratio_dominates():
    for m in range(3, 21):
        g = construct_discrepancy_counterexample(m, 5)
        phi = solve_exact(g)
        assert principal_ratio(phi) >= 2 ** (m - 1)
        # the interior decay is exactly 2^(m-1): head to chain tail
        assert phi[0] / phi[m - 1] == 2 ** (m - 1)


def _shortest_path(g, parents, u, v):
    path = [v]
    while path[-1] != u:
        path.append(parents[path[-1]])
    path.reverse()
    return path


def test_bound_inequalities_hold_on_random_corpus(random_corpus):
    # on 1000 seeded strongly connected graphs (n <= 10): the
    # path-product and falling-factorial bounds on every ordered pair,
    # dist(V_max, V_min) <= n-2, the k^d and (n-1)^(n-1) envelopes, and
    # conditionally gamma <= (n-1)!/2 when dist(V_max, V_min) <= n-3
    assert len(random_corpus) == 1000
    for g in random_corpus:
        n = g.n
        phi = solve_exact(g)
        gamma = principal_ratio(phi)
        max_out = max(g.out_degree(v) for v in range(n))
        diam = 0
        for u in range(n):
            dist = [None] * n
            parents = [None] * n
            dist[u] = 0
            queue = [u]
            for x in queue:
                for y in g.out_adj[x]:
                    if dist[y] is None:
                        dist[y] = dist[x] + 1
                        parents[y] = x
                        queue.append(y)
            for v in range(n):
                if v == u:
                    continue
                k = dist[v]
                assert k is not None
                diam = max(diam, k)
                path = _shortest_path(g, parents, u, v)
                product = 1
                for w in path[:-1]:
                    product *= g.out_degree(w)
                assert phi[u] / phi[v] <= product
                assert phi[u] / phi[v] <= falling_factorial(n, k)
        vmax, vmin = vmax_vmin(phi)
        gap = set_distance(g, vmax, vmin)
        assert gap is not None and gap <= n - 2
        if gap <= n - 3:
            assert gamma <= Fraction(factorial(n - 1), 2)
        assert gamma <= max_out**diam == degree_diameter_bound(g)
        assert gamma <= universal_ratio_bound(n)


def test_certificate_soundness_at_desk_scale():
    # wherever both certificate conditions verify exhaustively with
    # valid parameters (n <= 14), gamma <= 1/C must hold exactly; the
    # two counterexample families are the canonical one-condition
    # failures
    certified_cases = 0
    for n in range(6, 15):
        g = complete_digraph(n)
        params = CertificateParams(
            1, 1, Fraction(1, n), Fraction(1, n), Fraction(1, n)
        )
        report = check_certificate(g, params, mode="exhaustive")
        assert report.degree_ok and report.discrepancy_ok
        assert report.gamma == 1 and report.gamma_within_bound
        certified_cases += 1

    rng = random.Random(1618)
    for _ in range(25):
        n = rng.randint(6, 10)
        offsets = rng.sample(range(1, n), rng.randint(3, n - 1))
        g = build_digraph(n, [(u, (u + o) % n) for u in range(n) for o in offsets])
        a, eps = propose_degree_params(g)
        try:
            params = CertificateParams(
                a, Fraction(1, 4), Fraction(1, 4), Fraction(1, 4), eps
            )
        except CertificateParamError:
            continue
        report = check_certificate(g, params, mode="exhaustive")
        if report.degree_ok and report.discrepancy_ok:
            certified_cases += 1
            assert report.gamma_within_bound, (g.edges, report)
    assert certified_cases >= 12

    # bridged complete graphs: degree condition passes, discrepancy fails
    n = 4
    g = construct_degree_counterexample(n)
    a, eps = propose_degree_params(g)
    params = CertificateParams(
        a, Fraction(1, 2), Fraction(n - 1, g.n), Fraction(n - 1, g.n), eps
    )
    report = check_certificate(g, params, mode="exhaustive")
    assert report.degree_ok and not report.discrepancy_ok

    # chain-plus-complete composites: every valid parameter set rejects
    # the degree spread (out-degrees range from 1 to the dense size)
    g = construct_discrepancy_counterexample(4, 6)
    params = CertificateParams(
        Fraction(1, 2), Fraction(1, 2), Fraction(1, 4), Fraction(1, 4), Fraction(1, 12)
    )
    report = check_certificate(g, params, mode="exhaustive")
    assert not report.degree_ok


def test_power_iteration_agrees_with_exact_solver(random_corpus):
    # L-infinity distance at most 1e-10 between the float and exact
    # paths (tol 1e-13) across the full corpus; the out-degree closed
    # form must match exactly on every Eulerian member
    eulerian_seen = 0
    for g in random_corpus:
        exact = solve_exact(g)
        approx = solve_power(g, tol=1e-13)
        assert max(
            abs(float(a) - b) for a, b in zip(exact.entries, approx.entries)
        ) <= 1e-10
        if is_eulerian(g):
            eulerian_seen += 1
            total = sum(g.out_degree(v) for v in range(g.n))
            assert exact.entries == tuple(
                Fraction(g.out_degree(v), total) for v in range(g.n)
            )
    # random digraphs are rarely balanced; add constructed Eulerian
    # members so the closed-form clause is exercised regardless
    rng = random.Random(6022)
    eulerian_extras = [complete_digraph(n) for n in range(2, 8)]
    eulerian_extras += [
        build_digraph(n, [(i, (i + 1) % n) for i in range(n)]) for n in range(2, 8)
    ]
    for _ in range(10):
        base = construct_extremal(rng.randint(3, 8), ExtremalVariant.D3)
        edges = set(base.edges) | {(v, u) for u, v in base.edges}
        eulerian_extras.append(build_digraph(base.n, sorted(edges)))
    for g in eulerian_extras:
        assert is_eulerian(g)
        total = sum(g.out_degree(v) for v in range(g.n))
        assert solve_exact(g).entries == tuple(
            Fraction(g.out_degree(v), total) for v in range(g.n)
        )


def test_ratio_growth_envelope_through_n30():
    # the maximum ratio scaled by (n-1)! stays inside (2/3, 2/3 + 2/n]
    for n in range(5, 31):
        scaled = extremal_ratio(n) / factorial(n - 1)
        assert Fraction(2, 3) < scaled <= Fraction(2, 3) + Fraction(2, n)
