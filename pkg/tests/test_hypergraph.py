"""Parsing, degrees, components, cuts, and disjoint unions."""

from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest

from hyperspec import (
    Hypergraph,
    ParseError,
    components,
    cut,
    degree_stats,
    disjoint_union,
    is_connected,
    parse_hypergraph,
)

from conftest import random_connected, single_edge


def test_parse_simple_file():
    h = parse_hypergraph("3 4 2\n1 2 3\n2 3 4\n")
    assert h.k == 3 and h.n == 4 and h.m == 2
    assert h.edges == ((0, 1, 2), (1, 2, 3))
    assert h.degrees == (1, 2, 2, 1)


def test_parse_ignores_blank_lines_and_comments():
    text = "# a comment\n3 4 2\n\n1 2 3\n  # another\n2 3 4\n\n"
    assert parse_hypergraph(text).edges == ((0, 1, 2), (1, 2, 3))


@pytest.mark.parametrize(
    "text, bad_line",
    [
        ("3 4\n1 2 3\n", 1),  # header arity
        ("1 4 2\n1 2 3\n2 3 4\n", 1),  # k < 2
        ("3 2 1\n1 2 2\n", 1),  # n < k
        ("3 4 3\n1 2 3\n2 3 4\n", 1),  # declared m mismatch
        ("3 4 2\n1 2\n2 3 4\n", 2),  # edge arity
        ("3 4 2\n1 2 2\n2 3 4\n", 2),  # repeated vertex
        ("3 4 2\n1 2 5\n2 3 4\n", 2),  # id above n
        ("3 4 2\n0 2 3\n2 3 4\n", 2),  # ids are 1-based
        ("3 4 2\n1 2 x\n2 3 4\n", 2),  # non-integer token
        ("3 4 2\n1 2 3\n1 2 3\n", 3),  # duplicate edge
        ("3 5 2\n1 2 3\n2 3 4\n", 1),  # isolated vertex reported at header
    ],
)
def test_parse_errors_name_the_offending_line(text, bad_line):
    with pytest.raises(ParseError) as exc:
        parse_hypergraph(text)
    assert exc.value.line_no == bad_line
    assert f"line {bad_line}:" in str(exc.value)


def test_comment_lines_do_not_shift_reported_line_numbers():
    text = "# one\n# two\n3 4 2\n1 2 3\n# pad\n1 2 5\n"
    with pytest.raises(ParseError) as exc:
        parse_hypergraph(text)
    assert exc.value.line_no == 6


def test_from_edges_sorts_and_validates():
    h = Hypergraph.from_edges(3, 4, [(2, 1, 0), (3, 2, 1)])
    assert h.edges == ((0, 1, 2), (1, 2, 3))
    with pytest.raises(ValueError):
        Hypergraph.from_edges(3, 4, [(0, 1, 1), (1, 2, 3)])
    with pytest.raises(ValueError):
        Hypergraph.from_edges(3, 4, [(0, 1, 2), (0, 1, 2)])
    with pytest.raises(ValueError):
        Hypergraph.from_edges(3, 4, [(0, 1, 4)])
    with pytest.raises(ValueError):
        Hypergraph.from_edges(3, 5, [(0, 1, 2), (1, 2, 3)])  # vertex 4 isolated


def test_degree_stats_on_hub_graph(hub_graph):
    dmax, dmin, davg = degree_stats(hub_graph)
    assert (dmax, dmin) == (6, 2)
    assert davg == Fraction(3)
    assert hub_graph.degrees == (2, 2, 2, 6, 6, 2, 2, 2)


def test_average_degree_identity_on_random_graphs():
    # sum of degrees counts each edge k times, so the average is k*m/n exactly
    rng = np.random.default_rng(7)
    for _ in range(25):
        k = int(rng.integers(3, 6))
        n = int(rng.integers(k + 1, 11))
        h = random_connected(rng, k, n)
        _, _, davg = degree_stats(h)
        assert davg == Fraction(h.k * h.m, h.n)
        assert sum(h.degrees) == h.k * h.m


def test_components_and_connectivity(hub_graph, two_edge_path):
    assert components(hub_graph) == [tuple(range(8))]
    assert is_connected(hub_graph)
    u = disjoint_union(hub_graph, two_edge_path)
    assert not is_connected(u)
    assert components(u) == [tuple(range(8)), tuple(range(8, 12))]


def test_disjoint_union_shifts_edges_and_keeps_degrees(hub_graph, two_edge_path):
    u = disjoint_union(hub_graph, two_edge_path)
    assert u.k == 3 and u.n == 12 and u.m == hub_graph.m + two_edge_path.m
    assert u.edges[: hub_graph.m] == hub_graph.edges
    assert u.edges[hub_graph.m :] == tuple(
        tuple(v + 8 for v in e) for e in two_edge_path.edges
    )
    assert u.degrees == hub_graph.degrees + two_edge_path.degrees


def test_disjoint_union_requires_matching_k(hub_graph, k6_edge):
    with pytest.raises(ValueError):
        disjoint_union(hub_graph, k6_edge)


def test_cut_counts_on_hub_graph(hub_graph):
    info = cut(hub_graph, [0, 1, 2])
    assert info.subset == (0, 1, 2)
    assert info.edges_in_subset == (0,)  # edge (0,1,2) lies inside S
    assert info.edges_in_complement == (4, 5, 6, 7)
    assert info.crossing_edges == (1, 2, 3)  # the three hub edges through S
    assert info.t_per_edge == (1, 1, 1)
    assert info.t_average == Fraction(1)


def test_cut_of_single_hub_vertex(hub_graph):
    info = cut(hub_graph, [3])
    assert info.crossing_edges == (1, 2, 3, 4, 5, 6)
    assert info.edges_in_subset == ()
    assert info.t_per_edge == (1,) * 6


def test_cut_partition_identity_on_random_graphs():
    rng = np.random.default_rng(11)
    for _ in range(25):
        k = int(rng.integers(3, 6))
        n = int(rng.integers(k + 1, 11))
        h = random_connected(rng, k, n)
        size = int(rng.integers(1, n))
        subset = sorted(int(v) for v in rng.choice(n, size=size, replace=False))
        info = cut(h, subset)
        counted = len(info.edges_in_subset) + len(info.edges_in_complement) + len(info.crossing_edges)
        assert counted == h.m
        assert sorted(info.edges_in_subset + info.edges_in_complement + info.crossing_edges) == list(range(h.m))
        assert all(0 < t < h.k for t in info.t_per_edge)
        assert len(info.t_per_edge) == len(info.crossing_edges)
        if info.crossing_edges:
            assert info.t_average == Fraction(sum(info.t_per_edge), len(info.crossing_edges))
        else:
            assert info.t_average is None
        # the complementary subset sees the same crossing edges from the other side
        comp = [v for v in range(n) if v not in set(subset)]
        other = cut(h, comp)
        assert other.crossing_edges == info.crossing_edges
        assert [k - t for t in info.t_per_edge] == list(other.t_per_edge)


def test_cut_rejects_improper_subsets(hub_graph):
    with pytest.raises(ValueError):
        cut(hub_graph, [])
    with pytest.raises(ValueError):
        cut(hub_graph, range(8))
    with pytest.raises(ValueError):
        cut(hub_graph, [0, 8])
    # duplicate ids collapse to a set rather than erroring
    assert cut(hub_graph, [0, 0, 1]).subset == (0, 1)


def test_no_crossing_cut_on_disconnected_union(hub_graph, two_edge_path):
    u = disjoint_union(hub_graph, two_edge_path)
    info = cut(u, range(8))
    assert info.crossing_edges == ()
    assert info.t_average is None
    assert info.edges_in_subset == tuple(range(hub_graph.m))


def test_single_edge_constructor():
    for k in (2, 3, 4, 6):
        h = single_edge(k)
        assert h.m == 1 and h.n == k and h.degrees == (1,) * k
