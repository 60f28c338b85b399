import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ratcoord import (
    BudgetExceeded,
    CoordinationSequence,
    CoverVertex,
    EdgeOrbit,
    ParseError,
    PeriodicGraph,
    bfs_coordination,
    canonical_edge_orbit,
    cover_neighbors,
    cumulative_counts,
    parse_periodic_graph,
)
from .conftest import SQUARE_TEXT


class TestParse:
    def test_square_lattice(self):
        g = parse_periodic_graph(SQUARE_TEXT)
        assert g.dim == 2
        assert g.num_orbits == 1
        assert set(g.edge_orbits) == {
            EdgeOrbit(1, 1, (1, 0)),
            EdgeOrbit(1, 1, (0, 1)),
        }

    def test_no_edges_is_valid(self):
        g = parse_periodic_graph("dim 1\nvertices 1")
        assert g.edge_orbits == ()

    def test_comments_and_blank_lines(self):
        text = "# a lattice\n\ndim 2  # two dimensional\nvertices 1\nedge 1 1 1 0\n"
        g = parse_periodic_graph(text)
        assert g.edge_orbits == (EdgeOrbit(1, 1, (1, 0)),)

    def test_flipped_orientation_is_canonicalized(self):
        g = parse_periodic_graph("dim 2\nvertices 2\nedge 2 1 1 0")
        assert g.edge_orbits == (EdgeOrbit(1, 2, (-1, 0)),)

    @pytest.mark.parametrize(
        "text,line,fragment",
        [
            ("dim 2\nvertices 1\nedge 1 1 0 0", 3, "self-edge"),
            ("dim 2\nvertices 1\nedge 1 2 1 0", 3, "out of range"),
            ("dim 2\nvertices 1\nedge 1 1 1", 3, "offset"),
            ("dim 2\nvertices 1\nedge 1 1 1 0\nedge 1 1 -1 0", 4, "duplicate"),
            ("dim 2\nvertices 1\nedge 1 1 1 0\nedge 1 1 1 0", 4, "duplicate"),
            ("dim 2\nvertices 1\nvertex 2", 3, "unknown directive"),
            ("dim 2\nvertices 1\nedge 1 1 1 x", 3, "integer"),
            ("vertices 1\ndim 2", 1, "dim"),
            ("dim 0\nvertices 1", 1, "positive"),
            ("dim 2", 2, "missing 'vertices'"),
            ("", 1, "missing 'dim'"),
        ],
    )
    def test_errors_carry_line_numbers(self, text, line, fragment):
        with pytest.raises(ParseError) as excinfo:
            parse_periodic_graph(text)
        assert excinfo.value.line_no == line
        assert fragment in str(excinfo.value)

    def test_constructor_rejects_noncanonical(self):
        with pytest.raises(ValueError):
            PeriodicGraph(2, 2, (EdgeOrbit(2, 1, (0, 0)),))
        with pytest.raises(ValueError):
            PeriodicGraph(2, 1, (EdgeOrbit(1, 1, (-1, 0)),))

    def test_canonical_edge_orbit_self_edge(self):
        assert canonical_edge_orbit(1, 1, (-1, 2)) == EdgeOrbit(1, 1, (1, -2))
        with pytest.raises(ValueError):
            canonical_edge_orbit(1, 1, (0, 0))


class TestCoverNeighbors:
    def test_square(self, square):
        got = cover_neighbors(square, CoverVertex(1, (0, 0)))
        assert set(got) == {
            CoverVertex(1, (1, 0)),
            CoverVertex(1, (-1, 0)),
            CoverVertex(1, (0, 1)),
            CoverVertex(1, (0, -1)),
        }

    def test_honeycomb(self, honeycomb):
        got = cover_neighbors(honeycomb, CoverVertex(1, (0, 0)))
        assert set(got) == {
            CoverVertex(2, (0, 0)),
            CoverVertex(2, (1, 0)),
            CoverVertex(2, (0, 1)),
        }

    def test_edgeless(self, edgeless):
        assert cover_neighbors(edgeless, CoverVertex(1, (5,))) == []


class TestBfs:
    @pytest.mark.parametrize(
        "name,origin,depth,expected",
        [
            ("square", 1, 3, (1, 4, 8, 12)),
            ("honeycomb", 1, 3, (1, 3, 6, 9)),
            ("honeycomb", 2, 3, (1, 3, 6, 9)),
            ("edgeless", 1, 2, (1, 0, 0)),
            ("chain", 1, 3, (1, 2, 2, 2)),
            ("three_ring", 1, 4, (1, 2, 2, 2, 2)),
            ("ladder", 1, 3, (1, 3, 4, 4)),
        ],
    )
    def test_known_sequences(self, graphs, name, origin, depth, expected):
        assert bfs_coordination(graphs[name], origin, depth).values == expected

    def test_depth_zero(self, square):
        assert bfs_coordination(square, 1, 0).values == (1,)

    def test_budget_error(self, square):
        with pytest.raises(BudgetExceeded):
            bfs_coordination(square, 1, 50, max_visited=10)

    def test_sequence_type_invariant(self):
        with pytest.raises(ValueError):
            CoordinationSequence((2, 1))
        with pytest.raises(ValueError):
            CoordinationSequence((1, -1))


class TestCumulative:
    @pytest.mark.parametrize(
        "values,expected",
        [
            ((1, 4, 8, 12), [1, 5, 13, 25]),
            ((1,), [1]),
            ((1, 0, 0), [1, 1, 1]),
        ],
    )
    def test_examples(self, values, expected):
        assert cumulative_counts(CoordinationSequence(values)) == expected


# random small graphs for the structural properties
@st.composite
def graph_and_vertex(draw):
    dim = draw(st.integers(1, 3))
    orbits = draw(st.integers(1, 3))
    n_edges = draw(st.integers(0, 4))
    edges = []
    for _ in range(n_edges):
        s = draw(st.integers(1, orbits))
        t = draw(st.integers(1, orbits))
        offset = tuple(draw(st.integers(-2, 2)) for _ in range(dim))
        if s == t and all(x == 0 for x in offset):
            continue
        edge = canonical_edge_orbit(s, t, offset)
        if edge not in edges:
            edges.append(edge)
    g = PeriodicGraph(dim, orbits, tuple(edges))
    orbit = draw(st.integers(1, orbits))
    shift = tuple(draw(st.integers(-3, 3)) for _ in range(dim))
    return g, CoverVertex(orbit, shift)


class TestProperties:
    @settings(max_examples=60, deadline=None)
    @given(graph_and_vertex())
    def test_neighbor_symmetry(self, gv):
        g, v = gv
        for w in cover_neighbors(g, v):
            assert v in cover_neighbors(g, w)

    @settings(max_examples=60, deadline=None)
    @given(graph_and_vertex(), st.integers(-4, 4))
    def test_translation_equivariance(self, gv, h):
        g, v = gv
        shift = tuple(h for _ in range(g.dim))
        moved = CoverVertex(v.orbit, tuple(a + b for a, b in zip(v.shift, shift)))
        expected = {
            CoverVertex(w.orbit, tuple(a + b for a, b in zip(w.shift, shift)))
            for w in cover_neighbors(g, v)
        }
        assert set(cover_neighbors(g, moved)) == expected

    @settings(max_examples=30, deadline=None)
    @given(graph_and_vertex(), st.randoms())
    def test_bfs_deterministic_under_edge_order(self, gv, rng):
        g, v = gv
        edges = list(g.edge_orbits)
        rng.shuffle(edges)
        permuted = PeriodicGraph(g.dim, g.num_orbits, tuple(edges))
        a = bfs_coordination(g, v.orbit, 4, max_visited=200_000)
        b = bfs_coordination(permuted, v.orbit, 4, max_visited=200_000)
        assert a == b

    @settings(max_examples=30, deadline=None)
    @given(graph_and_vertex())
    def test_partial_sums_monotone(self, gv):
        g, v = gv
        seq = bfs_coordination(g, v.orbit, 5, max_visited=200_000)
        sums = cumulative_counts(seq)
        assert sums[0] == 1
        assert all(a <= b for a, b in zip(sums, sums[1:]))
