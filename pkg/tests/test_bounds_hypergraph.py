import pytest
from hypothesis import given
from hypothesis import strategies as st

from bounds_hypergraph import (Hypergraph, colorful_obstruction_hypergraph, covering_number, critical_examples,
                               eta_bruteforce, eta_closed, h_table, h_value, hypergraph_from_edges, is_t_critical,
                               max_critical_edges, minimum_cover, tuza_upper)
from errors import GuardRailError, InputError
from utils import mask_from_ids


def m(*ids):
    return mask_from_ids(ids)


class TestH:
    @pytest.mark.parametrize('d', range(0, 8))
    def test_zero_tolerance(self, d):
        assert h_value(0, d) == d

    @pytest.mark.parametrize('t', range(0, 8))
    def test_dimension_one(self, t):
        assert h_value(t, 1) == 2 * t + 1

    @pytest.mark.parametrize('d', range(1, 8))
    def test_tolerance_one(self, d):
        assert h_value(1, d) == d * d + 2 * d

    def test_small_values(self):
        assert h_value(1, 2) == 8
        assert h_value(2, 2) == 2 * (8 + 1) + 1 * (2 + 1) + 2

    def test_negative_rejected(self):
        with pytest.raises(InputError):
            h_value(-1, 2)

    def test_table(self):
        table = h_table(2, 3)
        assert len(table) == 12
        assert table[(1, 3)] == 15

    @given(st.integers(0, 6), st.integers(0, 6))
    def test_monotone(self, t, d):
        assert h_value(t, d) <= h_value(t + 1, d)
        assert h_value(t, d) <= h_value(t, d + 1)


class TestEta:
    def test_closed_forms(self):
        assert eta_closed(2, 3) == 6
        assert eta_closed(3, 2) == 6
        assert eta_closed(4, 2) == 9
        assert eta_closed(5, 1) == 5
        assert eta_closed(4, 3) is None

    def test_closed_forms_meet(self):
        # eta(2, 2) from both the graph and the t = 2 formula
        assert eta_closed(2, 2) == (2 + 2) ** 2 // 4

    def test_bad_arguments(self):
        with pytest.raises(InputError):
            eta_closed(1, 2)
        with pytest.raises(InputError):
            tuza_upper(2, 0)

    @pytest.mark.parametrize('r, t, expected', [(2, 2, 5), (2, 3, 7), (3, 2, 9)])
    def test_tuza(self, r, t, expected):
        assert tuza_upper(r, t) == expected

    def test_closed_forms_below_tuza(self):
        for r in range(2, 7):
            for t in (1, 2):
                assert eta_closed(r, t) < tuza_upper(r, t)

    def test_max_critical_edges(self):
        assert max_critical_edges(2, 2) == 3
        assert max_critical_edges(3, 2) == 6

    @pytest.mark.parametrize('r, t, n_max, expected', [(2, 2, 6, 4), (2, 3, 7, 6), (2, 1, 4, 2)])
    def test_bruteforce_matches_closed_form(self, r, t, n_max, expected):
        assert eta_bruteforce(r, t, n_max) == expected
        assert expected == eta_closed(r, t)

    def test_bruteforce_guard_rails(self):
        with pytest.raises(GuardRailError):
            eta_bruteforce(3, 2, 6)
        with pytest.raises(GuardRailError):
            eta_bruteforce(2, 2, 20)


class TestHypergraph:
    def test_uniformity(self):
        with pytest.raises(InputError):
            hypergraph_from_edges([[0, 1], [1, 2, 3]])

    def test_declared_size_mismatch(self):
        with pytest.raises(InputError):
            Hypergraph(3, [m(0, 1)], r=3)

    def test_edge_outside_vertices(self):
        with pytest.raises(InputError):
            Hypergraph(2, [m(1, 2)])

    def test_duplicates_collapse(self):
        H = Hypergraph(3, [m(0, 1), m(0, 1)])
        assert H.edges == (m(0, 1),)
        assert H.r == 2

    def test_from_edges_defaults_vertex_count(self):
        assert hypergraph_from_edges([[0, 4]]).n == 5


class TestCovering:
    def test_covering_numbers(self):
        assert covering_number(Hypergraph(3, [])) == 0
        assert covering_number(hypergraph_from_edges([[0, 1]])) == 1
        assert covering_number(hypergraph_from_edges([[0, 1], [1, 2], [0, 2]])) == 2

    def test_minimum_cover(self):
        H = hypergraph_from_edges([[0, 1], [1, 2]])
        assert minimum_cover(H) == m(1)
        assert minimum_cover(Hypergraph(2, [])) == 0

    def test_criticality(self):
        matching = hypergraph_from_edges([[0, 1], [2, 3]])
        triangle = hypergraph_from_edges([[0, 1], [1, 2], [0, 2]])
        assert is_t_critical(matching, 2)
        assert is_t_critical(triangle, 2)
        assert not is_t_critical(hypergraph_from_edges([[0, 1]]), 2)
        # a path of two edges has a single-vertex cover
        assert not is_t_critical(hypergraph_from_edges([[0, 1], [1, 2]]), 2)

    def test_critical_examples(self):
        for H in critical_examples(2, 3, 6):
            assert is_t_critical(H, 3)
        assert critical_examples(3, 2, 6) == []

    @given(st.lists(st.tuples(st.integers(0, 5), st.integers(0, 5)).filter(lambda e: e[0] != e[1]), max_size=6))
    def test_cover_size_matches(self, pairs):
        H = Hypergraph(6, [m(a, b) for a, b in pairs])
        cover = minimum_cover(H)
        assert all(cover & e for e in H.edges)
        assert bin(cover).count('1') == covering_number(H)


def test_colorful_obstructions(two_blocks):
    H = colorful_obstruction_hypergraph(two_blocks, [m(0, 2), m(1, 3)])
    assert H.edges == (m(1, 2), m(0, 3))
    assert H.r == 2
    assert covering_number(H) == 2
