import pytest
from hypothesis import given

from collapsibility import (CollapseStep, collapsibility_number, elementary_collapse, free_faces, is_d_collapsible,
                            replay_certificate)
from complex_core import SimplicialComplex, helly_number, induced
from errors import InputError
from geometry_families import two_block_complex
from leray import leray_number
from strategies import complexes
from utils import full_mask, mask_from_ids


def m(*ids):
    return mask_from_ids(ids)


class TestFreeFaces:
    def test_single_edge(self):
        edge = SimplicialComplex.simplex(m(0, 1))
        assert free_faces(edge, 1) == [(0, m(0, 1)), (m(0), m(0, 1)), (m(1), m(0, 1))]

    def test_triangle_boundary_has_none(self, triangle_boundary):
        assert free_faces(triangle_boundary, 1) == []

    def test_two_blocks_vertices_are_free(self, two_blocks):
        assert [s for s, _ in free_faces(two_blocks, 1)] == [m(0), m(1), m(2), m(3)]


class TestElementaryCollapse:
    def test_collapse_vertex_of_edge(self):
        edge = SimplicialComplex.simplex(m(0, 1))
        assert elementary_collapse(edge, m(0)).maximal_faces == (m(1),)

    def test_collapse_maximal_face(self, two_blocks):
        assert elementary_collapse(two_blocks, m(0, 1)).maximal_faces == (m(0), m(1), m(2, 3))

    def test_not_free(self, triangle_boundary):
        with pytest.raises(InputError):
            elementary_collapse(triangle_boundary, m(0))


class TestDecision:
    def test_low_dimension_is_collapsible(self, full_triangle):
        ok, steps = is_d_collapsible(full_triangle, 3)
        assert ok
        assert replay_certificate(full_triangle, steps, 3)

    def test_two_blocks(self, two_blocks):
        ok, steps = is_d_collapsible(two_blocks, 1)
        assert ok
        assert replay_certificate(two_blocks, steps, 1)

    def test_triangle_boundary_not_1_collapsible(self, triangle_boundary):
        assert is_d_collapsible(triangle_boundary, 1) == (False, None)

    def test_void_is_collapsible(self):
        assert is_d_collapsible(SimplicialComplex.void(1), 0) == (True, [])

    def test_negative_d(self, two_blocks):
        with pytest.raises(InputError):
            is_d_collapsible(two_blocks, -1)

    def test_bad_certificate_rejected(self, triangle_boundary):
        assert not replay_certificate(triangle_boundary, [CollapseStep(m(0), m(0, 1))], 1)


class TestCollapsibilityNumber:
    def test_simplices_and_empty_complex(self, full_triangle):
        assert collapsibility_number(full_triangle) == 0
        assert collapsibility_number(SimplicialComplex.simplex(m(0))) == 0
        assert collapsibility_number(SimplicialComplex.empty()) == 0

    def test_two_blocks(self):
        for t in (1, 2, 3):
            assert collapsibility_number(two_block_complex(t)) == 1

    def test_boundaries(self, triangle_boundary, tetrahedron_boundary):
        assert collapsibility_number(triangle_boundary) == 2
        assert collapsibility_number(tetrahedron_boundary) == 3

    def test_triangles_with_pendant_edge(self):
        # two triangles sharing an edge plus a pendant edge
        K = SimplicialComplex.from_vertex_lists([[0, 1, 2], [0, 1, 3], [3, 4]], ambient=range(5))
        assert collapsibility_number(K) == 1


@given(complexes(max_vertices=6))
def test_collapsibility_bounds_leray_and_helly(K):
    C = collapsibility_number(K)
    ok, steps = is_d_collapsible(K, C)
    assert ok and replay_certificate(K, steps, C)
    assert C >= leray_number(K) >= helly_number(K)
    assert collapsibility_number(induced(K, K.ambient & ~1)) <= C


@given(complexes(max_vertices=5))
def test_monotone_in_d(K):
    C = collapsibility_number(K)
    assert is_d_collapsible(K, C + 1)[0]
    if C > 0:
        assert not is_d_collapsible(K, C - 1)[0]


def test_full_ambient_simplex():
    K = SimplicialComplex.simplex(full_mask(5))
    assert is_d_collapsible(K, 0) == (True, [CollapseStep(0, full_mask(5))])
