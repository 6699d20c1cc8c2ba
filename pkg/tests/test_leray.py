import json
from concurrent.futures import ThreadPoolExecutor

import pytest
from hypothesis import given

import config
import leray
from complex_core import SimplicialComplex
from errors import GuardRailError, InputError
from leray import is_d_leray, leray_number, leray_witness
from strategies import complexes
from tolerance import tolerance_complex
from utils import full_mask


def test_simplex_is_0_leray(full_triangle):
    assert is_d_leray(full_triangle, 0) == (True, None)
    assert leray_number(full_triangle) == 0


def test_sphere_witness(tetrahedron_boundary):
    assert is_d_leray(tetrahedron_boundary, 2) == (False, (full_mask(4), 2))
    assert leray_witness(tetrahedron_boundary) == (3, full_mask(4))


def test_circle_is_2_leray(triangle_boundary):
    assert is_d_leray(triangle_boundary, 2) == (True, None)
    assert leray_number(triangle_boundary) == 2


def test_two_blocks_tolerance_sphere(two_blocks):
    assert leray_number(two_blocks) == 1
    assert leray_number(tolerance_complex(two_blocks, 1)) == 3


def test_empty_complex():
    assert leray_number(SimplicialComplex.empty(full_mask(2))) == 0


def test_void_rejected():
    with pytest.raises(InputError):
        leray_number(SimplicialComplex.void(1))


def test_vertex_cap():
    K = SimplicialComplex.from_maximal_faces([1 << i for i in range(15)], full_mask(15))
    with pytest.raises(GuardRailError):
        leray_number(K)


def test_vertex_cap_is_a_setting(tmp_path, monkeypatch, triangle_boundary, tetrahedron_boundary):
    settings_file = tmp_path / 'settings.json'
    settings_file.write_text(json.dumps({'leray_vertex_cap': 3}))
    monkeypatch.setattr(config, 'SETTINGS_FILE', str(settings_file))
    config.reload_settings()
    assert leray_number(triangle_boundary) == 2
    with pytest.raises(GuardRailError):
        leray_number(tetrahedron_boundary)
    assert leray_number(tetrahedron_boundary, force=True) == 3


@given(complexes(max_vertices=6))
def test_number_matches_decision(K):
    L = leray_number(K)
    assert is_d_leray(K, L)[0]
    if L > 0:
        ok, (U, i) = is_d_leray(K, L - 1)
        assert not ok and i == L - 1


@given(complexes(max_vertices=6))
def test_thread_pool_agrees(K):
    assert leray_number(K, workers=3) == leray_number(K, workers=1)


def test_sweep_stays_serial_by_default(monkeypatch, two_blocks):
    def no_pool(*args, **kwargs):
        raise AssertionError("thread pool used without leray_workers")

    monkeypatch.setattr(leray, 'ThreadPoolExecutor', no_pool)
    assert leray_number(two_blocks) == 1


def test_leray_workers_setting(tmp_path, monkeypatch, two_blocks):
    pools = []

    class CountingPool(ThreadPoolExecutor):
        def __init__(self, *args, **kwargs):
            pools.append(kwargs.get('max_workers'))
            super().__init__(*args, **kwargs)

    path = tmp_path / 'settings.json'
    path.write_text(json.dumps({'leray_workers': 3}))
    monkeypatch.setattr(config, 'SETTINGS_FILE', str(path))
    monkeypatch.setattr(leray, 'ThreadPoolExecutor', CountingPool)
    config.reload_settings()
    assert leray_witness(two_blocks) == leray_witness(two_blocks, workers=1)
    assert pools and pools[0] == 3
