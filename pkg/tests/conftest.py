"""
Shared fixtures and the hypothesis profile for the tolkit test suite
"""
import os

import pytest
from hypothesis import settings

import config
import verify_suites
from complex_core import SimplicialComplex
from geometry_families import two_block_complex
from homology_engine import clear_caches
from utils import full_mask

settings.register_profile('tolkit', derandomize=True, deadline=None, max_examples=60)
settings.register_profile('tolkit-long', derandomize=True, deadline=None, max_examples=500)
settings.load_profile(os.getenv('TOLKIT_HYPOTHESIS_PROFILE', 'tolkit'))


@pytest.fixture(autouse=True)
def isolated_settings(tmp_path, monkeypatch):
    """Defaults only, counterexamples under tmp_path"""
    monkeypatch.setattr(config, 'SETTINGS_FILE', str(tmp_path / 'missing-settings.json'))
    monkeypatch.setattr(verify_suites, 'COUNTEREXAMPLE_DIR', str(tmp_path / 'counterexamples'))
    config.reload_settings()
    yield
    config.reload_settings()
    clear_caches()


@pytest.fixture
def two_blocks():
    """A = {0,1}, B = {2,3} on four vertices"""
    return two_block_complex(1)


@pytest.fixture
def triangle_boundary():
    return SimplicialComplex.boundary_of_simplex(full_mask(3))


@pytest.fixture
def tetrahedron_boundary():
    return SimplicialComplex.boundary_of_simplex(full_mask(4))


@pytest.fixture
def full_triangle():
    return SimplicialComplex.simplex(full_mask(3))


@pytest.fixture
def write_file(tmp_path):
    """Write text to a file under tmp_path and return its path"""
    def _write(name, text):
        path = tmp_path / name
        path.write_text(text, encoding='utf-8')
        return str(path)
    return _write
