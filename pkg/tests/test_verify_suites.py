import json
import os

import numpy as np
import pytest

import verify_suites
from colorful_matroid import matroid_subset_of_complex
from complex_core import is_cone
from errors import InputError
from formats import read_scx
from geometry_families import two_block_complex
from verify_suites import Suite, TrialOutcome, _planted_classes, _random_instance, list_suites, run_suite

ALL_SUITES = {
    'two-blocks', 'thm1.5', 'thm1.6', 'lemma4.1', 'cor4.2', 'prop4.3', 'lemma3.2', 'lemma3.1', 'nerve-thm',
    'exact-mv', 'exact-link-costar', 'exact-pair', 'km-union', 'bounds', 'thm1.2', 'lemma5.1', 'thm6.3',
    'thm6.4', 'thm6.5', 'cor6.6', 'thm6.2', 'thm1.1', 'conj-eta', 'heredity',
}


def register(monkeypatch, name, trial):
    monkeypatch.setitem(verify_suites.SUITES, name, Suite(name, 'test suite', trial, None))


def test_every_suite_is_listed():
    assert {entry['name'] for entry in list_suites()} == ALL_SUITES
    assert all(entry['description'] for entry in list_suites())


def test_two_blocks_table():
    report = run_suite('two-blocks', seed=0)
    assert report['status'] == 'success'
    assert (report['trials'], report['passed'], report['failed']) == (3, 3, 0)


def test_two_blocks_single_t():
    report = run_suite('two-blocks', params={'t_values': [2]})
    assert report['trials'] == 1 and report['passed'] == 1


def test_bounds_table(tmp_path, monkeypatch):
    import config
    path = tmp_path / 'settings.json'
    path.write_text(json.dumps({'eta_guard_rails': {'t_max': 2}}))
    monkeypatch.setattr(config, 'SETTINGS_FILE', str(path))
    config.reload_settings()
    report = run_suite('bounds', params={'t_max': 6, 'd_max': 6})
    assert report['trials'] == 9
    assert report['failed'] == 0, report['failures']


@pytest.mark.parametrize('name', ['lemma4.1', 'cor4.2', 'thm1.5', 'km-union', 'heredity', 'exact-mv',
                                  'exact-pair', 'thm6.3'])
def test_small_runs_pass(name):
    report = run_suite(name, seed=1, trials=6, params={'n_max': 5})
    assert report['failed'] == 0, report['failures']
    assert report['status'] == 'success'
    assert report['passed'] == report['valid'] == 6
    assert report['drawn'] == 6 + report['skipped']


@pytest.mark.parametrize('name', ['cor6.6', 'thm6.2', 'thm6.3', 'thm6.4', 'thm6.5', 'lemma5.1', 'prop4.3',
                                  'cor4.2'])
def test_premise_suites_reach_valid_count(name):
    report = run_suite(name, seed=0, trials=4, params={'n_max': 6})
    assert report['failed'] == 0, report['failures']
    assert report['status'] == 'success', report['notes']
    assert report['passed'] >= 4


def test_planar_six_classes_runs_real_instances():
    report = run_suite('cor6.6', seed=3, trials=2)
    assert report['valid'] == 2
    assert report['passed'] == 2


@pytest.mark.slow
@pytest.mark.parametrize('name', sorted(ALL_SUITES - {'two-blocks', 'bounds'}))
def test_longer_runs_pass(name):
    report = run_suite(name, seed=2, trials=20, params={'n_max': 6})
    assert report['failed'] == 0, report['failures']


def test_same_seed_same_report():
    first = run_suite('lemma4.1', seed=9, trials=5, params={'n_max': 5})
    second = run_suite('lemma4.1', seed=9, trials=5, params={'n_max': 5})
    assert first == second


def test_thread_pool_matches_serial_run():
    serial = run_suite('heredity', seed=4, trials=6, params={'n_max': 5}, workers=1)
    pooled = run_suite('heredity', seed=4, trials=6, params={'n_max': 5}, workers=3)
    assert serial == pooled


def test_unknown_suite():
    with pytest.raises(InputError):
        run_suite('no-such-suite')


def test_failures_are_dumped(monkeypatch):
    register(monkeypatch, 'always-fails',
             lambda ctx, index, rng: TrialOutcome(False, f"trial {index} failed", two_block_complex(1)))
    report = run_suite('always-fails', seed=5, trials=2)
    assert report['status'] == 'fail'
    assert report['failed'] == 2
    path = report['failures'][1]['counterexample']
    assert os.path.basename(path) == 'always-fails-seed5-trial1.scx'
    assert os.path.dirname(path) == verify_suites.COUNTEREXAMPLE_DIR
    assert read_scx(path) == two_block_complex(1)
    assert 'failed: trial 1 failed' in open(path).read()


def test_dump_dir_override(monkeypatch, tmp_path):
    register(monkeypatch, 'always-fails',
             lambda ctx, index, rng: TrialOutcome(False, 'no', two_block_complex(2)))
    report = run_suite('always-fails', seed=0, trials=1, dump_dir=str(tmp_path / 'elsewhere'))
    assert report['failures'][0]['counterexample'].startswith(str(tmp_path / 'elsewhere'))


def test_crash_becomes_failure(monkeypatch):
    def crash(ctx, index, rng):
        raise RuntimeError("boom")

    register(monkeypatch, 'crashes', crash)
    report = run_suite('crashes', trials=1)
    assert report['failures'] == [{'trial': 0, 'passed': False, 'skipped': False,
                                   'detail': 'RuntimeError: boom', 'counterexample': None}]


def test_skips_are_counted(monkeypatch):
    register(monkeypatch, 'skips',
             lambda ctx, index, rng: TrialOutcome(True, 'premise', None, index % 2 == 0))
    report = run_suite('skips', trials=4)
    assert (report['passed'], report['skipped'], report['failed']) == (4, 4, 0)
    assert (report['valid'], report['drawn']) == (4, 8)
    assert report['status'] == 'success'
    assert report['notes'] == ['4 trials skipped because the premise did not hold']


def test_too_few_valid_instances_fail(monkeypatch):
    register(monkeypatch, 'never-valid', lambda ctx, index, rng: TrialOutcome(True, 'premise', None, True))
    report = run_suite('never-valid', trials=2)
    assert report['status'] == 'fail'
    assert (report['valid'], report['drawn'], report['failed']) == (0, 40, 0)
    assert 'only 0 of 2 valid instances in 40 draws' in report['notes']


def test_attempt_factor_from_settings(tmp_path, monkeypatch):
    import config
    path = tmp_path / 'settings.json'
    path.write_text(json.dumps({'max_attempts_factor': 3}))
    monkeypatch.setattr(config, 'SETTINGS_FILE', str(path))
    config.reload_settings()
    register(monkeypatch, 'never-valid', lambda ctx, index, rng: TrialOutcome(True, 'premise', None, True))
    assert run_suite('never-valid', trials=5)['drawn'] == 15


def test_refill_is_independent_of_workers():
    serial = run_suite('lemma5.1', seed=2, trials=5, params={'n_max': 6}, workers=1)
    pooled = run_suite('lemma5.1', seed=2, trials=5, params={'n_max': 6}, workers=4)
    assert serial == pooled


def test_random_instances_are_not_trivial():
    rng = np.random.default_rng(0)
    draws = [_random_instance(rng, 7) for _ in range(200)]
    assert sum(1 for K in draws if len(K.maximal_faces) == 1) <= 10
    assert sum(1 for K in draws if is_cone(K) is not None) <= 10


def test_planted_classes_lie_inside_the_complex():
    rng = np.random.default_rng(1)
    for _ in range(30):
        K = _random_instance(rng, 7)
        M = _planted_classes(rng, K, 3)
        assert matroid_subset_of_complex(M, K)


def test_trials_default_from_settings(monkeypatch):
    register(monkeypatch, 'counts', lambda ctx, index, rng: TrialOutcome(True))
    assert run_suite('counts')['trials'] == 50
