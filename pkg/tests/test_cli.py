import json

import pytest

import cli
import verify_suites
from cli import EXIT_FAIL, EXIT_INTERNAL, EXIT_OK, EXIT_USAGE, _hoist_global_flags, main
from formats import read_boxes, read_scx
from geometry_families import has_common_point_with_tolerance
from utils import full_mask
from verify_suites import Suite, TrialOutcome

TWO_BLOCKS = "vertices: 4\n0 1\n2 3\n"
CIRCLE = "0 1\n1 2\n0 2\n"


def run_json(capsys, *argv):
    code = main(['--json', *argv])
    return code, json.loads(capsys.readouterr().out)


class TestAnalyze:
    def test_two_blocks(self, capsys, write_file):
        code, report = run_json(capsys, 'analyze', write_file('k.scx', TWO_BLOCKS))
        assert code == EXIT_OK
        assert (report['collapsibility_number'], report['leray_number'], report['helly_number']) == (1, 1, 1)
        assert report['betti'] == {'-1': 0, '0': 1, '1': 0}
        assert report['missing_faces'] == [[0, 2], [1, 2], [0, 3], [1, 3]]

    def test_circle(self, capsys, write_file):
        code, report = run_json(capsys, 'analyze', write_file('c.scx', CIRCLE))
        assert code == EXIT_OK
        assert (report['leray_number'], report['helly_number']) == (2, 2)
        assert report['betti']['1'] == 1
        assert report['face_counts'] == [1, 3, 3]

    def test_empty_file_is_void(self, capsys, write_file):
        code, report = run_json(capsys, 'analyze', write_file('v.scx', ''))
        assert code == EXIT_OK
        assert report['void'] is True
        assert report['dim'] is None

    def test_text_output(self, capsys, write_file):
        assert main(['analyze', write_file('k.scx', TWO_BLOCKS)]) == EXIT_OK
        assert 'leray_number: 1' in capsys.readouterr().out


class TestErrors:
    def test_parse_error(self, capsys, write_file):
        code, report = run_json(capsys, 'analyze', write_file('bad.scx', "0 1\n0 x\n"))
        assert code == EXIT_USAGE
        assert report['status'] == 'error'
        assert report['error_code'] == 'parse_error'
        assert ':2:' in report['message']

    def test_missing_file(self, capsys, tmp_path):
        code, report = run_json(capsys, 'analyze', str(tmp_path / 'nope.scx'))
        assert code == EXIT_USAGE
        assert report['error_code'] == 'io_error'

    def test_unknown_suite(self, capsys):
        code, report = run_json(capsys, 'verify', 'no-such-suite')
        assert code == EXIT_USAGE
        assert report['error_code'] == 'input_error'

    def test_usage_error(self, capsys):
        assert main(['bounds', 'q', '1', '2']) == EXIT_USAGE

    def test_guard_rail(self, capsys):
        code, report = run_json(capsys, 'bounds', 'eta', '3', '3', '--brute-force')
        assert code == EXIT_USAGE
        assert report['error_code'] == 'guard_rail'

    def test_internal_error_has_its_own_code(self, capsys, monkeypatch):
        def broken(t, d):
            raise RuntimeError("table corrupted")

        monkeypatch.setattr(cli, 'h_value', broken)
        code, report = run_json(capsys, 'bounds', 'h', '1', '1')
        assert code == EXIT_INTERNAL
        assert report['error_code'] == 'internal_error'


class TestComplexCommands:
    def test_tolerance_to_file(self, capsys, write_file, tmp_path):
        out = str(tmp_path / 't1.scx')
        code, report = run_json(capsys, 'tolerance', write_file('k.scx', TWO_BLOCKS), '-t', '1', '-o', out)
        assert code == EXIT_OK
        assert read_scx(out).maximal_faces == (7, 11, 13, 14)
        assert report['output'] == out

    def test_tolerance_printed(self, capsys, write_file):
        code, report = run_json(capsys, 'tolerance', write_file('k.scx', TWO_BLOCKS), '-t', '0')
        assert report['scx'] == TWO_BLOCKS

    def test_collapse_with_certificate(self, capsys, write_file, tmp_path):
        cert = tmp_path / 'cert.json'
        code, report = run_json(capsys, 'collapse', write_file('k.scx', TWO_BLOCKS), '--certificate', str(cert))
        assert code == EXIT_OK
        assert report['d'] == 1 and report['collapsible']
        assert json.loads(cert.read_text()) == report['certificate']

    def test_collapse_not_collapsible(self, capsys, write_file):
        code, report = run_json(capsys, 'collapse', write_file('c.scx', CIRCLE), '--d', '1')
        assert code == EXIT_OK
        assert report['collapsible'] is False
        assert report['certificate'] is None

    def test_leray_decision(self, capsys, write_file):
        code, report = run_json(capsys, 'leray', write_file('c.scx', CIRCLE), '--d', '1')
        assert report['is_leray'] is False
        assert report['witness'] == {'subset': [0, 1, 2], 'dimension': 1}

    def test_leray_number(self, capsys, write_file):
        code, report = run_json(capsys, 'leray', write_file('c.scx', CIRCLE))
        assert report['leray_number'] == 2


class TestBoundsCommands:
    @pytest.mark.parametrize('argv, value', [
        (['bounds', 'h', '1', '1'], 3),
        (['bounds', 'h', '1', '2'], 8),
        (['bounds', 'eta', '3', '2'], 6),
        (['bounds', 'tuza', '2', '2'], 5),
    ])
    def test_values(self, capsys, argv, value):
        code, report = run_json(capsys, *argv)
        assert code == EXIT_OK
        assert report['value'] == value

    def test_eta_without_closed_form(self, capsys):
        code, report = run_json(capsys, 'bounds', 'eta', '4', '3')
        assert report['value'] is None
        assert 'no closed form' in report['message']

    def test_eta_brute_force(self, capsys):
        code, report = run_json(capsys, 'bounds', 'eta', '2', '2', '--brute-force', '--n-max', '6')
        assert (report['value'], report['brute_force']) == (4, 4)

    def test_cover(self, capsys, write_file):
        code, report = run_json(capsys, 'cover', write_file('t.hg', CIRCLE))
        assert (report['covering_number'], report['cover']) == (2, [0, 1])


class TestGeometryCommands:
    def test_nerve(self, capsys, write_file, tmp_path):
        out = str(tmp_path / 'n.scx')
        code, report = run_json(capsys, 'nerve', write_file('f.boxes', "0 2\n1 3\n2 4\n"), '-o', out)
        assert report['maximal_faces'] == [[0, 1, 2]]
        assert read_scx(out).maximal_faces == (full_mask(3),)

    def test_gen_two_block(self, capsys):
        code, report = run_json(capsys, 'gen', 'two-block', '1')
        assert report['text'] == TWO_BLOCKS

    def test_gen_boxes_is_seeded(self, capsys, tmp_path):
        first, second = str(tmp_path / 'a.boxes'), str(tmp_path / 'b.boxes')
        assert main(['gen', 'boxes', '--d', '2', '--n', '4', '--seed', '3', '-o', first]) == EXIT_OK
        assert main(['gen', 'boxes', '--d', '2', '--n', '4', '--seed', '3', '-o', second]) == EXIT_OK
        assert open(first).read() == open(second).read()
        assert len(open(first).read().splitlines()) == 4

    def test_gen_colored_boxes(self, capsys):
        code, report = run_json(capsys, 'gen', 'boxes', '--d', '2', '--n', '6', '--classes', '3', '--seed', '1')
        lines = report['text'].splitlines()
        assert [line.split('color: ')[1] for line in lines] == ['0', '1', '2', '0', '1', '2']

    def test_gen_planted_boxes(self, capsys, tmp_path):
        out = str(tmp_path / 'p.boxes')
        args = ['gen', 'boxes', '--d', '2', '--n', '12', '--classes', '6', '--planted', '0', '--seed', '2', '-o', out]
        assert main(args) == EXIT_OK
        family = read_boxes(out)
        assert family.color_classes() == [(1 << i) | (1 << (i + 6)) for i in range(6)]
        assert has_common_point_with_tolerance(family, 0)[0]


class TestColorfulCommand:
    def test_tolerant_witness(self, capsys, write_file):
        scx = write_file('k.scx', TWO_BLOCKS)
        classes = write_file('c.json', '{"classes": [[0, 2], [1, 3]]}')
        code, report = run_json(capsys, 'colorful', 'verify', scx, '--classes', classes, '--mode', 'tolerant')
        assert code == EXIT_OK
        assert (report['t'], report['d'], report['bound']) == (1, 1, 3)
        assert report['witness'] == [0, 1, 2]

    def test_plain_precondition(self, capsys, write_file):
        scx = write_file('k.scx', TWO_BLOCKS)
        classes = write_file('c.json', '[[0, 2], [1, 3]]')
        code, report = run_json(capsys, 'colorful', 'verify', scx, '--classes', classes)
        assert code == EXIT_USAGE
        assert report['error_code'] == 'precondition'

    def test_falsified_without_checks(self, capsys, write_file):
        scx = write_file('k.scx', TWO_BLOCKS)
        classes = write_file('c.json', '[[0], [1], [2], [3]]')
        code, report = run_json(capsys, 'colorful', 'verify', scx, '--classes', classes, '--d', '1', '--assume')
        assert code == EXIT_FAIL
        assert report['falsified'] is True


class TestVerifyCommand:
    def test_list(self, capsys):
        code, report = run_json(capsys, 'verify', '--list')
        assert code == EXIT_OK
        assert len(report['suites']) == 24

    def test_global_flags_after_subcommand(self, capsys):
        code = main(['verify', 'two-blocks', '--json', '--seed', '3'])
        report = json.loads(capsys.readouterr().out)
        assert code == EXIT_OK
        assert (report['seed'], report['passed']) == (3, 3)

    def test_short_run_fails(self, capsys, monkeypatch):
        monkeypatch.setitem(verify_suites.SUITES, 'never-valid', Suite(
            'never-valid', 'premise never holds', lambda ctx, index, rng: TrialOutcome(True, '', None, True), None))
        code, report = run_json(capsys, 'verify', 'never-valid', '--trials', '1')
        assert code == EXIT_FAIL
        assert (report['failed'], report['valid']) == (0, 0)

    def test_trials_and_t(self, capsys):
        code, report = run_json(capsys, 'verify', 'lemma4.1', '--trials=4', '--t', '1', '--n-max', '5')
        assert code == EXIT_OK
        assert report['trials'] == 4


def test_hoist_global_flags():
    assert _hoist_global_flags(['verify', 'x', '--seed', '7', '--json']) == ['--seed', '7', '--json', 'verify', 'x']
    assert _hoist_global_flags(['verify', '--trials=3']) == ['--trials=3', 'verify']


def test_version(capsys):
    assert main(['--version']) == EXIT_OK
    assert 'v1.0.1' in capsys.readouterr().out
