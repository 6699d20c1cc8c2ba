import json
from fractions import Fraction

import pytest

from collapsibility import CollapseStep, is_d_collapsible
from complex_core import SimplicialComplex
from errors import ParseError
from formats import (certificate_from_json, certificate_to_json, format_boxes, format_hg, format_scx, parse_boxes,
                     parse_classes, parse_hg, parse_scx, read_scx, write_certificate, write_scx)
from utils import full_mask, mask_from_ids


def m(*ids):
    return mask_from_ids(ids)


class TestScx:
    def test_two_blocks(self, two_blocks):
        assert parse_scx("vertices: 4\n0 1\n2 3\n") == two_blocks
        assert format_scx(two_blocks) == "vertices: 4\n0 1\n2 3\n"

    def test_comments_and_blank_lines(self, triangle_boundary):
        text = "# circle\n\n0 1\n1 2  # edge\n0 2\n"
        assert parse_scx(text) == triangle_boundary

    def test_no_faces_is_void(self):
        assert parse_scx("").is_void
        assert parse_scx("vertices: 3\n") == SimplicialComplex.void(full_mask(3))

    def test_dash_is_empty_complex(self):
        K = parse_scx("vertices: 2\n-\n")
        assert K.is_empty_complex
        assert K.ambient == full_mask(2)
        assert format_scx(K) == "vertices: 2\n-\n"

    def test_explicit_ambient(self):
        K = parse_scx("ambient: 1 4\n1\n")
        assert K.ambient == m(1, 4)
        assert format_scx(K) == "ambient: 1 4\n1\n"

    def test_ghost_vertex_round_trip(self, tmp_path):
        K = SimplicialComplex.simplex(m(0, 1), ambient=full_mask(3))
        path = str(tmp_path / 'ghost.scx')
        write_scx(K, path, comments=['one ghost vertex'])
        assert read_scx(path) == K
        assert open(path).read().startswith('# one ghost vertex\n')

    @pytest.mark.parametrize('text, line', [
        ("0 1\nx 2\n", 2),
        ("vertices: 2\n0 5\n", 2),
        ("colors: 3\n", 1),
        ("0 -1\n", 1),
        ("vertices: many\n", 1),
    ])
    def test_errors_carry_line_numbers(self, text, line):
        with pytest.raises(ParseError) as info:
            parse_scx(text, source='in.scx')
        assert info.value.line_number == line
        assert str(info.value).startswith(f"in.scx:{line}:")


class TestHg:
    def test_parse(self):
        H = parse_hg("vertices: 4\n0 1\n2 3\n")
        assert H.n == 4
        assert H.edges == (m(0, 1), m(2, 3))
        assert format_hg(H) == "vertices: 4\n0 1\n2 3\n"

    def test_non_uniform_edge_line(self):
        with pytest.raises(ParseError) as info:
            parse_hg("0 1\n1 2 3\n")
        assert info.value.line_number == 2

    def test_edge_outside_vertex_count(self):
        with pytest.raises(ParseError):
            parse_hg("vertices: 2\n1 2\n")


class TestBoxes:
    def test_rationals_and_colors(self):
        F = parse_boxes("0 1/2 0 1 color: 0\n1/3 2 0 3 color: 1\n")
        assert F.dimension == 2
        assert F.colors == [0, 1]
        assert F.boxes[0].highs == (Fraction(1, 2), Fraction(1))
        assert F.boxes[1].lows[0] == Fraction(1, 3)

    def test_format(self):
        F = parse_boxes("0 1/2 color: 3\n")
        assert format_boxes(F) == "0 1/2 color: 3\n"

    def test_uncolored(self):
        F = parse_boxes("0 1\n2 3\n")
        assert F.colors is None
        assert len(F) == 2

    @pytest.mark.parametrize('text, line', [
        ("0 1 2\n", 1),
        ("0 1\n0 1 0 1\n", 2),
        ("0 1 color: 0\n0 1\n", 2),
        ("2 1\n", 1),
        ("0 a\n", 1),
    ])
    def test_errors(self, text, line):
        with pytest.raises(ParseError) as info:
            parse_boxes(text)
        assert info.value.line_number == line


class TestClasses:
    def test_object_form(self):
        assert parse_classes('{"classes": [[0, 2], [1, 3]]}') == [m(0, 2), m(1, 3)]

    def test_list_form(self):
        assert parse_classes('[[0], []]') == [m(0), 0]

    def test_bad_json(self):
        with pytest.raises(ParseError):
            parse_classes('{"classes": ')

    def test_bad_shape(self):
        with pytest.raises(ParseError):
            parse_classes('{"classes": [0, 1]}')


class TestCertificates:
    def test_json_form(self, two_blocks, tmp_path):
        _, steps = is_d_collapsible(two_blocks, 1)
        data = certificate_to_json(steps)
        assert all(set(step) == {'sigma', 'unique_max'} for step in data)
        assert certificate_from_json(data) == steps

        path = tmp_path / 'cert.json'
        write_certificate(steps, str(path))
        assert certificate_from_json(json.loads(path.read_text())) == steps

    def test_explicit_step(self):
        assert certificate_to_json([CollapseStep(m(0), m(0, 1))]) == [{'sigma': [0], 'unique_max': [0, 1]}]

    def test_malformed(self):
        with pytest.raises(ParseError):
            certificate_from_json([{'sigma': [0]}])
