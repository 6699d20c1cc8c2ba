"""
Text formats: .scx complexes, .hg hypergraphs, .boxes families, classes JSON
and collapse certificates.

.scx: one maximal face per line as decimal vertex ids; '#' starts a comment;
'-' alone is the empty face; optional header 'vertices: n' (ambient 0..n-1)
or 'ambient: i j k' (explicit vertex set). Without a header the ambient is
0..max id. No face lines means the void complex.
"""
import json
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from bounds_hypergraph import Hypergraph
from collapsibility import CollapseStep
from complex_core import SimplicialComplex
from config import MAX_VERTICES
from errors import InputError, ParseError
from geometry_families import Box, BoxFamily
from utils import full_mask, ids_from_mask, mask_from_ids, popcount


def _content_lines(text: str):
    """(1-based line number, stripped content) for every non-blank line"""
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split('#', 1)[0].strip()
        if line:
            yield number, line


def _parse_ids(line: str, number: int, source: Optional[str]) -> List[int]:
    ids = []
    for token in line.split():
        try:
            value = int(token)
        except ValueError:
            raise ParseError(f"expected a vertex id, got {token!r}", number, source)
        if value < 0 or value >= MAX_VERTICES:
            raise ParseError(f"vertex id {value} outside 0..{MAX_VERTICES - 1}", number, source)
        ids.append(value)
    return ids


def _parse_header(line: str) -> Optional[Tuple[str, str]]:
    key, sep, value = line.partition(':')
    if not sep:
        return None
    return key.strip().lower(), value.strip()


def _parse_vertex_count(value: str, number: int, source: Optional[str]) -> int:
    try:
        n = int(value)
    except ValueError:
        raise ParseError(f"bad vertex count {value!r}", number, source)
    if n < 0 or n > MAX_VERTICES:
        raise ParseError(f"vertex count {n} outside 0..{MAX_VERTICES}", number, source)
    return n


# ----------------------------------------------------------------------
# .scx
# ----------------------------------------------------------------------

def parse_scx(text: str, source: Optional[str] = None) -> SimplicialComplex:
    """
    Parse .scx text.

    Raises:
        ParseError: malformed line or a face outside the declared vertex set
    """
    ambient = None
    faces: List[Tuple[int, int]] = []
    for number, line in _content_lines(text):
        header = _parse_header(line)
        if header is not None:
            key, value = header
            if key == 'vertices':
                ambient = full_mask(_parse_vertex_count(value, number, source))
            elif key == 'ambient':
                ambient = mask_from_ids(_parse_ids(value, number, source))
            else:
                raise ParseError(f"unknown header {key!r}", number, source)
            continue
        if line == '-':
            faces.append((number, 0))
            continue
        faces.append((number, mask_from_ids(_parse_ids(line, number, source))))
    if ambient is None:
        top = max((mask.bit_length() for _, mask in faces), default=0)
        ambient = full_mask(top)
    for number, mask in faces:
        if mask & ~ambient:
            raise ParseError("face uses a vertex outside the declared vertex set", number, source)
    return SimplicialComplex.from_maximal_faces([mask for _, mask in faces], ambient)


def read_scx(path: str) -> SimplicialComplex:
    with open(path, 'r', encoding='utf-8') as f:
        return parse_scx(f.read(), source=path)


def format_scx(K: SimplicialComplex, comments: Sequence[str] = ()) -> str:
    """Serialize with a header that reproduces the ambient exactly"""
    lines = [f"# {c}" for c in comments]
    if K.ambient == full_mask(K.ambient.bit_length()):
        lines.append(f"vertices: {K.ambient.bit_length()}")
    else:
        lines.append("ambient: " + ' '.join(str(v) for v in ids_from_mask(K.ambient)))
    for face in K.maximal_faces:
        lines.append(' '.join(str(v) for v in ids_from_mask(face)) if face else '-')
    return '\n'.join(lines) + '\n'


def write_scx(K: SimplicialComplex, path: str, comments: Sequence[str] = ()):
    with open(path, 'w', encoding='utf-8') as f:
        f.write(format_scx(K, comments))


# ----------------------------------------------------------------------
# .hg
# ----------------------------------------------------------------------

def parse_hg(text: str, source: Optional[str] = None) -> Hypergraph:
    """Parse one edge per line with an optional 'vertices: n' header"""
    n = None
    edges: List[Tuple[int, int]] = []
    for number, line in _content_lines(text):
        header = _parse_header(line)
        if header is not None:
            key, value = header
            if key != 'vertices':
                raise ParseError(f"unknown header {key!r}", number, source)
            n = _parse_vertex_count(value, number, source)
            continue
        ids = _parse_ids(line, number, source)
        if not ids:
            raise ParseError("empty edge", number, source)
        edges.append((number, mask_from_ids(ids)))
    if n is None:
        n = max((mask.bit_length() for _, mask in edges), default=0)
    sizes = {popcount(mask) for _, mask in edges}
    if len(sizes) > 1:
        first = popcount(edges[0][1])
        for number, mask in edges:
            if popcount(mask) != first:
                raise ParseError(f"edge size differs from the first edge ({first})", number, source)
    try:
        return Hypergraph(n, [mask for _, mask in edges])
    except InputError as e:
        raise ParseError(str(e), None, source)


def read_hg(path: str) -> Hypergraph:
    with open(path, 'r', encoding='utf-8') as f:
        return parse_hg(f.read(), source=path)


def format_hg(H: Hypergraph) -> str:
    lines = [f"vertices: {H.n}"]
    lines.extend(' '.join(str(v) for v in ids_from_mask(e)) for e in H.edges)
    return '\n'.join(lines) + '\n'


# ----------------------------------------------------------------------
# .boxes
# ----------------------------------------------------------------------

def parse_boxes(text: str, source: Optional[str] = None) -> BoxFamily:
    """
    Parse 'lo1 hi1 lo2 hi2 ...' lines with exact rationals and optional 'color: i'.

    Either every box carries a color or none does.
    """
    boxes, colors = [], []
    for number, line in _content_lines(text):
        coords, sep, color = line.partition('color:')
        tokens = coords.split()
        if not tokens or len(tokens) % 2:
            raise ParseError("a box needs an even, positive number of coordinates", number, source)
        try:
            values = [Fraction(tok) for tok in tokens]
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"bad coordinate in {coords.strip()!r}", number, source)
        try:
            boxes.append(Box(values[0::2], values[1::2]))
        except InputError as e:
            raise ParseError(str(e), number, source)
        if boxes[0].dimension != boxes[-1].dimension:
            raise ParseError("box dimension differs from the first box", number, source)
        if sep:
            try:
                colors.append(int(color.strip()))
            except ValueError:
                raise ParseError(f"bad color {color.strip()!r}", number, source)
        else:
            colors.append(None)
        if (colors[0] is None) != (colors[-1] is None):
            raise ParseError("either every box has a color or none has", number, source)
    has_colors = bool(colors) and colors[0] is not None
    return BoxFamily(boxes, colors if has_colors else None)


def read_boxes(path: str) -> BoxFamily:
    with open(path, 'r', encoding='utf-8') as f:
        return parse_boxes(f.read(), source=path)


def format_boxes(F: BoxFamily) -> str:
    lines = []
    for i, box in enumerate(F.boxes):
        coords = ' '.join(f"{lo} {hi}" for lo, hi in box.intervals())
        if F.colors is not None:
            coords += f" color: {F.colors[i]}"
        lines.append(coords)
    return '\n'.join(lines) + ('\n' if lines else '')


def write_boxes(F: BoxFamily, path: str):
    with open(path, 'w', encoding='utf-8') as f:
        f.write(format_boxes(F))


# ----------------------------------------------------------------------
# JSON documents
# ----------------------------------------------------------------------

def parse_classes(text: str, source: Optional[str] = None) -> List[int]:
    """Color classes from {"classes": [[ids...], ...]} or a bare list of lists"""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"invalid JSON: {e.msg}", e.lineno, source)
    if isinstance(data, dict):
        data = data.get('classes')
    if not isinstance(data, list) or not all(isinstance(c, list) for c in data):
        raise ParseError("classes must be a list of lists of vertex ids", None, source)
    try:
        return [mask_from_ids(int(v) for v in c) for c in data]
    except (TypeError, ValueError):
        raise ParseError("class members must be integers", None, source)


def read_classes(path: str) -> List[int]:
    with open(path, 'r', encoding='utf-8') as f:
        return parse_classes(f.read(), source=path)


def certificate_to_json(steps: Sequence[CollapseStep]) -> List[Dict[str, List[int]]]:
    return [{'sigma': ids_from_mask(s.sigma), 'unique_max': ids_from_mask(s.unique_max)} for s in steps]


def certificate_from_json(data) -> List[CollapseStep]:
    try:
        return [CollapseStep(mask_from_ids(step['sigma']), mask_from_ids(step['unique_max'])) for step in data]
    except (KeyError, TypeError, ValueError):
        raise ParseError("certificate must be a list of {sigma, unique_max} objects")


def write_certificate(steps: Sequence[CollapseStep], path: str):
    with open(path, 'w', encoding='utf-8') as f:
        json.dump(certificate_to_json(steps), f, indent=2)
