#!/usr/bin/env python3
"""
tolkit command-line front end.

Every command builds a report dict (see report_schemas) and prints it either
as text or, with --json, as sorted JSON. Exit codes: 0 success or all trials
passed, 1 a verification failed or fell short of valid instances, 2 usage,
parse or guard-rail error, 3 an internal error.
"""
import argparse
import json
import sys
from typing import Dict, List, Optional, Tuple

from bounds_hypergraph import eta_bruteforce, eta_closed, h_value, minimum_cover, tuza_upper
from collapsibility import collapsibility_number, is_d_collapsible
from colorful_matroid import BOUND_MODES, PartitionMatroid, verify_tolerant_colorful, \
    verify_topological_colorful_helly
from complex_core import helly_number, missing_faces
from errors import ToolkitError
from formats import (certificate_to_json, format_boxes, format_scx, read_boxes, read_classes, read_hg, read_scx,
                     write_certificate, write_scx)
from geometry_families import (nerve_of_boxes, planted_colored_boxes, random_boxes, random_colored_boxes,
                               two_block_complex)
from homology_engine import betti_numbers
from leray import is_d_leray, leray_witness
from logger import debug, exception, info, safe_error_response
from report_schemas import (AnalyzeReport, BoundsReport, CollapseReport, ColorfulReport, CoverReport,
                            LerayReport, NerveReport, create_error_report, validate_report)
from tolerance import tolerance_complex
from utils import ids_from_mask, popcount
from version import get_display_version
from verify_suites import list_suites, run_suite

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_INTERNAL = 3


def _faces_as_lists(faces) -> List[List[int]]:
    return [ids_from_mask(f) for f in faces]


# ============================================================================
# Complex commands
# ============================================================================

def register_complex_commands(subparsers):
    """Register analyze, tolerance, collapse and leray"""
    debug("Registering complex commands")

    p = subparsers.add_parser('analyze', help='Invariants of a complex')
    p.add_argument('file', help='.scx file')
    p.set_defaults(handler=analyze)

    p = subparsers.add_parser('tolerance', help='Build the t-tolerance complex')
    p.add_argument('file', help='.scx file')
    p.add_argument('-t', type=int, required=True, help='tolerance')
    p.add_argument('-o', '--output', help='write the result as .scx instead of printing it')
    p.set_defaults(handler=tolerance)

    p = subparsers.add_parser('collapse', help='Decide d-collapsibility')
    p.add_argument('file', help='.scx file')
    p.add_argument('--d', type=int, help='collapse dimension (default: report the collapsibility number)')
    p.add_argument('--certificate', help='write the collapse sequence as JSON')
    p.set_defaults(handler=collapse)

    p = subparsers.add_parser('leray', help='Leray number or d-Leray decision')
    p.add_argument('file', help='.scx file')
    p.add_argument('--d', type=int, help='decide d-Leray instead of computing the number')
    p.set_defaults(handler=leray)


def analyze(args) -> Tuple[Dict, int]:
    """Analyze one .scx file"""
    K = read_scx(args.file)
    report: AnalyzeReport = {
        'status': 'success',
        'void': K.is_void,
        'ambient': ids_from_mask(K.ambient),
        'maximal_faces': _faces_as_lists(K.maximal_faces),
        'dim': None,
        'face_counts': [],
        'betti': {},
        'helly_number': None,
        'leray_number': None,
        'collapsibility_number': 0,
        'missing_faces': [],
    }
    if not K.is_void:
        L, _ = leray_witness(K, force=args.force)
        report.update({
            'dim': K.dim,
            'face_counts': K.face_counts(),
            'betti': betti_numbers(K).as_dict(highest=K.dim),
            'helly_number': helly_number(K),
            'leray_number': L,
            'collapsibility_number': collapsibility_number(K),
            'missing_faces': _faces_as_lists(missing_faces(K)),
        })
    validate_report(report, AnalyzeReport)
    return report, EXIT_OK


def tolerance(args) -> Tuple[Dict, int]:
    K = read_scx(args.file)
    T = tolerance_complex(K, args.t)
    report = {'status': 'success', 't': args.t, 'maximal_faces': _faces_as_lists(T.maximal_faces)}
    if args.output:
        write_scx(T, args.output, comments=[f"T_{args.t} of {args.file}"])
        report['output'] = args.output
    else:
        report['scx'] = format_scx(T)
    return report, EXIT_OK


def collapse(args) -> Tuple[Dict, int]:
    K = read_scx(args.file)
    d = args.d if args.d is not None else collapsibility_number(K)
    ok, steps = is_d_collapsible(K, d)
    report: CollapseReport = {
        'status': 'success',
        'd': d,
        'collapsible': ok,
        'certificate': certificate_to_json(steps) if ok else None,
    }
    if ok and args.certificate:
        write_certificate(steps, args.certificate)
    validate_report(report, CollapseReport)
    return report, EXIT_OK


def leray(args) -> Tuple[Dict, int]:
    K = read_scx(args.file)
    report: LerayReport = {'status': 'success', 'leray_number': None, 'd': args.d, 'is_leray': None,
                           'witness': None}
    if args.d is None:
        L, U = leray_witness(K, force=args.force)
        report['leray_number'] = L
        if U is not None:
            report['witness'] = {'subset': ids_from_mask(U), 'dimension': L - 1}
    else:
        ok, witness = is_d_leray(K, args.d, force=args.force)
        report['is_leray'] = ok
        if witness is not None:
            report['witness'] = {'subset': ids_from_mask(witness[0]), 'dimension': witness[1]}
    validate_report(report, LerayReport)
    return report, EXIT_OK


# ============================================================================
# Bounds and hypergraphs
# ============================================================================

def register_bounds_commands(subparsers):
    """Register bounds and cover"""
    debug("Registering bounds commands")

    p = subparsers.add_parser('bounds', help='Bound functions h, eta, Tuza')
    p.add_argument('function', choices=['h', 'eta', 'tuza'])
    p.add_argument('first', type=int, help='t for h, r for eta and tuza')
    p.add_argument('second', type=int, help='d for h, t for eta and tuza')
    p.add_argument('--brute-force', action='store_true', help='eta only: also run the guard-railed search')
    p.add_argument('--n-max', type=int, default=8, help='largest vertex count of the eta search')
    p.set_defaults(handler=bounds)

    p = subparsers.add_parser('cover', help='Covering number of a uniform hypergraph')
    p.add_argument('file', help='.hg file')
    p.set_defaults(handler=cover)


def bounds(args) -> Tuple[Dict, int]:
    a, b = args.first, args.second
    brute = None
    if args.function == 'h':
        value = h_value(a, b)
    elif args.function == 'eta':
        value = eta_closed(a, b)
        if args.brute_force:
            brute = eta_bruteforce(a, b, args.n_max)
    else:
        value = tuza_upper(a, b)
    report: BoundsReport = {
        'status': 'success',
        'function': args.function,
        'arguments': [a, b],
        'value': value,
        'brute_force': brute,
    }
    if value is None:
        report['message'] = f"no closed form for eta({a}, {b})"
    validate_report(report, BoundsReport)
    return report, EXIT_OK


def cover(args) -> Tuple[Dict, int]:
    H = read_hg(args.file)
    best = minimum_cover(H)
    report: CoverReport = {
        'status': 'success',
        'vertices': H.n,
        'edges': len(H.edges),
        'covering_number': popcount(best),
        'cover': ids_from_mask(best),
    }
    validate_report(report, CoverReport)
    return report, EXIT_OK


# ============================================================================
# Geometry
# ============================================================================

def register_geometry_commands(subparsers):
    """Register nerve and gen"""
    debug("Registering geometry commands")

    p = subparsers.add_parser('nerve', help='Nerve of a box family')
    p.add_argument('file', help='.boxes file')
    p.add_argument('-o', '--output', help='write the nerve as .scx')
    p.set_defaults(handler=nerve)

    p = subparsers.add_parser('gen', help='Generate instances')
    gen_sub = p.add_subparsers(dest='kind', required=True)
    g = gen_sub.add_parser('two-block', help='two disjoint (t+1)-blocks on 2t+2 vertices')
    g.add_argument('t', type=int)
    g.add_argument('-o', '--output')
    g.set_defaults(handler=gen_two_block)
    g = gen_sub.add_parser('boxes', help='random boxes with integer corners')
    g.add_argument('--d', type=int, required=True)
    g.add_argument('--n', type=int, required=True)
    g.add_argument('--coord-range', type=int, default=10)
    g.add_argument('--classes', type=int, help='color the boxes round-robin with this many classes')
    g.add_argument('--planted', type=float, metavar='STRAY',
                   help='put all but a STRAY share of the boxes through one random point')
    g.add_argument('-o', '--output')
    g.set_defaults(handler=gen_boxes)


def nerve(args) -> Tuple[Dict, int]:
    family = read_boxes(args.file)
    N = nerve_of_boxes(family)
    report: NerveReport = {
        'status': 'success',
        'members': len(family),
        'maximal_faces': _faces_as_lists(N.maximal_faces),
        'helly_number': helly_number(N),
    }
    if args.output:
        write_scx(N, args.output, comments=[f"nerve of {args.file}"])
    validate_report(report, NerveReport)
    return report, EXIT_OK


def _emit_text(text: str, output: Optional[str]) -> Dict:
    if output:
        with open(output, 'w', encoding='utf-8') as f:
            f.write(text)
        return {'status': 'success', 'output': output}
    return {'status': 'success', 'text': text}


def gen_two_block(args) -> Tuple[Dict, int]:
    return _emit_text(format_scx(two_block_complex(args.t)), args.output), EXIT_OK


def gen_boxes(args) -> Tuple[Dict, int]:
    if args.planted is not None:
        family = planted_colored_boxes(args.d, args.n, args.classes or 1, seed=args.seed,
                                       coord_range=args.coord_range, stray=args.planted)
    elif args.classes is not None:
        family = random_colored_boxes(args.d, args.n, args.classes, seed=args.seed, coord_range=args.coord_range)
    else:
        family = random_boxes(args.d, args.n, seed=args.seed, coord_range=args.coord_range)
    return _emit_text(format_boxes(family), args.output), EXIT_OK


# ============================================================================
# Colorful Helly
# ============================================================================

def register_colorful_commands(subparsers):
    """Register colorful verify"""
    debug("Registering colorful commands")

    p = subparsers.add_parser('colorful', help='Colorful Helly verification')
    colorful_sub = p.add_subparsers(dest='action', required=True)
    v = colorful_sub.add_parser('verify', help='search a face s with rho(V - s) within the bound')
    v.add_argument('file', help='.scx file')
    v.add_argument('--classes', required=True, help='classes JSON')
    v.add_argument('--mode', choices=BOUND_MODES, default='plain')
    v.add_argument('-t', type=int, default=None, help='tolerance (default: 0 for plain, 1 otherwise)')
    v.add_argument('--d', type=int, default=None,
                   help='Leray (plain) or collapsibility dimension (default: computed from K)')
    v.add_argument('--assume', action='store_true', help='skip the precondition checks')
    v.set_defaults(handler=colorful_verify)


def colorful_verify(args) -> Tuple[Dict, int]:
    K = read_scx(args.file)
    M = PartitionMatroid(read_classes(args.classes))
    t = args.t if args.t is not None else (0 if args.mode == 'plain' else 1)
    if args.mode == 'plain':
        d = args.d if args.d is not None else leray_witness(K, force=args.force)[0]
        witness = verify_topological_colorful_helly(K, M, d, assume=args.assume, force=args.force)
        bound = d
    else:
        if args.d is not None:
            d = args.d
        elif args.mode == 'd2t1':
            d = 2
        else:
            d = max(collapsibility_number(K), 1)
        witness, bound = verify_tolerant_colorful(K, M, t, d, args.mode, assume=args.assume)
    report: ColorfulReport = {
        'status': 'success' if witness is not None else 'fail',
        'mode': args.mode,
        't': t,
        'd': d,
        'bound': bound,
        'witness': ids_from_mask(witness) if witness is not None else None,
        'falsified': witness is None,
    }
    validate_report(report, ColorfulReport)
    return report, EXIT_OK if witness is not None else EXIT_FAIL


# ============================================================================
# Verification suites
# ============================================================================

def register_verify_commands(subparsers):
    """Register verify"""
    debug("Registering verify commands")

    p = subparsers.add_parser('verify', help='Run a verification suite')
    p.add_argument('suite', nargs='?', help='suite name (see --list)')
    p.add_argument('--list', action='store_true', help='list suites and exit')
    p.add_argument('--t', type=int, help='run only this tolerance')
    p.add_argument('--d', type=int, help='fix the collapse dimension where the suite takes one')
    p.add_argument('--n-max', type=int, help='largest vertex count of generated complexes')
    p.add_argument('--workers', type=int, help='thread pool size for trials')
    p.add_argument('--dump-dir', help='counterexample directory')
    p.set_defaults(handler=verify)


def verify(args) -> Tuple[Dict, int]:
    if args.list or not args.suite:
        return {'status': 'success', 'suites': list_suites()}, EXIT_OK
    params = {
        't_values': [args.t] if args.t is not None else None,
        'd': args.d,
        'n_max': args.n_max,
    }
    report = run_suite(args.suite, seed=args.seed, trials=args.trials, params=params, workers=args.workers,
                       dump_dir=args.dump_dir)
    return report, EXIT_OK if report['status'] == 'success' else EXIT_FAIL


# ============================================================================
# Entry point
# ============================================================================

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog='tolkit', description='Exact toolkit for tolerance complexes')
    parser.add_argument('--version', action='version', version=get_display_version())
    parser.add_argument('--json', action='store_true', help='print reports as JSON')
    parser.add_argument('--seed', type=int, help='random seed (default: settings default_seed)')
    parser.add_argument('--trials', type=int, help='trial count for verify')
    parser.add_argument('--force', action='store_true', help='override vertex caps')
    subparsers = parser.add_subparsers(dest='command', required=True)
    register_complex_commands(subparsers)
    register_bounds_commands(subparsers)
    register_geometry_commands(subparsers)
    register_colorful_commands(subparsers)
    register_verify_commands(subparsers)
    return parser


def _hoist_global_flags(argv: List[str]) -> List[str]:
    """Allow global flags after the subcommand (verify thm1.5 --seed 7 --json)"""
    flags_with_value = {'--seed', '--trials'}
    flags = {'--json', '--force'}
    front, rest = [], []
    i = 0
    while i < len(argv):
        arg = argv[i]
        if arg in flags:
            front.append(arg)
        elif arg in flags_with_value and i + 1 < len(argv):
            front.extend([arg, argv[i + 1]])
            i += 1
        elif arg.split('=', 1)[0] in flags_with_value:
            front.append(arg)
        else:
            rest.append(arg)
        i += 1
    return front + rest


def _print_text(report: Dict):
    for key in sorted(report):
        value = report[key]
        if key in ('scx', 'text'):
            print(value, end='')
        elif key == 'suites':
            for entry in value:
                print(f"{entry['name']:20} {entry['description']}")
        elif key == 'failures':
            for failure in value:
                print(f"  trial {failure['trial']}: {failure['detail']}"
                      + (f" -> {failure['counterexample']}" if failure.get('counterexample') else ''))
        else:
            print(f"{key}: {value}")


def main(argv: Optional[List[str]] = None) -> int:
    """Run one command; returns the process exit code"""
    parser = build_parser()
    try:
        args = parser.parse_args(_hoist_global_flags(list(sys.argv[1:] if argv is None else argv)))
    except SystemExit as e:
        # argparse exits 0 for --help/--version and 2 for usage errors
        return int(e.code or 0)

    info("Command %s", args.command)
    try:
        report, code = args.handler(args)
    except ToolkitError as e:
        report, code = create_error_report(safe_error_response(e), e.error_code), EXIT_USAGE
    except OSError as e:
        report, code = create_error_report(safe_error_response(e, "file error"), 'io_error'), EXIT_USAGE
    except Exception as e:
        exception("Command %s crashed: %s", args.command, str(e))
        report, code = create_error_report(safe_error_response(e), 'internal_error'), EXIT_INTERNAL

    if args.json:
        print(json.dumps(report, indent=2, sort_keys=True))
    else:
        _print_text(report)
    return code


if __name__ == '__main__':
    sys.exit(main())
