"""
Report Schemas

TypedDict schemas for every JSON document the command line prints or writes,
so report layouts stay stable across versions.

Usage:
    from report_schemas import AnalyzeReport, validate_report

    report = {
        'status': 'success',
        'dim': 2,
        # ... rest of data
    }

    # Optional validation (logs warnings, doesn't crash):
    validate_report(report, AnalyzeReport)
"""
from typing import Any, Dict, List, Literal, Optional, TypedDict

from logger import warning


# ============================================================================
# Common Report Types
# ============================================================================

class BaseReport(TypedDict, total=False):
    """Fields common to all reports"""
    status: Literal['success', 'error', 'fail']
    message: Optional[str]


class ErrorReport(TypedDict):
    """Standard error report"""
    status: Literal['error']
    message: str
    error_code: Optional[str]


# ============================================================================
# Complex Reports
# ============================================================================

class AnalyzeReport(BaseReport):
    """Invariants of one complex (analyze command)"""
    void: bool
    ambient: List[int]
    maximal_faces: List[List[int]]
    dim: Optional[int]
    face_counts: List[int]
    betti: Dict[str, int]
    helly_number: Optional[int]
    leray_number: Optional[int]
    collapsibility_number: Optional[int]
    missing_faces: List[List[int]]


class LerayReport(BaseReport):
    """leray command: number, or decision with witness when --d is given"""
    leray_number: Optional[int]
    d: Optional[int]
    is_leray: Optional[bool]
    witness: Optional[Dict[str, Any]]


class CertificateStep(TypedDict):
    """One elementary collapse"""
    sigma: List[int]
    unique_max: List[int]


class CollapseReport(BaseReport):
    """collapse command"""
    d: int
    collapsible: bool
    certificate: Optional[List[CertificateStep]]


class BoundsReport(BaseReport):
    """bounds command"""
    function: Literal['h', 'eta', 'tuza']
    arguments: List[int]
    value: Optional[int]
    brute_force: Optional[int]


class CoverReport(BaseReport):
    """cover command"""
    vertices: int
    edges: int
    covering_number: int
    cover: List[int]


class NerveReport(BaseReport):
    """nerve command"""
    members: int
    maximal_faces: List[List[int]]
    helly_number: Optional[int]


class ColorfulReport(BaseReport):
    """colorful verify command"""
    mode: str
    t: int
    d: int
    bound: int
    witness: Optional[List[int]]
    falsified: bool


class TrialRecord(TypedDict, total=False):
    """Outcome of one suite trial"""
    trial: int
    passed: bool
    skipped: bool
    detail: str
    counterexample: Optional[str]


class SuiteReport(BaseReport):
    """verify command"""
    suite: str
    seed: int
    trials: int
    valid: int
    drawn: int
    passed: int
    failed: int
    skipped: int
    failures: List[TrialRecord]
    notes: List[str]


# ============================================================================
# Helpers
# ============================================================================

def validate_report(data: Dict[str, Any], schema: type) -> bool:
    """
    Validate a report against its schema (non-blocking).

    Logs warnings for missing required fields but doesn't crash.

    Args:
        data: Report data to validate
        schema: TypedDict schema to validate against

    Returns:
        bool: True if valid, False if validation warnings logged
    """
    try:
        required = getattr(schema, '__required_keys__', frozenset())
        missing_fields = sorted(field for field in required if field not in data)

        if missing_fields:
            warning(f"Report missing fields for {schema.__name__}: {missing_fields}")
            return False

        return True

    except Exception as e:
        warning(f"Schema validation error for {schema.__name__}: {e}")
        return True  # Don't block on validation errors


def create_error_report(message: str, error_code: Optional[str] = None) -> ErrorReport:
    """
    Create standardized error report.

    Args:
        message: Human-readable error message
        error_code: Optional error code

    Returns:
        ErrorReport: Standardized error report
    """
    report: ErrorReport = {
        'status': 'error',
        'message': message
    }
    if error_code:
        report['error_code'] = error_code
    return report


__all__ = [
    'BaseReport',
    'ErrorReport',
    'AnalyzeReport',
    'LerayReport',
    'CertificateStep',
    'CollapseReport',
    'BoundsReport',
    'CoverReport',
    'NerveReport',
    'ColorfulReport',
    'TrialRecord',
    'SuiteReport',
    'validate_report',
    'create_error_report',
]
