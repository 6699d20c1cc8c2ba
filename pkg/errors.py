"""
Exception types shared by all toolkit modules.

Every error carries an error_code so the command-line front end can build a
standardized error report (see report_schemas.create_error_report).
"""


class ToolkitError(Exception):
    """Base class for all toolkit errors"""
    error_code = 'toolkit_error'


class InputError(ToolkitError, ValueError):
    """Invalid argument: face outside the ambient set, face not in the complex, bad parameter"""
    error_code = 'input_error'


class ParseError(InputError):
    """Malformed .scx / .hg / .boxes / classes file"""
    error_code = 'parse_error'

    def __init__(self, message, line_number=None, source=None):
        self.line_number = line_number
        self.source = source
        location = ''
        if source:
            location += f"{source}:"
        if line_number is not None:
            location += f"{line_number}:"
        super().__init__(f"{location} {message}" if location else message)


class GuardRailError(InputError):
    """Input refused by a configured guard rail (vertex caps, brute-force domains)"""
    error_code = 'guard_rail'


class PreconditionError(InputError):
    """Theorem preconditions could not be verified for a colorful verification"""
    error_code = 'precondition'
