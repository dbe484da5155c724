"""Exception hierarchy and process exit codes."""

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_VALIDATION = 3
EXIT_SIZE_LIMIT = 4
EXIT_PROPERTY = 5


class GsrecError(Exception):
    """Base class for all package errors."""

    exit_code = EXIT_VALIDATION


class ParseError(GsrecError):
    """Malformed job configuration or input document."""

    exit_code = EXIT_PARSE


class ValidationError(GsrecError):
    """Structurally well-formed input that violates a mathematical precondition."""

    exit_code = EXIT_VALIDATION


class SizeLimitError(GsrecError):
    """Requested computation exceeds a documented size limit."""

    exit_code = EXIT_SIZE_LIMIT


class PropertyFailure(GsrecError):
    """A checked mathematical property did not hold."""

    exit_code = EXIT_PROPERTY
