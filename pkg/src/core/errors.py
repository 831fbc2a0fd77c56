"""
Exception hierarchy for codedensity.

Library code raises these; only the CLI turns them into exit codes.
"""


class CodeDensityError(Exception):
    """Base class for all codedensity errors."""

    exit_code = 1


class ParameterError(CodeDensityError, ValueError):
    """A parameter tuple violates a documented constraint."""

    exit_code = 2


class NotPrimePowerError(ParameterError):
    """An operation that needs a finite field was given a non prime power."""

    def __init__(self, q: int):
        super().__init__(f"q={q} is not a prime power")
        self.q = q


class DegenerateAmbientError(ParameterError):
    """The ambient space is too small for the Omega denominators (M in {2, 3}, S >= 3)."""

    def __init__(self, ambient_size: int, S: int):
        super().__init__(
            f"degenerate ambient space: M={ambient_size} with S={S} "
            f"makes (M-2)(M-3) vanish"
        )
        self.ambient_size = ambient_size
        self.S = S


class InvalidProfileError(ParameterError):
    """An association profile failed validation."""

    def __init__(self, violations):
        super().__init__("invalid association profile: " + ", ".join(violations))
        self.violations = list(violations)


class WorkLimitExceeded(CodeDensityError):
    """An enumeration would exceed the configured work budget."""

    exit_code = 3

    def __init__(self, what: str, required: int, limit: int):
        super().__init__(
            f"{what} needs {required} units of work, limit is {limit}; "
            f"try `estimate` instead"
        )
        self.what = what
        self.required = required
        self.limit = limit
