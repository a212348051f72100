# vcm/exceptions.py
"""
Domain errors. The CLI maps every VcmError to exit code 1.
"""
from typing import Optional


class VcmError(Exception):
    """Base class for all voting-committee errors"""


class DimensionError(VcmError, ValueError):
    """Sizes of two inputs do not agree (weights vs committee, rule vs committee, ...)"""


class RangeError(VcmError, ValueError):
    """A count or index lies outside its admissible range"""


class UnknownRuleError(VcmError, ValueError):
    """A rule name that is not recognised"""


class DecisionRuleError(VcmError, ValueError):
    """A decision rule cannot be built or used for the requested purpose"""


class ProfileFormatError(VcmError, ValueError):
    """Malformed profile text"""

    def __init__(self, message: str, line_number: Optional[int] = None):
        self.line_number = line_number
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)


class PreflibParseError(ProfileFormatError):
    """Malformed PrefLib strict-order text"""


class GuardExceededError(VcmError, RuntimeError):
    """An exhaustive enumeration would exceed its configured size guard"""

    def __init__(self, what: str, size: int, guard: int):
        self.size = size
        self.guard = guard
        super().__init__(f"{what}: {size} exceeds the enumeration guard of {guard}")


class DatasetFilteredError(VcmError, ValueError):
    """Dataset is below the voter/candidate thresholds of the real-data pipeline"""


class ExperimentConfigError(VcmError, ValueError):
    """Experiment configuration is inconsistent"""
