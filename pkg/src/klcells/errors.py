"""Exception hierarchy shared by every module.

Each error carries a stable machine-readable ``code`` (used verbatim in CLI
JSON error output) and an ``exit_status`` for the command-line surface:

    0  success
    2  usage / bad input (parse errors, group mismatches, invalid indices)
    3  TruncationInsufficient -- a ball bound was too small to certify
    4  ResourceLimit -- an element cap or size bound was exceeded
    5  internal invariant violation (failed exact division, corrupt cache)
"""


class KLCellsError(Exception):
    code = "Error"
    exit_status = 5

    def __init__(self, message=""):
        super().__init__(message)
        self.message = message


class ParseError(KLCellsError):
    code = "ParseError"
    exit_status = 2


class IndexOutOfRange(KLCellsError):
    code = "IndexOutOfRange"
    exit_status = 2


class GroupMismatch(KLCellsError):
    code = "GroupMismatch"
    exit_status = 2


class UnsupportedFamily(KLCellsError):
    code = "UnsupportedFamily"
    exit_status = 2


class InfiniteParabolic(KLCellsError):
    code = "InfiniteParabolic"
    exit_status = 2


class SizeMismatch(KLCellsError):
    code = "SizeMismatch"
    exit_status = 2


class ShapeMismatch(KLCellsError):
    code = "ShapeMismatch"
    exit_status = 2


class ResourceLimit(KLCellsError):
    code = "ResourceLimit"
    exit_status = 4


class TruncationInsufficient(KLCellsError):
    code = "TruncationInsufficient"
    exit_status = 3


class SolveFailure(KLCellsError):
    code = "SolveFailure"
    exit_status = 5


class DivisionFailure(KLCellsError):
    code = "DivisionFailure"
    exit_status = 5


class IoFailure(KLCellsError):
    code = "IoFailure"
    exit_status = 5


class FormatViolation(KLCellsError):
    code = "FormatViolation"
    exit_status = 5


class InvariantViolation(KLCellsError):
    code = "InvariantViolation"
    exit_status = 5
