"""Exception hierarchy.

The CLI maps these to exit codes: :class:`WldlSyntaxError` and
:class:`UsageError` to 1, :class:`SemanticError` to 2,
:class:`StateBudgetExceeded` to 3.
"""


class WldlError(Exception):
    pass


class UsageError(WldlError, ValueError):
    pass


class SemiringMismatch(UsageError):
    pass


class WldlSyntaxError(WldlError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.message = message
        self.line = line
        self.column = column
        where = f"line {line}, column {column}: " if line is not None else ""
        super().__init__(where + message)


class WeightSyntaxError(WldlSyntaxError):
    pass


class SemanticError(WldlError):
    pass


class ImproperIteration(SemanticError):
    """An iteration body whose value on the empty word is nonzero."""

    def __init__(self, body, text: str | None = None):
        self.body = body
        self.text = text
        super().__init__(f"improper iteration body ({text if text is not None else body})")


class ImproperPlus(ImproperIteration):
    pass


class NonCommutativeHadamard(SemanticError):
    pass


class NotAField(SemanticError):
    pass


class NotIdempotent(SemanticError):
    pass


class UnsupportedOmegaSemiring(SemanticError):
    pass


class StateBudgetExceeded(WldlError):
    def __init__(self, limit: int):
        self.limit = limit
        super().__init__(
            f"state budget exceeded (limit {limit}); raise it with --max-states"
        )
