"""Exception hierarchy shared by the library and the command-line front end."""


class WadfError(Exception):
    """Base class for every error raised by this package."""

    exit_code = 1
    kind = "error"


class ValidationError(WadfError):
    """Malformed input: bad syntax, unknown atoms, foreign constants and so on.

    ``issues`` holds the itemized report; the message joins them.
    """

    exit_code = 2
    kind = "validation"

    def __init__(self, issues):
        if isinstance(issues, str):
            issues = [issues]
        self.issues = list(issues)
        super().__init__("; ".join(str(i) for i in self.issues))


class ParseError(ValidationError):
    kind = "parse"

    def __init__(self, message, line=None, column=None):
        self.message = message
        self.line = line
        self.column = column
        where = []
        if line is not None:
            where.append(f"line {line}")
        if column is not None:
            where.append(f"col {column}")
        text = f"{message} ({', '.join(where)})" if where else message
        super().__init__(text)


class StructureError(ValidationError):
    kind = "structure"


class UnsupportedError(WadfError):
    """The requested operation is not available for this structure or engine."""

    exit_code = 3
    kind = "unsupported"


class BudgetExceeded(WadfError):
    exit_code = 4
    kind = "budget"

    def __init__(self, required, budget, what="completions"):
        self.required = required
        self.budget = budget
        super().__init__(f"{what} budget exceeded: need {required}, budget is {budget}")


class NotConvergedError(WadfError):
    exit_code = 5
    kind = "not-converged"
