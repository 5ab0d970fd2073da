"""Exception hierarchy.  ``exit_code`` is what the CLI returns for each class."""


class EnvradError(Exception):
    exit_code = 2


class ParseError(EnvradError):
    exit_code = 1

    def __init__(self, message, line=None, column=None, token=None):
        self.line, self.column, self.token = line, column, token
        where = f"line {line}, column {column}: " if line is not None else ""
        near = f" (at {token!r})" if token is not None else ""
        super().__init__(f"{where}{message}{near}")


class PreconditionError(EnvradError, ValueError):
    exit_code = 2


class ContextMismatch(PreconditionError):
    pass


class OracleMiss(EnvradError):
    """No decomposition is known for a module; ``module`` is the offending Submodule."""

    exit_code = 3

    def __init__(self, module):
        self.module = module
        lines = "\n".join(f"  {g}" for g in module.gb) or "  0"
        super().__init__(
            "no primary decomposition available for the submodule with reduced "
            f"Groebner basis:\n{lines}\nadd a fixture for it and rerun"
        )


class IterationLimit(EnvradError):
    exit_code = 4
