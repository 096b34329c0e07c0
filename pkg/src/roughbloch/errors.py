"""Exception types shared across the package."""


class SingularMapError(ValueError):
    """The surface flattening map is not a diffeomorphism (det grad <= 0)."""


class ZeroPivotError(ArithmeticError):
    """ILU(0) hit a zero pivot; carries the block index and row."""

    def __init__(self, block: int, row: int):
        self.block = block
        self.row = row
        super().__init__(f"zero pivot in ILU(0): block {block}, row {row}")


class ConfigError(ValueError):
    """Configuration text failed to parse or validate."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class StageError(RuntimeError):
    """Pipeline failure annotated with the stage that raised it."""

    def __init__(self, stage: str, cause: Exception):
        self.stage = stage
        self.cause = cause
        super().__init__(f"stage '{stage}': {cause}")


class WoodAnomalyWarning(UserWarning):
    """A Rayleigh wavenumber is numerically at cutoff (beta ~ 0)."""
