"""Error taxonomy shared across the package (CLI exit codes hang off it)."""


class EIQuiverError(Exception):
    """Base class for all package errors."""


class SchemaError(EIQuiverError):
    """Malformed input document (bad JSON shape, missing keys, bad types)."""


class ValidationError(EIQuiverError):
    """A category axiom fails; carries a machine-readable finding code."""

    def __init__(self, finding: str, message: str):
        self.finding = finding
        super().__init__(f"{finding}: {message}")


class InvariantError(EIQuiverError):
    """A theory-level invariant failed; indicates a bug, not bad input."""


class OracleMismatch(EIQuiverError):
    """Independent oracle disagrees with the primary computation."""
