"""
Module containing the wcurve exception and warning hierarchy.
"""

__all__ = [
    "WcurveError",
    "RingMismatch",
    "NotAUnit",
    "NotApproxIdempotent",
    "SNotTopologicallyNilpotent",
    "PrecisionInsufficient",
    "WindowTruncation",
    "RankMismatch",
    "ZeroAlgebra",
    "ZeroCoalgebra",
    "NotWeaklyCurved",
    "AxiomFailure",
    "EnumerationBudgetExceeded",
    "ManifestError",
    "ManifestSyntaxError",
    "ManifestSchemaError",
    "DanglingReference",
    "OutsideWindow",
    "TruncationWarning",
]


class WcurveError(Exception):
    """Base class of every error raised by wcurve."""


class RingMismatch(WcurveError, ValueError):
    """Operands live over different local rings."""


class NotAUnit(WcurveError, ArithmeticError):
    """Inversion of an element (or matrix) whose residue is not invertible."""


class NotApproxIdempotent(WcurveError, ValueError):
    """a² − a has an entry of valuation 0."""


class SNotTopologicallyNilpotent(WcurveError, ValueError):
    """The telescope scalar s is not in the maximal ideal."""


class PrecisionInsufficient(WcurveError):
    """A pivot reached valuation N inside a nonzero block."""


class WindowTruncation(WcurveError):
    """A computation needs data outside the materialized degree window."""

    def __init__(self, message: str, degrees=None):
        super().__init__(message)
        self.degrees = sorted(degrees) if degrees else []


class RankMismatch(WcurveError, ValueError):
    """Source and target ranks differ in some degree."""


class ZeroAlgebra(WcurveError, ValueError):
    """The unit of the algebra vanishes modulo the maximal ideal."""


class ZeroCoalgebra(WcurveError, ValueError):
    """The counit of the coalgebra vanishes modulo the maximal ideal."""


class NotWeaklyCurved(WcurveError, ValueError):
    """A curvature or change-of-connection term has a valuation-0 coefficient."""


class AxiomFailure(WcurveError):
    """An axiom check failed; the report holds the witnesses."""

    def __init__(self, report):
        failures = report.failures
        first = failures[0] if failures else {}
        super().__init__(f'{report.subject}: {len(failures)} axiom failure(s), '
                         f'first: {first.get("axiom")} at '
                         f'{first.get("witness")}')
        self.report = report


class EnumerationBudgetExceeded(WcurveError):
    """An exhaustive enumeration would exceed the configured budget."""


class ManifestError(WcurveError, ValueError):
    """Base class for manifest parsing errors."""

    def __init__(self, message: str, path: str = ''):
        super().__init__(f'{path}: {message}' if path else message)
        self.path = path


class ManifestSyntaxError(ManifestError):
    """The manifest is not valid JSON; path is 'line L, column C'."""


class ManifestSchemaError(ManifestError):
    """The manifest violates the schema; path is a dotted JSON path."""


class DanglingReference(ManifestError):
    """A manifest entry refers to an object that is not defined."""


class OutsideWindow(WcurveError, LookupError):
    """A structure constant was not materialized (window or weight cap)."""


class TruncationWarning(UserWarning):
    """A result was returned with unreliable edge degrees."""
