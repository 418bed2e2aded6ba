"""Exception hierarchy shared by every rckit module.

All exceptions raised deliberately by the library derive from RCKitError so
callers (and the CLI) can separate usage errors from genuine bugs.
"""

from __future__ import annotations


class RCKitError(Exception):
    """Base class for all rckit errors."""


class NonPrimeCharacteristic(RCKitError):
    """Field construction was asked for a composite characteristic."""


class OrderCapExceeded(RCKitError):
    """Requested field order is above the configured cap."""


class DivisionByZero(RCKitError, ZeroDivisionError):
    """Multiplicative inverse of zero was requested."""


class MixedFields(RCKitError):
    """Two operands live in different fields."""


class CharacteristicMismatch(RCKitError):
    """Operation requires a specific characteristic (usually 2)."""


class ShapeMismatch(RCKitError):
    """Matrix/vector dimensions are incompatible."""


class AmbientMismatch(RCKitError):
    """Operands live in different ambient coordinate spaces."""


class MatrixNotInAmbient(RCKitError):
    """A matrix does not satisfy the structural constraints of an ambient."""


class EnumerationCapExceeded(RCKitError):
    """A subspace enumeration would produce more cases than the cap allows."""


class DomainTooLarge(RCKitError):
    """An exhaustive walk over a space's elements would exceed the cap."""


class NotInDomain(RCKitError):
    """A map was evaluated at a matrix outside its domain space."""


class IllDefined(RCKitError):
    """A quotient map does not descend (it fails to vanish where it must)."""


class BadParams(RCKitError):
    """Builder or suite parameters are out of the supported range."""
