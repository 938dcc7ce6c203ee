"""Exception hierarchy shared by every engine module."""

from __future__ import annotations


class GrasscharError(Exception):
    """Base class for all errors raised by the package."""


class ParseError(GrasscharError, ValueError):
    pass


class IncompatibleMonomials(GrasscharError, ArithmeticError):
    """Raised when adding scalars with different radicand or power of pi."""


class DivisionByZero(GrasscharError, ZeroDivisionError):
    pass


class OddRankNoEuler(GrasscharError):
    pass


class NotExpressible(GrasscharError):
    pass


class NotTopDegree(GrasscharError):
    pass


class NotHomogeneous(GrasscharError):
    pass


class StarUndefined(GrasscharError):
    pass


class SingularGram(GrasscharError):
    pass


class SingularPairing(GrasscharError):
    pass


class UnderdeterminedPairing(GrasscharError):
    pass


class RewriteDiverged(GrasscharError):
    pass


class InvalidDescriptor(GrasscharError):
    pass


class UnknownEntity(GrasscharError, KeyError):
    """Base for lookups of names the catalog does not know."""

    def __str__(self) -> str:  # KeyError quotes its message otherwise
        return str(self.args[0]) if self.args else ""


class UnknownManifold(UnknownEntity):
    pass


class UnknownRelation(UnknownEntity):
    pass


class UnsupportedTarget(UnknownEntity):
    pass


class NoDataForDegree(UnknownEntity):
    pass


class Infeasible(GrasscharError):
    pass


class CatalogError(GrasscharError):
    """A catalog document failed to load or validate."""
