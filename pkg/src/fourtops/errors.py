"""Exception types shared across the package."""


class FourtopsError(Exception):
    """Base class for all errors raised by this package."""


class UnknownPoint(FourtopsError):
    """A point identifier is not part of the poset."""


class CycleError(FourtopsError):
    """The generating arrows contain a directed cycle."""


class NotDownClosed(FourtopsError):
    """A set of points is not closed under going below."""


class NotElement(FourtopsError):
    """A down-set does not belong to the algebra it is used with."""


class SizeCapExceeded(FourtopsError):
    """An exhaustive operation was asked to run beyond its size cap."""


class UnknownElement(FourtopsError):
    """An element label is not present in the named component."""


class FunctorialityError(FourtopsError):
    """Restriction maps are not path-independent or not total."""


class NaturalityError(FourtopsError):
    """A component family does not commute with restriction."""


class NotMonic(FourtopsError):
    """A morphism expected to be componentwise injective is not."""


class NotInclusion(FourtopsError):
    """A morphism expected to have identity components does not."""


class NotSubterminal(FourtopsError):
    """A presheaf has a component with more than one element."""


class ShapeMismatch(FourtopsError):
    """Domains or codomains do not line up for the requested operation."""


class InvalidNucleus(FourtopsError):
    """A table on the down-set algebra fails the nucleus axioms."""


class InvalidTopology(FourtopsError):
    """A per-point structure fails its topology axioms."""


class IncoherentQuad(FourtopsError):
    """The four structures of a quadruple disagree with each other."""


class ParseError(FourtopsError):
    """Input text does not match the grammar."""

    def __init__(self, message, line=None, column=None):
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)
        self.line = line
        self.column = column
