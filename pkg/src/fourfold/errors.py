"""Exception hierarchy shared by all fourfold modules."""


class FourfoldError(Exception):
    """Base class for every error raised by this package."""


class DomainError(FourfoldError, ValueError):
    """A parameter lies outside the domain of an operation (e.g. n < 2)."""


class DimensionError(FourfoldError, ValueError):
    """Two lattice classes do not live in the same lattice."""


class ValidationError(FourfoldError, ValueError):
    """A structure fails one of its declared invariants."""


class StructuralError(FourfoldError, ValueError):
    """A construction cannot be applied to the given manifold expression."""


class ParityError(StructuralError):
    """A free quotient was requested of a manifold with odd Euler characteristic or signature."""


class UnsupportedError(FourfoldError):
    """The request leaves the supported class (fundamental group 1 or Z/2)."""


class NoCoverError(FourfoldError):
    """A universal double cover was requested of a simply connected manifold."""


class RewriteNotApplicable(FourfoldError):
    """The Z0/Z1 exchange needs a CP2bar summand next to the quotient summand."""


class ParseError(FourfoldError):
    """Syntax error in a manifold expression; carries the byte offset and expected tokens."""

    def __init__(self, message, offset, expected=()):
        self.offset = offset
        self.expected = frozenset(expected)
        exp = ", ".join(sorted(self.expected))
        detail = f" (expected one of: {exp})" if exp else ""
        super().__init__(f"{message} at offset {offset}{detail}")


class SemanticError(FourfoldError):
    """A well-formed expression carries an illegal parameter, e.g. E(0)."""


class ScenarioError(FourfoldError):
    """Unknown theorem scenario or parameters outside its bounds."""
