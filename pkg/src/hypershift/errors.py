"""Exception hierarchy. Everything raised on bad input derives from DomainError."""


class DomainError(ValueError):
    """Input violates a precondition of a symbolic-dynamics operation."""


class LiteralError(DomainError):
    """Malformed sequence literal, stream spec, matrix or set file."""


class AlphabetError(DomainError):
    """Unknown symbol, or words drawn from different alphabets."""


class EmptySubshiftError(DomainError):
    """Trimming removed every vertex: the shift space is empty."""


class CapExceededError(DomainError):
    """A configured size cap (matrix dimension, word count, horizon) was hit."""


class NotExactError(DomainError):
    """An exact-path operation received a generator (non eventually periodic) stream."""


class HorizonError(DomainError):
    """A stream was queried beyond the range where it is valid."""


class NoReturnPathError(DomainError):
    """No path closes a word into a periodic point."""


class WitnessNotFoundError(DomainError):
    """A witness search ended inside its bounds without success."""
