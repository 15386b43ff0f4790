"""Exception types shared across the toolkit."""


class AlcsimError(Exception):
    """Base class for all errors raised by this package."""


class UnsupportedNegation(AlcsimError):
    """Negating an at-least restriction with n >= 2 is not supported.

    The constructor set has no at-most restriction, so such a negation
    cannot be expressed; callers get a hard error instead of a silent
    approximation.
    """


class CyclicTBox(AlcsimError):
    """A concept definition is (directly or indirectly) self-referential."""

    def __init__(self, cycle: tuple[str, ...]):
        self.cycle = cycle
        super().__init__("cyclic definitions: " + " -> ".join(cycle))


class UnknownIndividual(AlcsimError):
    """An individual name does not occur in the knowledge base."""

    def __init__(self, name: str):
        self.name = name
        super().__init__(f"unknown individual: {name}")


class CardinalityViolation(AlcsimError):
    """Intersection cardinality exceeds one of the operand cardinalities."""
