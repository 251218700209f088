"""Exception hierarchy shared by all modules."""


class BlowupCyclesError(Exception):
    """Base class for all errors raised by this package."""


class InvalidAmbient(BlowupCyclesError):
    """Malformed blow-up model parameters (n, r, configuration tag)."""


class InvalidClass(BlowupCyclesError):
    """Cycle class with inconsistent dimension or coefficient length."""


class AmbientMismatch(BlowupCyclesError):
    """Operation on classes living on different blow-up models."""


class InvalidDims(BlowupCyclesError):
    """Operation applied to classes of the wrong dimensions."""


class InvalidIndexPair(BlowupCyclesError):
    """Line through a pair of points requires two distinct indices."""


class NotInCone(BlowupCyclesError):
    """Greedy decomposition requested for a vector outside the cone.

    Carries the violated inequality as ``violation``.
    """

    def __init__(self, violation):
        self.violation = violation
        super().__init__(str(violation))


class NotAConeClass(BlowupCyclesError):
    """Hyperplane section requested for a class whose vertex multiplicity differs from its degree."""


class NotEffectiveShape(BlowupCyclesError):
    """Vertex multiplicity outside [0, degree]; no effective split exists."""


class NoCremonaRoot(BlowupCyclesError):
    """The degree-type reflection needs at least n+1 blown-up points."""


class NoTShape(BlowupCyclesError):
    """The T-shaped Coxeter diagram needs r >= n+2."""


class InvalidQuery(BlowupCyclesError):
    """Generation-status query with out-of-range parameters."""


class UnknownClass(BlowupCyclesError):
    """Unknown name passed to the named-class catalog."""


class ClassSyntaxError(BlowupCyclesError):
    """Syntax error in the textual class grammar.

    ``position`` is the character offset of the offending token.
    """

    def __init__(self, message, position=None):
        self.position = position
        self.message = message
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
