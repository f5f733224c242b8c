"""Exception hierarchy shared by every solver module."""


class OptiminError(Exception):
    """Base class for all errors raised by this library."""


class InvalidProfileError(OptiminError):
    """A strategy profile does not fit the game it was used with."""


class InvalidDistributionError(OptiminError):
    """A mixed strategy is not a probability distribution."""


class InvalidScaleError(OptiminError):
    """A payoff rescaling factor must be strictly positive."""


class UnsupportedArityError(OptiminError):
    """The operation is only defined for a specific player count."""


class EmptyInputError(OptiminError):
    """An operation that needs at least one element received none."""


class DomainError(OptiminError):
    """Input violates a mathematical precondition (infeasible, wrong sign, ...)."""


class ResourceLimitError(OptiminError):
    """The instance exceeds the documented enumeration bounds."""


class ConstraintError(OptiminError):
    """A constraint set required to be nonempty is empty."""


class ParameterError(OptiminError):
    """A generator parameter is outside its documented range."""


class UnsupportedFeatureError(OptiminError):
    """The requested variant is deliberately not implemented."""


class FormatError(OptiminError):
    """An input file is malformed; the message names the offending path."""
