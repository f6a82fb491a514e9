"""Exception hierarchy shared by every rankforge module."""


class RankforgeError(Exception):
    """Base class for all library errors."""


class ParameterError(RankforgeError, ValueError):
    """Invalid or infeasible parameters."""


class FieldMismatchError(ParameterError):
    """Operands live in different fields."""


class SingularMatrixError(RankforgeError, ArithmeticError):
    pass


class RankError(RankforgeError):
    """Input vectors are not linearly independent when they must be."""


class SamplingError(RankforgeError):
    """Rejection sampling did not succeed within its retry budget."""


class DecodingError(RankforgeError):
    """No codeword lies within the decoding radius."""


class DecryptionError(RankforgeError):
    pass


class NotGabidulinError(RankforgeError):
    """The Frobenius-expanded code does not have Gabidulin dimensions."""


class RecoveryError(RankforgeError):
    """A recovered Gabidulin generator failed verification."""


class AttackError(RankforgeError):
    pass


class DistinguisherFailure(AttackError):
    """The expanded public code has no one-dimensional dual at any tried index."""


class StructureError(AttackError):
    """The candidate column scrambler did not expose a Gabidulin code."""


class OracleError(AttackError):
    pass


class ParseError(RankforgeError):
    def __init__(self, message, *, line=None, section=None):
        where = []
        if section is not None:
            where.append(f"section {section!r}")
        if line is not None:
            where.append(f"line {line}")
        super().__init__(f"{message} ({', '.join(where)})" if where else message)
        self.line = line
        self.section = section


class CompatibilityError(RankforgeError):
    """Files belong to different fields or schemes."""
