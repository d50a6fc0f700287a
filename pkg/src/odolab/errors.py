"""Exception hierarchy shared by every odolab module."""


class OdolabError(Exception):
    """Base class for all library errors."""


class InputError(OdolabError):
    """Malformed or inconsistent user input (maps to CLI exit code 1)."""


class ParseError(InputError):
    pass


class RangeError(InputError):
    pass


class DegreeMismatch(InputError):
    pass


class DegreeTooLarge(InputError):
    pass


class GroupTooLarge(InputError):
    pass


class NotASubgroup(InputError):
    pass


class NotAMember(InputError):
    pass


class AmbientMismatch(InputError):
    pass


class EmptyIndexSet(InputError):
    pass


class HomomorphismError(InputError):
    """Generator images violate a relation of the acting group."""


class NonMinimal(InputError):
    pass


class NotAnEigenvalue(InputError):
    pass


class NotAnEigenvalueAtBase(NotAnEigenvalue):
    pass


class TooManyPoints(InputError):
    pass


class HypothesisUnmet(InputError):
    def __init__(self, clause: str):
        super().__init__(f"hypothesis not met: {clause}")
        self.clause = clause


class NotNested(HypothesisUnmet):
    def __init__(self):
        super().__init__("Lambda is not contained in Gamma")


class BoundTooLarge(InputError):
    pass


class NotAScale(InputError):
    def __init__(self, pair: tuple[int, int]):
        super().__init__(f"members {pair[0]} and {pair[1]} have no lower bound in the family")
        self.pair = pair


class OracleDisagreement(OdolabError):
    """A decision procedure and its brute-force oracle returned different answers.

    This is a mathematical failure, not an input error (CLI exit code 2).
    """
