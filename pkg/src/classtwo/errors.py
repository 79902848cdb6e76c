"""Exception hierarchy shared by all modules."""


class ClassTwoError(ValueError):
    """Base class for every error raised by :mod:`classtwo`."""


class NonSquare(ClassTwoError):
    pass


class DimensionMismatch(ClassTwoError):
    pass


class NotAlternating(ClassTwoError):
    def __init__(self, message, block=None, row=None, col=None):
        super().__init__(message)
        self.block = block
        self.row = row
        self.col = col


class Decomposable(ClassTwoError):
    """The bracket does not span the centre, so the group splits off a factor."""


class OddK(ClassTwoError):
    pass


class OddDimension(ClassTwoError):
    pass


class RequiresRankTwoCenter(ClassTwoError):
    pass


class CenterRankUnsupported(ClassTwoError):
    pass


class ZeroForm(ClassTwoError):
    pass


class GroupMismatch(ClassTwoError):
    pass


class Incompatible(ClassTwoError):
    """A pair of linear maps does not commute with the brackets."""


class TooFewGenerators(ClassTwoError):
    pass


class GroupFileSyntaxError(ClassTwoError):
    def __init__(self, message, line, col):
        super().__init__(f"line {line}, column {col}: {message}")
        self.line = line
        self.col = col
