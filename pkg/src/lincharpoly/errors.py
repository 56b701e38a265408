"""Exception hierarchy shared by every module of the package."""


class LinCharpolyError(ValueError):
    """Base class for all errors raised by lincharpoly."""


class NotPrime(LinCharpolyError):
    pass


class NotIrreducible(LinCharpolyError):
    pass


class DegreeMismatch(LinCharpolyError):
    pass


class NotInTower(LinCharpolyError):
    pass


class ZeroTower(LinCharpolyError):
    pass


class FieldTooSmall(LinCharpolyError):
    pass


class FieldMismatch(LinCharpolyError):
    pass


class DivisionByZero(LinCharpolyError, ZeroDivisionError):
    pass


class DuplicateAbscissa(LinCharpolyError):
    pass


class TooFewPoints(LinCharpolyError):
    pass


class NotMonic(LinCharpolyError):
    pass


class DegreeTooLarge(LinCharpolyError):
    pass


class InsufficientTerms(LinCharpolyError):
    pass


class InsufficientSeeds(LinCharpolyError):
    pass


class Falsification(LinCharpolyError):
    """An internal consistency check failed (wrong recurrence, bad interpolant)."""


class NoRelation(Falsification):
    pass


class ParseError(LinCharpolyError):
    def __init__(self, msg, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + msg)


class InvalidInstance(LinCharpolyError):
    pass
