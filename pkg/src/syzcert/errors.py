"""Exception hierarchy shared by every module of the package."""


class SyzCertError(Exception):
    """Base class for all errors raised by syzcert."""


class PolySyntaxError(SyzCertError, ValueError):
    """Polynomial text does not follow the grammar."""


class NotHomogeneous(SyzCertError, ValueError):
    pass


class DegreeMismatch(SyzCertError, ValueError):
    pass


class BadRange(SyzCertError, ValueError):
    pass


class BadPrime(SyzCertError, ValueError):
    pass


class NotASyzygy(SyzCertError, ValueError):
    pass


class DegreeSumMismatch(SyzCertError, ValueError):
    pass


class NonTrivialityError(SyzCertError, ValueError):
    """An all-zero coefficient triple was passed where a relation is expected."""


class NonStabilized(SyzCertError, ArithmeticError):
    """The Hilbert function tail did not settle before the scan cap."""


class NotReduced(SyzCertError, ValueError):
    pass


class DuplicateLine(SyzCertError, ValueError):
    pass


class BadParams(SyzCertError, ValueError):
    """Family parameters outside the admissible range."""


class UnrecognizedFamily(SyzCertError, ValueError):
    pass


class ArrangementFormatError(SyzCertError, ValueError):
    pass
