"""Exception types shared across the package."""


class SullivanError(Exception):
    """Base class for all structured errors raised by this package."""


class UnknownGenerator(SullivanError):
    pass


class AlgebraMismatch(SullivanError):
    pass


class IncompleteDerivation(SullivanError):
    pass


class IncompleteMorphism(SullivanError):
    pass


class InvalidDifferential(SullivanError):
    """A candidate differential does not square to zero.

    Carries the offending generator name and the nonzero value d(d(g)).
    """

    def __init__(self, generator: str, value) -> None:
        self.generator = generator
        self.value = value
        super().__init__(f"d² != 0 at generator {generator}: d(d({generator})) = {value}")


class SuspensionDegreeError(SullivanError):
    pass


class NameClash(SullivanError):
    pass


class NotDifferentialIdeal(SullivanError):
    def __init__(self, generator: str, residue) -> None:
        self.generator = generator
        self.residue = residue
        super().__init__(
            f"quotient differential does not square to zero at {generator}: residue {residue}"
        )


class ParityError(SullivanError):
    pass


class ZeroDivisor(SullivanError):
    def __init__(self, degree: int, element) -> None:
        self.degree = degree
        self.element = element
        super().__init__(f"multiplication by {element} is not injective in degree {degree}")


class WindowTooSmall(SullivanError):
    pass


class NotACocycle(SullivanError):
    pass


class NotApplicable(SullivanError):
    pass


class BasisSizeExceeded(SullivanError):
    def __init__(self, degree: int, size: int, cap: int) -> None:
        self.degree = degree
        self.size = size
        self.cap = cap
        super().__init__(f"monomial basis in degree {degree} has {size} elements, cap is {cap}")


class ModelFileError(SullivanError):
    """Syntax or consistency error in a model description file."""

    def __init__(self, message: str, line: int, column: int) -> None:
        self.line = line
        self.column = column
        super().__init__(f"line {line}, column {column}: {message}")


class PoleAtZero(SullivanError):
    pass


class RationalFormError(SullivanError):
    """Syntax error or non-integral expansion in a rational function input."""
