"""Exception hierarchy.

Every error carries an ``exit_code`` category used by the command-line
driver: 1 parse, 2 validation, 3 math, 4 assertion failure.
"""

PARSE = 1
VALIDATION = 2
MATH = 3
ASSERTION = 4


class QhwbError(Exception):
    exit_code = MATH


# -- parsing -----------------------------------------------------------------

class ParseError(QhwbError):
    exit_code = PARSE

    def __init__(self, message, line=0, column=0):
        super().__init__(message)
        self.message = message
        self.line = line
        self.column = column

    def __str__(self):
        return f"{self.line}:{self.column}: {self.message}"


class DslSyntaxError(ParseError):
    def __init__(self, line, column, expected, found=None):
        msg = f"expected {expected}"
        if found is not None:
            msg += f", found {found!r}"
        super().__init__(msg, line, column)
        self.expected = expected


class UnresolvedName(ParseError):
    pass


class DuplicateName(ParseError):
    pass


# -- validation ----------------------------------------------------------------

class ValidationError(QhwbError):
    exit_code = VALIDATION


class NotSquarefree(ValidationError):
    pass


class DimensionError(ValidationError):
    pass


class NotCommutative(ValidationError):
    def __init__(self, i, j):
        super().__init__(f"b{i}*b{j} != b{j}*b{i}")
        self.indices = (i, j)


class NotAssociative(ValidationError):
    def __init__(self, i, j, k):
        super().__init__(f"(b{i}*b{j})*b{k} != b{i}*(b{j}*b{k})")
        self.indices = (i, j, k)


class UnitAxiomFailed(ValidationError):
    def __init__(self, j):
        super().__init__(f"unit*b{j} != b{j}")
        self.indices = (j,)


class GradingViolation(ValidationError):
    def __init__(self, i, j, k):
        super().__init__(f"structure constant ({i},{j})->{k} is not homogeneous")
        self.indices = (i, j, k)


class InvalidDynkinParameters(ValidationError):
    pass


class GraphTooLarge(ValidationError):
    pass


class ParityUnsupported(ValidationError):
    pass


# -- mathematical failures -----------------------------------------------------

class DivisionByZero(QhwbError, ZeroDivisionError):
    pass


class NotInvertible(QhwbError):
    pass


class NotMonomial(QhwbError):
    pass


class RequiresFieldExtension(QhwbError):
    def __init__(self, value):
        super().__init__(f"{value} is not a square in the coefficient field")
        self.value = value


class NotSemisimple(QhwbError):
    pass


class NotSplitOverField(QhwbError):
    def __init__(self, witness):
        super().__init__(f"minimal polynomial does not split: {witness}")
        self.witness = witness


class NotIdempotent(QhwbError):
    pass


class NoIntegrationData(QhwbError):
    pass


class NoGrading(QhwbError):
    pass


class NoParityData(QhwbError):
    pass


class NotCubic(QhwbError):
    pass


class ZeroClass(QhwbError):
    pass


class BetaZero(QhwbError):
    pass


class PreconditionFailed(QhwbError):
    pass


class BadPairing(QhwbError):
    def __init__(self, i, j, value):
        super().__init__(f"pairing of classes {i} and {j} is {value}, not in {{-1, 0, 1}}")
        self.i, self.j, self.value = i, j, value


class ChainMalformed(QhwbError):
    pass


class NotFieldUnit(QhwbError):
    pass


# -- assertion failures --------------------------------------------------------

class Inconsistent(QhwbError):
    exit_code = ASSERTION


class AssertionFailed(QhwbError):
    exit_code = ASSERTION


class ClaimError(AssertionFailed):
    """A computed object violates an identity it is known to satisfy."""
