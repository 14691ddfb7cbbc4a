"""Exception hierarchy. Each class carries the CLI exit code it maps to."""


class DynresError(Exception):
    exit_code = 2


class MathematicalRejection(DynresError):
    exit_code = 2


class BudgetExhausted(DynresError):
    exit_code = 3


class NonFiniteType(MathematicalRejection):
    pass


class SingularCartan(MathematicalRejection):
    pass


class MalformedFormat(MathematicalRejection):
    pass


class NonDynkinFormat(MathematicalRejection):
    pass


class UnsupportedF0(MathematicalRejection):
    pass


class UnsupportedShape(MathematicalRejection):
    pass


class NonDominantWeight(MathematicalRejection):
    pass


class TooManyRows(MathematicalRejection):
    pass


class VariableMismatch(MathematicalRejection):
    pass


class NoSolution(MathematicalRejection):
    pass


class NotAComplex(MathematicalRejection):
    pass


class NotPerfect(MathematicalRejection):
    pass


class NonMinimalComplex(MathematicalRejection):
    pass


class NotMinuscule(MathematicalRejection):
    pass


class DegreeBudgetExceeded(BudgetExhausted):
    pass


class ResourceBudgetExceeded(BudgetExhausted):
    pass


class EnumerationBudgetExceeded(BudgetExhausted):
    pass


class UnsupportedFormat(MathematicalRejection):
    pass
