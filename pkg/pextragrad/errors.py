class PextragradError(Exception):
    pass


class UsageError(PextragradError, ValueError):
    pass


class InfeasiblePointError(UsageError):
    pass


class OperatorDomainError(PextragradError, ArithmeticError):
    pass


class LineSearchError(PextragradError):
    def __init__(self, message, backtracks=None):
        PextragradError.__init__(self, message)
        self.backtracks = backtracks


class VanishingOperatorError(PextragradError):
    def __init__(self, message, point=None):
        PextragradError.__init__(self, message)
        self.point = point


class ProjectionError(PextragradError):
    # record is the partial IterationRecord of the outer step that failed
    def __init__(self, message, record=None, result=None):
        PextragradError.__init__(self, message)
        self.record = record
        self.result = result


class ReferenceSolutionError(PextragradError):
    pass


class InvariantViolation(PextragradError, AssertionError):
    pass
