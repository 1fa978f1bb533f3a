'''
Exceptions raised by opprobe.

Every error is an OperatorError so callers can catch the whole family.
'''


class OperatorError(Exception):
    pass


class DimensionError(OperatorError, ValueError):
    pass


class AlignmentError(OperatorError, ValueError):
    pass


class SmoothnessError(OperatorError):
    pass


class UndefinedDerivativeError(SmoothnessError):
    def __init__(self, breakpoint, order, smoothness):
        self.breakpoint = breakpoint
        self.order = order
        self.smoothness = smoothness
        super().__init__(
            f'derivative of order {order} does not exist at {breakpoint} '
            f'(function is only C^{smoothness} there)'
        )


class DomainError(OperatorError, ValueError):
    pass


class ProbeError(OperatorError):
    def __init__(self, alpha, cause):
        self.alpha = alpha
        self.cause = cause
        super().__init__(f'black box failed on probe x^{list(alpha)}: {cause}')


class CoverageError(OperatorError, ValueError):
    pass


class ApexError(OperatorError, ValueError):
    pass


class FlatnessError(OperatorError, ValueError):
    pass


class InconclusiveError(OperatorError):
    pass


class ParameterError(OperatorError, ValueError):
    pass


class ScenarioError(OperatorError, ValueError):
    def __init__(self, message, field=None, line=None):
        self.field = field
        self.line = line
        where = []
        if field:
            where.append(f'field {field}')
        if line:
            where.append(f'line {line}')
        if where:
            message = f'{message} ({", ".join(where)})'
        super().__init__(message)
