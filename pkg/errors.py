"""
error types for hk-lab

every error carries a machine-readable code and the exit code the cli maps it to
"""

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_INPUT_ERROR = 2
EXIT_BUDGET = 3


class HKLabError(Exception):
    """base for all hk-lab errors"""
    code = 'hk_lab_error'
    exit_code = EXIT_INPUT_ERROR

    def to_dict(self):
        return {'code': self.code, 'message': str(self)}


# ---- arithmetic ----

class DivisionByZero(HKLabError, ArithmeticError):
    code = 'division_by_zero'


class ArithmeticBug(HKLabError, ArithmeticError):
    """an internal consistency check failed (exact division, divisibility)"""
    code = 'arithmetic_bug'
    exit_code = EXIT_CHECK_FAILED


class ExponentOverflow(HKLabError, ArithmeticError):
    code = 'exponent_overflow'


# ---- bad input ----

class InvalidCharacteristic(HKLabError, ValueError):
    code = 'invalid_characteristic'


class RingMismatch(HKLabError, ValueError):
    code = 'ring_mismatch'


class InvalidFrobeniusPower(HKLabError, ValueError):
    code = 'invalid_frobenius_power'


class NotArtinian(HKLabError, ValueError):
    code = 'not_artinian'


class InsufficientData(HKLabError, ValueError):
    code = 'insufficient_data'


class NotGorensteinQuotient(HKLabError, ValueError):
    code = 'not_gorenstein_quotient'


class InvalidPair(HKLabError, ValueError):
    code = 'invalid_pair'


class HypothesisViolation(HKLabError, ValueError):
    code = 'hypothesis_violation'


class InvalidSubgroup(HKLabError, ValueError):
    code = 'invalid_subgroup'


class InvalidParameters(HKLabError, ValueError):
    code = 'invalid_parameters'


class SpecSyntaxError(HKLabError, ValueError):
    code = 'spec_syntax_error'

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"{message} (line {line}, col {column})"
        super().__init__(message)

    def to_dict(self):
        info = super().to_dict()
        info['line'] = self.line
        info['column'] = self.column
        return info


class UnknownVariable(SpecSyntaxError):
    code = 'unknown_variable'

    def __init__(self, name, line=None, column=None):
        self.name = name
        super().__init__(f"unknown variable '{name}'", line, column)


# ---- resources ----

class BudgetExceeded(HKLabError):
    code = 'budget_exceeded'
    exit_code = EXIT_BUDGET

    def __init__(self, message, spent=None, budget=None):
        self.spent = spent
        self.budget = budget
        super().__init__(message)
