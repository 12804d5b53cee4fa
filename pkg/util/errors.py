from util.types import ErrorCode


class TriwalkError(ValueError):
    """ Base error; `code` tells callers which precondition failed """

    def __init__(self, code: ErrorCode, message: str):
        super().__init__(f"{code.value}: {message}")
        self.code = code
        self.message = message


class GraphFormatError(TriwalkError):
    pass


class GeneratorError(TriwalkError):
    def __init__(self, message: str):
        super().__init__(ErrorCode.BAD_SIZE, message)


class PartitionFormatError(TriwalkError):
    def __init__(self, message: str):
        super().__init__(ErrorCode.BAD_TRIANGLE, message)


class PartitionInvalidError(TriwalkError):
    def __init__(self, report):
        self.report = report
        super().__init__(ErrorCode.INVALID_PARTITION, str(report))


class SearchBudgetExceeded(TriwalkError):
    def __init__(self, limit: int):
        self.limit = limit
        super().__init__(ErrorCode.BUDGET, f"search budget of {limit} node expansions exceeded")


class NumericalError(TriwalkError):
    pass


class OracleError(TriwalkError):
    def __init__(self, message: str):
        super().__init__(ErrorCode.BAD_PARAMETERS, message)


class NotTriangulableError(TriwalkError):
    """ Raised where a partition is required but the search proved none exists """

    def __init__(self, result):
        self.result = result
        super().__init__(ErrorCode.NOT_TRIANGULABLE, result.message)
