import enum


class ErrorCode(enum.Enum):
    # ingestion
    LOOP_EDGE = "LOOP_EDGE"
    DUPLICATE_EDGE = "DUPLICATE_EDGE"
    DISCONNECTED = "DISCONNECTED"
    BAD_TOKEN = "BAD_TOKEN"
    EMPTY_GRAPH = "EMPTY_GRAPH"
    BAD_VERTEX = "BAD_VERTEX"
    BAD_SIZE = "BAD_SIZE"

    # partitions
    BAD_TRIANGLE = "BAD_TRIANGLE"
    INVALID_PARTITION = "INVALID_PARTITION"
    BUDGET = "BUDGET"
    NOT_TRIANGULABLE = "NOT_TRIANGULABLE"

    # numerics
    NOT_SYMMETRIC = "NOT_SYMMETRIC"
    NOT_UNITARY = "NOT_UNITARY"
    OUT_OF_RANGE = "OUT_OF_RANGE"
    DIMENSION_CAP = "DIMENSION_CAP"
    NOT_EIGENVECTOR = "NOT_EIGENVECTOR"

    # oracles
    BAD_PARAMETERS = "BAD_PARAMETERS"


class ExitCode(enum.IntEnum):
    OK = 0
    USAGE = 1
    NOT_TRIANGULABLE = 2
    VERIFICATION = 3
    NUMERICAL = 4


class NotTriangulableReason(enum.Enum):
    NO_TRIANGLES = "no directed triangles"
    ARC_NOT_DIVISIBLE = "arc count not divisible by 3"
    ARC_IN_NO_TRIANGLE = "arc in no directed triangle"
    SEARCH_EXHAUSTED = "exhausted search"


class ViolationKind(enum.Enum):
    OVERLAP = "overlapping arcs"
    UNCOVERED = "uncovered arcs"
    BROKEN_CYCLE = "broken cycle"
    UNKNOWN_ARC = "unknown arc"
    DEGENERATE = "repeated vertex"


class EigenKind(enum.Enum):
    INHERITED = "inherited"
    BIRTH = "birth"


class OutputFormat(enum.Enum):
    JSON = "json"
    CSV = "csv"
    TEXT = "text"


class StartKind(enum.Enum):
    UNIFORM = "uniform"
    POINT = "point"
    VERTEX_UNIFORM = "vertex_uniform"
