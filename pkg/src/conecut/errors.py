"""Exception types shared across the package."""


class ConecutError(Exception):
    """Base class for all library errors."""


class GraphError(ConecutError):
    pass


class GraphFormatError(GraphError):
    """Malformed graph input. Carries the offending line or byte position."""

    def __init__(self, message, *, line=None, byte=None):
        where = []
        if line is not None:
            where.append(f"line {line}")
        if byte is not None:
            where.append(f"byte {byte}")
        if where:
            message = f"{message} ({', '.join(where)})"
        super().__init__(message)
        self.line = line
        self.byte = byte


class InfeasibleGraphError(GraphError):
    """Requested graph parameters admit no graph (e.g. odd n*d)."""


class GenerationError(GraphError):
    """Randomized generation exhausted its retry budget."""


class TensorNetworkError(ConecutError):
    pass


class RankCapError(TensorNetworkError):
    """A contraction would allocate an intermediate above the rank cap."""

    def __init__(self, rank, cap, *, edge=None, cone_size=None):
        msg = f"intermediate tensor rank {rank} exceeds cap {cap}"
        if edge is not None:
            msg += f" (edge {edge}, cone size {cone_size})"
        super().__init__(msg)
        self.rank = rank
        self.cap = cap
        self.edge = edge
        self.cone_size = cone_size


class PlanMismatchError(TensorNetworkError):
    """A contraction plan was replayed against a structurally different network."""


class TooManyIndicesError(TensorNetworkError):
    """Brute-force contraction refused: too many distinct indices."""


class DepthMismatchError(ConecutError):
    """Angle sequence depth differs from the template or cache depth."""


class QubitLimitError(ConecutError):
    """State-vector simulation refused: qubit count above the configured limit."""


class EngineNumericsError(ConecutError):
    """A contracted energy value failed a numerical sanity check."""


class BudgetError(ConecutError):
    """An optimizer was configured with an insufficient query budget."""
