"""MAX-CUT QAOA energy queries via per-edge lightcone tensor networks."""

__version__ = "0.1.0"

from .errors import (
    BudgetError,
    ConecutError,
    DepthMismatchError,
    EngineNumericsError,
    GenerationError,
    GraphError,
    GraphFormatError,
    InfeasibleGraphError,
    PlanMismatchError,
    QubitLimitError,
    RankCapError,
    TensorNetworkError,
    TooManyIndicesError,
)
from .graph import (
    Graph,
    are_isomorphic,
    edge_swap_step,
    enumerate_regular_graphs,
    girth,
    is_connected,
    load_graph,
    neighborhood,
    permuted,
    random_regular,
    save_graph,
    tree_like_graph,
    triangle_count,
)

__all__ = [name for name in dir() if not name.startswith("_")]
