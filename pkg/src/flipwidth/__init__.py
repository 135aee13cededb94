"""Flip-width laboratory: the flipping game, interchanges, geometric realizations."""

from .errors import (
    ConstructionError,
    ContractError,
    DomainError,
    FlipwidthError,
    GraphFormatError,
    ResourceLimitError,
    StrategyFault,
)
from .graphcore import (
    EMPTY,
    FlipCollection,
    Graph,
    apply_flips,
    blockade_flips,
    has_biclique,
    is_isomorphic_small,
    reachable,
)
from .interchange import Interchange, build_abstract, validate

__version__ = "0.1.0"
