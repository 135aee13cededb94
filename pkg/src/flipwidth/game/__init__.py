from .cops import (
    BlockadeCop,
    DyadicCop,
    RandomCop,
    blockade_cop,
    dyadic_cop,
    interchange_anchors,
    random_cop,
)
from .engine import (
    CopStrategy,
    GameConfig,
    GameState,
    Outcome,
    RobberStrategy,
    Round,
    ScriptedCop,
    ScriptedRobber,
    Transcript,
    check_announcement,
    check_path,
    play,
    replay,
    transcript_from_dict,
    transcript_to_dict,
)
from .gametree import game_tree_cops_win, game_tree_flip_width
from .robbers import (
    DiverseRobber,
    GreedyRobber,
    InterchangeRobber,
    StaticRobber,
    diverse_robber,
    interchange_robber,
)
from .solver import cops_win, exact_flip_width, flipped_graphs
