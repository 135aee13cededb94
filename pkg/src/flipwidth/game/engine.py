"""Round protocol of the radius-r flipping game with t flips per move.

One round: the cops announce at most ``t`` flips; the robber walks a path
of length at most ``r`` in the graph flipped by the *currently active*
flips; the announced flips replace the active ones; if the robber's vertex
is then isolated the cops win that round.  Before round 1 the robber picks
any start vertex of the unflipped graph.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

from ..errors import DomainError, GraphFormatError, StrategyFault
from ..graphcore import (
    EMPTY,
    FlipCollection,
    Graph,
    flipped_adjacent,
    flipped_row,
    members_of,
)


@dataclass(frozen=True)
class GameConfig:
    r: int | None = 2
    t: int = 1
    max_rounds: int = 100

    def __post_init__(self):
        r = self.r
        if r is not None and (isinstance(r, float) and math.isinf(r)):
            object.__setattr__(self, "r", None)
        elif r is not None and (int(r) != r or r < 0):
            raise DomainError(f"radius must be a non-negative integer or inf, got {r!r}")
        if self.t < 0:
            raise DomainError("t must be >= 0")
        if self.max_rounds < 1:
            raise DomainError("max_rounds must be >= 1")

    @property
    def radius_label(self) -> str:
        return "inf" if self.r is None else str(self.r)

    def to_dict(self) -> dict:
        return {"r": self.radius_label, "t": self.t, "max_rounds": self.max_rounds}

    @classmethod
    def from_dict(cls, d: dict) -> "GameConfig":
        r = d.get("r", 2)
        return cls(None if r in ("inf", None) else int(r), int(d.get("t", 1)),
                   int(d.get("max_rounds", 100)))


@dataclass
class GameState:
    """Everything both players see when it is their turn."""

    graph: Graph
    config: GameConfig
    active: FlipCollection
    robber: int
    round: int


@dataclass(frozen=True)
class Round:
    announce: FlipCollection
    path: tuple[int, ...]


@dataclass(frozen=True)
class Outcome:
    winner: str  # "cops" or "robber"
    round: int  # catching round, or number of rounds survived

    @property
    def cops_win(self) -> bool:
        return self.winner == "cops"


@dataclass
class Transcript:
    config: GameConfig
    rounds: list[Round] = field(default_factory=list)
    outcome: Outcome | None = None

    @property
    def start(self) -> int | None:
        return self.rounds[0].path[0] if self.rounds else None


class CopStrategy:
    """Base class: override :meth:`announce`."""

    name = "cop"

    def reset(self, graph: Graph, config: GameConfig) -> None:
        pass

    def announce(self, state: GameState) -> FlipCollection:
        raise NotImplementedError


class RobberStrategy:
    """Base class: override :meth:`start` and :meth:`move`."""

    name = "robber"

    def start(self, graph: Graph, config: GameConfig) -> int:
        raise NotImplementedError

    def move(self, state: GameState, announced: FlipCollection) -> Sequence[int]:
        raise NotImplementedError


def check_announcement(g: Graph, flips: FlipCollection, cfg: GameConfig, who="cop") -> None:
    if not isinstance(flips, FlipCollection):
        raise StrategyFault(who, f"announcement must be a FlipCollection, got {type(flips).__name__}")
    if len(flips) > cfg.t:
        raise StrategyFault(who, f"announced {len(flips)} flips with budget t={cfg.t}")
    try:
        flips.check_domain(g.n)
    except DomainError as exc:
        raise StrategyFault(who, str(exc)) from None


def check_path(g: Graph, active: FlipCollection, robber: int, path: Sequence[int],
               cfg: GameConfig, who="robber") -> tuple[int, ...]:
    path = tuple(int(v) for v in path)
    if not path:
        raise StrategyFault(who, "empty path")
    if path[0] != robber:
        raise StrategyFault(who, f"path starts at {path[0]} but robber is at {robber}")
    if cfg.r is not None and len(path) - 1 > cfg.r:
        raise StrategyFault(who, f"path of length {len(path) - 1} exceeds radius {cfg.r}")
    for u, v in zip(path, path[1:]):
        if not 0 <= v < g.n:
            raise StrategyFault(who, f"vertex {v} outside the graph")
        if not flipped_adjacent(g, active, u, v):
            raise StrategyFault(who, f"{u}-{v} is not an edge of the current flipped graph")
    return path


def play(g: Graph, cop: CopStrategy, robber: RobberStrategy,
         cfg: GameConfig) -> tuple[Outcome, Transcript]:
    """Play one game; never mutates *g*."""
    cop.reset(g, cfg)
    start = int(robber.start(g, cfg))
    if not 0 <= start < g.n:
        raise StrategyFault("robber", f"start vertex {start} outside the graph")
    transcript = Transcript(cfg)
    state = GameState(g, cfg, EMPTY, start, 1)
    for rnd in range(1, cfg.max_rounds + 1):
        state.round = rnd
        announced = cop.announce(state)
        check_announcement(g, announced, cfg)
        path = check_path(g, state.active, state.robber, robber.move(state, announced), cfg)
        transcript.rounds.append(Round(announced, path))
        state.active = announced
        state.robber = path[-1]
        if flipped_row(g, announced, state.robber) == 0:
            transcript.outcome = Outcome("cops", rnd)
            return transcript.outcome, transcript
    transcript.outcome = Outcome("robber", cfg.max_rounds)
    return transcript.outcome, transcript


class ScriptedCop(CopStrategy):
    name = "scripted"

    def __init__(self, announcements: Sequence[FlipCollection]):
        self.announcements = list(announcements)

    def announce(self, state):
        return self.announcements[state.round - 1]


class ScriptedRobber(RobberStrategy):
    name = "scripted"

    def __init__(self, paths: Sequence[Sequence[int]]):
        self.paths = [tuple(p) for p in paths]

    def start(self, graph, config):
        return self.paths[0][0]

    def move(self, state, announced):
        return self.paths[state.round - 1]


def replay(g: Graph, transcript: Transcript) -> Outcome:
    """Re-run a recorded game with full legality checks."""
    outcome, _ = play(g, ScriptedCop([r.announce for r in transcript.rounds]),
                      ScriptedRobber([r.path for r in transcript.rounds]), transcript.config)
    return outcome


def transcript_to_dict(tr: Transcript) -> dict:
    return {
        "config": tr.config.to_dict(),
        "rounds": [
            {"announce": [members_of(m) for m in r.announce.masks], "path": list(r.path)}
            for r in tr.rounds
        ],
        "outcome": tr.outcome.winner if tr.outcome else None,
        "round": tr.outcome.round if tr.outcome else None,
    }


def transcript_from_dict(d: dict) -> Transcript:
    try:
        cfg = GameConfig.from_dict(d["config"])
        rounds = [Round(FlipCollection(r["announce"]), tuple(r["path"])) for r in d["rounds"]]
        outcome = Outcome(d["outcome"], int(d["round"])) if d.get("outcome") else None
    except (KeyError, TypeError, ValueError) as exc:
        raise GraphFormatError(f"malformed transcript ({exc})") from None
    return Transcript(cfg, rounds, outcome)
