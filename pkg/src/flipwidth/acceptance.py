"""The acceptance battery: one function per criterion, each returning a :class:`Check`.

Parameters are pinned here so that the CLI ``suite`` command and the test
suite run exactly the same experiments.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .diverse import (
    chi_diversity,
    cube_root_k,
    diverse_interchange_subgraph,
    diversity,
    tilted_grid_ramps,
)
from .errors import FlipwidthError
from .game import (
    GameConfig,
    blockade_cop,
    diverse_robber,
    dyadic_cop,
    exact_flip_width,
    game_tree_flip_width,
    interchange_anchors,
    interchange_robber,
    play,
    random_cop,
)
from .geometry import cubes, delaunay, realize
from .graphcore import (
    FlipCollection,
    Graph,
    apply_flips,
    blockade_flips,
    complete_graph,
    cycle_graph,
    has_biclique,
    is_isomorphic_small,
    mask_of,
    path_graph,
    random_graph,
)
from .interchange import (
    Interchange,
    build_abstract,
    is_monochromatic,
    lane_equivalence_classes,
    optional_incidence_kind,
    ramsey_extract,
    reach_counts,
    escape_order,
    triple_connection,
    triple_to_many_bound,
    validate_interchange,
)
from .logic import ColoredInterchange, decode_phi, dense_to_sparse, encode_graph, psi


@dataclass
class Check:
    number: int
    name: str
    passed: bool = True
    failures: list[str] = field(default_factory=list)
    measured: dict = field(default_factory=dict)
    seconds: float = 0.0

    def fail(self, msg: str) -> None:
        self.passed = False
        if len(self.failures) < 20:
            self.failures.append(msg)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        head = f"[{status}] criterion {self.number:>2}: {self.name} ({self.seconds:.1f}s)"
        if self.failures:
            head += " -- " + "; ".join(self.failures[:3])
        return head

    def to_dict(self) -> dict:
        return {"criterion": self.number, "name": self.name, "passed": self.passed,
                "failures": self.failures, "measured": self.measured,
                "seconds": round(self.seconds, 3)}


def _timed(number: int, name: str):
    def wrap(fn: Callable[[Check], None]):
        def run() -> Check:
            chk = Check(number, name)
            t0 = time.perf_counter()
            try:
                fn(chk)
            except FlipwidthError as exc:
                chk.fail(f"{type(exc).__name__}: {exc}")
            chk.seconds = time.perf_counter() - t0
            return chk
        run.__name__ = fn.__name__
        run.__doc__ = fn.__doc__
        return run
    return wrap


# -- games ----------------------------------------------------------------

GAME_ROUNDS = 100
RANDOM_COP_SEEDS = 50
GAME_TIME_LIMIT = 10.0


def interchange_survival(ic: Interchange, t: int, r: int = 2, seeds: int = RANDOM_COP_SEEDS,
                         rounds: int = GAME_ROUNDS) -> dict[str, tuple[int, int, float]]:
    """Per cop kind: ``(robber wins, games, slowest game in seconds)``."""
    cfg = GameConfig(r, t, rounds)
    cops = {"random": [random_cop(s) for s in range(seeds)],
            "dyadic": [dyadic_cop(ic.lanes, interchange_anchors(ic))],
            "blockade": [blockade_cop()]}
    out = {}
    for kind, team in cops.items():
        wins, slowest = 0, 0.0
        for cop in team:
            t0 = time.perf_counter()
            outcome, _ = play(ic.graph, cop, interchange_robber(ic), cfg)
            slowest = max(slowest, time.perf_counter() - t0)
            wins += not outcome.cops_win
        out[kind] = (wins, len(team), slowest)
    return out


def _record_survival(chk: Check, label: str, stats) -> None:
    for kind, (wins, games, slowest) in stats.items():
        chk.measured[f"{label}/{kind}"] = f"{wins}/{games}, slowest {slowest:.2f}s"
        if wins != games:
            chk.fail(f"{label}: robber lost {games - wins}/{games} games vs {kind} cops")
        if slowest >= GAME_TIME_LIMIT:
            chk.fail(f"{label}: a game vs {kind} cops took {slowest:.1f}s")


@_timed(1, "radius-2 robber survives on dense interchanges of order 2^(t+3)+3")
def criterion_1(chk: Check) -> None:
    for t in (1, 2, 3):
        n = escape_order(t)
        ic = build_abstract(n, "weak", "all")
        _record_survival(chk, f"t={t},n={n}", interchange_survival(ic, t))


# -- interchange bounds -----------------------------------------------------

def _random_flips(rng, n: int, size: int) -> FlipCollection:
    return FlipCollection.from_masks(mask_of(np.flatnonzero(rng.random(n) < 0.5))
                                     for _ in range(size))


@_timed(2, "two equivalent lane triples always share a ramp (1000 random instances)")
def criterion_2(chk: Check, instances: int = 1000, seed: int = 2) -> None:
    rng = np.random.default_rng(seed)
    done = tries = 0
    while done < instances:
        tries += 1
        n = int(rng.integers(6, 20))
        ic = build_abstract(n, "weak", "random", seed=int(rng.integers(1 << 30)))
        flips = _random_flips(rng, ic.graph.n, int(rng.integers(0, 4)))
        classes = [c for c in lane_equivalence_classes(ic, flips) if len(c) >= 3]
        pool = [(a, b) for a in classes for b in classes if a is not b or len(a) >= 6]
        if not pool:
            continue
        a, b = pool[int(rng.integers(len(pool)))]
        first = sorted(rng.choice(a, 3, replace=False).tolist())
        rest = [k for k in b if k not in first]
        if len(rest) < 3:
            continue
        second = sorted(rng.choice(rest, 3, replace=False).tolist())
        done += 1
        if triple_connection(ic, flips, first, second) is None:
            chk.fail(f"no ramp joins {first} and {second} (n={n}, flips={flips})")
    chk.measured["instances"] = done
    chk.measured["samples drawn"] = tries


@_timed(3, "each class of >= 3 lanes has a lane reaching >= (n - 2^(|F|+1) - 3)/3 others")
def criterion_3(chk: Check, samples: int = 200, n: int = 35, seed: int = 3) -> None:
    rng = np.random.default_rng(seed)
    ic = build_abstract(n, "weak", "all")
    bound = triple_to_many_bound(n, 2)
    worst = None
    for _ in range(samples):
        flips = _random_flips(rng, ic.graph.n, 2)
        others = reach_counts(ic, flips) - 1
        for cls in lane_equivalence_classes(ic, flips):
            if len(cls) < 3:
                continue
            best = int(others[cls].max())
            worst = best if worst is None else min(worst, best)
            if best < bound:
                chk.fail(f"class {cls} reaches only {best} < {bound:.2f}")
    chk.measured["bound"] = bound
    chk.measured["weakest class best reach"] = worst


# -- geometry ---------------------------------------------------------------

GEOMETRIC_FAMILIES = ("intervals", "containment", "chords", "segments", "squares",
                      "unit-distance", "unit-disk", "visibility")


@_timed(4, "geometric realizations are valid interchanges; robber survives on two of them")
def criterion_4(chk: Check, sizes=(5, 10, 20)) -> None:
    runs = [(f, {}) for f in GEOMETRIC_FAMILIES] + [("beta", {"beta": 0.5}), ("beta", {"beta": 0.9})]
    for family, kw in runs:
        for n in sizes:
            label = family + (f"(beta={kw['beta']})" if kw else "") + f" n={n}"
            try:
                probs = realize(family, n, **kw).problems()
            except FlipwidthError as exc:
                probs = [f"{type(exc).__name__}: {exc}"]
            chk.measured[label] = "ok" if not probs else probs[0]
            if probs:
                chk.fail(f"{label}: {probs[0]}")
    n = escape_order(1)
    for family in ("intervals", "unit-disk"):
        ic = realize(family, n).interchange
        _record_survival(chk, f"{family} n={n}", interchange_survival(ic, 1))


@_timed(5, "RIG point sets induce Q_d on Y_d for d <= 6; |X_5| = 81")
def criterion_5(chk: Check, dims=range(1, 7)) -> None:
    for d in dims:
        pts, Y = cubes.gen_rig_points(d)
        sub = cubes.rig_graph(pts).induced_subgraph(Y)
        if not sub.same_edges(cubes.gen_hypercube(d)):
            chk.fail(f"d={d}: induced subgraph on Y_d is not Q_d under the label map")
        chk.measured[f"|X_{d}|"] = len(pts)
    if chk.measured.get("|X_5|") != 81:
        chk.fail(f"|X_5| = {chk.measured.get('|X_5|')}, expected 81")


@_timed(6, "Delaunay even subgraph is the subdivided K_{n/2,n/2} without K2,2")
def criterion_6(chk: Check, sizes=(4, 6), seeds=(0, 1), limit: float = 300.0) -> None:
    for n in sizes:
        ref = cubes.gen_subdivided_bipartite(n // 2, n // 2)
        for seed in seeds:
            t0 = time.perf_counter()
            g = delaunay.delaunay_graph(n, seed)
            sub = delaunay.even_subgraph(n, g)
            dt = time.perf_counter() - t0
            chk.measured[f"n={n} seed={seed}"] = f"{g.num_edges} edges, {dt:.2f}s"
            if not sub.same_edges(ref):
                chk.fail(f"n={n} seed={seed}: even subgraph differs from the subdivision")
            if has_biclique(sub, 2):
                chk.fail(f"n={n} seed={seed}: even subgraph contains K2,2")
            if dt >= limit:
                chk.fail(f"n={n} seed={seed}: took {dt:.0f}s")


# -- diversity --------------------------------------------------------------

def tilted_grid_close_pairs(n: int, k: int) -> list[tuple[tuple[int, int], tuple[int, int]]]:
    """Selected pairs at L1 distance <= k from each other (should be none)."""
    pts = set(tilted_grid_ramps(n, k))
    offsets = [(dx, dy) for dx in range(-k, k + 1) for dy in range(-k, k + 1)
               if 0 < abs(dx) + abs(dy) <= k and (dx, dy) > (0, 0)]
    return [(p, (p[0] + dx, p[1] + dy)) for p in sorted(pts) for dx, dy in offsets
            if (p[0] + dx, p[1] + dy) in pts]


@_timed(7, "tilted grid spacing; (k+1, 2)-diverse subgraph at n=216; radius-1 robber survives")
def criterion_7(chk: Check, n: int = 216, rounds: int = GAME_ROUNDS) -> None:
    for k in range(1, 9):
        for m in (k + 1, 50, 200, 1000):
            close = tilted_grid_close_pairs(m, k)
            if close:
                chk.fail(f"tilted grid n={m}, k={k}: {close[0]} closer than {k + 1}")
    k = cube_root_k(n)
    ic = build_abstract(n, "weak", "all")
    cs = diverse_interchange_subgraph(ic, k)
    delta = chi_diversity(cs)
    chk.measured["k"] = k
    chk.measured["chi_diversity"] = delta
    if delta < k + 1:
        chk.fail(f"chi_diversity at n={n}, k={k} is {delta}, needs >= {k + 1}")
    cfg = GameConfig(1, 1, rounds)
    cops = {"random": random_cop(0), "dyadic": dyadic_cop(ic.lanes, interchange_anchors(ic)),
            "blockade": blockade_cop()}
    for kind, cop in cops.items():
        try:
            outcome, _ = play(ic.graph, cop, diverse_robber(ic.graph, cs.members, cs.coloring, 1), cfg)
            survived = not outcome.cops_win
        except FlipwidthError as exc:
            survived = False
            chk.fail(f"diverse robber vs {kind}: {exc}")
        chk.measured[f"survives {kind}"] = survived
        if not survived:
            chk.fail(f"diverse robber caught by {kind} cops")


@_timed(8, "diversity of Q_d is 2d-4 for 3 <= d <= 8 and 0 for d = 2")
def criterion_8(chk: Check) -> None:
    for d in range(2, 9):
        q = cubes.gen_hypercube(d)
        got = diversity(q, range(q.n))
        want = 0 if d == 2 else 2 * d - 4
        chk.measured[f"d={d}"] = got
        if got != want:
            chk.fail(f"Q_{d}: diversity {got}, expected {want}")
    chk.measured["note"] = "measured 2d-4 against a stated 2d-2"


# -- exact solver -----------------------------------------------------------

# frozen from the attractor solver and confirmed by the game-tree search;
# None means the cops need more than t_max flips
SOLVER_REGRESSION = {
    ("P4", 1, 1): None, ("P4", None, 1): None,
    ("C4", 1, 1): None, ("C4", None, 1): None,
    ("C5", 1, 1): None, ("C5", None, 1): None,
    ("P4", 1, 2): 2, ("P4", None, 2): 2,
    ("C4", 1, 2): 2, ("C4", None, 2): 2,
    ("C5", 1, 2): 2, ("C5", None, 2): 2,
}

NAMED_SMALL = {"P4": path_graph(4), "C4": cycle_graph(4), "C5": cycle_graph(5)}


@_timed(9, "exact solver: trivial values, frozen constants, agreement with game-tree search")
def criterion_9(chk: Check, random_graphs: int = 20, seed: int = 9) -> None:
    for n in (1, 3, 5):
        for r in (1, None):
            if exact_flip_width(Graph.empty(n), r, 1) != 0:
                chk.fail(f"edgeless graph on {n} vertices: value is not 0")
    for r in (0, 1, 2, None):
        if exact_flip_width(complete_graph(2), r, 1) != 1:
            chk.fail(f"K2 at r={r}: value is not 1")
    for (name, r, t_max), want in SOLVER_REGRESSION.items():
        got = exact_flip_width(NAMED_SMALL[name], r, t_max)
        chk.measured[f"{name} r={'inf' if r is None else r} t<={t_max}"] = got
        if got != want:
            chk.fail(f"{name} r={r} t_max={t_max}: {got}, frozen {want}")
    rng = np.random.default_rng(seed)
    for _ in range(random_graphs):
        n = int(rng.integers(1, 6))
        g = random_graph(n, float(rng.uniform(0.2, 0.8)), rng)
        for r in (1, None):
            a, b = exact_flip_width(g, r, 1), game_tree_flip_width(g, r, 1)
            if a != b:
                chk.fail(f"solver {a} vs game tree {b} on {sorted(g.edges())}, r={r}")


# -- logic ------------------------------------------------------------------

def all_labeled_graphs(n: int):
    pairs = list(itertools.combinations(range(n), 2))
    for bits in range(1 << len(pairs)):
        yield Graph.from_edges(n, [p for k, p in enumerate(pairs) if bits >> k & 1])


def isomorphism_classes(graphs) -> list[Graph]:
    reps: list[Graph] = []
    for g in graphs:
        if not any(g.num_edges == h.num_edges and is_isomorphic_small(g, h) for h in reps):
            reps.append(g)
    return reps


@_timed(10, "encode/decode round trip, psi total order, dense-to-sparse, Ramsey extraction")
def criterion_10(chk: Check, seed: int = 10) -> None:
    count = 0
    for n in range(2, 6):
        for g in all_labeled_graphs(n):
            count += 1
            if not decode_phi(encode_graph(g)).same_edges(g):
                chk.fail(f"round trip failed on {sorted(g.edges())} (n={n})")
    chk.measured["labelled graphs (2..5 vertices)"] = count
    chk.measured["classes on 5 vertices"] = len(isomorphism_classes(all_labeled_graphs(5)))
    rng = np.random.default_rng(seed)
    for _ in range(200):
        n = int(rng.integers(2, 11))
        g = random_graph(n, float(rng.uniform(0.1, 0.9)), rng)
        if not decode_phi(encode_graph(g)).same_edges(g):
            chk.fail(f"round trip failed on random graph {sorted(g.edges())}")
    for n in range(2, 13):
        ci = ColoredInterchange(build_abstract(n, "strong", "all"))
        L = ci.ic.lanes
        for x in L:
            if psi(ci, x, x):
                chk.fail(f"order {n}: psi is reflexive at lane {x}")
        for x, y in itertools.permutations(L, 2):
            if psi(ci, x, y) == psi(ci, y, x):
                chk.fail(f"order {n}: psi not total/antisymmetric on ({x}, {y})")
        for x, y, z in itertools.permutations(L, 3):
            if psi(ci, x, y) and psi(ci, y, z) and not psi(ci, x, z):
                chk.fail(f"order {n}: psi not transitive on ({x}, {y}, {z})")
    for n in range(4, 13):
        dense = build_abstract(n, "strong", "all")
        sparse = dense_to_sparse(ColoredInterchange(dense))
        if not sparse.same_edges(build_abstract(n, "strong", "none").graph):
            chk.fail(f"order {n}: dense_to_sparse differs from the sparse reference")
    kinds = {"dense": 0, "sparse": 0}
    for _ in range(100):
        ic = build_abstract(12, "strong", "random", seed=int(rng.integers(1 << 30)))
        sub, kind = ramsey_extract(ic)
        kinds[kind] += 1
        if validate_interchange(sub):
            chk.fail(f"Ramsey output invalid: {validate_interchange(sub)[0]}")
        elif not is_monochromatic(sub):
            chk.fail("Ramsey output is not monochromatic")
        elif optional_incidence_kind(sub) != kind:
            chk.fail(f"Ramsey output reported {kind} but is {optional_incidence_kind(sub)}")
    chk.measured["ramsey kinds"] = kinds


# -- flip semantics ---------------------------------------------------------

def _flip_reference(g: Graph, sets) -> set[tuple[int, int]]:
    """Edge set after flips, straight from the parity definition."""
    out = set()
    for u, v in itertools.combinations(range(g.n), 2):
        parity = sum(1 for s in sets if u in s and v in s) % 2
        if g.has_edge(u, v) != bool(parity):
            out.add((u, v))
    return out


def _check_flip_instance(chk: Check, g: Graph, sets, rng) -> None:
    fc = FlipCollection(sets)
    h = apply_flips(g, fc)
    if set(h.edges()) != _flip_reference(g, sets):
        chk.fail(f"apply_flips disagrees with the parity definition on n={g.n}")
    if not apply_flips(h, fc).same_edges(g):
        chk.fail(f"apply_flips is not an involution on n={g.n}")
    if len(sets) > 1:
        perm = [sets[k] for k in rng.permutation(len(sets))]
        if not apply_flips(g, FlipCollection(perm)).same_edges(h):
            chk.fail(f"apply_flips depends on flip order on n={g.n}")


def _check_blockade(chk: Check, g: Graph) -> None:
    for v in range(g.n):
        h = apply_flips(g, blockade_flips(g, v))
        if h.degree(v) != 0:
            chk.fail(f"blockade leaves vertex {v} with degree {h.degree(v)}")
        for a, b in itertools.combinations([u for u in range(g.n) if u != v], 2):
            if h.has_edge(a, b) != g.has_edge(a, b):
                chk.fail(f"blockade of {v} changed the pair ({a}, {b})")
                break


@_timed(11, "flip semantics: involution, order independence, blockade postconditions")
def criterion_11(chk: Check, seed: int = 11) -> None:
    rng = np.random.default_rng(seed)
    for _ in range(100):
        n = int(rng.integers(1, 21))
        g = random_graph(n, float(rng.uniform(0.1, 0.9)), rng)
        sets = [set(np.flatnonzero(rng.random(n) < 0.5).tolist())
                for _ in range(int(rng.integers(0, 5)))]
        _check_flip_instance(chk, g, sets, rng)
        _check_blockade(chk, g)
    count = 0
    for n in range(1, 5):
        subsets = [set(s) for k in range(n + 1) for s in itertools.combinations(range(n), k)]
        for g in all_labeled_graphs(n):
            _check_blockade(chk, g)
            for size in range(3):
                for sets in itertools.combinations_with_replacement(subsets, size):
                    _check_flip_instance(chk, g, list(sets), rng)
                    count += 1
    chk.measured["exhaustive flip instances"] = count


CRITERIA: dict[int, Callable[[], Check]] = {
    1: criterion_1, 2: criterion_2, 3: criterion_3, 4: criterion_4, 5: criterion_5,
    6: criterion_6, 7: criterion_7, 8: criterion_8, 9: criterion_9, 10: criterion_10,
    11: criterion_11,
}


def run_suite(which=None, echo: Callable[[str], None] | None = None) -> list[Check]:
    results = []
    for number in sorted(which or CRITERIA):
        chk = CRITERIA[number]()
        if echo:
            echo(chk.line())
        results.append(chk)
    return results
