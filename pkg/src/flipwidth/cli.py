"""``flipwidth`` command line: generate, validate, play, solve, measure, transduce, render, suite.

Exit codes: 0 success, 1 contract failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .diverse import (
    chi_diversity,
    cube_root_k,
    diverse_interchange_subgraph,
    diversity,
    tilted_grid_sorted,
)
from .errors import FlipwidthError
from .game import (
    GameConfig,
    blockade_cop,
    diverse_robber,
    dyadic_cop,
    exact_flip_width,
    interchange_anchors,
    interchange_robber,
    play,
    random_cop,
    transcript_to_dict,
)
from .geometry import FAMILIES, realize, render_grid_pairs, render_svg, scene_to_dict
from .geometry.cubes import gen_hypercube
from .geometry.families import DIMENSION_FAMILIES
from .graphcore import graph_from_dict, graph_to_dict, loads, random_graph
from .interchange import interchange_from_dict, interchange_to_dict, validate_interchange
from .logic import transduce

EXIT_OK, EXIT_CONTRACT, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _radius(text: str):
    if text == "inf":
        return None
    try:
        r = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"radius must be a non-negative integer or 'inf', got {text!r}")
    if r < 0:
        raise argparse.ArgumentTypeError("radius must be non-negative")
    return r


def _emit_json(obj, path: str | None) -> None:
    text = json.dumps(obj, sort_keys=True, indent=1) + "\n"
    if path:
        Path(path).write_text(text)
    else:
        sys.stdout.write(text)


def _read_json(path: str):
    try:
        return loads(Path(path).read_text())
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _realization(args):
    if args.family is None:
        raise UsageError("--family is required")
    dim = args.family in DIMENSION_FAMILIES
    if args.n is None and (not dim or args.d is None):
        raise UsageError(f"--{'d' if dim else 'n'} is required for family {args.family}")
    return realize(args.family, args.n, args.d, beta=args.beta, seed=args.seed)


def _document(real) -> dict:
    doc = {"family": real.family, "params": real.params, "graph": graph_to_dict(real.graph)}
    if real.scene is not None:
        doc["scene"] = scene_to_dict(real.scene)
    if real.interchange is not None:
        doc["interchange"] = interchange_to_dict(real.interchange)
    if real.reference is not None:
        doc["reference_vertices"] = list(real.reference_vertices)
    return doc


# -- commands ---------------------------------------------------------------

def cmd_generate(args) -> int:
    real = _realization(args)
    problems = real.problems()
    doc = _document(real)
    doc["validation"] = problems or "ok"
    if args.out:
        _emit_json(doc, args.out)
    if args.svg:
        Path(args.svg).write_text(render_svg(real.scene if real.scene is not None else real.interchange))
    objects = len(real.scene.objects) if real.scene is not None else real.graph.n
    print(f"family={real.family} objects={objects} vertices={real.graph.n} "
          f"edges={real.graph.num_edges}")
    if problems:
        for p in problems:
            print(f"violation: {p}")
        return EXIT_CONTRACT
    print("validator: Ok")
    return EXIT_OK


def cmd_validate(args) -> int:
    if args.input:
        doc = _read_json(args.input)
        if isinstance(doc, dict) and "interchange" not in doc and "family" in doc:
            problems = _revalidate_document(doc)
        else:
            data = doc.get("interchange", doc) if isinstance(doc, dict) else doc
            problems = [str(v) for v in validate_interchange(interchange_from_dict(data))]
    else:
        problems = _realization(args).problems()
    if problems:
        for p in problems:
            print(f"violation: {p}")
        return EXIT_CONTRACT
    print("validator: Ok")
    return EXIT_OK


def _revalidate_document(doc: dict) -> list[str]:
    """Rebuild a generated construction from its parameters and compare graphs."""
    params = doc.get("params", {})
    real = realize(doc["family"], params.get("n"), params.get("d"),
                   beta=params.get("beta", 0.9), seed=params.get("seed", 0))
    problems = real.problems()
    if not graph_from_dict(doc.get("graph"), "$.graph").same_edges(real.graph):
        problems.insert(0, "stored graph differs from the rebuilt construction")
    return problems


def _cops(kind: str, ic, seeds: int):
    if kind == "random":
        return [(s, random_cop(s)) for s in range(seeds)]
    if kind == "dyadic":
        return [(None, dyadic_cop(ic.lanes, interchange_anchors(ic)))]
    return [(None, blockade_cop())]


def cmd_play(args) -> int:
    real = _realization(args)
    ic = real.interchange
    if ic is None:
        raise UsageError(f"family {args.family} has no interchange to play on")
    cfg = GameConfig(args.r, args.t, args.rounds)
    if args.robber == "diverse":
        k = args.k if args.k is not None else cube_root_k(ic.order)
        cs = diverse_interchange_subgraph(ic, k)
        make_robber = lambda: diverse_robber(ic.graph, cs.members, cs.coloring, args.t)  # noqa: E731
    else:
        make_robber = lambda: interchange_robber(ic)  # noqa: E731
    games = []
    for seed, cop in _cops(args.cop, ic, args.seeds):
        outcome, tr = play(ic.graph, cop, make_robber(), cfg)
        games.append({"cop": args.cop, "seed": seed, "winner": outcome.winner,
                      "round": outcome.round, "transcript": transcript_to_dict(tr)})
    survived = sum(g["winner"] == "robber" for g in games)
    print(f"{'cop':<9}{'seed':>6}  {'winner':<7}{'rounds':>7}")
    for g in games:
        seed = "-" if g["seed"] is None else g["seed"]
        print(f"{g['cop']:<9}{seed:>6}  {g['winner']:<7}{g['round']:>7}")
    print(f"robber survived {survived}/{len(games)}")
    if args.out:
        _emit_json({"family": real.family, "params": real.params, "robber": args.robber,
                    "config": cfg.to_dict(), "survived": survived, "games": games}, args.out)
    return EXIT_OK


def cmd_solve_exact(args) -> int:
    g = graph_from_dict(_read_json(args.graph))
    value = exact_flip_width(g, args.r, args.t_max)
    print(value if value is not None else f">{args.t_max}")
    return EXIT_OK


def cmd_diversity(args) -> int:
    if args.graph:
        g = graph_from_dict(_read_json(args.graph))
        out = {"diversity": diversity(g, range(g.n))}
    else:
        real = _realization(args)
        if real.family == "hypercube":
            q = gen_hypercube(real.params["d"])
            out = {"family": "hypercube", "d": real.params["d"], "diversity": diversity(q, range(q.n))}
        elif real.interchange is not None:
            ic = real.interchange
            k = args.k if args.k is not None else cube_root_k(ic.order)
            cs = diverse_interchange_subgraph(ic, k)
            delta = chi_diversity(cs)
            out = {"family": real.family, "n": ic.order, "k": k, "members": len(cs.members),
                   "chi_diversity": delta if delta != float("inf") else "unconstrained",
                   "target": k + 1}
        else:
            out = {"family": real.family, "diversity": diversity(real.graph, range(real.graph.n))}
    _emit_json(out, args.out)
    return EXIT_OK


def cmd_transduce(args) -> int:
    if args.graph:
        g = graph_from_dict(_read_json(args.graph))
    else:
        if args.n is None:
            raise UsageError("give --graph or --n")
        g = random_graph(args.n, 0.5, np.random.default_rng(args.seed))
    sparse, decoded = transduce(g)
    ok = decoded.same_edges(g)
    _emit_json({"input": graph_to_dict(g), "sparse_edges": sparse.num_edges,
                "decoded": graph_to_dict(decoded), "round_trip": ok}, args.out)
    return EXIT_OK if ok else EXIT_CONTRACT


def cmd_render(args) -> int:
    if not args.svg:
        raise UsageError("--svg is required")
    if args.k is not None:
        if args.n is None:
            raise UsageError("--n is required with --k")
        svg = render_grid_pairs(tilted_grid_sorted(args.n, args.k), args.n,
                                f"tilted grid n={args.n} k={args.k}")
    else:
        real = _realization(args)
        svg = render_svg(real.scene if real.scene is not None else real.interchange)
    Path(args.svg).write_text(svg)
    print(f"wrote {args.svg}")
    return EXIT_OK


def cmd_suite(args) -> int:
    from .acceptance import CRITERIA, run_suite
    which = args.criteria or sorted(CRITERIA)
    bad = [c for c in which if c not in CRITERIA]
    if bad:
        raise UsageError(f"unknown criteria {bad}; choose from 1..{len(CRITERIA)}")
    results = run_suite(which, echo=print)
    passed = sum(r.passed for r in results)
    print(f"{passed}/{len(results)} criteria passed")
    if args.out:
        _emit_json([r.to_dict() for r in results], args.out)
    return EXIT_OK if passed == len(results) else EXIT_CONTRACT


# -- parser -----------------------------------------------------------------

def _family_flags(p, required=False) -> None:
    p.add_argument("--family", choices=sorted(FAMILIES), required=required)
    p.add_argument("--n", type=int, help="order (number of lanes)")
    p.add_argument("--d", type=int, help="dimension for rig / hypercube")
    p.add_argument("--beta", type=float, default=0.9)
    p.add_argument("--seed", type=int, default=0)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="flipwidth", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=f"flipwidth {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="build a construction and write its JSON")
    _family_flags(p, required=True)
    p.add_argument("--out")
    p.add_argument("--svg")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("validate", help="check an interchange JSON or a fresh construction")
    _family_flags(p)
    p.add_argument("--input")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("play", help="simulate games and report robber survival")
    _family_flags(p, required=True)
    p.add_argument("--t", type=int, default=1)
    p.add_argument("--r", type=_radius, default=2, help="1, 2, ... or inf")
    p.add_argument("--k", type=int)
    p.add_argument("--cop", choices=("random", "dyadic", "blockade"), default="random")
    p.add_argument("--robber", choices=("interchange", "diverse"), default="interchange")
    p.add_argument("--seeds", type=int, default=1)
    p.add_argument("--rounds", type=int, default=100)
    p.add_argument("--out")
    p.set_defaults(func=cmd_play)

    p = sub.add_parser("solve-exact", help="exact flip-width of a small graph")
    p.add_argument("--graph", required=True)
    p.add_argument("--r", type=_radius, default=1)
    p.add_argument("--t-max", type=int, default=1)
    p.set_defaults(func=cmd_solve_exact)

    p = sub.add_parser("diversity", help="measure (coloured) neighbourhood diversity")
    _family_flags(p)
    p.add_argument("--graph")
    p.add_argument("--k", type=int)
    p.add_argument("--out")
    p.set_defaults(func=cmd_diversity)

    p = sub.add_parser("transduce", help="dense interchange -> sparse -> decoded graph")
    p.add_argument("--graph")
    p.add_argument("--n", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_transduce)

    p = sub.add_parser("render", help="write an SVG of a construction or of the tilted grid")
    _family_flags(p)
    p.add_argument("--k", type=int, help="render the tilted grid of order --n instead")
    p.add_argument("--svg")
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("suite", help="run the acceptance battery")
    p.add_argument("--criteria", type=int, nargs="*")
    p.add_argument("--out")
    p.set_defaults(func=cmd_suite)
    return ap


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        parser.error(str(exc))  # exits with status 2
    except FlipwidthError as exc:
        diag = {"error": type(exc).__name__, "message": str(exc)}
        print(json.dumps(diag, sort_keys=True), file=sys.stderr)
        return EXIT_CONTRACT


if __name__ == "__main__":
    sys.exit(main())
