"""Geometric scenes: typed object lists with roles and an interchange correspondence."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Mapping

from ..errors import ConstructionError, GraphFormatError
from ..graphcore import Graph
from ..interchange import Interchange, Violation, validate

KINDS = ("intervals", "chords", "segments", "squares", "points2d", "points3d", "points4d", "polygon")


@dataclass(frozen=True, eq=False)
class Scene:
    """Objects of one kind; object ``k`` is graph vertex ``k``.

    ``lanes`` lists object indices in lane order and ``ramps`` maps lane
    index pairs to object indices, when the scene realizes an interchange.
    """

    kind: str
    objects: tuple
    roles: tuple[str, ...]
    lanes: tuple[int, ...] = ()
    ramps: Mapping[tuple[int, int], int] = field(default_factory=dict)
    mode: str = "weak"
    meta: Mapping[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ConstructionError(f"unknown scene kind {self.kind!r}")
        object.__setattr__(self, "objects", tuple(self.objects))
        object.__setattr__(self, "roles", tuple(self.roles))
        if len(self.objects) != len(self.roles):
            raise ConstructionError(
                f"{len(self.objects)} objects but {len(self.roles)} roles")

    def __len__(self):
        return len(self.objects)

    def interchange(self, graph: Graph) -> Interchange:
        return Interchange(graph.with_labels(roles=self.roles), self.lanes, self.ramps, self.mode)

    def violations(self, graph: Graph) -> list[Violation]:
        return validate(graph, self.lanes, self.ramps, self.mode)


# -- JSON ----------------------------------------------------------------

def _enc(x):
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}" if x.denominator != 1 else str(x.numerator)
    if isinstance(x, (tuple, list)):
        return [_enc(y) for y in x]
    if isinstance(x, (int, float)):
        return x
    return float(x)


def _dec(x, where):
    if isinstance(x, str):
        try:
            return Fraction(x)
        except ValueError:
            raise GraphFormatError(f"bad rational {x!r}", where) from None
    if isinstance(x, list):
        return tuple(_dec(y, f"{where}[{k}]") for k, y in enumerate(x))
    if isinstance(x, (int, float)):
        return x
    raise GraphFormatError(f"unexpected value {x!r}", where)


def scene_to_dict(scene: Scene) -> dict:
    return {
        "kind": scene.kind,
        "objects": [_enc(o) for o in scene.objects],
        "roles": list(scene.roles),
        "lanes": list(scene.lanes),
        "ramps": {f"{i},{j}": v for (i, j), v in scene.ramps.items()},
        "mode": scene.mode,
        "meta": {k: _enc(v) if not isinstance(v, (str, bool, dict)) else v
                 for k, v in scene.meta.items()},
    }


def scene_from_dict(d, where: str = "$") -> Scene:
    if not isinstance(d, dict):
        raise GraphFormatError("scene must be an object", where)
    try:
        objects = [_dec(o, f"{where}.objects[{k}]") for k, o in enumerate(d["objects"])]
        ramps = {tuple(int(x) for x in key.split(",")): int(v)
                 for key, v in d.get("ramps", {}).items()}
        return Scene(d["kind"], objects, d["roles"], tuple(d.get("lanes", ())), ramps,
                     d.get("mode", "weak"), d.get("meta", {}))
    except KeyError as exc:
        raise GraphFormatError(f"missing key {exc}", where) from None
    except ConstructionError as exc:
        raise GraphFormatError(str(exc), where) from None
