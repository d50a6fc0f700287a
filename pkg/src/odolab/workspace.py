"""JSON workspace documents: named groups, subgroups, actions and scales.

Example::

    {
      "groups": {"D4": {"degree": 4, "generators": {"r": "(1234)", "s": "(12)(34)"}},
                 "S3": {"builtin": "S3"}},
      "subgroups": {"d4-s": {"ambient": "D4", "generators": ["(12)(34)"]}},
      "actions": {"d4-mod-s": {"coset_of": "d4-s"},
                  "rot": {"group": "D4", "points": 2, "images": {"r": "(12)", "s": "()"}},
                  "free": {"free": true, "points": 3, "images": {"g1": "(123)", "g2": "(12)"}}},
      "scales": {"chain": {"group": "D4", "members": [["(13)(24)"], ["(1234)"]]}}
    }

Generators given as a list are named ``g1, g2, ...``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from . import corpus
from . import groups as gr
from .actions import FiniteAction, coset_action
from .errors import InputError
from .groups import PermGroup, Subgroup
from .perm import parse_cycles
from .scales import Scale, make_scale


@dataclass
class Workspace:
    groups: dict[str, PermGroup] = field(default_factory=dict)
    generator_names: dict[str, list[str]] = field(default_factory=dict)
    subgroups: dict[str, Subgroup] = field(default_factory=dict)
    actions: dict[str, FiniteAction] = field(default_factory=dict)
    scales: dict[str, Scale] = field(default_factory=dict)
    notes: dict[str, str] = field(default_factory=dict)

    def kind_of(self, name: str) -> str:
        for kind in ("groups", "subgroups", "actions", "scales"):
            if name in getattr(self, kind):
                return kind[:-1]
        raise InputError(f"unknown name {name!r}")

    def action(self, name: str) -> FiniteAction:
        """An action by name; a subgroup name stands for its coset action."""
        if name in self.actions:
            return self.actions[name]
        if name in self.subgroups:
            H = self.subgroups[name]
            return coset_action(H.ambient, H, name=name)
        raise InputError(f"{name!r} is not an action or subgroup")

    def subgroup(self, name: str) -> Subgroup:
        if name in self.subgroups:
            return self.subgroups[name]
        raise InputError(f"{name!r} is not a subgroup")


def _named_generators(entry) -> list[tuple[str, str]]:
    gens = entry.get("generators", [])
    if isinstance(gens, dict):
        return list(gens.items())
    return [(f"g{i + 1}", g) for i, g in enumerate(gens)]


def _group(name: str, entry: dict) -> tuple[PermGroup, list[str]]:
    if "builtin" in entry:
        try:
            G = corpus.group(entry["builtin"])
        except KeyError as exc:
            raise InputError(str(exc)) from None
        return G, [f"g{i + 1}" for i in range(len(G.generators))]
    degree = int(entry["degree"])
    named = _named_generators(entry)
    G = gr.closure(degree, [parse_cycles(text, degree) for _, text in named], name=name)
    return G, [n for n, _ in named]


def load(doc: dict) -> Workspace:
    """Build a workspace from a parsed JSON document, resolving cross-references."""
    ws = Workspace(notes=dict(doc.get("notes", {})))
    try:
        for name, entry in doc.get("groups", {}).items():
            ws.groups[name], ws.generator_names[name] = _group(name, entry)
        for name, entry in doc.get("subgroups", {}).items():
            G = _lookup(ws.groups, entry["ambient"], "group")
            gens = [parse_cycles(t, G.degree) for t in entry.get("generators", [])]
            ws.subgroups[name] = gr.subgroup(G, gens, name=name)
        for name, entry in doc.get("actions", {}).items():
            ws.actions[name] = _action(ws, name, entry)
        for name, entry in doc.get("scales", {}).items():
            G = _lookup(ws.groups, entry["group"], "group")
            members = [gr.subgroup(G, [parse_cycles(t, G.degree) for t in gens]) for gens in entry["members"]]
            ws.scales[name] = make_scale(G, members)
    except KeyError as exc:
        raise InputError(f"missing field {exc}") from None
    names = [n for kind in (ws.groups, ws.subgroups, ws.actions, ws.scales) for n in kind]
    if len(names) != len(set(names)):
        raise InputError("names must be unique across groups, subgroups, actions and scales")
    return ws


def _lookup(table: dict, name: str, kind: str):
    if name not in table:
        raise InputError(f"unknown {kind} {name!r}")
    return table[name]


def _action(ws: Workspace, name: str, entry: dict) -> FiniteAction:
    if "coset_of" in entry:
        H = _lookup(ws.subgroups, entry["coset_of"], "subgroup")
        return coset_action(H.ambient, H, name=name)
    points = int(entry["points"])
    images = entry["images"]
    if entry.get("free"):
        perms = [parse_cycles(text, points) for text in images.values()]
        return FiniteAction.from_free_images(perms, name=name)
    gname = entry["group"]
    G = _lookup(ws.groups, gname, "group")
    gen_names = ws.generator_names[gname]
    missing = set(gen_names) - set(images)
    if missing:
        raise InputError(f"action {name!r} lacks images for {sorted(missing)}")
    perms = [parse_cycles(images[k], points) for k in gen_names]
    return FiniteAction(G, points, perms, name=name)


def load_path(path: str | Path) -> Workspace:
    try:
        doc = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read workspace {path}: {exc}") from None
    return load(doc)


def builtin_fixtures() -> dict:
    return json.loads(resources.files("odolab").joinpath("data/fixtures.json").read_text())
