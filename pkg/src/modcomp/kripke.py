"""Finite Kripke models, model checking and the model text format."""

from __future__ import annotations

import re
from typing import Iterable, Mapping

from .errors import ModelFormatError
from .formula import AND, BOT, BOX, DIA, NVAR, OR, TOP, VAR, Formula, sub
from .logics import Logic, is_frame_for


class PointedModel:
    """A finite Kripke model ``(W, R, V)`` with a distinguished state.

    State ids are opaque strings. Variables missing from a state's valuation
    are false there.
    """

    __slots__ = ("states", "edges", "valuation", "point", "_index", "_succ",
                 "_masks", "_sat")

    def __init__(self, states: Iterable[str], edges: Iterable[tuple],
                 valuation: Mapping[str, Iterable[str]] | None, point: str):
        states = tuple(states)
        if not states:
            raise ValueError("a model needs at least one state")
        if len(set(states)) != len(states):
            raise ValueError("duplicate state ids")
        index = {s: i for i, s in enumerate(states)}
        edges = frozenset((a, b) for a, b in edges)
        for a, b in edges:
            if a not in index or b not in index:
                raise ValueError(f"edge {a}->{b} mentions an unknown state")
        valuation = dict(valuation or {})
        for s in valuation:
            if s not in index:
                raise ValueError(f"valuation for unknown state {s!r}")
        if point not in index:
            raise ValueError(f"point {point!r} is not a state")
        self.states = states
        self.edges = edges
        self.valuation = {s: frozenset(valuation.get(s, ())) for s in states}
        self.point = point
        self._index = index
        succ = {s: set() for s in states}
        for a, b in edges:
            succ[a].add(b)
        self._succ = {s: frozenset(v) for s, v in succ.items()}
        self._masks = None
        self._sat = {}

    # equality is structural; isomorphic copies with other ids are distinct
    def _key(self):
        return (frozenset(self.states), self.edges,
                frozenset(self.valuation.items()), self.point)

    def __eq__(self, other):
        return isinstance(other, PointedModel) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return f"PointedModel({format_model(self)!r})"

    def __len__(self):
        """|M| = |W| + |R|."""
        return len(self.states) + len(self.edges)

    def successors(self, s):
        return self._succ[s]

    def val(self, s, P=None):
        v = self.valuation[s]
        return v if P is None else v & frozenset(P)

    def variables(self):
        out = set()
        for v in self.valuation.values():
            out |= v
        return frozenset(out)

    def with_point(self, point):
        return PointedModel(self.states, self.edges, self.valuation, point)

    def rename(self, mapping):
        """Return an isomorphic copy with state ids replaced via ``mapping``."""
        return PointedModel([mapping[s] for s in self.states],
                            [(mapping[a], mapping[b]) for a, b in self.edges],
                            {mapping[s]: v for s, v in self.valuation.items()},
                            mapping[self.point])

    def is_model_for(self, logic: Logic) -> bool:
        return is_frame_for(self.states, self.edges, logic)

    def _succ_masks(self):
        if self._masks is None:
            idx = self._index
            self._masks = [sum(1 << idx[t] for t in self._succ[s]) for s in self.states]
        return self._masks

    def truth_set(self, f: Formula, cache=True) -> int:
        """Bitmask (by state position) of the states where ``f`` holds.

        With ``cache=False`` intermediate results are not kept on the model.
        """
        cached = self._sat.get(f)
        if cached is not None:
            return cached
        n = len(self.states)
        full = (1 << n) - 1
        masks = self._succ_masks()
        sat = self._sat if cache else dict(self._sat)
        for g in sorted(sub(f), key=Formula.sort_key):
            if g in sat:
                continue
            kind = g.kind
            if kind == TOP:
                r = full
            elif kind == BOT:
                r = 0
            elif kind in (VAR, NVAR):
                r = 0
                for i, s in enumerate(self.states):
                    if g.name in self.valuation[s]:
                        r |= 1 << i
                if kind == NVAR:
                    r = full & ~r
            elif kind == AND:
                r = sat[g.left] & sat[g.right]
            elif kind == OR:
                r = sat[g.left] | sat[g.right]
            elif kind == DIA:
                c = sat[g.left]
                r = 0
                for i in range(n):
                    if masks[i] & c:
                        r |= 1 << i
            else:
                bad = full & ~sat[g.left]
                r = 0
                for i in range(n):
                    if not masks[i] & bad:
                        r |= 1 << i
            sat[g] = r
        return sat[f]

    def satisfies(self, f: Formula, state=None) -> bool:
        s = self.point if state is None else state
        return bool(self.truth_set(f) >> self._index[s] & 1)


def check(m: PointedModel, f: Formula) -> bool:
    """Truth of ``f`` at the point of ``m``."""
    return m.satisfies(f)


def reach(m: PointedModel, x: str) -> frozenset:
    """States reachable from ``x`` (including ``x``)."""
    seen = {x}
    stack = [x]
    while stack:
        s = stack.pop()
        for t in m.successors(s):
            if t not in seen:
                seen.add(t)
                stack.append(t)
    return frozenset(seen)


def restrict_to_reachable(m: PointedModel) -> PointedModel:
    keep = reach(m, m.point)
    if len(keep) == len(m.states):
        return m
    return PointedModel([s for s in m.states if s in keep],
                        [(a, b) for a, b in m.edges if a in keep],
                        {s: v for s, v in m.valuation.items() if s in keep},
                        m.point)


# ------------------------------------------------------------- text format

_STATE = re.compile(r"[A-Za-z0-9_.]+\Z")
_VARNAME = re.compile(r"[a-z][a-z0-9_]*\Z")


def parse_model(text: str) -> PointedModel:
    """Parse the line-oriented model format::

        states: a b c
        edges: a->b b->c
        val: a p q
        point: a
    """
    states = edges = point = None
    vals = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if ":" not in line:
            raise ModelFormatError(f"expected 'directive: ...', got {line!r}", lineno)
        key, _, rest = line.partition(":")
        key = key.strip()
        words = rest.split()
        if key == "states":
            if states is not None:
                raise ModelFormatError("duplicate 'states' directive", lineno)
            if not words:
                raise ModelFormatError("'states' needs at least one state", lineno)
            for w in words:
                if not _STATE.match(w):
                    raise ModelFormatError(f"bad state id {w!r}", lineno)
            if len(set(words)) != len(words):
                raise ModelFormatError("duplicate state ids", lineno)
            states = words
        elif key == "edges":
            if edges is not None:
                raise ModelFormatError("duplicate 'edges' directive", lineno)
            edges = []
            for w in words:
                a, arrow, b = w.partition("->")
                if not arrow or not a or not b:
                    raise ModelFormatError(f"bad edge {w!r}; expected a->b", lineno)
                edges.append((a, b))
        elif key == "val":
            if not words:
                raise ModelFormatError("'val' needs a state id", lineno)
            s, names = words[0], words[1:]
            if s in vals:
                raise ModelFormatError(f"duplicate 'val' directive for {s!r}", lineno)
            for p in names:
                if not _VARNAME.match(p) or p in ("true", "false"):
                    raise ModelFormatError(f"bad variable name {p!r}", lineno)
            vals[s] = (frozenset(names), lineno)
        elif key == "point":
            if point is not None:
                raise ModelFormatError("duplicate 'point' directive", lineno)
            if len(words) != 1:
                raise ModelFormatError("'point' takes exactly one state", lineno)
            point = words[0]
        else:
            raise ModelFormatError(f"unknown directive {key!r}", lineno)
    if states is None:
        raise ModelFormatError("missing 'states' directive")
    if point is None:
        raise ModelFormatError("missing 'point' directive")
    known = set(states)
    for a, b in edges or ():
        for s in (a, b):
            if s not in known:
                raise ModelFormatError(f"edge mentions unknown state {s!r}")
    for s, (_, lineno) in vals.items():
        if s not in known:
            raise ModelFormatError(f"valuation for unknown state {s!r}", lineno)
    if point not in known:
        raise ModelFormatError(f"point {point!r} is not a state")
    return PointedModel(states, edges or (), {s: v for s, (v, _) in vals.items()}, point)


def format_model(m: PointedModel) -> str:
    lines = ["states: " + " ".join(m.states)]
    order = {s: i for i, s in enumerate(m.states)}
    edges = sorted(m.edges, key=lambda e: (order[e[0]], order[e[1]]))
    lines.append("edges: " + " ".join(f"{a}->{b}" for a, b in edges))
    for s in m.states:
        if m.valuation[s]:
            lines.append(f"val: {s} " + " ".join(sorted(m.valuation[s])))
    lines.append(f"point: {m.point}")
    return "\n".join(lines) + "\n"


def model_to_dict(m: PointedModel) -> dict:
    order = {s: i for i, s in enumerate(m.states)}
    return {
        "states": list(m.states),
        "edges": [list(e) for e in sorted(m.edges, key=lambda e: (order[e[0]], order[e[1]]))],
        "valuation": {s: sorted(v) for s, v in m.valuation.items() if v},
        "point": m.point,
    }


def model_from_dict(d: dict) -> PointedModel:
    return PointedModel(d["states"], [tuple(e) for e in d["edges"]],
                        d.get("valuation", {}), d["point"])
