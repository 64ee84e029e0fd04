"""Brute-force ground truth by exhaustive enumeration of small models.

Everything here is deliberately naive: frames are enumerated as adjacency
bitmasks, filtered by the frame conditions of the logic, and combined with
every valuation. The deciders elsewhere in the package are tested against
these functions.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations, product

from .bisim import bisimulation_classes
from .errors import ResourceLimitError
from .formula import Formula, variables
from .kripke import PointedModel
from .logics import Logic, is_frame_for

#: enumeration refuses when n^2 + |P| * n exceeds this many bits
MAX_BITS = 20


@dataclass(frozen=True)
class ModelBudget:
    max_states: int
    P: frozenset = frozenset()

    def __post_init__(self):
        if self.max_states < 1:
            raise ValueError("max_states must be at least 1")
        object.__setattr__(self, "P", frozenset(self.P))


def _check_budget(n, P):
    bits = n * n + len(P) * n
    if bits > MAX_BITS:
        raise ResourceLimitError(
            "oracle", f"{n} states over {len(P)} variables need 2^{bits} candidates, "
                      f"cap is 2^{MAX_BITS}")


@lru_cache(maxsize=None)
def _frames(logic: Logic, n: int) -> tuple:
    """Adjacency lists of all frames on n states valid for ``logic``."""
    states = list(range(n))
    pairs = [(i, j) for i in states for j in states]
    out = []
    for mask in range(1 << len(pairs)):
        edges = [pairs[k] for k in range(len(pairs)) if mask >> k & 1]
        if is_frame_for(states, edges, logic):
            out.append(frozenset(edges))
    return tuple(out)


def _encode(edges, vals, point, perm, n):
    e = sorted((perm[a], perm[b]) for a, b in edges)
    v = [None] * n
    for i, x in enumerate(vals):
        v[perm[i]] = x
    return (tuple(e), tuple(v), perm[point])


def _structures(logic, n, P, prune):
    """Yield (edges, valuation tuple, points worth keeping)."""
    P = sorted(P)
    vals_one = [frozenset(p for p, bit in zip(P, bits) if bit)
                for bits in product((True, False), repeat=len(P))]
    perms = list(permutations(range(n))) if prune else []
    identity = tuple(range(n))

    def key(edges, vals, point, perm):
        e, v, pt = _encode(edges, vals, point, perm, n)
        return e, tuple(tuple(sorted(x)) for x in v), pt

    for edges in _frames(logic, n):
        for vals in product(vals_one, repeat=n):
            points = []
            for point in range(n):
                if prune:
                    own = key(edges, vals, point, identity)
                    if any(key(edges, vals, point, p) < own for p in perms):
                        continue
                points.append(point)
            if points:
                yield edges, vals, points


def _model(n, edges, vals, point):
    names = [f"s{i}" for i in range(n)]
    return PointedModel(names, [(names[a], names[b]) for a, b in edges],
                        {names[i]: vals[i] for i in range(n)}, names[point])


def enumerate_models(logic: Logic, budget: ModelBudget, prune=True):
    """All pointed models of ``logic`` with at most ``budget.max_states`` states.

    With ``prune`` isomorphic copies are skipped (pointed isomorphism).
    """
    _check_budget(budget.max_states, budget.P)
    for n in range(1, budget.max_states + 1):
        for edges, vals, points in _structures(logic, n, budget.P, prune):
            base = _model(n, edges, vals, 0)
            for p in points:
                yield base if p == 0 else base.with_point(f"s{p}")


class ClassTable:
    """Pointed models within a budget, grouped into bisimulation classes.

    Only one representative per class needs to be model-checked, since
    formulas over P cannot tell bisimilar models apart.
    """

    def __init__(self, logic: Logic, P, n: int):
        self.logic = logic
        self.P = frozenset(P)
        self.n = n
        structures = []
        points = []
        _check_budget(n, self.P)
        for m in range(1, n + 1):
            for edges, vals, pts in _structures(logic, m, self.P, True):
                structures.append(_model(m, edges, vals, 0))
                points.append(pts)
        pointed = [(k, p) for k, pts in enumerate(points) for p in pts]
        models = [structures[k].with_point(f"s{p}") for k, p in pointed]
        ids = bisimulation_classes(models, self.P) if models else []
        seen = {}
        for (k, p), cid in zip(pointed, ids):
            seen.setdefault(cid, (k, p))
        # representatives grouped by structure so each structure is checked once
        self.structures = structures
        self.reps = {}
        for cid, (k, p) in sorted(seen.items(), key=lambda x: x[1]):
            self.reps.setdefault(k, []).append(p)
        self.class_count = len(seen)

    def satisfying(self, fs, limit=None):
        """Representatives (as pointed models) of classes satisfying all of ``fs``."""
        out = []
        for k, pts in self.reps.items():
            m = self.structures[k]
            mask = -1
            for f in fs:
                mask &= m.truth_set(f, cache=False)
                if not mask:
                    break
            for p in pts:
                if mask >> p & 1:
                    out.append(m.with_point(f"s{p}"))
                    if limit is not None and len(out) >= limit:
                        return out
        return out


_tables = {}


def class_table(logic: Logic, P, n: int) -> ClassTable:
    key = (logic, frozenset(P), n)
    table = _tables.get(key)
    if table is None:
        table = _tables.setdefault(key, ClassTable(logic, P, n))
    return table


def brute_sat(logic: Logic, f: Formula, n: int) -> bool:
    """Whether some model of ``logic`` with at most n states satisfies ``f``."""
    return bool(class_table(logic, variables(f), n).satisfying([f], limit=1))


def brute_incomplete(logic: Logic, f: Formula, n: int):
    """Two non-bisimilar models of ``f`` with at most n states, or None."""
    hits = class_table(logic, variables(f), n).satisfying([f], limit=2)
    return tuple(hits) if len(hits) == 2 else None


def default_budget(logic: Logic, P) -> int:
    """State budget used by the test suites for formulas over ``P``."""
    if logic.has_5:
        return 2 ** len(P) + 1
    return 3
