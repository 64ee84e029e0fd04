"""Bisimilarity modulo a variable set.

``bisimilar`` runs splitter-driven partition refinement on the disjoint
union of the two models; ``naive_bisimilar`` computes the greatest
bisimulation between them by deleting violating pairs until a fixpoint,
and serves as an independent oracle.
"""

from __future__ import annotations

from .formula import Diamond, Box, NegVar, Var, big_and, big_or
from .kripke import PointedModel


class _Union:
    """Disjoint union of several models on integer nodes."""

    def __init__(self, models, P):
        P = frozenset(P)
        self.offsets = []
        self.labels = []
        self.succ = []
        self.owner = []
        for k, m in enumerate(models):
            base = len(self.labels)
            self.offsets.append(base)
            idx = {s: base + i for i, s in enumerate(m.states)}
            for s in m.states:
                self.labels.append(m.valuation[s] & P)
                self.succ.append([idx[t] for t in m.successors(s)])
                self.owner.append((k, s))
        self.pred = [[] for _ in self.labels]
        for u, outs in enumerate(self.succ):
            for v in outs:
                self.pred[v].append(u)
        self._models = models

    def node(self, k, state):
        m = self._models[k]
        return self.offsets[k] + m._index[state]


def coarsest_partition(union: _Union) -> list:
    """Block id per node of the coarsest stable partition refining valuations."""
    n = len(union.labels)
    by_label = {}
    for u, lab in enumerate(union.labels):
        by_label.setdefault(lab, []).append(u)
    blocks = {}
    block_of = [0] * n
    for i, members in enumerate(by_label.values()):
        blocks[i] = set(members)
        for u in members:
            block_of[u] = i
    next_id = len(blocks)
    worklist = list(blocks)
    queued = set(worklist)
    pred = union.pred
    while worklist:
        sid = worklist.pop()
        queued.discard(sid)
        pre = set()
        for v in blocks[sid]:
            pre.update(pred[v])
        touched = {}
        for u in pre:
            touched.setdefault(block_of[u], []).append(u)
        for bid, hit in touched.items():
            block = blocks[bid]
            if len(hit) == len(block):
                continue
            new = set(hit)
            block -= new
            blocks[next_id] = new
            for u in new:
                block_of[u] = next_id
            for b in (bid, next_id):
                if b not in queued:
                    queued.add(b)
                    worklist.append(b)
            next_id += 1
    return block_of


def bisimilar(m1: PointedModel, m2: PointedModel, P) -> bool:
    """Decide whether the two pointed models are bisimilar modulo ``P``."""
    union = _Union([m1, m2], P)
    block_of = coarsest_partition(union)
    return block_of[union.node(0, m1.point)] == block_of[union.node(1, m2.point)]


def bisimulation_classes(models, P) -> list:
    """Class id of each model's point; equal ids mean bisimilar modulo ``P``."""
    union = _Union(list(models), P)
    block_of = coarsest_partition(union)
    return [block_of[union.node(k, m.point)] for k, m in enumerate(models)]


def naive_bisimilar(m1: PointedModel, m2: PointedModel, P) -> bool:
    """Greatest-fixpoint computation over pairs of states."""
    P = frozenset(P)
    rel = {(s, t) for s in m1.states for t in m2.states
           if m1.val(s, P) == m2.val(t, P)}
    changed = True
    while changed:
        changed = False
        for s, t in list(rel):
            forth = all(any((s2, t2) in rel for t2 in m2.successors(t))
                        for s2 in m1.successors(s))
            back = all(any((s2, t2) in rel for s2 in m1.successors(s))
                       for t2 in m2.successors(t))
            if not (forth and back):
                rel.discard((s, t))
                changed = True
    return (m1.point, m2.point) in rel


def distinguishing_formula(m1: PointedModel, m2: PointedModel, P):
    """A formula over ``P`` true at m1's point and false at m2's point.

    Returns None when the points are bisimilar modulo ``P``.
    """
    P = frozenset(P)
    union = _Union([m1, m2], P)
    n = len(union.labels)
    # k-bisimilarity classes per level until stable
    ids = {}
    level = [ids.setdefault(lab, len(ids)) for lab in union.labels]
    levels = [level]
    while True:
        ids = {}
        nxt = [ids.setdefault((level[u], frozenset(level[v] for v in union.succ[u])), len(ids))
               for u in range(n)]
        stable = len(ids) == len(set(level))
        levels.append(nxt)
        level = nxt
        if stable:
            break
    s0 = union.node(0, m1.point)
    t0 = union.node(1, m2.point)
    if levels[-1][s0] == levels[-1][t0]:
        return None
    memo = {}

    def dist(s, t):
        key = (s, t)
        if key in memo:
            return memo[key]
        k = next(i for i, lv in enumerate(levels) if lv[s] != lv[t])
        if k == 0:
            diff = union.labels[s] - union.labels[t]
            if diff:
                f = Var(min(diff))
            else:
                f = NegVar(min(union.labels[t] - union.labels[s]))
        else:
            prev = levels[k - 1]
            t_classes = {prev[v] for v in union.succ[t]}
            s_classes = {prev[v] for v in union.succ[s]}
            witness = next((v for v in sorted(union.succ[s]) if prev[v] not in t_classes), None)
            if witness is not None:
                f = Diamond(big_and(dist(witness, v) for v in union.succ[t]))
            else:
                witness = next(v for v in sorted(union.succ[t]) if prev[v] not in s_classes)
                f = Box(big_or(dist(v, witness) for v in union.succ[s]))
        memo[key] = f
        return f

    return dist(s0, t0)
