"""Satisfiability and provability for every supported logic.

Logics without axiom 5 use a depth-first tableau: propositional
saturation, then one successor per diamond carrying the box contents (and
the boxes themselves under axiom 4). Under axiom 4 a successor whose label
repeats an ancestor's label loops back to it. Logics with axiom 5 search
canonical flat shapes instead (see :mod:`modcomp.flatfive`).
"""

from __future__ import annotations

import threading
from typing import Iterable

from .formula import AND, BOT, BOX, DIA, NVAR, OR, VAR, Formula, negate
from .kripke import PointedModel
from .logics import Logic

_INF = float("inf")


class _Node:
    __slots__ = ("true_vars", "children", "self_loop")

    def __init__(self):
        self.true_vars = frozenset()
        self.children = []
        self.self_loop = False


def _saturations(label, has_T):
    """Clash-free propositional saturations of ``label``, in a fixed order."""
    start = set()
    todo = sorted(label, key=Formula.sort_key)
    yield from _saturate(start, todo, has_T)


def _saturate(S, todo, has_T):
    S = set(S)
    todo = list(todo)
    pending_or = sorted((g for g in S if g.kind == OR), key=Formula.sort_key)
    while todo:
        g = todo.pop()
        if g in S:
            continue
        kind = g.kind
        if kind == BOT:
            return
        if kind in (VAR, NVAR) and negate(g) in S:
            return
        S.add(g)
        if kind == AND:
            todo.append(g.right)
            todo.append(g.left)
        elif kind == OR:
            pending_or.append(g)
        elif kind == BOX and has_T:
            todo.append(g.left)
    for g in pending_or:
        if g.left in S or g.right in S:
            continue
        yield from _saturate(S, [g.left], has_T)
        yield from _saturate(S, [g.right], has_T)
        return
    yield frozenset(S)


class _Tableau:
    def __init__(self, logic: Logic):
        self.logic = logic
        self.closed = set()
        self.opened = {}
        self.lock = threading.Lock()

    def successor_labels(self, S):
        logic = self.logic
        base = set()
        dias = []
        for g in S:
            if g.kind == BOX:
                base.add(g.left)
                if logic.has_4:
                    base.add(g)
            elif g.kind == DIA:
                dias.append(g.left)
        labels = []
        seen = set()
        for psi in sorted(dias, key=Formula.sort_key):
            lab = frozenset(base | {psi})
            if lab not in seen:
                seen.add(lab)
                labels.append(lab)
        return labels, frozenset(base)

    def expand(self, label, ancestors):
        if label in self.closed:
            return None, _INF
        node = self.opened.get(label)
        if node is not None:
            return node, _INF
        logic = self.logic
        if logic.has_4:
            for i, (alabel, anode) in enumerate(ancestors):
                if alabel == label:
                    return anode, i
        depth = len(ancestors)
        node = _Node()
        ancestors.append((label, node))
        try:
            for S in _saturations(label, logic.has_T):
                labels, base = self.successor_labels(S)
                children = []
                dep = _INF
                ok = True
                self_loop = False
                if not labels and logic.has_D and not logic.has_T:
                    if base:
                        labels = [base]
                    else:
                        self_loop = True
                for lab in labels:
                    child, d = self.expand(lab, ancestors)
                    if child is None:
                        ok = False
                        break
                    children.append(child)
                    dep = min(dep, d)
                if ok:
                    node.true_vars = frozenset(g.name for g in S if g.kind == VAR)
                    node.children = children
                    node.self_loop = self_loop
                    if dep >= depth:
                        self.opened[label] = node
                        return node, _INF
                    return node, dep
            self.closed.add(label)
            return None, _INF
        finally:
            ancestors.pop()

    def run(self, label):
        with self.lock:
            node, _ = self.expand(frozenset(label), [])
        return node


_tableaux = {}


def _tableau(logic):
    tab = _tableaux.get(logic)
    if tab is None:
        tab = _tableaux.setdefault(logic, _Tableau(logic))
    return tab


def clear_caches():
    _tableaux.clear()


def _node_model(root, logic) -> PointedModel:
    ids = {}
    order = []
    stack = [root]
    while stack:
        node = stack.pop()
        if id(node) in ids:
            continue
        ids[id(node)] = f"w{len(order)}"
        order.append(node)
        stack.extend(reversed(node.children))
    succ = {ids[id(n)]: set() for n in order}
    for n in order:
        name = ids[id(n)]
        for c in n.children:
            succ[name].add(ids[id(c)])
        if n.self_loop or logic.has_T:
            succ[name].add(name)
    if logic.has_4:
        changed = True
        while changed:
            changed = False
            for s in succ:
                extra = set()
                for t in succ[s]:
                    extra |= succ[t]
                if not extra <= succ[s]:
                    succ[s] |= extra
                    changed = True
    edges = [(s, t) for s in succ for t in succ[s]]
    val = {ids[id(n)]: n.true_vars for n in order}
    return PointedModel([ids[id(n)] for n in order], edges, val, ids[id(root)])


def consistent(logic: Logic, fs: Iterable[Formula]) -> bool:
    """Whether the conjunction of ``fs`` is satisfiable in ``logic``."""
    fs = frozenset(fs)
    if logic.has_5:
        from .flatfive import find_shape
        return find_shape(logic, fs) is not None
    return _tableau(logic).run(fs) is not None


def satisfiable(logic: Logic, f: Formula) -> bool:
    return consistent(logic, [f])


def provable(logic: Logic, f: Formula) -> bool:
    return not satisfiable(logic, negate(f))


def find_model(logic: Logic, fs) -> PointedModel | None:
    """A finite model of ``logic`` satisfying ``fs`` at its point, or None.

    ``fs`` is a formula or an iterable of formulas.
    """
    fs = frozenset([fs]) if isinstance(fs, Formula) else frozenset(fs)
    if logic.has_5:
        from .flatfive import find_shape, realize
        shape = find_shape(logic, fs)
        return None if shape is None else realize(shape, logic)
    node = _tableau(logic).run(fs)
    if node is None:
        return None
    return _node_model(node, logic)
