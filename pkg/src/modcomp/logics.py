"""The normal modal logics between K and S5, identified by axiom flags."""

from __future__ import annotations

from dataclasses import dataclass

SERIAL = "serial"
REFLEXIVE = "reflexive"
TRANSITIVE = "transitive"
EUCLIDEAN = "euclidean"


@dataclass(frozen=True)
class Logic:
    has_D: bool = False
    has_T: bool = False
    has_4: bool = False
    has_5: bool = False

    @property
    def serial(self):
        """True when models must be serial (axiom D, or T which implies it)."""
        return self.has_D or self.has_T

    @property
    def name(self):
        return _NAMES[self.axioms()]

    def axioms(self):
        return frozenset(a for a, on in (("D", self.has_D), ("T", self.has_T),
                                         ("4", self.has_4), ("5", self.has_5)) if on)

    def extends(self, other: "Logic") -> bool:
        """True when every theorem of ``other`` is a theorem of ``self``."""
        mine = set(self.axioms())
        if self.has_T:
            mine.add("D")
        return set(other.axioms()) <= mine

    def __str__(self):
        return self.name


K = Logic()
D = Logic(has_D=True)
T = Logic(has_T=True)
K4 = Logic(has_4=True)
D4 = Logic(has_D=True, has_4=True)
S4 = Logic(has_T=True, has_4=True)
K5 = Logic(has_5=True)
KD5 = Logic(has_D=True, has_5=True)
K45 = Logic(has_4=True, has_5=True)
KD45 = Logic(has_D=True, has_4=True, has_5=True)
S5 = Logic(has_T=True, has_4=True, has_5=True)

LOGICS = {"k": K, "d": D, "t": T, "k4": K4, "d4": D4, "s4": S4, "k5": K5,
          "kd5": KD5, "k45": K45, "kd45": KD45, "s5": S5}
ALIASES = {"kt5": S5, "kt45": S5, "kd": D, "kt": T, "kd4": D4, "kt4": S4}

_NAMES = {l.axioms(): name for name, l in LOGICS.items()}


def get_logic(name: str) -> Logic:
    """Look up a logic by its canonical name (case-insensitive)."""
    key = name.strip().lower()
    if key in LOGICS:
        return LOGICS[key]
    if key in ALIASES:
        return ALIASES[key]
    raise ValueError(f"unknown logic {name!r}; expected one of {', '.join(LOGICS)}")


def frame_conditions(logic: Logic) -> frozenset:
    out = set()
    if logic.has_D:
        out.add(SERIAL)
    if logic.has_T:
        out.add(REFLEXIVE)
    if logic.has_4:
        out.add(TRANSITIVE)
    if logic.has_5:
        out.add(EUCLIDEAN)
    return frozenset(out)


def _successors(states, edges):
    succ = {s: set() for s in states}
    for a, b in edges:
        succ[a].add(b)
    return succ


def satisfies_condition(states, edges, condition) -> bool:
    succ = _successors(states, edges)
    if condition == SERIAL:
        return all(succ[s] for s in states)
    if condition == REFLEXIVE:
        return all(s in succ[s] for s in states)
    if condition == TRANSITIVE:
        return all(succ[b] <= succ[a] for a in states for b in succ[a])
    if condition == EUCLIDEAN:
        return all(succ[a] <= succ[b] for a in states for b in succ[a])
    raise ValueError(f"unknown frame condition {condition!r}")


def is_frame_for(states, edges, logic: Logic) -> bool:
    """Check the frame conditions of ``logic`` literally, without closing R."""
    states = list(states)
    edges = list(edges)
    return all(satisfies_condition(states, edges, c) for c in frame_conditions(logic))
