"""The answer type of the completeness deciders."""

from __future__ import annotations

import json
from dataclasses import dataclass

from .formula import Formula, parse
from .kripke import PointedModel, model_from_dict, model_to_dict

COMPLETE = "complete"
INCOMPLETE = "incomplete"

PROVENANCES = ("triviality", "flat", "cc", "unsat")


@dataclass(frozen=True)
class Verdict:
    outcome: str
    provenance: str
    psi: Formula | None = None
    witnesses: tuple | None = None

    def __post_init__(self):
        if self.outcome not in (COMPLETE, INCOMPLETE):
            raise ValueError(f"bad outcome {self.outcome!r}")
        if self.provenance not in PROVENANCES:
            raise ValueError(f"bad provenance {self.provenance!r}")
        if self.outcome == INCOMPLETE and self.psi is None:
            raise ValueError("an incomplete verdict needs a distinguishing formula")

    @property
    def complete(self) -> bool:
        return self.outcome == COMPLETE

    def __bool__(self):
        return self.complete

    def to_dict(self) -> dict:
        return {
            "verdict": self.outcome,
            "psi": None if self.psi is None else str(self.psi),
            "witnesses": None if self.witnesses is None
            else [model_to_dict(m) for m in self.witnesses],
            "provenance": self.provenance,
        }

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)

    @classmethod
    def from_dict(cls, d: dict) -> "Verdict":
        psi = d.get("psi")
        wit = d.get("witnesses")
        return cls(outcome=d["verdict"], provenance=d["provenance"],
                   psi=None if psi is None else parse(psi),
                   witnesses=None if wit is None else tuple(model_from_dict(w) for w in wit))

    @classmethod
    def from_json(cls, text: str) -> "Verdict":
        return cls.from_dict(json.loads(text))


def complete_verdict(provenance) -> Verdict:
    return Verdict(COMPLETE, provenance)


def incomplete_verdict(provenance, psi, witnesses=None) -> Verdict:
    if witnesses is not None:
        witnesses = tuple(witnesses)
        if len(witnesses) != 2 or not all(isinstance(m, PointedModel) for m in witnesses):
            raise ValueError("witnesses must be a pair of pointed models")
    return Verdict(INCOMPLETE, provenance, psi, witnesses)
