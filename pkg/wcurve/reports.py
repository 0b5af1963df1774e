"""
Module for axiom-check reports and their JSON form.
"""

__all__ = [
    "AxiomReport",
    "jsonable",
]

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

from wcurve.errors import AxiomFailure


def jsonable(value: Any) -> Any:
    """
    Convert labels, ring elements and sparse vectors into plain JSON data.

    Tuples become lists, RingElems their coefficient arrays, and
    dictionaries get string keys so `json.dumps(..., sort_keys=True)` is
    deterministic.
    """
    if hasattr(value, 'to_json'):
        return value.to_json()
    if isinstance(value, dict):
        return {_key(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    if isinstance(value, (set, frozenset)):
        return sorted(jsonable(v) for v in value)
    if isinstance(value, float) and value == float('inf'):
        return 'inf'
    return value


def _key(k: Any) -> str:
    if isinstance(k, tuple):
        return '|'.join(_key(x) for x in k) if k else '()'
    return str(k)


@dataclass
class AxiomReport:
    """
    Outcome of an exact axiom check.

    Attributes:
        subject (str): what was checked, e.g. 'cdg_algebra:A'
        checked (int): number of basis tuples evaluated
        skipped (int): tuples skipped because a structure constant lies
            outside the materialized window or weight cap
        failures (list): one dict per failure with keys axiom, witness,
            defect
        verified_range (dict): the weights/degrees the check covers
    """
    subject: str
    checked: int = 0
    skipped: int = 0
    failures: List[Dict[str, Any]] = field(default_factory=list)
    verified_range: Dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.failures

    def fail(self, axiom: str, witness: Any, defect: Any = None) -> None:
        self.failures.append({'axiom': axiom,
                              'witness': jsonable(witness),
                              'defect': jsonable(defect)})

    def ok(self) -> None:
        self.checked += 1

    def skip(self) -> None:
        self.skipped += 1

    def merge(self, other: 'AxiomReport',
              subject: Optional[str] = None) -> 'AxiomReport':
        """Concatenate two reports; counts add and failures keep order."""
        merged = AxiomReport(subject or self.subject,
                             self.checked + other.checked,
                             self.skipped + other.skipped,
                             self.failures + other.failures,
                             {**self.verified_range, **other.verified_range})
        return merged

    def raise_if_failed(self) -> 'AxiomReport':
        if self.failures:
            raise AxiomFailure(self)
        return self

    def to_dict(self) -> Dict[str, Any]:
        return {
            'subject': self.subject,
            'passed': self.passed,
            'checked': self.checked,
            'skipped': self.skipped,
            'verified_range': jsonable(self.verified_range),
            'failures': self.failures,
        }
