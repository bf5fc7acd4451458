"""Exact-arithmetic analysis of information aggregation in prediction markets.

Scenarios and reports are JSON documents. Rational numbers appear as strings
such as "1/3"; `rationals` converts them to `fractions.Fraction`.
"""

import json
from fractions import Fraction
from typing import Any, Mapping, Optional, Tuple

from ._infomarket import (
    InfomarketError,
    InstanceError,
    PreconditionError,
    ScenarioError,
    normalize_scenario,
    reverify,
)
from ._infomarket import run as _run

POSITIVE, NEGATIVE, UNDETERMINED = 0, 1, 2

__all__ = [
    "InfomarketError",
    "InstanceError",
    "PreconditionError",
    "ScenarioError",
    "load_scenario",
    "rationals",
    "reverify",
    "run",
]


def _text(doc: Any) -> str:
    return doc if isinstance(doc, str) else json.dumps(doc)


def load_scenario(doc: Any) -> dict:
    """Validates a scenario (dict or JSON text) and returns its canonical form."""
    return json.loads(normalize_scenario(_text(doc)))


def run(command: str, scenario: Any, options: Optional[Mapping[str, Any]] = None) -> Tuple[int, dict]:
    """Runs a command and returns (exit_code, report).

    `options` takes the command line flags by name: kind, true_state,
    max_rounds, events, candidates, budget, seed, base.
    """
    code, body = _run(command, _text(scenario), json.dumps(dict(options or {})))
    return code, json.loads(body)


def _as_fraction(value: str) -> Any:
    try:
        return Fraction(value)
    except ValueError:
        return value


def rationals(report: Any) -> Any:
    """Recursively replaces rational strings with Fractions."""
    if isinstance(report, dict):
        return {k: rationals(v) for k, v in report.items()}
    if isinstance(report, list):
        return [rationals(v) for v in report]
    if isinstance(report, str):
        return _as_fraction(report)
    return report
