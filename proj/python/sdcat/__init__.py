"""Subshifts, block maps and their categorical properties."""

import json

from ._sdcat import (
    BlockMap,
    BudgetExceeded,
    ParseError,
    Shift,
    ValidationError,
    run_cli,
)
from . import _sdcat

__all__ = [
    "BlockMap",
    "BudgetExceeded",
    "ParseError",
    "Shift",
    "ValidationError",
    "check",
    "classify",
    "run_cli",
]


def check(prop, bmap, category):
    """Verdict for one property as a dict with an "answer" key."""
    return json.loads(_sdcat.check(prop, bmap, category))


def classify(bmap, category):
    """All properties of a map in one category, keyed by property name."""
    return json.loads(_sdcat.classify(bmap, category))
