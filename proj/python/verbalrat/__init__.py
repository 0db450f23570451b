"""Python access to the verbalrat core."""

import json as _json

from ._verbalrat import (
    CapExceeded,
    ParseError,
    PreconditionError,
    Word,
    bezout_substitution,
    classify,
    gamma,
    member,
    positive_members,
    reduce,
    root,
)
from . import _verbalrat


def is_value(w, g, cap=2):
    """Three-valued membership of g in w[F2] as a dict."""
    return _json.loads(_verbalrat.is_value(Word(w) if isinstance(w, str) else w, Word(g) if isinstance(g, str) else g, cap))


def refute(expr, w):
    """Refutation report (with replay result) for a candidate expression."""
    return _json.loads(_verbalrat.refute_json(expr, Word(w) if isinstance(w, str) else w))


__all__ = [
    "CapExceeded",
    "ParseError",
    "PreconditionError",
    "Word",
    "bezout_substitution",
    "classify",
    "gamma",
    "is_value",
    "member",
    "positive_members",
    "reduce",
    "refute",
    "root",
]
