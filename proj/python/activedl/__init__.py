"""Active database rules: rewriting, partial stable models and update semantics."""

import json

from . import _core
from ._core import Error, ParseError, PreconditionError, ResourceError, info_leq, parse_database, parse_program, rewrite, well_founded

__all__ = [
    "Error",
    "ParseError",
    "PreconditionError",
    "ResourceError",
    "compare",
    "info_leq",
    "models",
    "parse_database",
    "parse_program",
    "rewrite",
    "run",
    "well_founded",
]


def models(program, database="", delta="", full=False, cap=20):
    """Model family as the `models --json` document."""
    return json.loads(_core.models(program, database, delta, full, cap))


def run(program, database="", delta="", semantics="ws", seed=None, cap=20):
    """Run report as the `apply --json` document."""
    return json.loads(_core.run(program, database, delta, semantics, seed, cap))


def compare(program, database="", delta="", cap=20):
    return json.loads(_core.compare(program, database, delta, cap))
