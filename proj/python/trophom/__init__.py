"""Integral tropical homology of rational polyhedral complexes.

Functions accept either JSON text or plain Python objects (dicts/lists).
"""

import json as _json

from . import _core
from ._core import InputError

__all__ = [
    "InputError",
    "run",
    "validate",
    "is_balanced",
    "bergman_fan",
    "bm_homology",
    "cohomology",
    "pd_check",
    "kunneth_check",
]


def _text(obj):
    return obj if isinstance(obj, str) else _json.dumps(obj)


def run(*args):
    """Run a CLI subcommand. Returns (exit_code, stdout, stderr)."""
    return _core.run([str(a) for a in args])


def validate(complex_):
    return _json.loads(_core.validate(_text(complex_)))


def is_balanced(cycle):
    return _core.is_balanced(_text(cycle))


def bergman_fan(matroid):
    return _json.loads(_core.bergman_fan(_text(matroid)))


def bm_homology(complex_, threads=1):
    return _core.bm_homology(_text(complex_), threads)


def cohomology(complex_, threads=1):
    return _core.cohomology(_text(complex_), threads)


def pd_check(complex_):
    return _core.pd_check(_text(complex_))


def kunneth_check(a, b):
    return _core.kunneth_check(_text(a), _text(b))
