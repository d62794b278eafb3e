"""Python interface to the epsfree C++ core.

Labels, word positions and permutation images are 1-based, exactly as in the
CLI's JSON files. Exact values come back as ``complex``-like pairs of
``fractions.Fraction``.
"""

import json
from fractions import Fraction

from . import _epsfree
from ._epsfree import JsonError, ResourceError, ValidationError

__all__ = [
    "ValidationError",
    "ResourceError",
    "JsonError",
    "epsilon_rows",
    "model",
    "check_word",
    "wg_table",
    "moment",
    "simulate",
    "run_criteria",
]


def epsilon_rows(rows):
    """Wrap a square 0/1 list of lists in the epsilon file layout."""
    return {"n": len(rows), "rows": [list(map(int, r)) for r in rows]}


def _eps(eps):
    return eps if isinstance(eps, dict) else epsilon_rows(eps)


def model(eps, strategy="max-cliques"):
    """Leg assignment ``{"strings": [...], "legs": {"1": [...], ...}}``."""
    return json.loads(_epsfree.model(json.dumps(_eps(eps)), strategy))


def check_word(word, eps):
    return json.loads(_epsfree.check_word(json.dumps(list(word)), json.dumps(_eps(eps))))


def wg_table(k, n, group="unitary", allow_large=False):
    """Weingarten values keyed by cycle type (or coset type), as Fractions."""
    out = json.loads(_epsfree.wg_table(k, n, group, allow_large))
    out["values"] = {key: Fraction(v) for key, v in out["values"].items()}
    return out


def _entry(v):
    if isinstance(v, Fraction):
        return f"{v.numerator}/{v.denominator}"
    if isinstance(v, complex):
        return [v.real, v.imag]
    if isinstance(v, (list, tuple)):
        return [_entry(x) for x in v]
    return v


def _operands(operands):
    return json.dumps([{"family": op["family"], "rows": [[_entry(x) for x in row] for row in op["rows"]]}
                       for op in operands])


def moment(word, assignment, operands, n, allow_large=False):
    """Exact expected normalized trace. ``value`` is a (re, im) pair of Fractions
    for exact inputs and a ``complex`` otherwise."""
    out = json.loads(_epsfree.moment(json.dumps(list(word)), json.dumps(assignment), _operands(operands), n,
                                     allow_large))
    v = out["value"]
    out["value"] = (Fraction(v["re"]), Fraction(v["im"])) if isinstance(v, dict) else complex(*v)
    return out


def simulate(word, assignment, n, trials, seed, operands=None, group="unitary", workers=1):
    """Monte Carlo mean and standard error. ``group`` is unitary, orthogonal or gue."""
    ops = _operands(operands or [])
    out = json.loads(_epsfree.simulate(json.dumps(list(word)), json.dumps(assignment), ops, n, trials, seed, group,
                                       workers))
    out["mean"] = complex(*out["mean"])
    return out


def run_criteria(ids=None, seed=20240611):
    ids = list(range(1, _epsfree.criterion_count + 1)) if ids is None else list(ids)
    return _epsfree.run_criteria(ids, seed)
