"""Exact SOD census of abelian quotient singularities.

Thin wrapper over the C++ core: the *_json entry points return parsed
dictionaries; all rationals stay exact as "p/q" strings.
"""

import json as _json

from ._mcgl import (  # noqa: F401
    ComputeError,
    InputError,
    candidate_coefficients,
    lambda_set,
    verify,
)
from ._mcgl import analyze_json as _analyze_json
from ._mcgl import census_json as _census_json
from ._mcgl import sod_verify_json as _sod_verify_json
from ._mcgl import terminalize_json as _terminalize_json


def analyze(spec, **kwargs):
    """Full pipeline report for a group spec ('n; a/r,b/r,...' lines)."""
    return _json.loads(_analyze_json(spec, **kwargs))


def terminalize(spec, **kwargs):
    """Maximal terminalization with its monotone MMP decomposition."""
    return _json.loads(_terminalize_json(spec, **kwargs))


def census(spec):
    """Semi-orthogonal decomposition census with rank bookkeeping."""
    return _json.loads(_census_json(spec))


def sod_verify(r, s, cutoff=8, seed=0):
    """Case-1 SOD certificate for source orders r, target orders s."""
    return _json.loads(_sod_verify_json(r, s, cutoff, seed))


__all__ = [
    "ComputeError",
    "InputError",
    "analyze",
    "candidate_coefficients",
    "census",
    "lambda_set",
    "sod_verify",
    "terminalize",
    "verify",
]
