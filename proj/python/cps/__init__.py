"""Exact complexity and window-condition tools for cut and project sets."""

import json

from . import _cps
from ._cps import ParseError, Scheme, builtin_names

__all__ = [
    "ParseError",
    "Scheme",
    "builtin",
    "builtin_names",
    "conditions",
    "count",
    "exponents",
    "load",
    "refinement_demo",
    "validate",
]


def builtin(name, shifted=True):
    return Scheme.builtin(name, shifted)


def load(path):
    with open(path) as f:
        return Scheme.from_json(f.read())


def validate(scheme, radius=20):
    return json.loads(_cps.validate_json(scheme, radius))


def exponents(scheme):
    return json.loads(_cps.exponents_json(scheme))


def count(scheme, radii, scan_multiplier=0.0):
    """Rows of r, p_r, C_r, Cprime_r (and bruteforce_p_r when scanning)."""
    return json.loads(_cps.count_json(scheme, list(radii), scan_multiplier))


def conditions(scheme, search_radius=4):
    return json.loads(_cps.conditions_json(scheme, search_radius))


def refinement_demo(scheme, radii=(10, 20)):
    return json.loads(_cps.refinement_demo_json(scheme, list(radii)))
