"""Finite quantum groups: axioms, corepresentations, duality and free product probes."""

import json as _json

from ._core import *  # noqa: F401,F403
from ._core import run_suite_json as _run_suite_json

__version__ = "0.1.0"


def run_suite(suite="all", **kwargs):
    """Run a check suite and return the report as a dict."""
    return _json.loads(_run_suite_json(suite, **kwargs))
