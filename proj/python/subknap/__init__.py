"""Monotone submodular maximization under a knapsack constraint."""

import json

from ._subknap import (
    CapacityError,
    Instance,
    csv_header,
    eval_exact,
    generate,
    instance_from_json,
    load_instance,
    round_point,
    save_instance,
)
from . import _subknap

__all__ = [
    "CapacityError",
    "Instance",
    "csv_header",
    "eval_exact",
    "generate",
    "instance_from_json",
    "load_instance",
    "round_point",
    "run",
    "save_instance",
    "verify",
]


def run(instance, algorithm="knapsack", epsilon=0.5, mode="practical", t=None, r=None,
        phases=None, seed=0, limit=1e5, trials=4, traces=False):
    """Runs one algorithm and returns its report as a dict."""
    return json.loads(_subknap._run_json(instance, algorithm, epsilon, mode, t, r, phases,
                                         seed, limit, trials, traces))


def verify(instance, epsilon=0.5, t=None, r=None, phases=None, seed=0, trials=10000,
           traces=False):
    """Checks the per-phase guarantees on a small instance; returns the report as a dict."""
    return json.loads(_subknap._verify_json(instance, epsilon, t, r, phases, seed, trials,
                                            traces))
