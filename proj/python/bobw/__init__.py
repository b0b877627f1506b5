"""Exact best-of-both-worlds fair division: algorithms, audits and oracles.

Instances are given as a fixture name ("FIX-A" .. "FIX-E"), a JSON file
path, or a dict in the instance JSON format. Every call returns
``(status, body)`` where ``status`` is 0 on pass and 2 when an audit fails,
and ``body`` is the decoded JSON report.
"""

import json

from . import _bobw
from ._bobw import PreconditionError, ResourceCapError

__all__ = [
    "PreconditionError",
    "ResourceCapError",
    "instance",
    "validate",
    "eat",
    "solve",
    "verify",
    "sample",
    "estimate",
    "oracle",
    "repro",
]


def _source(inst):
    if isinstance(inst, dict):
        return json.dumps(inst)
    return str(inst)


def _eps(epsilon):
    return None if epsilon is None else str(epsilon)


def _decode(result):
    status, body = result
    return status, json.loads(body)


def instance(inst, epsilon=None):
    """Resolve a fixture name, path or dict to the instance JSON dict."""
    return json.loads(_bobw.instance(_source(inst), _eps(epsilon)))


def validate(inst, epsilon=None):
    return _decode(_bobw.validate(_source(inst), _eps(epsilon)))


def eat(inst, duration="1", pad="none", epsilon=None):
    return _decode(_bobw.eat(_source(inst), str(duration), pad, _eps(epsilon)))


def solve(inst, algorithm, seed=None, step_cap=-1, epsilon=None):
    return _decode(_bobw.solve(_source(inst), algorithm, seed, step_cap, _eps(epsilon)))


def verify(inst, data, prop, alpha=None, epsilon=None):
    """Audit an allocation, matrix or distribution (a dict/list, or a solve body)."""
    a = None if alpha is None else str(alpha)
    return _decode(_bobw.verify(_source(inst), json.dumps(data), prop, a, _eps(epsilon)))


def sample(inst, sampler, seed, count=1, epsilon=None):
    return _decode(_bobw.sample(_source(inst), sampler, seed, count, _eps(epsilon)))


def estimate(inst, sampler, samples, seed, epsilon=None):
    return _decode(_bobw.estimate(_source(inst), sampler, samples, seed, _eps(epsilon)))


def oracle(what, inst, leaf_cap=1000000, epsilon=None):
    return _decode(_bobw.oracle(what, _source(inst), leaf_cap, _eps(epsilon)))


def repro(scenario, epsilon=None, instance=None):
    return _decode(_bobw.repro(scenario, _eps(epsilon), instance))
