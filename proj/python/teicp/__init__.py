"""Complementarity eigenpairs of tensor pairs via moment relaxations."""

import json

from ._teicp import (
    InputError,
    SolverError,
    Tensor,
    TensorPair,
    all_ceigs_copositive,
    all_ceigs_general,
    enumerate_all,
    formula_families,
    formula_tensor,
    load_problem,
)
from . import _teicp

__all__ = [
    "InputError",
    "SolverError",
    "Tensor",
    "TensorPair",
    "all_ceigs_copositive",
    "all_ceigs_general",
    "enumerate_all",
    "formula_families",
    "formula_tensor",
    "generate_problem",
    "load_problem",
    "pair_from_dict",
    "run",
]


def pair_from_dict(problem):
    return _teicp.pair_from_json(json.dumps(problem))


def generate_problem(a_family, b_family="identity", dim=2, order=3, seed=0):
    return json.loads(_teicp.generate_problem(a_family, b_family, dim, order, seed))


def run(problem, method="auto", seed=1, assert_copositive=False, oracle=False):
    """Solve a problem (dict in the problem-file schema, or a TensorPair).

    Returns (report dict, exit code) as the command-line tool would.
    """
    pair = problem if isinstance(problem, TensorPair) else pair_from_dict(problem)
    text, code = _teicp.run_problem(pair, method, seed, assert_copositive, oracle)
    return json.loads(text), code
