"""Sparsest cut relaxations, structure theorems and rounding."""

import json
from fractions import Fraction

from . import _core
from ._core import (
    DegenerateInput,
    ExtractionFailure,
    Graph,
    ParseError,
    RandomnessFailure,
    ResourceLimit,
    SamplingFailure,
    SolverFailure,
    StageError,
    complete,
    cycle,
    disjoint_union,
    laplacian_spectrum,
    planted_clusters,
    random_regular,
)

__all__ = [
    "DegenerateInput", "ExtractionFailure", "Graph", "ParseError", "RandomnessFailure",
    "ResourceLimit", "SamplingFailure", "SolverFailure", "StageError",
    "brute_phi", "brute_phi_k", "check_feasibility", "complete", "cover_via_lambda",
    "cover_via_phi", "cycle", "diagnose", "disjoint_union", "embed_integral_cut",
    "emit_plotdata", "expansion", "laplacian_spectrum", "pipeline", "planted_clusters",
    "random_regular", "round_arv", "solve_arv", "verify_outcome",
]


def expansion(G, S):
    return Fraction(*_core.expansion(G, list(S)))


def brute_phi(G):
    value, witness = _core.brute_phi(G)
    return Fraction(*value), witness


def brute_phi_k(G, k):
    value, witness = _core.brute_phi_k(G, k)
    return Fraction(*value), witness


def solve_arv(G, tol=1e-6):
    return json.loads(_core.solve_arv(G, tol))


def embed_integral_cut(G, S):
    return json.loads(_core.embed_integral_cut(G, list(S)))


def check_feasibility(solution, tol=1e-6):
    return _core.check_feasibility(json.dumps(solution), tol)


def cover_via_lambda(G, solution, k, eps, delta, seed):
    return json.loads(_core.cover_via_lambda(G, json.dumps(solution), k, eps, delta, seed))


def cover_via_phi(G, solution, k, eps, delta, seed):
    return json.loads(_core.cover_via_phi(G, json.dumps(solution), k, eps, delta, seed))


def verify_outcome(G, solution, outcome, k, eps, delta):
    return _core.verify_outcome(G, json.dumps(solution), json.dumps(outcome), k, eps, delta)


def round_arv(G, solution, cover, seed):
    return json.loads(_core.round_arv(G, json.dumps(solution), json.dumps(cover), seed))


def diagnose(graph, **options):
    return json.loads(_core.run(json.dumps({"command": "diagnose", "graph": str(graph), **options})))


def pipeline(graph, seed, **options):
    cfg = {"command": "pipeline", "graph": str(graph), "seed": seed, **options}
    return json.loads(_core.run(json.dumps(cfg)))


def emit_plotdata(input_dir, out=""):
    return _core.run(json.dumps({"command": "emit-plotdata", "input_dir": str(input_dir), "out": str(out)}))
