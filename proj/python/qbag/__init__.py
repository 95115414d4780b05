"""Quantitative bipolar argumentation: strengths, set contributions, principle checks."""

from __future__ import annotations

import json
from typing import Any, Iterable, Mapping, Sequence

from . import _core

__all__ = [
    "QbagError",
    "Graph",
    "PRESETS",
    "fixture",
    "fixture_ids",
    "fixture_topic",
    "evaluate",
    "derivatives",
    "contribution",
    "check_principle",
    "principle_names",
    "function_names",
    "review_contributions",
    "reproduce",
    "run_matrix",
]

PRESETS = ("QE", "DFQuAD", "SD-DFQuAD", "EB", "EBT")


class QbagError(ValueError):
    """Library error; ``code`` is one of unknown-id, out-of-range, invalid-graph,
    cycle, domain, invalid-contributor, budget-exceeded, invalid-argument, parse."""

    def __init__(self, message: str, code: str):
        super().__init__(message)
        self.code = code


_core._set_error_type(QbagError)


class Graph(_core.Graph):
    """A QBAG. Build from JSON text, a dict in the same layout, or keywords."""

    def __init__(self, source: str | Mapping[str, Any] | None = None, *,
                 arguments: Mapping[str, float] | None = None,
                 attacks: Iterable[Sequence[str]] = (),
                 supports: Iterable[Sequence[str]] = ()):
        if source is None:
            source = {
                "arguments": [{"id": k, "initial_strength": v} for k, v in (arguments or {}).items()],
                "attacks": [list(e) for e in attacks],
                "supports": [list(e) for e in supports],
            }
        if not isinstance(source, str):
            source = json.dumps(source)
        super().__init__(source)

    def to_dict(self) -> dict:
        return json.loads(self.to_json())

    def __repr__(self) -> str:
        return f"Graph({self.ids()!r})"


def _graph(g: Graph | _core.Graph | str | Mapping[str, Any]) -> _core.Graph:
    if isinstance(g, _core.Graph):
        return g
    if isinstance(g, str) and g in _core.fixture_ids():
        return _core.Graph.fixture(g)
    return Graph(g)


def _sem(s: str | Mapping[str, Any]) -> str:
    return s if isinstance(s, str) else json.dumps(s)


def fixture(fixture_id: str) -> _core.Graph:
    return _core.Graph.fixture(fixture_id)


fixture_ids = _core.fixture_ids
fixture_topic = _core.fixture_topic
principle_names = _core.principle_names
function_names = _core.function_names


def evaluate(graph, semantics="QE") -> dict[str, float]:
    """Final strengths keyed by argument id."""
    return _core.evaluate(_graph(graph), _sem(semantics))


def derivatives(graph, semantics, seed: str) -> dict[str, tuple[float, float]]:
    """(sigma, d sigma / d tau(seed)) for every argument; one-sided at tau(seed) = 1."""
    return _core.derivatives(_graph(graph), _sem(semantics), seed)


def contribution(graph, semantics, fn: str, contributor: Iterable[str], topic: str, *,
                 partition: Iterable[Iterable[str]] | None = None, monte_carlo: bool = False,
                 samples: int = 20000, seed: int = 20240601, budget: int | None = None) -> dict:
    """Set contribution of ``contributor`` to ``topic``.

    ``fn`` is removal, intrinsic, shapley, gradient-max, gradient-min or
    gradient-maxabs. With ``partition`` the partition-level Shapley value is
    computed instead and ``fn`` must be shapley.
    """
    if partition is not None and fn != "shapley":
        raise QbagError("a partition applies only to the shapley function", "invalid-argument")
    blocks = None if partition is None else [list(b) for b in partition]
    return json.loads(_core.contribution(_graph(graph), _sem(semantics), fn, list(contributor), topic,
                                         blocks, monte_carlo, samples, seed, budget))


def check_principle(principle: str, fn: str, graph, semantics, topic: str) -> dict:
    """Verdict on one graph: status, cases examined, and a witness when violated."""
    return json.loads(_core.check_principle(principle, fn, _graph(graph), _sem(semantics), topic))


def review_contributions(text_graph, manifest: Mapping[str, Any], focus: Iterable[str]) -> list[dict]:
    return json.loads(_core.review_contributions(_graph(text_graph), json.dumps(manifest), list(focus)))


def reproduce(fixture_id: str) -> list[dict]:
    return json.loads(_core.reproduce(fixture_id))


def run_matrix() -> dict:
    return json.loads(_core.run_matrix())
