"""Few-shot bundles, shipped as editable data files and validated at load.

The routing bundle must hold exactly 10 examples, 5 per tool; the Cypher
bundle exactly 30 question/query pairs, each of which must parse in the
supported subset.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from ..graph.cypher_parser import ParseError, UnsupportedFeature, parse_cypher

ROUTING_EXAMPLE_COUNT = 10
ROUTING_PER_TOOL = 5
CYPHER_EXAMPLE_COUNT = 30


class BundleInvalid(ValueError):
    """A few-shot bundle file violates its contract."""


@dataclass(frozen=True)
class FewShotExample:
    question: str
    tool: str
    retrieved_context: str
    final_answer: str


@dataclass(frozen=True)
class RoutingBundle:
    instruction: str
    examples: tuple[FewShotExample, ...]


@dataclass(frozen=True)
class CypherBundle:
    instruction: str
    examples: tuple[tuple[str, str], ...]  # (question, cypher)


def _read_bundle(path: str | Path | None, default_name: str) -> dict:
    if path is not None:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    ref = resources.files("litrev.agent").joinpath(f"data/{default_name}")
    return json.loads(ref.read_text(encoding="utf-8"))


def load_routing_bundle(path: str | Path | None = None) -> RoutingBundle:
    raw = _read_bundle(path, "routing_examples.json")
    examples = []
    for i, ex in enumerate(raw.get("examples", [])):
        try:
            examples.append(
                FewShotExample(
                    question=ex["question"],
                    tool=ex["tool"],
                    retrieved_context=ex["retrieved_context"],
                    final_answer=ex["final_answer"],
                )
            )
        except KeyError as exc:
            raise BundleInvalid(f"routing example {i} misses key {exc}") from exc
    if len(examples) != ROUTING_EXAMPLE_COUNT:
        raise BundleInvalid(
            f"routing bundle needs {ROUTING_EXAMPLE_COUNT} examples, got {len(examples)}"
        )
    per_tool: dict[str, int] = {}
    for ex in examples:
        if ex.tool not in ("graph", "vector"):
            raise BundleInvalid(f"routing example has unknown tool {ex.tool!r}")
        per_tool[ex.tool] = per_tool.get(ex.tool, 0) + 1
    if per_tool.get("graph") != ROUTING_PER_TOOL or per_tool.get("vector") != ROUTING_PER_TOOL:
        raise BundleInvalid(f"routing bundle must hold {ROUTING_PER_TOOL} examples per tool")
    return RoutingBundle(instruction=raw.get("instruction", ""), examples=tuple(examples))


def load_cypher_bundle(path: str | Path | None = None) -> CypherBundle:
    raw = _read_bundle(path, "cypher_examples.json")
    pairs = []
    for i, ex in enumerate(raw.get("examples", [])):
        question = ex.get("question", "")
        cypher = ex.get("cypher", "")
        if not question or not cypher:
            raise BundleInvalid(f"cypher example {i} must carry question and cypher")
        try:
            parse_cypher(cypher)
        except (ParseError, UnsupportedFeature) as exc:
            raise BundleInvalid(f"cypher example {i} does not parse: {exc}") from exc
        pairs.append((question, cypher))
    if len(pairs) != CYPHER_EXAMPLE_COUNT:
        raise BundleInvalid(
            f"cypher bundle needs {CYPHER_EXAMPLE_COUNT} pairs, got {len(pairs)}"
        )
    return CypherBundle(instruction=raw.get("instruction", ""), examples=tuple(pairs))
