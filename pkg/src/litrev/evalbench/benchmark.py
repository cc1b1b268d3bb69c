"""Synthetic benchmark generation: 20 chunk-grounded questions answerable only
from the vector store, and 20 graph questions (4 per template) answerable only
from the knowledge graph.

Graph questions are instantiated from five templates -- subject centered,
object discovery, predicate discovery, fact check, indirect relationship --
by seeded sampling of nodes and edges; each item stores the Cypher whose
execution produced its ground truth, so items can be re-verified against
the graph at any time.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from ..agent.llm import LlmClient
from ..graph.cypher_ast import (
    CountItem,
    CypherQuery,
    ExistsItem,
    NodePattern,
    PathPattern,
    PropertyItem,
    RelPattern,
    TypeItem,
    render,
)
from ..graph.executor import ResultTable, execute
from ..graph.model import PropertyGraph
from ..vector.chunking import Chunk

QTYPES = (
    "subject_centered",
    "object_discovery",
    "predicate_discovery",
    "fact_check",
    "indirect_relationship",
)

DEFAULT_VS_QUESTIONS = 20
DEFAULT_PER_TYPE = 4


class InsufficientChunks(ValueError):
    """Fewer chunks than requested benchmark questions."""


class InsufficientGraph(ValueError):
    """A graph template cannot find enough distinct bindings."""


@dataclass
class BenchmarkItem:
    question: str
    ground_truth: str
    target_tool: str  # "graph" | "vector"
    qtype: str
    provenance: dict = field(default_factory=dict)
    cypher: str | None = None

    def to_dict(self) -> dict:
        return {
            "question": self.question,
            "ground_truth": self.ground_truth,
            "target_tool": self.target_tool,
            "qtype": self.qtype,
            "provenance": self.provenance,
            "cypher": self.cypher,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "BenchmarkItem":
        return cls(
            question=d["question"],
            ground_truth=d["ground_truth"],
            target_tool=d["target_tool"],
            qtype=d["qtype"],
            provenance=d.get("provenance", {}),
            cypher=d.get("cypher"),
        )


def write_benchmark_jsonl(items: list[BenchmarkItem], path: str | Path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for item in items:
            fh.write(json.dumps(item.to_dict(), ensure_ascii=False))
            fh.write("\n")


def read_benchmark_jsonl(path: str | Path) -> list[BenchmarkItem]:
    items = []
    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if line:
                items.append(BenchmarkItem.from_dict(json.loads(line)))
    return items


def answer_from_table(table: ResultTable) -> str:
    """Canonical answer string for a result table.

    A single boolean cell becomes yes/no; otherwise cells join with ", "
    within a row and rows join with "; ".
    """
    if len(table.columns) == 1 and len(table.rows) == 1 and isinstance(
        table.rows[0][0], bool
    ):
        return "yes" if table.rows[0][0] else "no"

    def cell(v) -> str:
        if isinstance(v, bool):
            return "true" if v else "false"
        return str(v)

    return "; ".join(", ".join(cell(v) for v in row) for row in table.rows)


# ---------------------------------------------------------------------------
# Vector-store questions
# ---------------------------------------------------------------------------


def load_vs_prompt_bundle(path: str | Path | None = None) -> dict:
    if path is not None:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    ref = resources.files("litrev.evalbench").joinpath("data/vs_question_prompt.json")
    return json.loads(ref.read_text(encoding="utf-8"))


def build_vs_question_prompt(chunk_text: str, bundle: dict) -> str:
    examples = "\n".join(f"- {e}" for e in bundle.get("examples", []))
    return (
        f"{bundle['instruction']}\n\n"
        f"Examples of good questions:\n{examples}\n\n"
        f"Context:\n{chunk_text}\n\n"
        "Question:"
    )


def gen_vs_questions(
    chunks: list[Chunk],
    llm: LlmClient,
    n: int = DEFAULT_VS_QUESTIONS,
    rng_seed: int = 0,
    prompt_bundle: dict | None = None,
) -> list[BenchmarkItem]:
    """Sample ``n`` distinct chunks and ask the LLM for one question per chunk."""
    if len(chunks) < n:
        raise InsufficientChunks(f"need {n} chunks, have {len(chunks)}")
    bundle = prompt_bundle or load_vs_prompt_bundle()
    rng = random.Random(rng_seed)
    sampled = rng.sample(chunks, n)
    items = []
    for chunk in sampled:
        question = llm.complete(build_vs_question_prompt(chunk.text, bundle)).strip()
        items.append(
            BenchmarkItem(
                question=question,
                ground_truth=chunk.text,
                target_tool="vector",
                qtype="vector_chunk",
                provenance={"chunk_id": chunk.chunk_id},
            )
        )
    return items


# ---------------------------------------------------------------------------
# Knowledge-graph questions
# ---------------------------------------------------------------------------


def _paper_node(title: str) -> NodePattern:
    return NodePattern(var="p", label="Paper", props=(("title", title),))


def _single(var: str, label: str, props=()) -> PathPattern:
    return PathPattern(nodes=(NodePattern(var=var, label=label, props=tuple(props)),))


def _item_from_query(
    graph: PropertyGraph, question: str, query: CypherQuery, qtype: str, provenance: dict
) -> BenchmarkItem:
    table = execute(query, graph)
    return BenchmarkItem(
        question=question,
        ground_truth=answer_from_table(table),
        target_tool="graph",
        qtype=qtype,
        provenance=provenance,
        cypher=render(query),
    )


def _papers(graph: PropertyGraph):
    return graph.nodes_with_label("Paper")


def _subject_centered(graph, rng, per_type):
    papers = _papers(graph)
    if len(papers) < per_type:
        raise InsufficientGraph(
            f"subject_centered needs {per_type} papers, graph has {len(papers)}"
        )
    items = []
    for paper in rng.sample(papers, per_type):
        title = paper.properties["title"]
        query = CypherQuery(
            patterns=(PathPattern(nodes=(_paper_node(title),)),),
            returns=(PropertyItem(var="p", key="abstract"),),
        )
        items.append(
            _item_from_query(
                graph,
                f"What is the paper '{title}' about?",
                query,
                "subject_centered",
                {"paper": paper.id},
            )
        )
    return items


_OBJECT_PREDICATES = (
    ("PUBLISHED_IN", "Year", "y", "value", "In which year was the paper '{title}' published?"),
    ("HAS_AUTHOR", "Author", "a", "name", "Who are the authors of the paper '{title}'?"),
    ("INDEXED_IN", "Database", "d", "name", "In which database is the paper '{title}' indexed?"),
    ("HAS_KEYWORD", "Keyword", "k", "term", "Which keywords represent the paper '{title}'?"),
)


def _object_discovery(graph, rng, per_type):
    papers = _papers(graph)
    if len(papers) < per_type:
        raise InsufficientGraph(
            f"object_discovery needs {per_type} papers, graph has {len(papers)}"
        )
    items = []
    for i, paper in enumerate(rng.sample(papers, per_type)):
        etype, label, var, key, template = _OBJECT_PREDICATES[i % len(_OBJECT_PREDICATES)]
        title = paper.properties["title"]
        query = CypherQuery(
            patterns=(
                PathPattern(
                    nodes=(
                        _paper_node(title),
                        NodePattern(var=var, label=label),
                    ),
                    rels=(RelPattern(rel_type=etype),),
                ),
            ),
            returns=(PropertyItem(var=var, key=key),),
        )
        items.append(
            _item_from_query(
                graph,
                template.format(title=title),
                query,
                "object_discovery",
                {"paper": paper.id, "predicate": etype},
            )
        )
    return items


_NEIGHBOR_PHRASES = {
    "Author": "'{key}'",
    "Year": "the year {key}",
    "Database": "the database '{key}'",
    "Keyword": "the keyword '{key}'",
    "Citation": "the DOI {key}",
}


def _predicate_discovery(graph, rng, per_type):
    edges = graph.edges
    if len(edges) < per_type:
        raise InsufficientGraph(
            f"predicate_discovery needs {per_type} edges, graph has {len(edges)}"
        )
    items = []
    for edge in rng.sample(edges, per_type):
        paper = graph.nodes[edge.src]
        neighbor = graph.nodes[edge.dst]
        title = paper.properties["title"]
        key_prop = {"Author": "name", "Year": "value", "Database": "name",
                    "Keyword": "term", "Citation": "doi"}[neighbor.label]
        phrase = _NEIGHBOR_PHRASES[neighbor.label].format(key=neighbor.natural_key)
        query = CypherQuery(
            patterns=(
                PathPattern(
                    nodes=(
                        _paper_node(title),
                        NodePattern(
                            var="x",
                            label=neighbor.label,
                            props=((key_prop, neighbor.natural_key),),
                        ),
                    ),
                    rels=(RelPattern(var="r"),),
                ),
            ),
            returns=(TypeItem(var="r"),),
        )
        items.append(
            _item_from_query(
                graph,
                f"How is {phrase} related to the paper '{title}'?",
                query,
                "predicate_discovery",
                {"paper": paper.id, "neighbor": neighbor.id},
            )
        )
    return items


def _exists_query(anchor: PathPattern, pattern: PathPattern) -> CypherQuery:
    return CypherQuery(patterns=(anchor,), returns=(ExistsItem(pattern=pattern),))


def _fact_check(graph, rng, per_type):
    pos = []
    neg = []
    papers = _papers(graph)
    keywords = graph.nodes_with_label("Keyword")
    authors = graph.nodes_with_label("Author")
    for paper in papers:
        for kw in keywords:
            entry = ("HAS_KEYWORD", paper, kw)
            (pos if graph.has_edge(paper.id, "HAS_KEYWORD", kw.id) else neg).append(entry)
        for author in authors:
            entry = ("HAS_AUTHOR", paper, author)
            (pos if graph.has_edge(paper.id, "HAS_AUTHOR", author.id) else neg).append(entry)
    n_pos = (per_type + 1) // 2
    n_neg = per_type - n_pos
    if len(pos) < n_pos or len(neg) < n_neg:
        raise InsufficientGraph(
            f"fact_check needs {n_pos} positive and {n_neg} negative bindings"
        )
    items = []
    for etype, paper, other in rng.sample(pos, n_pos) + rng.sample(neg, n_neg):
        title = paper.properties["title"]
        if etype == "HAS_KEYWORD":
            question = f"Is the paper '{title}' represented by the keyword '{other.natural_key}'?"
            target = NodePattern(label="Keyword", props=(("term", other.natural_key),))
        else:
            question = f"Is '{other.natural_key}' an author of the paper '{title}'?"
            target = NodePattern(label="Author", props=(("name", other.natural_key),))
        pattern = PathPattern(
            nodes=(NodePattern(var="p"), target),
            rels=(RelPattern(rel_type=etype),),
        )
        query = _exists_query(PathPattern(nodes=(_paper_node(title),)), pattern)
        items.append(
            _item_from_query(
                graph,
                question,
                query,
                "fact_check",
                {"paper": paper.id, "other": other.id, "predicate": etype},
            )
        )
    return items


def _two_hop_exists(graph, start_id: str, first_in: str, second_out: str, end_id: str) -> bool:
    mids = {src for _, src in graph.in_neighbors(start_id, first_in)}
    for mid in mids:
        if any(dst == end_id for _, dst in graph.out_neighbors(mid, second_out)):
            return True
    return False


def _indirect_relationship(graph, rng, per_type):
    years = graph.nodes_with_label("Year")
    keywords = graph.nodes_with_label("Keyword")
    authors = graph.nodes_with_label("Author")
    pos = []
    neg = []
    for kw in keywords:
        for year in years:
            entry = ("HAS_KEYWORD", kw, year)
            linked = _two_hop_exists(graph, kw.id, "HAS_KEYWORD", "PUBLISHED_IN", year.id)
            (pos if linked else neg).append(entry)
    for author in authors:
        for year in years:
            entry = ("HAS_AUTHOR", author, year)
            linked = _two_hop_exists(graph, author.id, "HAS_AUTHOR", "PUBLISHED_IN", year.id)
            (pos if linked else neg).append(entry)
    n_pos = (per_type + 1) // 2
    n_neg = per_type - n_pos
    if len(pos) < n_pos or len(neg) < n_neg:
        raise InsufficientGraph(
            f"indirect_relationship needs {n_pos} positive and {n_neg} negative bindings"
        )
    items = []
    for etype, start, year in rng.sample(pos, n_pos) + rng.sample(neg, n_neg):
        y = year.natural_key
        if etype == "HAS_KEYWORD":
            question = (
                f"Is the keyword '{start.natural_key}' associated with any paper "
                f"published in {y}?"
            )
            anchor = _single("k", "Keyword", (("term", start.natural_key),))
            head = NodePattern(var="k")
        else:
            question = f"Did '{start.natural_key}' publish any paper in {y}?"
            anchor = _single("a", "Author", (("name", start.natural_key),))
            head = NodePattern(var="a")
        pattern = PathPattern(
            nodes=(
                head,
                NodePattern(label="Paper"),
                NodePattern(label="Year", props=(("value", y),)),
            ),
            rels=(
                RelPattern(rel_type=etype, direction="in"),
                RelPattern(rel_type="PUBLISHED_IN", direction="out"),
            ),
        )
        query = _exists_query(anchor, pattern)
        items.append(
            _item_from_query(
                graph,
                question,
                query,
                "indirect_relationship",
                {"start": start.id, "year": year.id, "predicate": etype},
            )
        )
    return items


_TEMPLATES = {
    "subject_centered": _subject_centered,
    "object_discovery": _object_discovery,
    "predicate_discovery": _predicate_discovery,
    "fact_check": _fact_check,
    "indirect_relationship": _indirect_relationship,
}


def gen_kg_questions(
    graph: PropertyGraph,
    per_type: int = DEFAULT_PER_TYPE,
    rng_seed: int = 0,
) -> list[BenchmarkItem]:
    """Instantiate ``per_type`` questions for each of the five graph templates."""
    rng = random.Random(rng_seed)
    items = []
    for qtype in QTYPES:
        items.extend(_TEMPLATES[qtype](graph, rng, per_type))
    return items
