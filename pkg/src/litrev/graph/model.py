"""In-memory property graph with natural-key node sharing and idempotent upserts."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..ingest.keywords import KeywordVector
from ..ingest.records import BibRecord
from .schema import EDGE_TYPES, LABELS, NATURAL_KEYS


class SchemaViolation(ValueError):
    """Node or edge violates the fixed schema (bad label, empty key, ...)."""


@dataclass(frozen=True)
class NodeRecord:
    id: str
    label: str
    properties: dict

    @property
    def natural_key(self):
        return self.properties[NATURAL_KEYS[self.label]]


@dataclass(frozen=True)
class EdgeRecord:
    src: str
    type: str
    dst: str


@dataclass
class MutationReport:
    nodes_created: int = 0
    edges_created: int = 0


class PropertyGraph:
    def __init__(self):
        self.nodes: dict[str, NodeRecord] = {}
        self._edge_set: set[tuple[str, str, str]] = set()
        self._out: dict[str, dict[str, list[str]]] = {}
        self._in: dict[str, dict[str, list[str]]] = {}

    # -- nodes ------------------------------------------------------------

    @staticmethod
    def node_id(label: str, key_value) -> str:
        return f"{label}:{key_value}"

    def get_by_key(self, label: str, key_value) -> NodeRecord | None:
        return self.nodes.get(self.node_id(label, key_value))

    def upsert_node(self, label: str, key_value, properties: dict | None = None):
        """Create-or-reuse by natural key. Returns (node_id, created)."""
        if label not in LABELS:
            raise SchemaViolation(f"unknown label {label!r}")
        if key_value is None or (isinstance(key_value, str) and not key_value.strip()):
            raise SchemaViolation(f"empty natural key for label {label!r}")
        nid = self.node_id(label, key_value)
        if nid in self.nodes:
            return nid, False
        props = {NATURAL_KEYS[label]: key_value}
        props.update(properties or {})
        self.nodes[nid] = NodeRecord(id=nid, label=label, properties=props)
        return nid, True

    def nodes_with_label(self, label: str) -> list[NodeRecord]:
        """Nodes of one label, sorted by natural key (stringified)."""
        picked = [n for n in self.nodes.values() if n.label == label]
        picked.sort(key=lambda n: str(n.natural_key))
        return picked

    def all_nodes(self) -> list[NodeRecord]:
        picked = list(self.nodes.values())
        picked.sort(key=lambda n: (n.label, str(n.natural_key)))
        return picked

    # -- edges ------------------------------------------------------------

    def upsert_edge(self, src: str, etype: str, dst: str) -> bool:
        if etype not in EDGE_TYPES:
            raise SchemaViolation(f"unknown edge type {etype!r}")
        src_node = self.nodes.get(src)
        dst_node = self.nodes.get(dst)
        if src_node is None or dst_node is None:
            raise SchemaViolation("edge endpoints must exist")
        want_src, want_dst = EDGE_TYPES[etype]
        if src_node.label != want_src or dst_node.label != want_dst:
            raise SchemaViolation(
                f"{etype} must link {want_src}->{want_dst}, "
                f"got {src_node.label}->{dst_node.label}"
            )
        key = (src, etype, dst)
        if key in self._edge_set:
            return False
        self._edge_set.add(key)
        self._out.setdefault(src, {}).setdefault(etype, []).append(dst)
        self._in.setdefault(dst, {}).setdefault(etype, []).append(src)
        return True

    @property
    def edges(self) -> list[EdgeRecord]:
        return [EdgeRecord(*key) for key in sorted(self._edge_set)]

    def has_edge(self, src: str, etype: str, dst: str) -> bool:
        return (src, etype, dst) in self._edge_set

    def out_neighbors(self, src: str, etype: str | None = None) -> list[tuple[str, str]]:
        """(edge_type, dst) pairs leaving ``src``, deterministically ordered."""
        table = self._out.get(src, {})
        types = [etype] if etype else sorted(table)
        out = []
        for t in types:
            for dst in sorted(table.get(t, [])):
                out.append((t, dst))
        return out

    def in_neighbors(self, dst: str, etype: str | None = None) -> list[tuple[str, str]]:
        table = self._in.get(dst, {})
        types = [etype] if etype else sorted(table)
        out = []
        for t in types:
            for src in sorted(table.get(t, [])):
                out.append((t, src))
        return out

    def counts(self) -> tuple[int, int]:
        return len(self.nodes), len(self._edge_set)

    # -- persistence --------------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "nodes": [
                {"id": n.id, "label": n.label, "properties": n.properties}
                for n in sorted(self.nodes.values(), key=lambda n: n.id)
            ],
            "edges": [
                {"src": s, "type": t, "dst": d} for s, t, d in sorted(self._edge_set)
            ],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "PropertyGraph":
        g = cls()
        for nd in d["nodes"]:
            g.nodes[nd["id"]] = NodeRecord(
                id=nd["id"], label=nd["label"], properties=dict(nd["properties"])
            )
        for ed in d["edges"]:
            key = (ed["src"], ed["type"], ed["dst"])
            g._edge_set.add(key)
            g._out.setdefault(key[0], {}).setdefault(key[1], []).append(key[2])
            g._in.setdefault(key[2], {}).setdefault(key[1], []).append(key[0])
        return g


def upsert_paper(
    graph: PropertyGraph,
    record: BibRecord,
    keywords: KeywordVector,
    cited_dois: list[str],
) -> MutationReport:
    """Insert one paper with its five edge families; repeat calls change nothing."""
    if not record.doi.strip():
        raise SchemaViolation("paper doi must be nonempty")
    if not record.title.strip() or not record.abstract.strip():
        raise SchemaViolation("paper title and abstract must be nonempty")
    if record.year <= 0:
        raise SchemaViolation("paper year must be a positive calendar year")
    report = MutationReport()

    def _node(label, key, props=None):
        nid, created = graph.upsert_node(label, key, props)
        report.nodes_created += int(created)
        return nid

    def _edge(src, etype, dst):
        report.edges_created += int(graph.upsert_edge(src, etype, dst))

    paper = _node(
        "Paper",
        record.doi,
        {"title": record.title, "abstract": record.abstract},
    )
    for author in record.authors:
        _edge(paper, "HAS_AUTHOR", _node("Author", author))
    _edge(paper, "PUBLISHED_IN", _node("Year", record.year))
    _edge(paper, "INDEXED_IN", _node("Database", record.source_db))
    for term in keywords.terms:
        _edge(paper, "HAS_KEYWORD", _node("Keyword", term))
    for doi in cited_dois:
        _edge(paper, "CITES", _node("Citation", doi))
    return report
