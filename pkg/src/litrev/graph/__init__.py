"""Embedded property graph of publications plus a Cypher-subset query engine."""

from .cypher_ast import (
    Condition,
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
from .cypher_parser import ParseError, UnsupportedFeature, parse_cypher
from .executor import ResultTable, UnknownEdgeType, UnknownLabel, execute
from .model import (
    EdgeRecord,
    MutationReport,
    NodeRecord,
    PropertyGraph,
    SchemaViolation,
    upsert_paper,
)
from .schema import EDGE_TYPES, LABELS, NATURAL_KEYS, schema_text

__all__ = [
    "Condition",
    "CountItem",
    "CypherQuery",
    "EDGE_TYPES",
    "EdgeRecord",
    "ExistsItem",
    "LABELS",
    "MutationReport",
    "NATURAL_KEYS",
    "NodePattern",
    "NodeRecord",
    "ParseError",
    "PathPattern",
    "PropertyGraph",
    "PropertyItem",
    "RelPattern",
    "ResultTable",
    "SchemaViolation",
    "TypeItem",
    "UnknownEdgeType",
    "UnknownLabel",
    "UnsupportedFeature",
    "execute",
    "parse_cypher",
    "render",
    "schema_text",
    "upsert_paper",
]
