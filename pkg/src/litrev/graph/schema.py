"""Fixed graph schema: six node labels, five edge families, natural keys."""

from __future__ import annotations

LABELS = ("Paper", "Author", "Year", "Database", "Keyword", "Citation")

# Edge type -> (source label, destination label). Papers own every edge.
EDGE_TYPES = {
    "HAS_AUTHOR": ("Paper", "Author"),
    "PUBLISHED_IN": ("Paper", "Year"),
    "INDEXED_IN": ("Paper", "Database"),
    "HAS_KEYWORD": ("Paper", "Keyword"),
    "CITES": ("Paper", "Citation"),
}

# One node per natural key: shared across papers, never duplicated.
NATURAL_KEYS = {
    "Paper": "doi",
    "Author": "name",
    "Year": "value",
    "Database": "name",
    "Keyword": "term",
    "Citation": "doi",
}

_PROPERTIES = {
    "Paper": ("doi", "title", "abstract"),
    "Author": ("name",),
    "Year": ("value",),
    "Database": ("name",),
    "Keyword": ("term",),
    "Citation": ("doi",),
}


def schema_text(graph=None) -> str:
    """Stable, human-readable schema rendering for prompt injection.

    The schema is static, so the output is byte-identical for every graph;
    the argument exists only for call-site symmetry.
    """
    lines = ["Node labels and properties:"]
    for label in LABELS:
        props = ", ".join(_PROPERTIES[label])
        lines.append(f"  {label}({props})  key: {NATURAL_KEYS[label]}")
    lines.append("Relationship types:")
    for etype, (src, dst) in EDGE_TYPES.items():
        lines.append(f"  ({src})-[:{etype}]->({dst})")
    return "\n".join(lines) + "\n"
