"""AST for the Cypher subset, plus a canonical renderer.

The subset covers MATCH patterns of at most two hops with inline property
equality, a WHERE conjunction of comparisons and CONTAINS, RETURN with
property projections, COUNT, EXISTS over a pattern, TYPE of a bound
relationship, and LIMIT. ``render`` produces canonical text such that
``parse_cypher(render(ast)) == ast``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

MAX_HOPS = 2

COMPARISON_OPS = ("=", "<>", "<", "<=", ">", ">=")


@dataclass(frozen=True)
class NodePattern:
    var: str | None = None
    label: str | None = None
    props: tuple[tuple[str, object], ...] = ()


@dataclass(frozen=True)
class RelPattern:
    var: str | None = None
    rel_type: str | None = None
    direction: str = "out"  # "out": (a)-[..]->(b); "in": (a)<-[..]-(b)


@dataclass(frozen=True)
class PathPattern:
    nodes: tuple[NodePattern, ...]
    rels: tuple[RelPattern, ...] = ()

    @property
    def hops(self) -> int:
        return len(self.rels)


@dataclass(frozen=True)
class Condition:
    var: str
    key: str
    op: str  # one of COMPARISON_OPS or "CONTAINS"
    value: object


@dataclass(frozen=True)
class PropertyItem:
    var: str
    key: str
    alias: str | None = None


@dataclass(frozen=True)
class CountItem:
    arg: str = "*"  # "*" or a bound node variable
    alias: str | None = None


@dataclass(frozen=True)
class ExistsItem:
    pattern: PathPattern
    alias: str | None = None


@dataclass(frozen=True)
class TypeItem:
    var: str  # bound relationship variable
    alias: str | None = None


ReturnItem = PropertyItem | CountItem | ExistsItem | TypeItem


@dataclass(frozen=True)
class CypherQuery:
    patterns: tuple[PathPattern, ...]
    returns: tuple[ReturnItem, ...]
    where: tuple[Condition, ...] = field(default=())
    limit: int | None = None


def _render_value(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, str):
        escaped = value.replace("\\", "\\\\").replace('"', '\\"')
        return f'"{escaped}"'
    return str(value)


def _render_node(node: NodePattern) -> str:
    inner = node.var or ""
    if node.label:
        inner += f":{node.label}"
    if node.props:
        props = ", ".join(f"{k}: {_render_value(v)}" for k, v in node.props)
        inner = f"{inner} {{{props}}}" if inner else f"{{{props}}}"
    return f"({inner})"


def _render_rel(rel: RelPattern) -> str:
    inner = rel.var or ""
    if rel.rel_type:
        inner += f":{rel.rel_type}"
    if rel.direction == "out":
        return f"-[{inner}]->"
    return f"<-[{inner}]-"


def render_pattern(pattern: PathPattern) -> str:
    parts = [_render_node(pattern.nodes[0])]
    for rel, node in zip(pattern.rels, pattern.nodes[1:]):
        parts.append(_render_rel(rel))
        parts.append(_render_node(node))
    return "".join(parts)


def render_item(item: ReturnItem) -> str:
    if isinstance(item, PropertyItem):
        body = f"{item.var}.{item.key}"
    elif isinstance(item, CountItem):
        body = f"COUNT({item.arg})"
    elif isinstance(item, TypeItem):
        body = f"TYPE({item.var})"
    else:
        body = f"EXISTS({render_pattern(item.pattern)})"
    if item.alias:
        body += f" AS {item.alias}"
    return body


def render(query: CypherQuery) -> str:
    """Canonical single-line text of a query."""
    text = "MATCH " + ", ".join(render_pattern(p) for p in query.patterns)
    if query.where:
        conds = " AND ".join(
            f"{c.var}.{c.key} {c.op} {_render_value(c.value)}" for c in query.where
        )
        text += f" WHERE {conds}"
    text += " RETURN " + ", ".join(render_item(i) for i in query.returns)
    if query.limit is not None:
        text += f" LIMIT {query.limit}"
    return text
