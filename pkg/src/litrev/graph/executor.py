"""Pattern-matching executor for the Cypher subset.

Bindings are enumerated depth-first over the graph's adjacency, rows are
ordered by the natural keys of the bound nodes (then bound edge types) so
results are deterministic, and COUNT items group implicitly over the
non-aggregated projections, mirroring Cypher semantics. LIMIT applies after
ordering.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator

from .cypher_ast import (
    Condition,
    CountItem,
    CypherQuery,
    ExistsItem,
    NodePattern,
    PathPattern,
    PropertyItem,
    TypeItem,
    render_item,
)
from .model import PropertyGraph
from .schema import EDGE_TYPES, LABELS


class UnknownLabel(ValueError):
    """Query references a node label outside the fixed schema."""


class UnknownEdgeType(ValueError):
    """Query references a relationship type outside the fixed schema."""


@dataclass
class ResultTable:
    columns: list[str]
    rows: list[tuple] = field(default_factory=list)

    def render_tsv(self) -> str:
        def cell(v) -> str:
            if isinstance(v, bool):
                return "true" if v else "false"
            if v is None:
                return ""
            return str(v)

        lines = ["\t".join(self.columns)]
        lines.extend("\t".join(cell(v) for v in row) for row in self.rows)
        return "\n".join(lines) + "\n"


# A binding maps node vars -> node id and rel vars -> (src, type, dst).
_Binding = dict[str, object]


def _validate_pattern_schema(pattern: PathPattern) -> None:
    for node in pattern.nodes:
        if node.label is not None and node.label not in LABELS:
            raise UnknownLabel(f"unknown node label {node.label!r}")
    for rel in pattern.rels:
        if rel.rel_type is not None and rel.rel_type not in EDGE_TYPES:
            raise UnknownEdgeType(f"unknown relationship type {rel.rel_type!r}")


def _node_matches(graph: PropertyGraph, nid: str, pattern: NodePattern) -> bool:
    node = graph.nodes[nid]
    if pattern.label is not None and node.label != pattern.label:
        return False
    for key, value in pattern.props:
        if node.properties.get(key) != value:
            return False
    return True


def _candidate_nodes(
    graph: PropertyGraph, pattern: NodePattern, binding: _Binding
) -> list[str]:
    if pattern.var and pattern.var in binding:
        nid = binding[pattern.var]
        return [nid] if _node_matches(graph, nid, pattern) else []
    pool = (
        graph.nodes_with_label(pattern.label)
        if pattern.label is not None
        else graph.all_nodes()
    )
    return [n.id for n in pool if _node_matches(graph, n.id, pattern)]


def _bind_node(binding: _Binding, pattern: NodePattern, nid: str) -> _Binding | None:
    if pattern.var is None:
        return binding
    bound = binding.get(pattern.var)
    if bound is not None:
        return binding if bound == nid else None
    new = dict(binding)
    new[pattern.var] = nid
    return new


def _match_path(
    pattern: PathPattern, graph: PropertyGraph, binding: _Binding
) -> Iterator[_Binding]:
    def extend(i: int, cur_id: str, b: _Binding) -> Iterator[_Binding]:
        if i == len(pattern.rels):
            yield b
            return
        rel = pattern.rels[i]
        nxt = pattern.nodes[i + 1]
        if rel.direction == "out":
            neighbors = graph.out_neighbors(cur_id, rel.rel_type)
            edges = [((cur_id, t, other), other) for t, other in neighbors]
        else:
            neighbors = graph.in_neighbors(cur_id, rel.rel_type)
            edges = [((other, t, cur_id), other) for t, other in neighbors]
        for edge, other in edges:
            if not _node_matches(graph, other, nxt):
                continue
            b2 = _bind_node(b, nxt, other)
            if b2 is None:
                continue
            if rel.var is not None:
                if rel.var in b2 and b2[rel.var] != edge:
                    continue
                b2 = dict(b2)
                b2[rel.var] = edge
            yield from extend(i + 1, other, b2)

    first = pattern.nodes[0]
    for nid in _candidate_nodes(graph, first, binding):
        b1 = _bind_node(binding, first, nid)
        if b1 is not None:
            yield from extend(0, nid, b1)


def _compare(left, op: str, right) -> bool:
    if op == "=":
        return left == right
    if op == "<>":
        return left != right
    if op == "CONTAINS":
        if not isinstance(left, str) or not isinstance(right, str):
            return False
        return right.lower() in left.lower()
    if type(left) is bool or type(right) is bool:
        return False
    if not isinstance(left, (int, float)) or not isinstance(right, (int, float)):
        return False
    if op == "<":
        return left < right
    if op == "<=":
        return left <= right
    if op == ">":
        return left > right
    if op == ">=":
        return left >= right
    raise ValueError(f"unknown operator {op!r}")


def _eval_condition(cond: Condition, binding: _Binding, graph: PropertyGraph) -> bool:
    node = graph.nodes[binding[cond.var]]  # parser guarantees the var is bound
    return _compare(node.properties.get(cond.key), cond.op, cond.value)


def _var_order(query: CypherQuery) -> list[str]:
    order: list[str] = []
    for pattern in query.patterns:
        for node in pattern.nodes:
            if node.var and node.var not in order:
                order.append(node.var)
        for rel in pattern.rels:
            if rel.var and rel.var not in order:
                order.append(rel.var)
    return order


def _row_sort_key(binding: _Binding, order: list[str], graph: PropertyGraph) -> tuple:
    key = []
    for var in order:
        value = binding.get(var)
        if value is None:
            key.append(("",))
        elif isinstance(value, tuple):  # relationship: (src, type, dst)
            key.append((value[1], value[0], value[2]))
        else:
            node = graph.nodes[value]
            key.append((node.label, str(node.natural_key)))
    return tuple(key)


def execute(query: CypherQuery, graph: PropertyGraph) -> ResultTable:
    """Run a parsed query; see module docstring for ordering and grouping rules."""
    for pattern in query.patterns:
        _validate_pattern_schema(pattern)
    for item in query.returns:
        if isinstance(item, ExistsItem):
            _validate_pattern_schema(item.pattern)

    bindings: list[_Binding] = [{}]
    for pattern in query.patterns:
        bindings = [b2 for b in bindings for b2 in _match_path(pattern, graph, b)]
    if query.where:
        bindings = [
            b for b in bindings if all(_eval_condition(c, b, graph) for c in query.where)
        ]
    order = _var_order(query)
    bindings.sort(key=lambda b: _row_sort_key(b, order, graph))

    def eval_plain(item, binding: _Binding):
        if isinstance(item, PropertyItem):
            return graph.nodes[binding[item.var]].properties.get(item.key)
        if isinstance(item, TypeItem):
            return binding[item.var][1]
        if isinstance(item, ExistsItem):
            return any(_match_path(item.pattern, graph, dict(binding)))
        raise TypeError(f"not a per-row item: {item}")

    columns = [item.alias or render_item(item) for item in query.returns]
    count_items = [i for i in query.returns if isinstance(i, CountItem)]

    if not count_items:
        rows = [
            tuple(eval_plain(item, b) for item in query.returns) for b in bindings
        ]
    else:
        # Implicit grouping over the non-aggregated items, like Cypher.
        plain_positions = [
            i for i, item in enumerate(query.returns) if not isinstance(item, CountItem)
        ]
        groups: dict[tuple, list[_Binding]] = {}
        group_order: list[tuple] = []
        for b in bindings:
            key = tuple(eval_plain(query.returns[i], b) for i in plain_positions)
            if key not in groups:
                groups[key] = []
                group_order.append(key)
            groups[key].append(b)
        if not plain_positions and not group_order:
            group_order.append(())
            groups[()] = []
        rows = []
        for key in sorted(group_order, key=lambda k: tuple(str(v) for v in k)):
            members = groups[key]
            row = []
            plain_iter = iter(key)
            for item in query.returns:
                if isinstance(item, CountItem):
                    if item.arg == "*":
                        row.append(len(members))
                    else:
                        row.append(sum(1 for m in members if item.arg in m))
                else:
                    row.append(next(plain_iter))
            rows.append(tuple(row))

    if query.limit is not None:
        rows = rows[: query.limit]
    return ResultTable(columns=columns, rows=rows)
