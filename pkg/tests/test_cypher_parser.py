import json
from pathlib import Path

import pytest

from litrev.graph.cypher_ast import (
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
from litrev.graph.cypher_parser import ParseError, UnsupportedFeature, parse_cypher

BUNDLE = Path(__file__).parent.parent / "src/litrev/agent/data/cypher_examples.json"


def test_golden_single_pattern_projection():
    ast = parse_cypher('MATCH (p:Paper {title: "T"}) RETURN p.abstract')
    assert ast == CypherQuery(
        patterns=(
            PathPattern(
                nodes=(NodePattern(var="p", label="Paper", props=(("title", "T"),)),)
            ),
        ),
        returns=(PropertyItem(var="p", key="abstract"),),
    )


def test_golden_two_hop_with_directions():
    ast = parse_cypher(
        'MATCH (k:Keyword {term: "x"})<-[:HAS_KEYWORD]-(p:Paper)-[:PUBLISHED_IN]->(y:Year) '
        "RETURN y.value"
    )
    pattern = ast.patterns[0]
    assert pattern.hops == 2
    assert pattern.rels[0] == RelPattern(rel_type="HAS_KEYWORD", direction="in")
    assert pattern.rels[1] == RelPattern(rel_type="PUBLISHED_IN", direction="out")


def test_where_conditions_and_limit():
    ast = parse_cypher(
        "MATCH (p:Paper)-[:PUBLISHED_IN]->(y:Year) "
        'WHERE y.value >= 2023 AND p.title CONTAINS "fusion" '
        "RETURN p.title AS title LIMIT 3"
    )
    assert ast.where == (
        Condition(var="y", key="value", op=">=", value=2023),
        Condition(var="p", key="title", op="CONTAINS", value="fusion"),
    )
    assert ast.limit == 3
    assert ast.returns[0] == PropertyItem(var="p", key="title", alias="title")


def test_count_and_exists_and_type_items():
    ast = parse_cypher(
        'MATCH (p:Paper {doi: "10.1/x"})-[r]->(a:Author {name: "N"}) '
        'RETURN COUNT(*), COUNT(p), TYPE(r), EXISTS((p)-[:CITES]->(:Citation {doi: "10.2/y"}))'
    )
    kinds = [type(i) for i in ast.returns]
    assert kinds == [CountItem, CountItem, TypeItem, ExistsItem]
    assert ast.returns[0].arg == "*"
    assert ast.returns[1].arg == "p"


def test_string_escapes_round_trip():
    ast = parse_cypher('MATCH (p:Paper {title: "A \\"quoted\\" name"}) RETURN p.doi')
    assert ast.patterns[0].nodes[0].props == (("title", 'A "quoted" name'),)
    assert parse_cypher(render(ast)) == ast


def test_malformed_input_reports_offset():
    with pytest.raises(ParseError) as err:
        parse_cypher("MATCH (p:Paper RETURN p")
    assert err.value.offset == 15
    with pytest.raises(ParseError):
        parse_cypher("MATCH (p:Paper) RETURN")
    with pytest.raises(ParseError):
        parse_cypher("(p:Paper) RETURN p.x")


@pytest.mark.parametrize(
    "query",
    [
        "FOREACH (x IN [1] | SET x.a = 1)",
        "MERGE (p:Paper {doi: \"x\"})",
        "CREATE (p:Paper)",
        "MATCH (a)-[*1..3]->(b) RETURN a.x",
        "MATCH (a)-[:X]->(b)-[:Y]->(c)-[:Z]->(d) RETURN a.x",
        "MATCH (p:Paper) RETURN p",
        "MATCH (p:Paper) WHERE p.a = 1 OR p.b = 2 RETURN p.a",
        "MATCH (p:Paper) RETURN p.title ORDER BY p.title",
        "MATCH (p:Paper) WITH p RETURN p.title",
        "MATCH (p:Paper) RETURN COUNT(DISTINCT p)",
    ],
)
def test_out_of_subset_features_raise_unsupported(query):
    with pytest.raises(UnsupportedFeature):
        parse_cypher(query)


def test_unbound_variable_rejected():
    with pytest.raises(ParseError):
        parse_cypher("MATCH (p:Paper) RETURN q.title")
    with pytest.raises(ParseError):
        parse_cypher("MATCH (p:Paper) WHERE z.title = \"x\" RETURN p.title")
    with pytest.raises(ParseError):
        parse_cypher("MATCH (p:Paper) RETURN TYPE(r)")


def test_limit_must_be_positive():
    with pytest.raises(ParseError):
        parse_cypher("MATCH (p:Paper) RETURN p.title LIMIT 0")


def test_render_round_trip_on_bundle_queries():
    bundle = json.loads(BUNDLE.read_text())
    assert len(bundle["examples"]) == 30
    for example in bundle["examples"]:
        ast = parse_cypher(example["cypher"])
        assert parse_cypher(render(ast)) == ast


def test_render_round_trip_on_constructed_asts():
    asts = [
        CypherQuery(
            patterns=(
                PathPattern(
                    nodes=(
                        NodePattern(var="a", label="Author", props=(("name", "X Y"),)),
                        NodePattern(label="Paper"),
                        NodePattern(var="y", label="Year", props=(("value", 2024),)),
                    ),
                    rels=(
                        RelPattern(rel_type="HAS_AUTHOR", direction="in"),
                        RelPattern(rel_type="PUBLISHED_IN", direction="out"),
                    ),
                ),
            ),
            returns=(CountItem(arg="*", alias="n"),),
            where=(Condition(var="y", key="value", op="<>", value=2023),),
            limit=7,
        ),
        CypherQuery(
            patterns=(PathPattern(nodes=(NodePattern(var="p", label="Paper"),)),),
            returns=(
                ExistsItem(
                    pattern=PathPattern(
                        nodes=(NodePattern(var="p"), NodePattern(label="Keyword")),
                        rels=(RelPattern(var="r", direction="out"),),
                    )
                ),
            ),
        ),
    ]
    for ast in asts:
        assert parse_cypher(render(ast)) == ast
