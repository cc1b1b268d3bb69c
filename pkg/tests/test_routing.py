import pytest

from litrev.agent.bundles import load_routing_bundle
from litrev.agent.llm import ScriptedLlmClient
from litrev.agent.routing import (
    RoutingFailed,
    heuristic_route,
    parse_tool_token,
    route,
)


def test_scripted_llm_choice_is_passed_through():
    llm = ScriptedLlmClient(["vector"])
    choice = route("What does the passage say?", llm)
    assert choice.tool == "vector"
    assert choice.decided_by == "llm"


def test_prompt_carries_all_ten_examples_and_question():
    llm = ScriptedLlmClient(["graph"])
    route("In which year was the paper 'X' published?", llm)
    prompt = llm.prompts[0]
    bundle = load_routing_bundle()
    for example in bundle.examples:
        assert example.question in prompt
    assert "In which year was the paper 'X' published?" in prompt


def test_one_retry_on_unparseable_reply():
    llm = ScriptedLlmClient(["hmm, not sure", "graph please"])
    choice = route("q", llm)
    assert choice.tool == "graph"
    assert choice.decided_by == "llm"
    assert len(llm.prompts) == 2


def test_two_unparseable_replies_fall_back_to_heuristic():
    llm = ScriptedLlmClient(["???", "???"])
    choice = route("Who are the authors of the paper 'X'?", llm)
    assert choice.decided_by == "heuristic_fallback"
    assert choice.tool == "graph"


def test_routing_failed_when_fallback_disabled():
    llm = ScriptedLlmClient(["???", "???"])
    with pytest.raises(RoutingFailed):
        route("q", llm, fallback_enabled=False)


def test_no_llm_uses_heuristic():
    choice = route("Who wrote it?", None)
    assert choice.decided_by == "heuristic_fallback"


@pytest.mark.parametrize(
    "question",
    [
        "In which year was the paper 'X' published?",
        "Who are the authors of the paper 'X'?",
        "Is the paper 'X' represented by the keyword 'fusion'?",
        "In which database is the paper 'X' indexed?",
        "How many papers cite this DOI?",
        "Which DOIs does the paper 'X' cite?",
        "How is ArXiv related to the paper 'X'?",
    ],
)
def test_heuristic_metadata_cues_route_to_graph(question):
    assert heuristic_route(question) == "graph"


@pytest.mark.parametrize(
    "question",
    [
        "What loss function does the model minimize?",
        "What does the passage explain regarding sepsis screening?",
        "What trade-off does the approach accept?",
    ],
)
def test_heuristic_content_questions_route_to_vector(question):
    assert heuristic_route(question) == "vector"


@pytest.mark.parametrize(
    "reply,expected",
    [
        ("graph", "graph"),
        ("Vector", "vector"),
        ("I would use GraphRAG here.", "graph"),
        ("the vectorrag tool fits", "vector"),
        ("no tool mentioned", None),
        ("telegraph", None),  # word boundary: not a tool token
    ],
)
def test_parse_tool_token(reply, expected):
    assert parse_tool_token(reply) == expected
