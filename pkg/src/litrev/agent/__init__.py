"""Agent layer: tool routing, NL-to-Cypher translation, grounded answering."""

from .bundles import BundleInvalid, CypherBundle, RoutingBundle, load_cypher_bundle, load_routing_bundle
from .llm import HttpLlmClient, LlmClient, LlmError, RuleLlmClient, ScriptedLlmClient
from .orchestrator import ABSTENTION_ANSWER, Agent, ContextItem, RoutedAnswer, Trace
from .preferences import PreferencePair, ValidationFailed, export_preference_pairs, load_preference_pairs
from .routing import RoutingFailed, ToolChoice, heuristic_route, route
from .translate import TranslationFailed, translate_to_cypher

__all__ = [
    "ABSTENTION_ANSWER",
    "Agent",
    "BundleInvalid",
    "ContextItem",
    "CypherBundle",
    "HttpLlmClient",
    "LlmClient",
    "LlmError",
    "PreferencePair",
    "RoutedAnswer",
    "RoutingBundle",
    "RoutingFailed",
    "RuleLlmClient",
    "ScriptedLlmClient",
    "ToolChoice",
    "Trace",
    "TranslationFailed",
    "ValidationFailed",
    "export_preference_pairs",
    "heuristic_route",
    "load_cypher_bundle",
    "load_preference_pairs",
    "load_routing_bundle",
    "route",
    "translate_to_cypher",
]
