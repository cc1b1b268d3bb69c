"""LLM client abstraction: one hosted-API adapter, two deterministic test doubles."""

from __future__ import annotations

import os
from typing import Callable


class LlmError(RuntimeError):
    """The language-model adapter failed to produce a completion."""


class LlmClient:
    """Minimal interface: ``complete(prompt) -> text`` plus an identifier.

    ``complete`` must be reentrant; adapters either tolerate concurrent
    requests or serialize internally.
    """

    model_id: str = "llm"

    def complete(self, prompt: str) -> str:
        raise NotImplementedError


class HttpLlmClient(LlmClient):
    """Chat-completion HTTP adapter; the API key comes from an env variable."""

    def __init__(
        self,
        endpoint: str,
        model: str,
        api_key_env: str = "LITREV_LLM_API_KEY",
        timeout: float = 60.0,
    ):
        self.endpoint = endpoint
        self.model = model
        self.api_key_env = api_key_env
        self.timeout = timeout
        self.model_id = model

    def complete(self, prompt: str) -> str:
        import requests

        headers = {}
        api_key = os.environ.get(self.api_key_env, "")
        if api_key:
            headers["Authorization"] = f"Bearer {api_key}"
        try:
            resp = requests.post(
                self.endpoint,
                json={
                    "model": self.model,
                    "messages": [{"role": "user", "content": prompt}],
                },
                headers=headers,
                timeout=self.timeout,
            )
            resp.raise_for_status()
            payload = resp.json()
            return payload["choices"][0]["message"]["content"]
        except Exception as exc:  # noqa: BLE001 - adapter boundary
            raise LlmError(f"completion request failed: {exc}") from exc


class ScriptedLlmClient(LlmClient):
    """Replays a fixed list of replies in order; raises when exhausted."""

    def __init__(self, replies: list[str], model_id: str = "scripted"):
        self.replies = list(replies)
        self.model_id = model_id
        self.prompts: list[str] = []

    def complete(self, prompt: str) -> str:
        self.prompts.append(prompt)
        if not self.replies:
            raise LlmError("scripted client ran out of replies")
        return self.replies.pop(0)


class RuleLlmClient(LlmClient):
    """Deterministic client driven by a prompt -> reply function."""

    def __init__(self, fn: Callable[[str], str], model_id: str = "rule"):
        self.fn = fn
        self.model_id = model_id
        self.prompts: list[str] = []

    def complete(self, prompt: str) -> str:
        self.prompts.append(prompt)
        return self.fn(prompt)
