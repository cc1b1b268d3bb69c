"""HTTP transport abstraction with a disk-backed fixture adapter.

Everything that talks to the network goes through ``request(url, params) ->
bytes`` so tests and offline runs can swap in canned responses.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Protocol


class TransportError(RuntimeError):
    """Request could not be served (network failure, bad status, no fixture)."""


class HttpTransport(Protocol):
    def request(self, url: str, params: dict | None = None) -> bytes: ...


class UrlTransport:
    """Production transport over ``requests`` with a polite user agent."""

    def __init__(self, timeout: float = 30.0, user_agent: str = "litrev/0.1"):
        self.timeout = timeout
        self.user_agent = user_agent

    def request(self, url: str, params: dict | None = None) -> bytes:
        import requests

        try:
            resp = requests.get(
                url,
                params=params or {},
                timeout=self.timeout,
                headers={"User-Agent": self.user_agent},
            )
        except Exception as exc:  # noqa: BLE001 - adapter boundary
            raise TransportError(f"GET {url} failed: {exc}") from exc
        if resp.status_code != 200:
            raise TransportError(f"GET {url} returned status {resp.status_code}")
        return resp.content


class FixtureTransport:
    """Serves canned responses from disk, matched by URL substring + params.

    The manifest (``manifest.json`` in the fixture root) is a list of routes:

        [{"match": {"url_contains": "...", "params": {"db": "pubmed"}},
          "file": "responses/esearch.xml"}, ...]

    The first route whose ``url_contains`` is found in the URL and whose
    ``params`` entries all match the request wins.
    """

    def __init__(self, root: str | Path):
        self.root = Path(root)
        manifest = self.root / "manifest.json"
        if not manifest.exists():
            raise TransportError(f"fixture manifest not found: {manifest}")
        self.routes = json.loads(manifest.read_text(encoding="utf-8"))
        self.request_log: list[tuple[str, dict]] = []

    def request(self, url: str, params: dict | None = None) -> bytes:
        params = {k: str(v) for k, v in (params or {}).items()}
        self.request_log.append((url, params))
        for route in self.routes:
            match = route.get("match", {})
            if match.get("url_contains", "") not in url:
                continue
            wanted = {k: str(v) for k, v in match.get("params", {}).items()}
            if any(params.get(k) != v for k, v in wanted.items()):
                continue
            return (self.root / route["file"]).read_bytes()
        raise TransportError(f"no fixture route matches {url} {params}")
