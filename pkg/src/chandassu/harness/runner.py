"""Model execution: bounded-parallel requests, retries, resumable journal.

The endpoint speaks the HTTP JSON chat-completion shape; request body and
response field path are configurable so any provider fits. The pseudo URL
``mock:echo-gold`` short-circuits transport and returns each item's gold
text, for offline closure tests.
"""

from __future__ import annotations

import copy
import json
import threading
import time
from concurrent.futures import ThreadPoolExecutor
from datetime import datetime, timezone
from pathlib import Path
from typing import Callable, Optional, Sequence

import httpx

from ..errors import TransportError
from .schema import EndpointConfig, EvalRecord, RunConfig, TaskItem, UNSCORED
from .templates import render_prompt

MOCK_ECHO_GOLD = "mock:echo-gold"

DEFAULT_REQUEST_TEMPLATE = {
    "model": "$MODEL$",
    "messages": [{"role": "user", "content": "$PROMPT$"}],
    "temperature": "$TEMPERATURE$",
}


def _fill_template(node, values):
    if isinstance(node, dict):
        return {k: _fill_template(v, values) for k, v in node.items()}
    if isinstance(node, list):
        return [_fill_template(v, values) for v in node]
    if isinstance(node, str) and node in values:
        return values[node]
    if isinstance(node, str):
        for key, val in values.items():
            if key in node and isinstance(val, str):
                node = node.replace(key, val)
        return node
    return node


def _extract_path(obj, path: str):
    cur = obj
    for part in path.split("."):
        if isinstance(cur, list):
            cur = cur[int(part)]
        elif isinstance(cur, dict):
            cur = cur[part]
        else:
            raise KeyError(path)
    return cur


def http_transport(endpoint: EndpointConfig, temperature: float) -> Callable[[str], str]:
    """Build a prompt -> response-text callable for one endpoint."""
    headers = dict(endpoint.headers)
    token = endpoint.auth_token()
    if token:
        headers["Authorization"] = f"Bearer {token}"
    template = endpoint.request_template or DEFAULT_REQUEST_TEMPLATE
    client = httpx.Client(base_url=endpoint.base_url, headers=headers,
                          timeout=endpoint.timeout)

    def send(prompt: str) -> str:
        body = _fill_template(copy.deepcopy(template), {
            "$MODEL$": endpoint.model,
            "$PROMPT$": prompt,
            "$TEMPERATURE$": temperature,
        })
        try:
            resp = client.post(endpoint.path, json=body)
            resp.raise_for_status()
            return str(_extract_path(resp.json(), endpoint.response_path))
        except (httpx.HTTPError, KeyError, IndexError, ValueError) as exc:
            raise TransportError(f"{endpoint.base_url}: {exc}") from exc

    return send


def make_transport(endpoint: EndpointConfig, temperature: float,
                   items_by_prompt: Optional[dict[str, TaskItem]] = None
                   ) -> Callable[[str], str]:
    if endpoint.base_url == MOCK_ECHO_GOLD:
        lookup = items_by_prompt or {}

        def echo(prompt: str) -> str:
            item = lookup.get(prompt)
            return (item.gold or "") if item else ""

        return echo
    return http_transport(endpoint, temperature)


def _now() -> str:
    return datetime.now(timezone.utc).isoformat()


def run(items: Sequence[TaskItem], config: RunConfig,
        journal_path=None,
        transport: Optional[Callable[[str], str]] = None,
        templates: Optional[dict] = None) -> list[EvalRecord]:
    """Send every item once (plus transport retries), journaling as we go.

    Output order matches input order regardless of completion order. Items
    already present in the journal for this model are not re-queried."""
    prompts = {item.id: render_prompt(item, templates) for item in items}
    if transport is None:
        by_prompt = {prompts[item.id]: item for item in items}
        transport = make_transport(config.model, config.temperature, by_prompt)

    done: dict[str, EvalRecord] = {}
    journal_file = None
    lock = threading.Lock()
    if journal_path is not None:
        journal_path = Path(journal_path)
        if journal_path.exists():
            from .schema import load_journal
            for rec in load_journal(journal_path):
                if rec.model == config.model.model:
                    done[rec.item_id] = rec
        journal_file = journal_path.open("a", encoding="utf-8")

    def journal_write(rec: EvalRecord):
        if journal_file is not None:
            with lock:
                journal_file.write(json.dumps(rec.to_json(), ensure_ascii=False) + "\n")
                journal_file.flush()

    def execute(item: TaskItem) -> EvalRecord:
        if item.id in done:
            return done[item.id]
        prompt = prompts[item.id]
        last_error = None
        for attempt in range(config.retries + 1):
            try:
                response = transport(prompt)
                rec = EvalRecord(item.id, config.model.model, prompt,
                                 response=response, timestamp=_now())
                journal_write(rec)
                return rec
            except TransportError as exc:
                last_error = exc
                if attempt < config.retries:
                    time.sleep(config.backoff_seconds * (2 ** attempt))
        rec = EvalRecord(item.id, config.model.model, prompt,
                         verdict=UNSCORED, error=str(last_error), timestamp=_now())
        journal_write(rec)
        return rec

    try:
        with ThreadPoolExecutor(max_workers=max(1, config.max_parallel)) as pool:
            records = list(pool.map(execute, items))
    finally:
        if journal_file is not None:
            journal_file.close()
    return records
