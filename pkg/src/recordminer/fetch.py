"""Single-shot page fetching with verbatim snapshots."""

from __future__ import annotations

import json
import socket
import time
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path
from urllib.error import HTTPError, URLError
from urllib.request import Request, urlopen

from .errors import FetchError

DEFAULT_TIMEOUT = 15.0
DEFAULT_USER_AGENT = "recordminer/0.1"


@dataclass
class FetchResult:
    url: str
    final_url: str
    status: int
    body: bytes
    elapsed_ms: int


def fetch_url(url: str, timeout: float = DEFAULT_TIMEOUT,
              user_agent: str = DEFAULT_USER_AGENT) -> FetchResult:
    """GET a URL, following redirects; non-2xx statuses raise FetchError."""
    start = time.monotonic()
    try:
        request = Request(url, headers={"User-Agent": user_agent})
        with urlopen(request, timeout=timeout) as response:
            body = response.read()
            elapsed = int((time.monotonic() - start) * 1000)
            return FetchResult(url, response.geturl(), response.status,
                               body, elapsed)
    except HTTPError as exc:
        raise FetchError(f"{url}: HTTP status {exc.code}",
                         kind="status", status=exc.code) from exc
    except URLError as exc:
        reason = exc.reason
        if isinstance(reason, (TimeoutError, socket.timeout)):
            raise FetchError(f"{url}: timed out after {timeout}s",
                             kind="timeout") from exc
        raise FetchError(f"{url}: {reason}", kind="network") from exc
    except (TimeoutError, socket.timeout) as exc:
        raise FetchError(f"{url}: timed out after {timeout}s",
                         kind="timeout") from exc
    except ValueError as exc:
        raise FetchError(f"{url}: {exc}", kind="url") from exc


def save_snapshot(result: FetchResult, out_path: str | Path) -> Path:
    """Write the body verbatim plus a .meta.json sidecar; returns the sidecar."""
    out_path = Path(out_path)
    out_path.write_bytes(result.body)
    meta = {
        "schema": 1,
        "url": result.url,
        "final_url": result.final_url,
        "status": result.status,
        "bytes": len(result.body),
        "elapsed_ms": result.elapsed_ms,
        "fetched_at": datetime.now(timezone.utc).isoformat(timespec="seconds"),
    }
    sidecar = out_path.with_name(out_path.name + ".meta.json")
    sidecar.write_text(json.dumps(meta, indent=2) + "\n", encoding="utf-8")
    return sidecar
