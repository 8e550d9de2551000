from __future__ import annotations

import json
import threading
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Mapping


def _utcnow_iso() -> str:
    return datetime.now(timezone.utc).isoformat()


class RunHistory:
    """
    Append-only run history stored as JSON lines.

    One record per event (``job_start``, ``job_end``, ``job_error``); ids are
    consecutive within a file.
    """

    def __init__(self, path: str | Path):
        self.path = Path(path)
        self._lock = threading.RLock()
        self._last_id = 0
        self._seen_size: int | None = None

    def _size(self) -> int:
        return self.path.stat().st_size if self.path.exists() else 0

    def _next_id(self) -> int:
        # rescan only when another writer changed the file since our last append
        if self._size() != self._seen_size:
            self._last_id = 0
            if self.path.exists():
                with open(self.path, "r", encoding="utf-8") as f:
                    self._last_id = sum(1 for line in f if line.strip())
        self._last_id += 1
        return self._last_id

    def log_history(
        self,
        *,
        job_name: str,
        event_type: str,
        status: str,
        started_at: str | None = None,
        ended_at: str | None = None,
        duration_ms: int | None = None,
        row_count: int | None = None,
        details: Mapping[str, Any] | str | None = None,
    ) -> int:
        with self._lock:
            self.path.parent.mkdir(parents=True, exist_ok=True)
            record_id = self._next_id()
            record = {
                "id": record_id,
                "job_name": job_name,
                "event_type": event_type,
                "status": status,
                "started_at": started_at or _utcnow_iso(),
                "ended_at": ended_at,
                "duration_ms": duration_ms,
                "row_count": row_count,
                "details": details,
            }
            with open(self.path, "a", encoding="utf-8") as f:
                f.write(json.dumps(record, ensure_ascii=False, default=str) + "\n")
            self._seen_size = self._size()
        return record_id

    def fetch_history(self, limit: int = 50) -> list[dict[str, Any]]:
        """Newest first."""
        with self._lock:
            if not self.path.exists():
                return []
            with open(self.path, "r", encoding="utf-8") as f:
                rows = [json.loads(line) for line in f if line.strip()]
        return list(reversed(rows))[:limit]
