"""Append-only, checksummed store for recognized L-values."""

from __future__ import annotations

import hashlib
import json
import logging
import threading
from fractions import Fraction
from pathlib import Path
from typing import Any, Optional

from .arith import CycNum
from .exceptions import CacheError

logger = logging.getLogger(__name__)

CACHE_FILE = "lvalues.cache"


def _canonical(payload: Any) -> str:
    return json.dumps(payload, sort_keys=True, separators=(",", ":"))


def _digest(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def encode_number(value: CycNum) -> dict:
    value = value.minimal()
    return {"conductor": value.conductor, "coeffs": [str(c) for c in value.coeffs]}


def decode_number(payload: dict) -> CycNum:
    try:
        return CycNum(int(payload["conductor"]), [Fraction(c) for c in payload["coeffs"]])
    except (KeyError, TypeError, ValueError) as exc:
        raise CacheError(f"malformed cached number: {payload!r}") from exc


class LValueCache:
    """Lines of `sha256<TAB>json`, the digest taken over the JSON text; the last entry for a key wins."""

    def __init__(self, directory: str | Path) -> None:
        self.directory = Path(directory)
        self.path = self.directory / CACHE_FILE
        self._lock = threading.Lock()
        self._entries: Optional[dict[str, Any]] = None
        self.corrupt_lines = 0

    def _load(self) -> dict[str, Any]:
        if self._entries is not None:
            return self._entries
        entries: dict[str, Any] = {}
        if self.path.exists():
            try:
                lines = self.path.read_text(encoding="utf-8").splitlines()
            except OSError as exc:
                raise CacheError(f"cannot read cache {self.path}: {exc}") from exc
            for number, line in enumerate(lines, start=1):
                if not line.strip():
                    continue
                checksum, _, body = line.partition("\t")
                if _digest(body) != checksum:
                    self.corrupt_lines += 1
                    logger.warning("cache=%s line=%s checksum mismatch; entry ignored", self.path, number)
                    continue
                try:
                    record = json.loads(body)
                    entries[record["key"]] = record["value"]
                except (ValueError, KeyError, TypeError):
                    self.corrupt_lines += 1
                    logger.warning("cache=%s line=%s unreadable; entry ignored", self.path, number)
        self._entries = entries
        return entries

    @staticmethod
    def key_of(key: dict) -> str:
        return _digest(_canonical(key))

    def get(self, key: dict) -> Optional[Any]:
        with self._lock:
            return self._load().get(self.key_of(key))

    def put(self, key: dict, value: Any) -> None:
        digest = self.key_of(key)
        body = _canonical({"key": digest, "meta": key, "value": value})
        with self._lock:
            entries = self._load()
            try:
                self.directory.mkdir(parents=True, exist_ok=True)
                with open(self.path, "a", encoding="utf-8") as handle:
                    handle.write(f"{_digest(body)}\t{body}\n")
            except OSError as exc:
                raise CacheError(f"cannot write cache {self.path}: {exc}") from exc
            entries[digest] = value
        logger.debug("cache=%s put key=%s", self.path, digest[:12])

    def get_number(self, key: dict) -> Optional[CycNum]:
        payload = self.get(key)
        if payload is None:
            return None
        try:
            return decode_number(payload)
        except CacheError as exc:
            logger.warning("cache=%s %s; recomputing", self.path, exc.message)
            return None

    def put_number(self, key: dict, value: CycNum) -> None:
        self.put(key, encode_number(value))

    def __len__(self) -> int:
        with self._lock:
            return len(self._load())
