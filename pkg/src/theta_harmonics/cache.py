"""Content-addressed on-disk store for result documents."""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
from pathlib import Path

from .serialization import SCHEMA_VERSION, decode_document, encode_document, jsonable

ENV_VAR = "THETA_HARMONICS_CACHE"


def cache_key(command: str, inputs: dict) -> str:
    payload = json.dumps(
        {"schema_version": SCHEMA_VERSION, "command": command, "inputs": jsonable(inputs)},
        sort_keys=True,
        separators=(",", ":"),
    )
    return hashlib.sha256(payload.encode("utf-8")).hexdigest()


class ResultCache:
    """Documents stored as ``<root>/<key[:2]>/<key>.json``; writes are atomic renames."""

    def __init__(self, root: str | os.PathLike):
        self.root = Path(root)

    def path_for(self, key: str) -> Path:
        return self.root / key[:2] / f"{key}.json"

    def get(self, key: str) -> dict | None:
        path = self.path_for(key)
        try:
            return decode_document(path.read_text(encoding="utf-8"))
        except FileNotFoundError:
            return None
        except (OSError, ValueError):
            return None  # unreadable entries are treated as misses and rewritten

    def put(self, key: str, doc: dict) -> None:
        path = self.path_for(key)
        path.parent.mkdir(parents=True, exist_ok=True)
        fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=".tmp-", suffix=".json")
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as fh:
                fh.write(encode_document(doc))
            os.replace(tmp, path)
        except BaseException:
            try:
                os.unlink(tmp)
            except FileNotFoundError:
                pass
            raise


def resolve_cache(flag_path: str | None, disabled: bool = False) -> ResultCache | None:
    """The environment variable, when set, takes precedence over ``--cache``."""
    if disabled:
        return None
    path = os.environ.get(ENV_VAR) or flag_path
    return ResultCache(path) if path else None
