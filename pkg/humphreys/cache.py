"""
Memo tables for the expensive combinatorial searches.

Two tables live here: ``q_kostant`` (graded partition function values) and
``bruhat`` (Bruhat comparisons). Both are plain dicts guarded by one lock so
the library stays safe to call from several threads. The CLI can persist them
to an append-only JSON-lines file: any number of readers, one writer.
"""

import json
import logging
import os
import threading
from typing import Any, Dict, List, Optional, Tuple

from .config import CACHE_FILE, LOG_FORMAT

# =============================================================================
# LOGGING
# =============================================================================

logging.basicConfig(level=logging.INFO, format=LOG_FORMAT)
logger = logging.getLogger(__name__)

# =============================================================================
# CACHE
# =============================================================================

TABLES = ("q_kostant", "bruhat")

_lock = threading.Lock()
_tables: Dict[str, Dict[str, Any]] = {name: {} for name in TABLES}
_pending: List[Tuple[str, str, Any]] = []


def lookup(table: str, key: str) -> Optional[Any]:
    with _lock:
        return _tables[table].get(key)


def store(table: str, key: str, value: Any) -> None:
    with _lock:
        if key not in _tables[table]:
            _tables[table][key] = value
            _pending.append((table, key, value))


def clear() -> None:
    with _lock:
        for table in _tables.values():
            table.clear()
        _pending.clear()


def size(table: str) -> int:
    with _lock:
        return len(_tables[table])


def load_cache(directory: Optional[str]) -> int:
    """Read every record of the cache file in ``directory``; returns the count."""
    if not directory:
        return 0
    path = os.path.join(directory, CACHE_FILE)
    if not os.path.exists(path):
        return 0
    loaded = 0
    with open(path, 'r', encoding='utf-8') as f:
        for lineno, line in enumerate(f, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                record = json.loads(line)
                table, key, value = record["table"], record["key"], record["value"]
            except (ValueError, KeyError, TypeError):
                logger.warning(f"Skipping corrupt cache line {lineno} in {path}")
                continue
            if table not in _tables:
                continue
            with _lock:
                _tables[table].setdefault(key, value)
            loaded += 1
    logger.info(f"Loaded {loaded} cache entries from {path}")
    return loaded


def save_cache(directory: Optional[str]) -> int:
    """Append the records created since the last save; returns the count."""
    if not directory:
        return 0
    with _lock:
        records = list(_pending)
        _pending.clear()
    if not records:
        return 0
    os.makedirs(directory, exist_ok=True)
    path = os.path.join(directory, CACHE_FILE)
    try:
        with open(path, 'a', encoding='utf-8') as f:
            for table, key, value in records:
                f.write(json.dumps({"table": table, "key": key, "value": value}, sort_keys=True) + "\n")
    except OSError as e:
        logger.warning(f"Could not write cache file {path}: {e}")
        return 0
    return len(records)
