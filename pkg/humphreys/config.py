import logging
import os
from typing import Optional

from dotenv import load_dotenv

# Load environment variables
load_dotenv()

# =============================================================================
# CONFIGURATION
# =============================================================================

SCHEMA_VERSION = "humphreys/1"

LOG_FORMAT = '[%(levelname)s] %(message)s'
LOG_LEVEL = os.getenv("HUMPHREYS_LOG_LEVEL", "INFO").upper()

# Persistent memo cache (unset = in-memory only)
CACHE_DIR: Optional[str] = os.getenv("HUMPHREYS_CACHE_DIR") or None
CACHE_FILE = "humphreys_cache.jsonl"

# Search limits
MAX_ROOTS = int(os.getenv("HUMPHREYS_MAX_ROOTS", "512"))           # reflection-closure bound
PATH_BOUND = int(os.getenv("HUMPHREYS_PATH_BOUND", "16"))          # longest path enumerated in an algebra
GENERATION_DEPTH = int(os.getenv("HUMPHREYS_GENERATION_DEPTH", "4"))  # cone-search rounds

# Random seeds used by the decomposition search
DECOMPOSE_SEED = 20240611
DECOMPOSE_RANDOM_TRIES = 24


def configure_logging(level: Optional[str] = None) -> None:
    logging.basicConfig(level=getattr(logging, (level or LOG_LEVEL), logging.INFO), format=LOG_FORMAT)
    logging.getLogger().setLevel(getattr(logging, (level or LOG_LEVEL), logging.INFO))
