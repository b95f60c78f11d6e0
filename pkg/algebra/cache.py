import threading
from typing import Any, Callable, Dict

from loguru import logger

from utilities.utils import canonical_hash


class GroebnerCache:
    """Memoizes Gröbner computations by the canonical hash of their inputs.

    Thread safe. Values are treated as immutable once stored.
    """

    def __init__(self, max_entries: int = 4096):
        self.max_entries = max_entries
        self._entries: Dict[str, Any] = {}
        self.hits = 0
        self.misses = 0
        self.lock = threading.RLock()

    def get_or_compute(self, key: Any, factory: Callable[[], Any]) -> Any:
        digest = canonical_hash(key)
        with self.lock:
            if digest in self._entries:
                self.hits += 1
                return self._entries[digest]
        value = factory()
        with self.lock:
            self.misses += 1
            if len(self._entries) >= self.max_entries:
                # Oldest entry first; dicts keep insertion order.
                self._entries.pop(next(iter(self._entries)))
            return self._entries.setdefault(digest, value)

    def clear(self):
        with self.lock:
            self._entries.clear()
            self.hits = 0
            self.misses = 0
        logger.debug("Cleared the Gröbner cache")

    def __len__(self) -> int:
        with self.lock:
            return len(self._entries)


GROEBNER_CACHE = GroebnerCache()
