"""
Memo store for GR measures, mono tests and hom bases.
Entries never expire; insertion is exclusive, reads are shared.
"""

import threading
from typing import Any, Callable, Dict, Hashable, Optional, Tuple

from utils.logging_config import get_logger

logger = get_logger(__name__)

MISSING = object()


class MeasureCache:
    """Namespaced in-memory memo table with hit/miss statistics"""

    def __init__(self, name: str = "engine"):
        self.name = name
        self.memory_cache: Dict[Tuple[str, Hashable], Any] = {}
        self.cache_stats = {
            'hits': 0,
            'misses': 0,
            'total_requests': 0
        }
        self._lock = threading.RLock()

    def _generate_key(self, namespace: str, key: Hashable) -> Tuple[str, Hashable]:
        return (namespace, key)

    def get(self, namespace: str, key: Hashable) -> Any:
        """Get a cached value, or MISSING"""
        cache_key = self._generate_key(namespace, key)
        value = self.memory_cache.get(cache_key, MISSING)
        with self._lock:
            self.cache_stats['total_requests'] += 1
            if value is MISSING:
                self.cache_stats['misses'] += 1
            else:
                self.cache_stats['hits'] += 1
        return value

    def set(self, namespace: str, key: Hashable, value: Any) -> Any:
        """Insert a value unless another thread got there first; returns the stored value"""
        cache_key = self._generate_key(namespace, key)
        with self._lock:
            existing = self.memory_cache.get(cache_key, MISSING)
            if existing is not MISSING:
                return existing
            self.memory_cache[cache_key] = value
        return value

    def get_or_compute(self, namespace: str, key: Hashable, compute: Callable[[], Any]) -> Any:
        """Return the cached value, computing and storing it on a miss"""
        value = self.get(namespace, key)
        if value is MISSING:
            value = self.set(namespace, key, compute())
        return value

    def delete(self, namespace: str, key: Hashable) -> bool:
        """Delete cache entry"""
        with self._lock:
            return self.memory_cache.pop(self._generate_key(namespace, key), MISSING) is not MISSING

    def clear(self, namespace: Optional[str] = None) -> int:
        """Clear cache entries, optionally one namespace only"""
        with self._lock:
            if namespace is None:
                cleared_count = len(self.memory_cache)
                self.memory_cache.clear()
            else:
                doomed = [k for k in self.memory_cache if k[0] == namespace]
                for k in doomed:
                    del self.memory_cache[k]
                cleared_count = len(doomed)
        logger.debug(f"Cache {self.name} cleared: {cleared_count} entries")
        return cleared_count

    def size(self, namespace: Optional[str] = None) -> int:
        if namespace is None:
            return len(self.memory_cache)
        return sum(1 for k in list(self.memory_cache) if k[0] == namespace)

    def stats(self) -> Dict[str, Any]:
        """Hit/miss statistics"""
        with self._lock:
            total = self.cache_stats['total_requests']
            return {
                **self.cache_stats,
                'size': len(self.memory_cache),
                'hit_rate': (self.cache_stats['hits'] / total) if total else 0.0
            }
