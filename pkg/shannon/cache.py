import hashlib
import json
import threading
import time
from pathlib import Path
from typing import Any, Dict, Optional

import h5py

from shannon.emitter import _EmitterCallable, null_emit

H5_NAME = "alpha_cache.h5"
JSON_NAME = "alpha_cache.json"


def cache_key(graph6: str, op: str) -> str:
    """Entries are keyed by the literal labelled graph and the operation."""
    return f"{op}:{graph6}"


def _group_name(key: str) -> str:
    return hashlib.sha256(key.encode("utf-8")).hexdigest()


class AlphaCache:
    """Memo of exact solves: HDF5 snapshot with a JSON fallback file."""

    def __init__(self, cache_directory: str, emit: _EmitterCallable = null_emit):
        self._emit = emit  # dependency injection
        self.cache_directory_path = Path(cache_directory).expanduser()
        self.cache_directory_path.mkdir(parents=True, exist_ok=True)
        self.hdf5_path = self.cache_directory_path / H5_NAME
        self.json_path = self.cache_directory_path / JSON_NAME

        self._memory: Dict[str, Dict[str, Any]] = {}
        self._json_entries: Optional[Dict[str, Dict[str, Any]]] = None
        # Single writer: all file writes go through this lock.
        self._lock = threading.Lock()
        self.stats = {"hits": 0, "misses": 0, "writes": 0, "verified": 0, "mismatches": 0}

    # Internal helpers for HDF5 I/O
    def _h5_write_json(self, group, key: str, obj):
        payload_bytes = json.dumps(obj, ensure_ascii=False, sort_keys=True).encode("utf-8")
        if key in group:
            del group[key]
        group.create_dataset(
            key, data=[payload_bytes], dtype=h5py.vlen_dtype(bytes), compression="gzip"
        )

    def _h5_load_json(self, group, key: str):
        if key not in group:
            return None
        try:
            loaded_bytes = group[key][0]
            return json.loads(loaded_bytes.decode("utf-8"))
        except Exception as e:
            self._emit(
                "warn_log",
                {
                    "message": f"Corrupt HDF5 dataset '{key}': {e}",
                    "location": "cache.AlphaCache._h5_load_json",
                },
            )
            return None

    # Load / Save --------------------------------------------------------
    def _load_entry(self, key: str) -> Optional[Dict[str, Any]]:
        """Attempt HDF5 restore, fall back to the JSON file."""
        name = _group_name(key)
        if self.hdf5_path.exists():
            try:
                with h5py.File(self.hdf5_path, "r") as h5f:
                    if name in h5f:
                        grp = h5f[name]
                        # hash collisions are ruled out by comparing the stored key
                        if grp.attrs.get("key") == key:
                            return self._h5_load_json(grp, "payload")
            except Exception as e:  # pragma: no cover – catch-all
                self._emit(
                    "warn_log",
                    {
                        "message": f"Failed HDF5 load: {e}",
                        "location": "cache.AlphaCache._load_entry",
                    },
                )

        # --- Fallback: JSON file ---
        return self._json_index().get(key)

    def _json_index(self) -> Dict[str, Dict[str, Any]]:
        if self._json_entries is None:
            self._json_entries = {}
            if self.json_path.exists():
                try:
                    self._json_entries = json.loads(self.json_path.read_text())
                except Exception as e:
                    self._emit(
                        "warn_log",
                        {
                            "message": f"Failed to load JSON cache: {e}",
                            "location": "cache.AlphaCache._json_index",
                        },
                    )
        return self._json_entries

    def _save_entry(self, key: str, payload: Dict[str, Any]):
        """Persist to HDF5; on failure, to the JSON fallback file."""
        try:
            with h5py.File(self.hdf5_path, "a") as h5f:
                grp = h5f.require_group(_group_name(key))
                grp.attrs["key"] = key
                grp.attrs["timestamp"] = time.time()
                self._h5_write_json(grp, "payload", payload)
            return
        except Exception as e:
            self._emit(
                "warn_log",
                {
                    "message": f"Failed to save HDF5 cache entry, using JSON: {e}",
                    "location": "cache.AlphaCache._save_entry",
                },
            )

        # --- JSON backup ---
        try:
            entries = self._json_index()
            entries[key] = payload
            self.json_path.write_text(json.dumps(entries, sort_keys=True, ensure_ascii=False))
        except Exception as e:
            self._emit(
                "error",
                {
                    "message": f"Failed to save JSON cache: {e}",
                    "location": "cache.AlphaCache._save_entry",
                },
            )

    # Public API -----------------------------------------------------------
    def get(self, key: str) -> Optional[Dict[str, Any]]:
        payload = self._memory.get(key)
        if payload is None:
            payload = self._load_entry(key)
            if payload is not None:
                self._memory[key] = payload
        if payload is None:
            self.stats["misses"] += 1
        else:
            self.stats["hits"] += 1
            self._emit(
                "debug_log",
                {"message": f"Cache hit for {key[:48]}", "location": "cache.AlphaCache.get"},
            )
        return payload

    def put(self, key: str, payload: Dict[str, Any]):
        with self._lock:
            self._memory[key] = payload
            self._save_entry(key, payload)
            self.stats["writes"] += 1

    def record_verification(self, matched: bool):
        self.stats["verified"] += 1
        if not matched:
            self.stats["mismatches"] += 1
