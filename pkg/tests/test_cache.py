import json

import pytest

from shannon.cache import AlphaCache, cache_key
from shannon.errors import CacheCoherenceError
from shannon.graphs import cycle, emit_graph6, power
from shannon.solvers.alpha import AlphaSolver


@pytest.fixture
def c5_squared():
    return power(cycle(5), 2)


def test_put_then_get(tmp_path):
    cache = AlphaCache(str(tmp_path))
    key = cache_key("Dhc", "alpha")
    assert cache.get(key) is None
    cache.put(key, {"value": 2, "witness": [0, 2]})
    assert cache.get(key) == {"value": 2, "witness": [0, 2]}
    assert cache.stats["hits"] == 1
    assert cache.stats["misses"] == 1
    assert cache.stats["writes"] == 1


def test_entries_survive_a_new_instance(tmp_path):
    key = cache_key("Dhc", "alpha")
    AlphaCache(str(tmp_path)).put(key, {"value": 2, "witness": [1, 3]})
    assert (tmp_path / "alpha_cache.h5").exists()
    assert AlphaCache(str(tmp_path)).get(key)["witness"] == [1, 3]


def test_json_fallback_when_hdf5_is_unusable(tmp_path):
    # a directory where the HDF5 file should be makes every HDF5 open fail
    (tmp_path / "alpha_cache.h5").mkdir()
    key = cache_key("Dhc", "alpha")
    AlphaCache(str(tmp_path)).put(key, {"value": 2, "witness": [0, 2]})
    stored = json.loads((tmp_path / "alpha_cache.json").read_text())
    assert stored[key]["value"] == 2
    assert AlphaCache(str(tmp_path)).get(key)["value"] == 2


def test_solver_uses_the_cache(tmp_path, c5_squared):
    cache = AlphaCache(str(tmp_path))
    solver = AlphaSolver(cache=cache)
    first = solver.solve(c5_squared)
    second = solver.solve(c5_squared)
    assert first.value == second.value == 5
    assert second.stats["cached"] is True
    assert cache.stats["hits"] == 1


def test_verify_cache_recomputes(tmp_path, c5_squared):
    cache = AlphaCache(str(tmp_path))
    AlphaSolver(cache=cache).solve(c5_squared)
    result = AlphaSolver(cache=cache, verify_cache=True).solve(c5_squared)
    assert result.value == 5
    assert "cached" not in result.stats
    assert cache.stats["verified"] == 1
    assert cache.stats["mismatches"] == 0


def test_verify_cache_detects_corruption(tmp_path, c5_squared):
    cache = AlphaCache(str(tmp_path))
    key = cache_key(emit_graph6(c5_squared), "alpha")
    cache.put(key, {"value": 6, "witness": [0, 1, 2, 3, 4, 5]})
    with pytest.raises(CacheCoherenceError) as info:
        AlphaSolver(cache=cache, verify_cache=True).solve(c5_squared)
    assert info.value.cached == 6
    assert info.value.fresh == 5
    assert cache.stats["mismatches"] == 1


@pytest.mark.parametrize(
    "witness, reason",
    [
        ([0, 2], "Cached witness has 2 vertices for alpha 5"),
        ([0, 1, 2, 3, 4], "Cached witness is not a stable set"),
        ([0, 2, 11, 13, 99], "Cached witness leaves the 25 vertices of the graph"),
    ],
)
def test_verify_cache_checks_the_witness(tmp_path, c5_squared, witness, reason):
    cache = AlphaCache(str(tmp_path))
    key = cache_key(emit_graph6(c5_squared), "alpha")
    cache.put(key, {"value": 5, "witness": witness})
    with pytest.raises(CacheCoherenceError) as info:
        AlphaSolver(cache=cache, verify_cache=True).solve(c5_squared)
    assert info.value.cached == info.value.fresh == 5
    assert info.value.details()["reason"] == reason
    assert cache.stats["mismatches"] == 1
