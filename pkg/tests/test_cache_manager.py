import json
import os
import time

import pytest

from services.cache_manager import CacheManager

FOUND = {"status": "found", "polynomial": "x1", "curve_key": ["arc", "t1"], "max_depth": 3, "max_states": 100}


def test_save_and_load(tmp_path):
    cache = CacheManager(cache_dir=str(tmp_path / "cache"))
    assert cache.load("entry") is None
    assert cache.save("entry", {"b": 1, "a": [1, 2]})
    assert cache.load("entry") == {"b": 1, "a": [1, 2]}
    assert cache.load("entry.json") == {"b": 1, "a": [1, 2]}


def test_saved_files_are_sorted(tmp_path):
    cache = CacheManager(cache_dir=str(tmp_path))
    cache.save("entry", {"z": 1, "a": 2})
    text = (tmp_path / "entry.json").read_text(encoding="utf-8")
    assert text.index('"a"') < text.index('"z"')


def test_rejects_non_json_containers(tmp_path):
    cache = CacheManager(cache_dir=str(tmp_path))
    assert not cache.save("entry", "text")


def test_corrupted_file(tmp_path):
    cache = CacheManager(cache_dir=str(tmp_path))
    (tmp_path / "broken.json").write_text("{not json", encoding="utf-8")
    assert cache.load("broken") is None


def test_oracle_entry(tmp_path):
    cache = CacheManager(cache_dir=str(tmp_path))
    cache.save("oracle_a", FOUND)
    assert cache.load_oracle_result("oracle_a")["polynomial"] == "x1"
    assert cache.load_oracle_result("oracle_missing") is None


@pytest.mark.parametrize("entry", [
    {key: value for key, value in FOUND.items() if key != "polynomial"},
    {key: value for key, value in FOUND.items() if key != "max_states"},
    {"status": "not-found", "curve_key": ["arc", "t1"], "max_depth": 3, "max_states": 100},
    ["not", "a", "dict"],
])
def test_incomplete_oracle_entries_are_ignored(tmp_path, entry):
    cache = CacheManager(cache_dir=str(tmp_path))
    cache.save("oracle_b", entry)
    assert cache.load_oracle_result("oracle_b") is None


def test_not_found_entry(tmp_path):
    cache = CacheManager(cache_dir=str(tmp_path))
    entry = {"status": "not-found", "depth": 3, "curve_key": ["arc", "t1"], "max_depth": 3, "max_states": 100}
    cache.save("oracle_c", entry)
    assert cache.load_oracle_result("oracle_c")["depth"] == 3


def test_clear_by_age(tmp_path):
    cache = CacheManager(cache_dir=str(tmp_path))
    cache.save("old", {"value": 1})
    past = time.time() - 10 * 24 * 3600
    os.utime(tmp_path / "old.json", (past, past))
    cache.save("oracle_new", FOUND)

    assert cache.clear(max_age_days=5) == 1
    assert cache.load("old") is None
    assert cache.get_stats()["oracle_entries"] == 1
    assert cache.clear() == 1
    assert cache.get_stats()["total_files"] == 0


def test_stats_of_missing_directory(tmp_path):
    cache = CacheManager(cache_dir=str(tmp_path / "cache"))
    (tmp_path / "cache").rmdir()
    stats = cache.get_stats()
    assert stats["total_files"] == 0
    assert stats["oldest_file"] is None
    assert cache.clear() == 0
    assert json.dumps(stats)
