import json

from quandle_homotopy.cache import ResultCache


def test_disabled_cache_always_computes(monkeypatch):
    monkeypatch.delenv("QHTPY_CACHE_DIR", raising=False)
    c = ResultCache()
    calls = []
    assert not c.enabled
    assert c.get_or_compute(["k"], lambda: calls.append(1) or 5) == 5
    assert c.get_or_compute(["k"], lambda: calls.append(1) or 5) == 5
    assert len(calls) == 2


def test_hit_after_put(tmp_path):
    c = ResultCache(tmp_path)
    c.put(["H", "dihedral:3", 2], {"group": "0"})
    assert c.get(["H", "dihedral:3", 2]) == {"group": "0"}
    assert c.get(["H", "dihedral:3", 3]) is None


def test_environment_variable(tmp_path, monkeypatch):
    monkeypatch.setenv("QHTPY_CACHE_DIR", str(tmp_path / "cache"))
    c = ResultCache()
    c.put(["x"], [1, 2])
    assert ResultCache().get(["x"]) == [1, 2]


def test_corrupted_entry_is_recomputed(tmp_path):
    c = ResultCache(tmp_path)
    c.put(["k"], {"v": 1})
    (path,) = tmp_path.glob("*.json")
    record = json.loads(path.read_text())
    record["payload"]["v"] = 2
    path.write_text(json.dumps(record))
    fresh = ResultCache(tmp_path)
    assert fresh.get_or_compute(["k"], lambda: {"v": 1}) == {"v": 1}
    assert fresh.corrupted == [str(path)]
    assert ResultCache(tmp_path).get(["k"]) == {"v": 1}


def test_truncated_file_is_recomputed(tmp_path):
    c = ResultCache(tmp_path)
    c.put(["k"], "abc")
    (path,) = tmp_path.glob("*.json")
    path.write_text(path.read_text()[:10])
    assert c.get(["k"]) is None and c.corrupted
