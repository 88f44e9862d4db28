from __future__ import annotations

import pytest

from pairorbits.cache import Cache, ComputationRecord
from pairorbits.errors import CacheConflict
from pairorbits.partition import EMPTY_PARTITION, parse_partition as P


def rec(coeffs, ideal=None, quantity="n_lambda", lam="3^1,1^1"):
    return ComputationRecord(quantity, P(lam), ideal, tuple(coeffs), "interpolated(p=2,3;check=5)")


def test_line_roundtrip():
    for r in [rec((4, 7, 5, 1)), rec((-1, 0, 2), "1,0", "n_ideal"), rec((1,), lam="")]:
        back = ComputationRecord.from_line(r.quantity, r.to_line())
        assert back == r


def test_put_get(tmp_path):
    cache = Cache(tmp_path)
    assert cache.get("n_lambda", P("3^1,1^1")) is None
    cache.put(rec((4, 7, 5, 1)))
    cache.put(rec((-1, 2), "2,-", "n_ideal"))
    assert cache.get("n_lambda", P("3^1,1^1")).coefficients == (4, 7, 5, 1)
    assert cache.get("n_ideal", P("3^1,1^1"), "2,-").coefficients == (-1, 2)
    assert cache.get("n_ideal", P("3^1,1^1"), "1,0") is None
    cache.put(rec((4, 7, 5, 1)))  # identical: no-op
    assert len(list(cache.records("n_lambda"))) == 1


def test_conflict(tmp_path):
    cache = Cache(tmp_path)
    cache.put(rec((4, 7, 5, 1)))
    with pytest.raises(CacheConflict):
        cache.put(rec((4, 7, 5, 2)))


def test_env_override(tmp_path, monkeypatch):
    monkeypatch.setenv("PAIRORBITS_CACHE_DIR", str(tmp_path / "c"))
    assert Cache.default().directory == tmp_path / "c"


def test_clear(tmp_path):
    cache = Cache(tmp_path)
    cache.put(rec((1,), lam=""))
    assert cache.get("n_lambda", EMPTY_PARTITION) is not None
    cache.clear()
    assert cache.get("n_lambda", EMPTY_PARTITION) is None
