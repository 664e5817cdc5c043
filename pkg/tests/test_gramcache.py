import logging

import numpy as np
import pytest

import borb.sections as sections
from borb.gramcache import GramCache
from borb.sections import build_space


def random_hermitian(rng, d):
    a = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    return a + a.conj().T


def test_store_load_roundtrip_is_bitwise(tmp_path, rng):
    cache = GramCache(tmp_path / "grams")
    g = random_hermitian(rng, 7)
    cache.store("some|key", g)
    back = cache.load("some|key", 7)
    assert back is not None
    np.testing.assert_array_equal(back, g)
    assert back.dtype == np.complex128


def test_distinct_keys_get_distinct_files(tmp_path, rng):
    cache = GramCache(tmp_path)
    g = random_hermitian(rng, 3)
    p1 = cache.store("key-one", g)
    p2 = cache.store("key-two", 2.0 * g)
    assert p1 != p2
    np.testing.assert_array_equal(cache.load("key-one", 3), g)
    np.testing.assert_array_equal(cache.load("key-two", 3), 2.0 * g)


def test_missing_key_returns_none(tmp_path):
    cache = GramCache(tmp_path)
    assert cache.load("never-stored", 4) is None


def test_dimension_mismatch_is_a_miss(tmp_path, rng, caplog):
    cache = GramCache(tmp_path)
    cache.store("k", random_hermitian(rng, 5))
    with caplog.at_level(logging.WARNING):
        assert cache.load("k", 6) is None
    assert "inconsistent dimensions" in caplog.text


def test_truncated_file_is_a_miss(tmp_path, rng, caplog):
    cache = GramCache(tmp_path)
    path = cache.store("k", random_hermitian(rng, 4))
    path.write_bytes(path.read_bytes()[:-16])
    with caplog.at_level(logging.WARNING):
        assert cache.load("k", 4) is None
    assert "inconsistent dimensions" in caplog.text


def test_bad_magic_is_a_miss(tmp_path, rng, caplog):
    cache = GramCache(tmp_path)
    path = cache.store("k", random_hermitian(rng, 4))
    raw = bytearray(path.read_bytes())
    raw[:8] = b"notmagic"
    path.write_bytes(bytes(raw))
    with caplog.at_level(logging.WARNING):
        assert cache.load("k", 4) is None
    assert "bad header" in caplog.text


def test_build_space_uses_the_cache(tmp_path, models, monkeypatch):
    cache = GramCache(tmp_path)
    model = models["circle"]
    calls = {"n": 0}
    real = sections.gram_matrix

    def counting(*args, **kwargs):
        calls["n"] += 1
        return real(*args, **kwargs)

    monkeypatch.setattr(sections, "gram_matrix", counting)
    s1 = build_space(model, 3, cache=cache)
    assert calls["n"] == 1
    s2 = build_space(model, 3, cache=cache)
    assert calls["n"] == 1  # second build is served from disk
    np.testing.assert_array_equal(s1.gram, s2.gram)
    np.testing.assert_array_equal(s1.ortho, s2.ortho)
    # a different resolution is a different key, not a stale hit
    build_space(model, 3, cache=cache, radial_nodes=48)
    assert calls["n"] == 2


def test_cached_and_direct_spaces_agree(tmp_path, models):
    cache = GramCache(tmp_path)
    model = models["flatcap"]
    direct = build_space(model, 4)
    cached = build_space(model, 4, cache=cache)
    probes = np.array([0.2 + 0.1j, 1.4 - 0.3j, 3.0 + 0j])
    np.testing.assert_allclose(
        direct.log_kernel(probes), cached.log_kernel(probes), rtol=0, atol=1e-13
    )
