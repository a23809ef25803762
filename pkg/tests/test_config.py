"""Tests for runtime settings."""

import pytest

from gentlecalc.config import DEFAULT_M_MAX, DEFAULT_PRIME, Settings, is_prime


class TestSettings:
    """Test defaults and validation."""

    def test_defaults(self):
        s = Settings()
        assert s.prime == DEFAULT_PRIME
        assert s.m_max == DEFAULT_M_MAX
        assert s.depth is None
        assert not s.structured
        assert s.max_workers == 4

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"prime": 2},
            {"prime": 15},
            {"m_max": -1},
            {"depth": -3},
            {"output_mode": "json"},
            {"max_workers": 0},
        ],
    )
    def test_rejects(self, kwargs):
        with pytest.raises(ValueError):
            Settings(**kwargs)

    def test_is_prime(self):
        assert [n for n in range(20) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19]
        assert is_prime(32003)

    def test_merged_ignores_none(self):
        s = Settings().merged(prime=7, depth=None, output_mode="structured", unknown=1)
        assert s.prime == 7
        assert s.depth is None
        assert s.structured


class TestFromEnv:
    """Test reading GENTLECALC_* variables."""

    def test_empty(self):
        assert Settings.from_env({}) == Settings()

    def test_values(self):
        env = {
            "GENTLECALC_PRIME": "101",
            "GENTLECALC_M_MAX": "5",
            "GENTLECALC_DEPTH": " 9 ",
            "GENTLECALC_OUTPUT": "structured",
        }
        s = Settings.from_env(env)
        assert (s.prime, s.m_max, s.depth, s.output_mode) == (101, 5, 9, "structured")

    def test_blank_is_unset(self):
        assert Settings.from_env({"GENTLECALC_DEPTH": "  "}).depth is None

    def test_not_a_number(self):
        with pytest.raises(ValueError):
            Settings.from_env({"GENTLECALC_PRIME": "many"})

    def test_reads_os_environ(self, monkeypatch):
        monkeypatch.setenv("GENTLECALC_M_MAX", "0")
        assert Settings.from_env().m_max == 0
