import pytest

from vassinc.config import Settings
from vassinc.oracle import OracleBudget
from vassinc.reachability import SearchBudget


def test_defaults():
    assert Settings.from_env({}) == Settings()
    assert Settings().max_nodes == 20000


def test_environment_variables():
    settings = Settings.from_env({"VASSINC_MAX_NODES": "500", "VASSINC_MAX_RUNS": " 7 "})
    assert settings.max_nodes == 500
    assert settings.max_runs_per_word == 7
    assert settings.oracle_len == Settings().oracle_len


@pytest.mark.parametrize("value", ["lots", "-1", "1.5", ""])
def test_bad_environment_values(value):
    with pytest.raises(ValueError):
        Settings.from_env({"VASSINC_ORACLE_LEN": value})


def test_override_skips_none():
    settings = Settings().override(max_nodes=10, oracle_len=None)
    assert settings.max_nodes == 10
    assert settings.oracle_len == Settings().oracle_len
    with pytest.raises(ValueError):
        Settings().override(max_nodes=-3)


@pytest.mark.parametrize("name", ["MAX_NODES", "MAX_COUNTER_SUM", "MAX_ATOMS"])
def test_search_caps_must_be_positive(name):
    with pytest.raises(ValueError):
        Settings.from_env({f"VASSINC_{name}": "0"})


def test_other_settings_may_be_zero():
    assert Settings(oracle_len=0).oracle_len == 0
    assert Settings.from_env({"VASSINC_KDET_CHECK_LEN": "0"}).kdet_check_len == 0


def test_budgets_follow_the_settings():
    settings = Settings(max_nodes=100, max_counter_sum=9, max_atoms=3, max_configs=11)
    assert SearchBudget.from_settings(settings) == SearchBudget(100, 9, 3)
    assert OracleBudget.from_settings(settings).max_configs == 11
