import json

import pytest

from command_bus import CommandBus
from driver import (
    MAX_DIV_TERMS_ENV,
    SETTINGS_FILE,
    CmpCommand,
    Driver,
    EvalCommand,
    MeasureCmpCommand,
    MeasureCommand,
    PartsCommand,
    RankCommand,
    Settings,
    TableCommand,
    load_settings,
    parse_max_div_terms,
)
from errors import CommandError, DivisionByZero, InexactDivision, NotRepresentable
from grosscore import GROSSONE, Magnitude, Ordering, normalize
from lexrank import ScoreVector


@pytest.fixture
def driver():
    driver = Driver(CommandBus(), Settings(max_div_terms=3, batch_workers=2))
    driver.start()
    yield driver
    driver.stop_system()


def publish(driver, command):
    return driver.bus.publish(command.verb, command)


def test_shipped_settings_file():
    assert load_settings(SETTINGS_FILE, environ={}) == Settings()


def test_settings_file_and_environment(tmp_path):
    path = tmp_path / "settings.json"
    path.write_text(json.dumps({"max_div_terms": 8, "unicode_output": True, "colour": "blue"}))
    settings = load_settings(path, environ={})
    assert settings.max_div_terms == 8
    assert settings.unicode_output
    assert load_settings(path, environ={MAX_DIV_TERMS_ENV: "5"}).max_div_terms == 5


def test_missing_settings_file_uses_defaults(tmp_path):
    assert load_settings(tmp_path / "absent.json", environ={}) == Settings()


@pytest.mark.parametrize("value", ["0", "-3", "many", "2.5", ""])
def test_bad_division_budget(value):
    with pytest.raises(CommandError):
        parse_max_div_terms(value, MAX_DIV_TERMS_ENV)
    with pytest.raises(CommandError):
        load_settings(SETTINGS_FILE, environ={MAX_DIV_TERMS_ENV: value})


def test_bad_settings_file(tmp_path):
    path = tmp_path / "settings.json"
    path.write_text(json.dumps({"batch_workers": 0}))
    with pytest.raises(CommandError):
        load_settings(path, environ={})


def test_verbs(driver):
    assert driver.bus.verbs() == ["cmp", "eval", "measure", "measure-cmp", "parts", "rank", "table"]


def test_eval_and_cmp(driver):
    assert publish(driver, EvalCommand("3*G^2 - (G - 1)")) == normalize([(2, 3), (1, -1), (0, 1)])
    assert publish(driver, CmpCommand("2*G^2+1", "G^2+11*G+3")) is Ordering.GREATER


def test_eval_uses_the_configured_division_budget(driver):
    with pytest.raises(InexactDivision) as info:
        publish(driver, EvalCommand("1/(G+1)"))
    assert info.value.max_terms == 3


def test_parts(driver):
    result = publish(driver, PartsCommand("G + 1 + G^-1"))
    assert result.parts.infinite == GROSSONE
    assert result.magnitude is Magnitude.INFINITE


def test_measure_verbs(driver):
    result = publish(driver, MeasureCommand("num[1,2)@10"))
    assert result.measure.to_text() == "10^G"
    assert result.descriptor.to_text() == "num[1,2)@10"
    assert publish(driver, MeasureCmpCommand("num[1,2]@2", "num[1,2)@2")) is Ordering.GREATER
    assert len(publish(driver, TableCommand())) == 18


def test_rank(driver):
    result = publish(driver, RankCommand("gross", ("2,0,1", "1,11,3"), ("A", "B")))
    assert result.method.name == "gross"
    assert [entry.label for entry in result.entries] == ["A", "B"]


@pytest.mark.parametrize("kwargs", [
    {"method": "gross", "vectors": ()},
    {"method": "median", "vectors": ("1,2",)},
    {"method": "gross", "vectors": ("1,x",)},
    {"method": "binary", "vectors": ("1,2", "3,4"), "labels": ("A",)},
])
def test_malformed_rank_commands(kwargs):
    with pytest.raises(CommandError):
        RankCommand(**kwargs)


def test_rank_command_accepts_parsed_vectors():
    command = RankCommand("binary", (ScoreVector((1, 2)),))
    assert command.vectors == (ScoreVector((1, 2)),)
    assert command.labels == ()


def test_batch_keeps_input_order(driver):
    commands = [EvalCommand(f"G + {i}") for i in range(20)]
    commands.insert(5, EvalCommand("1/0"))
    outcomes = driver.run_batch(commands)
    assert [outcome.command for outcome in outcomes] == commands
    assert isinstance(outcomes[5].error, DivisionByZero)
    assert outcomes[6].result == GROSSONE + 5
    assert sum(outcome.ok for outcome in outcomes) == 20


def test_stop_is_idempotent(driver):
    driver.stop_system()
    driver.stop_system()
    assert not driver.running
    with pytest.raises(RuntimeError):
        driver.run_batch([EvalCommand("G")])


def test_batch_survives_an_oversized_power(driver):
    commands = [EvalCommand("G + 1"), EvalCommand("(G+1)^100000"), EvalCommand("2^20000")]
    outcomes = driver.run_batch(commands)
    assert outcomes[0].result == GROSSONE + 1
    assert isinstance(outcomes[1].error, NotRepresentable)
    assert outcomes[2].result == 2 ** 20000
