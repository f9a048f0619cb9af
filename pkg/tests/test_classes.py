import pytest
from pydantic import ValidationError

from thompson.classes.attack_result import Verification
from thompson.classes.result import CommandResult
from thompson.classes.settings import Method, OutputFormat, RunConfig
from thompson.classes.transcript import SharedKey, Variant
from thompson.crypto_tools.attack import attack_restriction
from thompson.crypto_tools.protocol import run_exchange
from thompson.group_tools.numerics import DEFAULT_SCALE_LIMIT
from thompson.group_tools.words import EPSILON, NormalForm, nf_generator


def test_run_config_defaults():
    cfg = RunConfig()
    assert (cfg.s, cfg.w_length, cfg.key_length, cfg.trials, cfg.seed) == (4, 256, 256, 100, 0)
    assert cfg.variant is Variant.SU and cfg.method is Method.ALL
    assert cfg.output_format is OutputFormat.JSON
    assert cfg.scale_limit == DEFAULT_SCALE_LIMIT
    assert (cfg.min_exp, cfg.max_exp, cfg.repeats, cfg.oracle_max_exp) == (10, 20, 3, 8)


def test_run_config_fields_are_flags():
    assert set(RunConfig.model_fields) == {
        "s",
        "w_length",
        "key_length",
        "variant",
        "trials",
        "seed",
        "method",
        "output_format",
        "scale_limit",
        "min_exp",
        "max_exp",
        "repeats",
        "oracle_max_exp",
    }


def test_run_config_ignores_environment(monkeypatch):
    monkeypatch.setenv("S", "9")
    monkeypatch.setenv("TRIALS", "1")
    assert RunConfig().s == 4
    assert RunConfig().trials == 100


@pytest.mark.parametrize(
    "params",
    [
        {"s": 0},
        {"key_length": 0},
        {"trials": -1},
        {"variant": "kl", "method": "word"},
        {"method": "kl"},
        {"min_exp": 6, "max_exp": 4},
        {"repeats": 0},
    ],
)
def test_run_config_validation(params):
    with pytest.raises(ValidationError):
        RunConfig(**params)


def test_trial_seed():
    cfg = RunConfig(seed=6)
    assert [cfg.trial_seed(t) for t in range(4)] == [6, 7, 4, 5]


def test_command_result_envelope():
    res = CommandResult(status="ok", result={"n": 1})
    assert res() == {"status": "ok", "message": None, "result": {"n": 1}}
    assert res.ok
    assert not CommandResult(status="error", message="boom").ok


def test_verification_passed_flags():
    assert Verification(membership=True, reconstruction=True).passed
    assert not Verification(membership=True, reconstruction=True, key_equality=False).passed
    assert not Verification(membership=False, reconstruction=True).passed


def test_verify_against_fills_key_equality():
    run = run_exchange(Variant.SU, 2, 16, 16, seed=4)
    result = attack_restriction(run.transcript)
    assert result.verification.key_equality is None
    assert result.verify_against(run.key).verification.key_equality is True
    wrong = SharedKey(value=nf_generator(9))
    assert result.verify_against(wrong).verification.key_equality is False


def test_shared_key_serializes_as_word():
    assert SharedKey(value=EPSILON).model_dump(mode="json") == {"value": "e"}
    assert SharedKey.model_validate({"value": "x1 x0"}).value == NormalForm((0, 2), ())
