"""
Реестр проверок для команды selftest.

Каждая проверка выполняет одну пробу по зерну и бросает ThompsonError при расхождении;
run_checks прогоняет все проверки cfg.trials раз с зёрнами seed ^ trial.
Проверки, строящие обмен, возвращают ветви открытых слов; run_check их подсчитывает.
"""
from __future__ import annotations

import logging
import random
from typing import Callable, Optional

from pydantic import BaseModel, Field

from thompson.classes.errors import CheckFailedError, ThompsonError
from thompson.classes.settings import RunConfig
from thompson.classes.transcript import CaseBranch, ExchangeRun, Role, Variant
from thompson.crypto_tools.attack import (
    attack_kl,
    attack_restriction,
    attack_transitivity,
    attack_word_level,
)
from thompson.crypto_tools.protocol import case_of, run_exchange
from thompson.group_tools.convert import pl_to_word, word_to_pl
from thompson.group_tools.numerics import ZERO, pl_compose, pl_is_identity_on, scale_limit
from thompson.group_tools.subgroups import in_A, in_A_geometric, phi, sample_A, sample_B
from thompson.group_tools.words import (
    Letter,
    Word,
    nf_from_word,
    nf_from_word_naive,
    nf_multiply,
    nf_product_special,
)

logger = logging.getLogger(__name__)

ORACLE_WORD_LENGTH = 12
SAMPLE_LENGTH = 16

Cases = tuple[CaseBranch, ...]
Check = Callable[[RunConfig, int], Optional[Cases]]


class CheckOutcome(BaseModel):
    name: str
    trials: int
    failures: int = Field(default=0)
    message: Optional[str] = None
    case_split: Optional[dict[str, int]] = None

    @property
    def passed(self) -> bool:
        return self.failures == 0


def _expect(condition: bool, message: str) -> None:
    if not condition:
        raise CheckFailedError(message)


def _random_word(rng: random.Random, length: int, top: int) -> Word:
    return Word(tuple(Letter(rng.randint(0, top), rng.choice((1, -1))) for _ in range(length)))


def check_normal_form_oracle(cfg: RunConfig, seed: int) -> None:
    w = _random_word(random.Random(seed), ORACLE_WORD_LENGTH, 3)
    fast = nf_from_word(w)
    _expect(fast == nf_from_word_naive(w), f"nf_from_word disagrees with rewriting on {w}")
    _expect(word_to_pl(fast) == word_to_pl(w), f"normal form of {w} changes the map")


def check_representation(cfg: RunConfig, seed: int) -> None:
    rng = random.Random(seed)
    g = nf_from_word(_random_word(rng, cfg.key_length, cfg.s + 2))
    h = nf_from_word(_random_word(rng, cfg.key_length, cfg.s + 2))
    _expect(pl_to_word(word_to_pl(g)) == g, f"tree-pair round trip fails on {g}")
    _expect(
        word_to_pl(nf_multiply(g, h)) == pl_compose(word_to_pl(g), word_to_pl(h)),
        "word_to_pl is not multiplicative",
    )


def check_subgroups(cfg: RunConfig, seed: int) -> None:
    rng = random.Random(seed)
    a, b = sample_A(cfg.s, SAMPLE_LENGTH, rng), sample_B(cfg.s, SAMPLE_LENGTH, rng)
    _expect(nf_multiply(a, b) == nf_multiply(b, a), "A_s and B_s do not commute")
    _expect(nf_product_special(a, b, cfg.s) == nf_multiply(a, b), "special product disagrees")
    _expect(pl_is_identity_on(word_to_pl(b), ZERO, phi(cfg.s)), f"{b} moves points of [0, phi_s]")
    if cfg.s >= 2:
        _expect(in_A(a, cfg.s) == in_A_geometric(a, cfg.s), f"membership criteria disagree on {a}")


def _run(cfg: RunConfig, seed: int, variant: Variant) -> ExchangeRun:
    run = run_exchange(variant, cfg.s, cfg.w_length, cfg.key_length, seed)
    _expect(run.keys_agree, f"honest keys disagree for seed {seed}")
    return run


def _case(run: ExchangeRun) -> CaseBranch:
    return case_of(run.transcript.public)


def check_exchange(cfg: RunConfig, seed: int) -> Cases:
    return _case(_run(cfg, seed, Variant.SU)), _case(_run(cfg, seed, Variant.KL))


def check_restriction(cfg: RunConfig, seed: int) -> Cases:
    run = _run(cfg, seed, Variant.SU)
    _expect(attack_restriction(run.transcript).key == run.key, "restriction attack missed the key")
    return (_case(run),)


def check_transitivity(cfg: RunConfig, seed: int) -> Cases:
    run = _run(cfg, seed, Variant.SU)
    case = _case(run)
    target = Role.ALICE if case is CaseBranch.BELOW else Role.BOB
    result = attack_transitivity(run.transcript, target)
    _expect(result.key == run.key, "transitivity attack missed the key")
    return (case,)


def check_kl(cfg: RunConfig, seed: int) -> Cases:
    run = _run(cfg, seed, Variant.KL)
    _expect(attack_kl(run.transcript).key == run.key, "KL attack missed the key")
    return (_case(run),)


def check_word_level(cfg: RunConfig, seed: int) -> Cases:
    run = _run(cfg, seed, Variant.SU)
    result = attack_word_level(run.transcript)
    _expect(result.key == run.key, "word-level attack missed the key")
    _expect(result.key == attack_restriction(run.transcript).key, "word-level and restriction disagree")
    return (_case(run),)


CHECKS: dict[str, Check] = {
    "normal-form-oracle": check_normal_form_oracle,
    "representation": check_representation,
    "subgroups": check_subgroups,
    "exchange": check_exchange,
    "attack-restriction": check_restriction,
    "attack-transitivity": check_transitivity,
    "attack-kl": check_kl,
    "attack-word-level": check_word_level,
}

# транзитивность A_s и B_s начинается с s = 2
NEEDS_TRANSITIVITY = {"attack-transitivity", "attack-kl"}


def _empty_split() -> dict[str, int]:
    return {case.value: 0 for case in CaseBranch}


def run_check(name: str, check: Check, cfg: RunConfig) -> CheckOutcome:
    outcome = CheckOutcome(name=name, trials=cfg.trials)
    split = _empty_split()
    for trial in range(cfg.trials):
        try:
            for case in check(cfg, cfg.trial_seed(trial)) or ():
                split[case.value] += 1
        except ThompsonError as err:
            if outcome.message is None:
                outcome.message = f"trial {trial}: {type(err).__name__}: {err}"
            outcome.failures += 1
    if any(split.values()):
        outcome.case_split = split
    if outcome.failures:
        logger.warning("check %s failed %d of %d trials", name, outcome.failures, cfg.trials)
    return outcome


def run_checks(cfg: RunConfig) -> list[CheckOutcome]:
    if cfg.trials == 0:
        return []
    names = [name for name in CHECKS if cfg.s >= 2 or name not in NEEDS_TRANSITIVITY]
    with scale_limit(cfg.scale_limit):
        return [run_check(name, CHECKS[name], cfg) for name in names]


def case_split(outcomes: list[CheckOutcome]) -> dict[str, int]:
    """Сколько открытых слов попало в каждую ветвь; считается по проверке exchange (SU и KL)."""
    for outcome in outcomes:
        if outcome.name == "exchange" and outcome.case_split is not None:
            return dict(outcome.case_split)
    return _empty_split()
