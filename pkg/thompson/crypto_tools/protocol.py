"""
Моделирование обмена ключами Шпильрайна–Ушакова (SU) и варианта в духе Ко–Ли (KL).

SU:  u₁ = a₁wb₁, u₂ = b₂wa₂, K = a₁u₂b₁ = b₂u₁a₂.
KL:  u₁ = a₁wa₂, u₂ = b₁wb₂, K = a₁u₂a₂ = b₁u₁b₂.
"""
from __future__ import annotations

import logging
import random

from thompson.classes.errors import MembershipError, PreconditionError
from thompson.classes.transcript import (
    CaseBranch,
    ExchangeRun,
    KeyMaterial,
    PublicData,
    Role,
    SharedKey,
    Transcript,
    Variant,
)
from thompson.group_tools.convert import word_to_pl
from thompson.group_tools.numerics import pl_eval
from thompson.group_tools.subgroups import (
    in_A,
    in_B,
    phi,
    random_public_word,
    sample_A,
    sample_B,
)
from thompson.group_tools.words import NormalForm, nf_product

logger = logging.getLogger(__name__)

MAX_CASE_ATTEMPTS = 10_000


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise MembershipError(message)


def check_key_material(km: KeyMaterial, s: int) -> None:
    """Проверяет, что закрытые ключи лежат в своих подгруппах."""
    if km.variant is Variant.SU:
        first_in, second_in = (in_A, in_B) if km.role is Role.ALICE else (in_B, in_A)
    else:
        first_in = second_in = in_A if km.role is Role.ALICE else in_B
    _require(first_in(km.first, s), f"{km.role.value}'s first key {km.first} is outside its subgroup")
    _require(second_in(km.second, s), f"{km.role.value}'s second key {km.second} is outside its subgroup")


def case_of(public: PublicData) -> CaseBranch:
    end = phi(public.s)
    if pl_eval(word_to_pl(public.w), end) <= end:
        return CaseBranch.BELOW
    return CaseBranch.ABOVE


def su_round_alice(public: PublicData, a1: NormalForm, b1: NormalForm) -> NormalForm:
    _require(in_A(a1, public.s), f"a1={a1} is not in A_{public.s}")
    _require(in_B(b1, public.s), f"b1={b1} is not in B_{public.s}")
    return nf_product(a1, public.w, b1)


def su_round_bob(public: PublicData, b2: NormalForm, a2: NormalForm) -> NormalForm:
    _require(in_B(b2, public.s), f"b2={b2} is not in B_{public.s}")
    _require(in_A(a2, public.s), f"a2={a2} is not in A_{public.s}")
    return nf_product(b2, public.w, a2)


def su_key_alice(public: PublicData, u2: NormalForm, a1: NormalForm, b1: NormalForm) -> SharedKey:
    return SharedKey(value=nf_product(a1, u2, b1))


def su_key_bob(public: PublicData, u1: NormalForm, b2: NormalForm, a2: NormalForm) -> SharedKey:
    return SharedKey(value=nf_product(b2, u1, a2))


def kl_round_alice(public: PublicData, a1: NormalForm, a2: NormalForm) -> NormalForm:
    _require(in_A(a1, public.s) and in_A(a2, public.s), f"Alice's keys are not in A_{public.s}")
    return nf_product(a1, public.w, a2)


def kl_round_bob(public: PublicData, b1: NormalForm, b2: NormalForm) -> NormalForm:
    _require(in_B(b1, public.s) and in_B(b2, public.s), f"Bob's keys are not in B_{public.s}")
    return nf_product(b1, public.w, b2)


def kl_key_alice(public: PublicData, u2: NormalForm, a1: NormalForm, a2: NormalForm) -> SharedKey:
    return SharedKey(value=nf_product(a1, u2, a2))


def kl_key_bob(public: PublicData, u1: NormalForm, b1: NormalForm, b2: NormalForm) -> SharedKey:
    return SharedKey(value=nf_product(b1, u1, b2))


def draw_public(
    rng: random.Random, s: int, w_length: int, case: CaseBranch | None = None
) -> PublicData:
    """Случайное w; при заданном case - выборка с отклонением до нужной ветви."""
    for attempt in range(MAX_CASE_ATTEMPTS):
        public = PublicData(s=s, w=random_public_word(rng, w_length))
        if case is None or case_of(public) is case:
            if attempt:
                logger.debug("case %s reached after %d rejected draws", case.value, attempt)
            return public
    logger.warning("no public word in case %s after %d draws", case.value, MAX_CASE_ATTEMPTS)
    raise PreconditionError(
        f"could not draw w of length {w_length} with case {case.value} for s={s}"
    )


def run_exchange(
    variant: Variant,
    s: int,
    w_length: int,
    key_length: int,
    seed: int,
    case: CaseBranch | None = None,
) -> ExchangeRun:
    """Полное детерминированное моделирование обмена по зерну seed."""
    if s < 1 or w_length < 0 or key_length < 1:
        raise PreconditionError(f"invalid exchange parameters s={s} w_length={w_length} key_length={key_length}")
    rng = random.Random(seed)
    public = draw_public(rng, s, w_length, case)

    if variant is Variant.SU:
        a1, b1 = sample_A(s, key_length, rng), sample_B(s, key_length, rng)
        b2, a2 = sample_B(s, key_length, rng), sample_A(s, key_length, rng)
        u1 = su_round_alice(public, a1, b1)
        u2 = su_round_bob(public, b2, a2)
        key_alice = su_key_alice(public, u2, a1, b1)
        key_bob = su_key_bob(public, u1, b2, a2)
        alice = KeyMaterial(role=Role.ALICE, variant=variant, first=a1, second=b1)
        bob = KeyMaterial(role=Role.BOB, variant=variant, first=b2, second=a2)
    else:
        a1, a2 = sample_A(s, key_length, rng), sample_A(s, key_length, rng)
        b1, b2 = sample_B(s, key_length, rng), sample_B(s, key_length, rng)
        u1 = kl_round_alice(public, a1, a2)
        u2 = kl_round_bob(public, b1, b2)
        key_alice = kl_key_alice(public, u2, a1, a2)
        key_bob = kl_key_bob(public, u1, b1, b2)
        alice = KeyMaterial(role=Role.ALICE, variant=variant, first=a1, second=a2)
        bob = KeyMaterial(role=Role.BOB, variant=variant, first=b1, second=b2)

    run = ExchangeRun(
        transcript=Transcript(public=public, u1=u1, u2=u2, variant=variant),
        alice=alice,
        bob=bob,
        key_alice=key_alice,
        key_bob=key_bob,
    )
    if not run.keys_agree:
        logger.warning("honest keys disagree for seed %d", seed)
    return run
