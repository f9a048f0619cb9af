"""
Восстановление общего ключа по открытым данным (s, w, u₁, u₂).

    restriction  - сужение на [0, φ_s] или [φ_s, 1] (SU);
    transitivity - продолжение известного куска ключа внутри A_s (SU, открытые случаи);
    kl           - вариант Ко–Ли через транзитивность B_s / A_s;
    word-level   - выделение A_s-части из нормальных форм w·u₁⁻¹ и w⁻¹·u₂ (SU).

Атаки читают только открытую часть транскрипта.
"""
from __future__ import annotations

import logging
from typing import Callable

from thompson.classes.attack_result import AttackMethod, AttackResult, Verification
from thompson.classes.errors import (
    CaseMismatchError,
    PatchError,
    PreconditionError,
    ProtocolViolationError,
)
from thompson.classes.transcript import CaseBranch, Role, SharedKey, Transcript, Variant
from thompson.crypto_tools.protocol import case_of
from thompson.group_tools.convert import pl_to_word, word_to_pl
from thompson.group_tools.numerics import (
    ONE,
    ZERO,
    Dyadic,
    PLMap,
    Side,
    pl_compose,
    pl_eval,
    pl_eval_inverse,
    pl_invert,
    pl_is_identity_on,
    pl_patch,
)
from thompson.group_tools.subgroups import (
    extend_partial_A,
    extend_partial_B,
    in_A,
    in_A_geometric,
    in_B,
    phi,
    transitive_element_A,
    transitive_element_B,
)
from thompson.group_tools.words import (
    EPSILON,
    NormalForm,
    nf_invert,
    nf_multiply,
    nf_product,
    nf_shift,
)

logger = logging.getLogger(__name__)


def _require_variant(t: Transcript, variant: Variant) -> None:
    if t.variant is not variant:
        raise CaseMismatchError(f"attack expects a {variant.value} transcript, got {t.variant.value}")


def _require_transitive(s: int) -> None:
    if s < 2:
        raise PreconditionError(f"transitivity attacks need s >= 2, got s={s}")


def _finish(
    method: AttackMethod,
    party: Role,
    case: CaseBranch,
    pair: tuple[NormalForm, NormalForm],
    key: NormalForm,
    membership: bool,
    reconstruction: bool,
    **extra: bool,
) -> AttackResult:
    verification = Verification(membership=membership, reconstruction=reconstruction, **extra)
    if not verification.passed:
        raise ProtocolViolationError(
            f"{method.value} attack produced an invalid decomposition: {verification.model_dump()}"
        )
    logger.debug("%s attack cracked %s in case %s", method.value, party.value, case.value)
    return AttackResult(
        method=method,
        cracked_party=party,
        case_branch=case,
        recovered_pair=pair,
        key=SharedKey(value=key),
        verification=verification,
    )


def _patched(g: PLMap, end: Dyadic, keep: Side) -> NormalForm:
    try:
        return pl_to_word(pl_patch(g, end, keep))
    except PatchError as err:
        raise ProtocolViolationError(f"transcript is not honest: {err}") from err


def attack_restriction(t: Transcript) -> AttackResult:
    """Взлом ключа Боба при w(φ_s) ≤ φ_s и ключа Алисы при w(φ_s) > φ_s."""
    _require_variant(t, Variant.SU)
    s, w = t.public.s, t.public.w
    end = phi(s)
    w_map = word_to_pl(w)
    w_inv = nf_invert(w)
    case = case_of(t.public)

    if case is CaseBranch.BELOW:
        # w⁻¹u₂ = a₂ на [0, φ_s]
        a2 = _patched(pl_compose(pl_invert(w_map), word_to_pl(t.u2)), end, Side.LEFT)
        b2 = nf_product(t.u2, nf_invert(a2), w_inv)
        return _finish(
            AttackMethod.RESTRICTION,
            Role.BOB,
            case,
            (b2, a2),
            nf_product(b2, t.u1, a2),
            membership=in_B(b2, s) and in_A(a2, s),
            reconstruction=nf_product(b2, w, a2) == t.u2,
        )

    # w⁻¹u₁ = b₁ на [φ_s, 1]
    b1 = _patched(pl_compose(pl_invert(w_map), word_to_pl(t.u1)), end, Side.RIGHT)
    a1 = nf_product(t.u1, nf_invert(b1), w_inv)
    return _finish(
        AttackMethod.RESTRICTION,
        Role.ALICE,
        case,
        (a1, b1),
        nf_product(a1, t.u2, b1),
        membership=in_A(a1, s) and in_B(b1, s),
        reconstruction=nf_product(a1, w, b1) == t.u1,
    )


def recover_a1_from_inverse(t: Transcript) -> NormalForm:
    """
    Второй путь для ветви w(φ_s) > φ_s: u₁⁻¹ = w⁻¹a₁⁻¹ на [0, φ_s],
    то есть a₁⁻¹ = w u₁⁻¹ там же.
    """
    _require_variant(t, Variant.SU)
    end = phi(t.public.s)
    if case_of(t.public) is not CaseBranch.ABOVE:
        raise CaseMismatchError("recovering a1 from u1^-1 needs w(phi_s) > phi_s")
    g = pl_compose(word_to_pl(t.public.w), pl_invert(word_to_pl(t.u1)))
    return nf_invert(_patched(g, end, Side.LEFT))


def _split_left(w: NormalForm, w_map: PLMap, u: NormalForm, s: int) -> tuple[NormalForm, NormalForm]:
    # u = a w b, w(φ_s) ≤ φ_s: a известно на [0, w(φ_s)] как u w⁻¹
    t0 = pl_eval(w_map, phi(s))
    partial = pl_compose(word_to_pl(u), pl_invert(w_map))
    try:
        a_sigma = extend_partial_A(s, partial, t0)
    except PreconditionError as err:
        raise ProtocolViolationError(f"transcript is not honest: {err}") from err
    b_sigma = nf_product(nf_invert(w), nf_invert(a_sigma), u)
    return a_sigma, b_sigma


def attack_transitivity(t: Transcript, target: Role) -> AttackResult:
    """
    Ключ Алисы при w(φ_s) ≤ φ_s и ключ Боба при w(φ_s) > φ_s:
    найденная пара может отличаться от настоящей, но даёт тот же общий ключ.
    """
    _require_variant(t, Variant.SU)
    s, w = t.public.s, t.public.w
    _require_transitive(s)
    case = case_of(t.public)
    expected = CaseBranch.BELOW if target is Role.ALICE else CaseBranch.ABOVE
    if case is not expected:
        raise CaseMismatchError(f"cannot attack {target.value} by transitivity in case {case.value}")
    w_map = word_to_pl(w)

    if target is Role.ALICE:
        a_sigma, b_sigma = _split_left(w, w_map, t.u1, s)
        return _finish(
            AttackMethod.TRANSITIVITY,
            Role.ALICE,
            case,
            (a_sigma, b_sigma),
            nf_product(a_sigma, t.u2, b_sigma),
            membership=in_A(a_sigma, s) and in_B(b_sigma, s),
            reconstruction=nf_product(a_sigma, w, b_sigma) == t.u1,
        )

    # u₂⁻¹ = a₂⁻¹ w⁻¹ b₂⁻¹ и w⁻¹(φ_s) < φ_s
    a_inv, b_inv = _split_left(nf_invert(w), pl_invert(w_map), nf_invert(t.u2), s)
    b_sigma, a_sigma = nf_invert(b_inv), nf_invert(a_inv)
    return _finish(
        AttackMethod.TRANSITIVITY,
        Role.BOB,
        case,
        (b_sigma, a_sigma),
        nf_product(b_sigma, t.u1, a_sigma),
        membership=in_B(b_sigma, s) and in_A(a_sigma, s),
        reconstruction=nf_product(b_sigma, w, a_sigma) == t.u2,
    )


def attack_kl(t: Transcript) -> AttackResult:
    """Атака на вариант Ко–Ли: u₂ = b₁wb₂ при w(φ_s) ≤ φ_s, u₁ = a₁wa₂ иначе."""
    _require_variant(t, Variant.KL)
    s, w = t.public.s, t.public.w
    _require_transitive(s)
    end = phi(s)
    w_map = word_to_pl(w)
    w_inv_map = pl_invert(w_map)
    w_inv = nf_invert(w)
    case = case_of(t.public)
    tau = pl_eval_inverse(w_map, end)

    try:
        if case is CaseBranch.BELOW:
            sigma = pl_eval_inverse(word_to_pl(t.u2), end)
            # b₀(σ) = τ, тогда b₂' = b₂b₀⁻¹ оставляет τ на месте
            b0 = EPSILON if sigma == tau else transitive_element_B(s, sigma, tau)
            u2_prime = nf_multiply(t.u2, nf_invert(b0))
            partial = pl_compose(w_inv_map, word_to_pl(u2_prime))
            b_sigma2 = extend_partial_B(s, partial, tau, known=Side.LEFT)
            b_sigma1 = nf_product(u2_prime, nf_invert(b_sigma2), w_inv)
            second = nf_multiply(b_sigma2, b0)
            return _finish(
                AttackMethod.KL,
                Role.BOB,
                case,
                (b_sigma1, second),
                nf_product(b_sigma1, t.u1, second),
                membership=in_B(b_sigma1, s) and in_B(second, s),
                reconstruction=nf_product(b_sigma1, w, second) == t.u2,
                intermediate_identity=pl_is_identity_on(word_to_pl(b_sigma1), ZERO, end),
            )

        sigma = pl_eval_inverse(word_to_pl(t.u1), end)
        a0 = EPSILON if sigma == tau else transitive_element_A(s, sigma, tau)
        u1_prime = nf_multiply(t.u1, nf_invert(a0))
        partial = pl_compose(w_inv_map, word_to_pl(u1_prime))
        a_sigma2 = extend_partial_A(s, partial, tau, known=Side.RIGHT)
        a_sigma1 = nf_product(u1_prime, nf_invert(a_sigma2), w_inv)
        second = nf_multiply(a_sigma2, a0)
        return _finish(
            AttackMethod.KL,
            Role.ALICE,
            case,
            (a_sigma1, second),
            nf_product(a_sigma1, t.u2, second),
            membership=in_A(a_sigma1, s) and in_A(second, s),
            reconstruction=nf_product(a_sigma1, w, second) == t.u1,
            intermediate_identity=pl_is_identity_on(word_to_pl(a_sigma1), end, ONE),
        )
    except PreconditionError as err:
        raise ProtocolViolationError(f"transcript is not honest: {err}") from err


def extract_as_part(z: NormalForm, s: int) -> tuple[NormalForm, NormalForm] | None:
    """
    Разложение z = ab с a ∈ A_s и b, все индексы которого ≥ s+1.
    m - число начальных пар, удовлетворяющих критерию A_s; None, если z ∉ A_sB_s.
    """
    limit = min(len(z.pos), len(z.neg))
    m = next(
        (k - 1 for k in range(1, limit + 1) if z.pos[k - 1] - k >= s or z.neg[k - 1] - k >= s),
        limit,
    )
    a = NormalForm(z.pos[:m], z.neg[:m])
    rest = NormalForm(z.pos[m:], z.neg[m:])
    if any(i < s + 1 + m for i in rest.pos + rest.neg) or not in_A(a, s):
        return None
    b = nf_shift(rest, -m)
    if nf_multiply(a, b) != z:
        return None
    return a, b


def attack_word_level(t: Transcript) -> AttackResult:
    """Хотя бы одно из z₁ = w u₁⁻¹, z₂ = w⁻¹u₂ лежит в A_sB_s."""
    _require_variant(t, Variant.SU)
    s, w = t.public.s, t.public.w
    w_inv = nf_invert(w)
    case = case_of(t.public)
    candidates: list[tuple[Role, tuple[NormalForm, NormalForm], NormalForm]] = []

    split = extract_as_part(nf_multiply(w_inv, t.u2), s)
    if split is not None:
        a2, b_conj = split
        b2 = nf_product(w, b_conj, w_inv)
        if in_A_geometric(a2, s) and in_B(b2, s) and nf_product(b2, w, a2) == t.u2:
            candidates.append((Role.BOB, (b2, a2), nf_product(b2, t.u1, a2)))

    split = extract_as_part(nf_multiply(w, nf_invert(t.u1)), s)
    if split is not None:
        a_inv, b_conj = split
        a1 = nf_invert(a_inv)
        b1 = nf_product(w_inv, nf_invert(b_conj), w)
        if in_A_geometric(a1, s) and in_B(b1, s) and nf_product(a1, w, b1) == t.u1:
            candidates.append((Role.ALICE, (a1, b1), nf_product(a1, t.u2, b1)))

    if not candidates:
        raise ProtocolViolationError("neither w u1^-1 nor w^-1 u2 factors through A_s B_s")
    party, pair, key = candidates[0]
    first_in, second_in = (in_B, in_A) if party is Role.BOB else (in_A, in_B)
    return _finish(
        AttackMethod.WORD_LEVEL,
        party,
        case,
        pair,
        key,
        membership=first_in(pair[0], s) and second_in(pair[1], s),
        reconstruction=True,
        candidates_agree=all(candidate[2] == key for candidate in candidates),
    )


def applicable_attacks(t: Transcript) -> list[tuple[AttackMethod, Callable[[Transcript], AttackResult]]]:
    if t.variant is Variant.KL:
        return [(AttackMethod.KL, attack_kl)]
    attacks = [(AttackMethod.RESTRICTION, attack_restriction)]
    if t.public.s >= 2:
        target = Role.ALICE if case_of(t.public) is CaseBranch.BELOW else Role.BOB
        attacks.append((AttackMethod.TRANSITIVITY, lambda tr: attack_transitivity(tr, target)))
    attacks.append((AttackMethod.WORD_LEVEL, attack_word_level))
    return attacks


def attack_all(t: Transcript) -> list[AttackResult]:
    return [attack(t) for _, attack in applicable_attacks(t)]


def keys_agree(results: list[AttackResult]) -> bool:
    return len({str(result.key.value) for result in results}) <= 1


def run_method(t: Transcript, method: AttackMethod | None, target: Role | None = None) -> list[AttackResult]:
    """Один метод или, при method=None, все применимые; target задаёт сторону для transitivity."""
    if method is None:
        return attack_all(t)
    if method is AttackMethod.TRANSITIVITY:
        _require_variant(t, Variant.SU)
        if target is None:
            target = Role.ALICE if case_of(t.public) is CaseBranch.BELOW else Role.BOB
        return [attack_transitivity(t, target)]
    attacks = {
        AttackMethod.RESTRICTION: attack_restriction,
        AttackMethod.WORD_LEVEL: attack_word_level,
        AttackMethod.KL: attack_kl,
    }
    return [attacks[method](t)]
