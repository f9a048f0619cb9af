"""
Подгруппы A_s = ⟨x₀x₁⁻¹, …, x₀x_s⁻¹⟩ и B_s = ⟨x_{s+1}, …, x_{2s}⟩:
порождающие, проверка принадлежности, случайные элементы, транзитивность и продолжение.
"""
from __future__ import annotations

import random

from pydantic import BaseModel, ConfigDict, Field

from thompson.classes.errors import PreconditionError
from thompson.group_tools.convert import pl_to_word, word_to_pl
from thompson.group_tools.numerics import (
    ONE,
    ZERO,
    Dyadic,
    PLMap,
    Side,
    dy_make,
    glue,
    homeo_points,
    pl_eval,
    pl_interval_homeo,
    pl_is_identity_on,
    pl_supported_in,
    piecewise_points,
)
from thompson.group_tools.words import (
    Letter,
    NormalForm,
    Word,
    meets_a_criterion,
    nf_from_word,
    word_of,
)


class SubgroupParams(BaseModel):
    model_config = ConfigDict(frozen=True)

    s: int = Field(ge=1)

    @property
    def phi(self) -> Dyadic:
        return phi(self.s)


def phi(s: int) -> Dyadic:
    """φ_s = 1 − 1/2^{s+1}."""
    if s < 0:
        raise PreconditionError(f"phi is defined for s >= 0, got {s}")
    return ONE - dy_make(1, s + 1)


def _check_s(s: int, minimum: int = 1) -> None:
    if s < minimum:
        raise PreconditionError(f"s must be at least {minimum}, got {s}")


def _gen_words_A(s: int) -> list[Word]:
    return [word_of(0, (k, -1)) for k in range(1, s + 1)]


def _gen_words_B(s: int) -> list[Word]:
    return [word_of(k) for k in range(s + 1, 2 * s + 1)]


def gens_A(s: int) -> list[NormalForm]:
    _check_s(s)
    return [nf_from_word(w) for w in _gen_words_A(s)]


def gens_B(s: int) -> list[NormalForm]:
    _check_s(s)
    return [nf_from_word(w) for w in _gen_words_B(s)]


def in_A(g: NormalForm, s: int) -> bool:
    return meets_a_criterion(g, s)


def in_A_geometric(g: NormalForm, s: int) -> bool:
    return pl_supported_in(word_to_pl(g), ZERO, phi(s))


def in_B(g: NormalForm, s: int) -> bool:
    return pl_supported_in(word_to_pl(g), phi(s), ONE)


def _sample(alphabet: list[Word], length: int, rng: random.Random) -> NormalForm:
    if length < 1:
        raise PreconditionError(f"key length must be positive, got {length}")
    letters: list[Letter] = []
    for _ in range(length):
        letters.extend(rng.choice(alphabet).letters)
    return nf_from_word(Word(tuple(letters)))


def _with_inverses(words: list[Word]) -> list[Word]:
    return words + [w.inverse() for w in words]


def sample_A(s: int, length: int, rng: random.Random) -> NormalForm:
    """Нормальная форма случайного слова длины length над S_{A_s}^{±1}."""
    _check_s(s)
    return _sample(_with_inverses(_gen_words_A(s)), length, rng)


def sample_B(s: int, length: int, rng: random.Random) -> NormalForm:
    _check_s(s)
    return _sample(_with_inverses(_gen_words_B(s)), length, rng)


def random_public_word(rng: random.Random, length: int) -> NormalForm:
    """w - случайное слово над {x₀, x₁}^{±1}."""
    alphabet = [Letter(0), Letter(0, -1), Letter(1), Letter(1, -1)]
    return nf_from_word(Word(tuple(rng.choice(alphabet) for _ in range(length))))


def _open_point(t: Dyadic, lo: Dyadic, hi: Dyadic, name: str) -> None:
    if not lo < t < hi:
        raise PreconditionError(f"{name}={t} must lie strictly inside ({lo}, {hi})")


def transitive_element_A(s: int, t1: Dyadic, t2: Dyadic) -> NormalForm:
    """Элемент a ∈ A_s с a(t1) = t2."""
    _check_s(s, 2)
    end = phi(s)
    _open_point(t1, ZERO, end, "t1")
    _open_point(t2, ZERO, end, "t2")
    return pl_to_word(pl_interval_homeo(t1, end, t2, end))


def transitive_element_B(s: int, t1: Dyadic, t2: Dyadic) -> NormalForm:
    """Элемент b ∈ B_s с b(t1) = t2."""
    _check_s(s, 2)
    start = phi(s)
    _open_point(t1, start, ONE, "t1")
    _open_point(t2, start, ONE, "t2")
    return pl_to_word(pl_interval_homeo(start, t1, start, t2))


def _extend(partial: PLMap, lo: Dyadic, hi: Dyadic, t0: Dyadic, known: Side) -> PLMap:
    # partial известно на [lo, t0] (LEFT) или на [t0, hi] (RIGHT); вне [lo, hi] - тождество
    if not lo <= t0 <= hi:
        raise PreconditionError(f"t0={t0} must lie in [{lo}, {hi}]")
    image = pl_eval(partial, t0)
    if lo < t0 < hi:
        if not lo < image < hi:
            raise PreconditionError(f"partial({t0})={image} must lie strictly inside ({lo}, {hi})")
    elif image != t0:
        raise PreconditionError(f"partial map must fix the endpoint {t0}")
    anchor = lo if known is Side.LEFT else hi
    if pl_eval(partial, anchor) != anchor:
        raise PreconditionError(f"partial map must fix {anchor}")
    outer_left = [(ZERO, ZERO), (lo, lo)] if ZERO < lo else []
    outer_right = [(hi, hi), (ONE, ONE)] if hi < ONE else []
    if known is Side.LEFT:
        known_points = piecewise_points(partial, lo, t0) if lo < t0 else []
        filled = homeo_points(t0, hi, image, hi)
        return glue(outer_left, known_points, filled, outer_right)
    filled = homeo_points(lo, t0, lo, image)
    known_points = piecewise_points(partial, t0, hi) if t0 < hi else []
    return glue(outer_left, filled, known_points, outer_right)


def extend_partial_A(s: int, partial: PLMap, t0: Dyadic, known: Side = Side.LEFT) -> NormalForm:
    """
    Элемент a_σ ∈ A_s, совпадающий с partial на известной части:
    на [0, t0] при known=LEFT или на [t0, φ_s] при known=RIGHT.
    """
    _check_s(s, 2)
    end = phi(s)
    if known is Side.LEFT and not ZERO < t0:
        raise PreconditionError(f"t0={t0} must be positive")
    return pl_to_word(_extend(partial, ZERO, end, t0, known))


def extend_partial_B(s: int, partial: PLMap, t0: Dyadic, known: Side = Side.RIGHT) -> NormalForm:
    """
    Элемент b_σ ∈ B_s, совпадающий с partial на известной части:
    на [t0, 1] при known=RIGHT или на [φ_s, t0] при known=LEFT.
    """
    _check_s(s, 2)
    start = phi(s)
    if known is Side.RIGHT and not t0 < ONE:
        raise PreconditionError(f"t0={t0} must be below 1")
    if known is Side.LEFT and start < t0 and not pl_is_identity_on(partial, ZERO, start):
        raise PreconditionError("partial map must be the identity on [0, phi_s]")
    return pl_to_word(_extend(partial, start, ONE, t0, known))
