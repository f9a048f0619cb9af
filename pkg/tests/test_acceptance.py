"""Полные прогоны с большим числом проб: pytest -m slow."""
import itertools
import random

import pytest

from thompson.classes.transcript import CaseBranch, Role, Variant
from thompson.crypto_tools.attack import attack_kl, attack_restriction, attack_transitivity, attack_word_level
from thompson.crypto_tools.protocol import run_exchange
from thompson.group_tools.convert import pl_to_word, word_to_pl
from thompson.group_tools.numerics import ZERO, pl_compose, pl_is_identity_on
from thompson.group_tools.subgroups import in_A, in_A_geometric, phi, sample_A, sample_B
from thompson.group_tools.words import Letter, Word, nf_from_word, nf_from_word_naive, nf_multiply, nf_product_special

pytestmark = pytest.mark.slow

SIZES = (16, 64, 256)


def su_grid(count: int):
    grid = itertools.cycle(itertools.product(range(2, 9), SIZES, SIZES))
    for seed, (s, w_length, key_length) in zip(range(count), grid):
        yield seed, s, w_length, key_length


def test_restriction_recovers_every_key():
    for seed, s, w_length, key_length in su_grid(1000):
        run = run_exchange(Variant.SU, s, w_length, key_length, seed)
        assert attack_restriction(run.transcript).key == run.key, seed


@pytest.mark.parametrize("case", list(CaseBranch))
def test_transitivity_recovers_every_key(case):
    target = Role.ALICE if case is CaseBranch.BELOW else Role.BOB
    for seed, s, w_length, key_length in su_grid(500):
        run = run_exchange(Variant.SU, s, w_length, key_length, seed, case=case)
        assert attack_transitivity(run.transcript, target).key == run.key, seed


@pytest.mark.parametrize("case", list(CaseBranch))
def test_kl_recovers_every_key(case):
    for seed, s, w_length, key_length in su_grid(500):
        run = run_exchange(Variant.KL, s, w_length, key_length, seed, case=case)
        result = attack_kl(run.transcript)
        assert result.key == run.key, seed
        if case is CaseBranch.BELOW:
            assert pl_is_identity_on(word_to_pl(result.recovered_pair[0]), ZERO, phi(s))


def test_word_level_agrees_with_restriction():
    for seed, s, w_length, key_length in su_grid(1000):
        run = run_exchange(Variant.SU, s, w_length, key_length, seed)
        result = attack_word_level(run.transcript)
        assert result.verification.candidates_agree
        assert result.key == run.key == attack_restriction(run.transcript).key, seed


@pytest.mark.parametrize("s", range(2, 7))
def test_product_lemma(s):
    rng = random.Random(s)
    for _ in range(500):
        a, b = sample_A(s, rng.randint(1, 64), rng), sample_B(s, rng.randint(1, 64), rng)
        assert nf_product_special(a, b, s) == nf_multiply(a, b)


@pytest.mark.parametrize("s", range(1, 7))
def test_commuting(s):
    rng = random.Random(10 + s)
    for _ in range(500):
        a, b = sample_A(s, 32, rng), sample_B(s, 32, rng)
        assert nf_multiply(a, b) == nf_multiply(b, a)


@pytest.mark.parametrize("s", range(2, 7))
def test_membership_characterization(s):
    rng = random.Random(20 + s)
    for _ in range(200):
        for g in (sample_A(s, 32, rng), sample_B(s, 32, rng)):
            assert in_A(g, s) == in_A_geometric(g, s)


def test_representation_coherence():
    rng = random.Random(99)
    for _ in range(1000):
        w = Word(tuple(Letter(rng.randint(0, 8), rng.choice((1, -1))) for _ in range(rng.randint(0, 64))))
        g = nf_from_word(w)
        assert pl_to_word(word_to_pl(g)) == g
        h = nf_from_word(Word(tuple(Letter(rng.randint(0, 8)) for _ in range(8))))
        assert word_to_pl(nf_multiply(g, h)) == pl_compose(word_to_pl(g), word_to_pl(h))


def test_rewriting_oracle_exhaustive_seeds():
    for seed in range(2000):
        rng = random.Random(seed)
        w = Word(tuple(Letter(rng.randint(0, 3), rng.choice((1, -1))) for _ in range(12)))
        assert nf_from_word(w) == nf_from_word_naive(w)


@pytest.mark.parametrize("variant", list(Variant))
def test_honest_keys_agree(variant):
    for seed, s, w_length, key_length in su_grid(300):
        assert run_exchange(variant, s, w_length, key_length, seed).keys_agree
