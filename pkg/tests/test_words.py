import random

import pytest

from thompson.classes.errors import PreconditionError, WordFormatError
from thompson.group_tools.convert import word_to_pl
from thompson.group_tools.numerics import pl_compose
from thompson.group_tools.subgroups import sample_A, sample_B
from thompson.group_tools.words import (
    EPSILON,
    Letter,
    NormalForm,
    Word,
    meets_a_criterion,
    nf_from_word,
    nf_from_word_naive,
    nf_generator,
    nf_invert,
    nf_is_reduced_shape,
    nf_is_sorted,
    nf_multiply,
    nf_product,
    nf_product_special,
    nf_reduce,
    nf_shift,
    parse_normal_form,
    parse_word,
    word_of,
)


def random_word(rng: random.Random, length: int, top: int = 3) -> Word:
    return Word(tuple(Letter(rng.randint(0, top), rng.choice((1, -1))) for _ in range(length)))


def test_parse_word_round_trip():
    w = parse_word("x0 x3^-1 x12")
    assert w == word_of(0, (3, -1), 12)
    assert str(w) == "x0 x3^-1 x12"
    assert str(Word()) == "e"
    assert parse_word("e") == Word()
    assert parse_word("") == Word()


@pytest.mark.parametrize("text", ["x", "y1", "x-1", "x1^-2", "x0 e"])
def test_parse_word_rejects_garbage(text):
    with pytest.raises(WordFormatError):
        parse_word(text)


def test_letter_validation():
    with pytest.raises(WordFormatError):
        Letter(-1)
    with pytest.raises(WordFormatError):
        Letter(0, 2)


def test_relation_x1_x0():
    assert nf_from_word(word_of(1, 0)) == NormalForm((0, 2), ())


def test_free_cancellation():
    assert nf_from_word(word_of(0, (0, -1))) == EPSILON
    assert nf_from_word(word_of((2, -1), 2)) == EPSILON


def test_normal_form_printing():
    g = NormalForm((0, 0, 5), (1,))
    assert str(g) == "x0 x0 x5 x1^-1"
    assert parse_normal_form(str(g)) == g
    assert str(EPSILON) == "e"


def test_multiply_examples():
    b = parse_normal_form("x4 x7^-1")
    assert nf_multiply(EPSILON, b) == b
    assert nf_multiply(b, nf_invert(b)) == EPSILON
    assert nf_multiply(parse_normal_form("x0 x1^-1"), nf_generator(3)) == NormalForm((0, 4), (1,))


def test_multiply_su_example():
    # b₂·w·a₂ = x3 · x0 · x0 x1^-1
    u2 = nf_product(nf_generator(3), nf_generator(0), parse_normal_form("x0 x1^-1"))
    assert u2 == NormalForm((0, 0, 5), (1,))


def test_invert():
    assert nf_invert(EPSILON) == EPSILON
    assert nf_invert(nf_generator(0)) == NormalForm((), (0,))


def test_reduce_removes_adjacent_pair():
    # x0 x1^-1 ... x0^-1 без x1 - сокращаемая пара
    assert nf_reduce([0], [0]) == EPSILON
    assert nf_reduce([0, 2], [0]) == NormalForm((1,), ())
    assert nf_reduce([0, 1], [0]) == NormalForm((0, 1), (0,))


def test_reduced_shape():
    assert not nf_is_reduced_shape([0], [0])
    assert nf_is_reduced_shape([0, 1], [0])
    assert nf_is_sorted([0, 0, 3], [1, 2])
    assert not nf_is_sorted([2, 1], [])


def test_from_word_agrees_with_rewriting_oracle():
    for seed in range(300):
        rng = random.Random(seed)
        w = random_word(rng, rng.randint(0, 12))
        assert nf_from_word(w) == nf_from_word_naive(w), str(w)


def test_from_word_agrees_with_maps(seeded_rng):
    for length in (1, 17, 64, 200):
        w = random_word(seeded_rng, length, top=6)
        g = nf_from_word(w)
        assert nf_is_sorted(g.pos, g.neg)
        assert nf_is_reduced_shape(g.pos, g.neg)
        assert word_to_pl(g) == word_to_pl(w)


def test_multiply_is_map_composition(seeded_rng):
    for _ in range(20):
        a = nf_from_word(random_word(seeded_rng, 30, top=5))
        b = nf_from_word(random_word(seeded_rng, 30, top=5))
        assert word_to_pl(nf_multiply(a, b)) == pl_compose(word_to_pl(a), word_to_pl(b))
        assert nf_multiply(a, b) == nf_from_word(a.word() + b.word())


def test_multiply_is_associative():
    rng = random.Random(2024)
    for _ in range(200):
        a, b, c = (nf_from_word(random_word(rng, rng.randint(0, 24), top=5)) for _ in range(3))
        assert nf_multiply(nf_multiply(a, b), c) == nf_multiply(a, nf_multiply(b, c))


def test_times_inverse_is_identity():
    rng = random.Random(77)
    for _ in range(100):
        a = nf_from_word(random_word(rng, rng.randint(0, 40), top=6))
        assert nf_multiply(a, nf_invert(a)) == EPSILON
        assert nf_multiply(nf_invert(a), a) == EPSILON


# x1 x0 = x0 x2, поэтому x0 x2 x0^-1 x1^-1 = e
TRIVIAL_TAIL = word_of(0, 2, (0, -1), (1, -1))


def test_normal_form_is_unique():
    rng = random.Random(5)
    for _ in range(200):
        w1 = random_word(rng, rng.randint(0, 6), top=2)
        w2 = random_word(rng, rng.randint(0, 6), top=2) if rng.random() < 0.5 else w1 + TRIVIAL_TAIL
        same_map = word_to_pl(w1) == word_to_pl(w2)
        assert (nf_from_word(w1) == nf_from_word(w2)) == same_map, (str(w1), str(w2))
    assert nf_from_word(TRIVIAL_TAIL) == EPSILON


def test_shift():
    assert nf_shift(NormalForm((2,), (3,)), -2) == NormalForm((0,), (1,))
    with pytest.raises(PreconditionError):
        nf_shift(NormalForm((1,), ()), -2)


def test_a_criterion():
    assert meets_a_criterion(parse_normal_form("x0 x1^-1"), 1)
    assert meets_a_criterion(EPSILON, 3)
    assert not meets_a_criterion(nf_generator(3), 2)


def test_product_special_examples():
    a, b = NormalForm((0,), (1,)), NormalForm((3,), ())
    assert nf_product_special(a, b, 2) == NormalForm((0, 4), (1,))
    assert nf_product_special(EPSILON, b, 2) == b
    with pytest.raises(PreconditionError):
        nf_product_special(a, nf_generator(2), 2)


@pytest.mark.parametrize("s", [2, 3, 4, 5, 6])
def test_product_special_matches_multiply(s):
    rng = random.Random(s)
    for _ in range(60):
        a = sample_A(s, rng.randint(1, 24), rng)
        b = sample_B(s, rng.randint(1, 24), rng)
        assert nf_product_special(a, b, s) == nf_multiply(a, b)


@pytest.mark.parametrize("s", [1, 2, 3, 4, 5, 6])
def test_subgroups_commute(s):
    rng = random.Random(100 + s)
    for _ in range(60):
        a = sample_A(s, 16, rng)
        b = sample_B(s, 16, rng)
        assert nf_multiply(a, b) == nf_multiply(b, a)
