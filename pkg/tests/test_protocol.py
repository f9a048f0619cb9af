import random

import pytest

from thompson.classes.errors import MembershipError, PreconditionError, TranscriptFormatError
from thompson.classes.transcript import (
    CaseBranch,
    KeyMaterial,
    PublicData,
    Role,
    TranscriptDocument,
    Variant,
)
from thompson.crypto_tools.protocol import (
    case_of,
    check_key_material,
    draw_public,
    kl_key_alice,
    kl_key_bob,
    kl_round_alice,
    kl_round_bob,
    run_exchange,
    su_key_alice,
    su_key_bob,
    su_round_alice,
    su_round_bob,
)
from thompson.group_tools.convert import word_to_pl
from thompson.group_tools.numerics import pl_compose
from thompson.group_tools.subgroups import sample_A, sample_B
from thompson.group_tools.words import EPSILON, NormalForm, nf_from_word, nf_generator, parse_normal_form, parse_word

X0 = nf_generator(0)
X3 = nf_generator(3)
A_GEN = parse_normal_form("x0 x1^-1")


def test_identity_keys_give_public_word():
    public = PublicData(s=2, w=X0)
    assert su_round_alice(public, EPSILON, EPSILON) == X0
    assert su_round_bob(public, EPSILON, EPSILON) == X0
    assert su_key_alice(public, X0, EPSILON, EPSILON).value == X0
    assert kl_key_alice(public, X0, EPSILON, EPSILON).value == X0


def test_su_worked_instance():
    public = PublicData(s=2, w=X0)
    u1 = su_round_alice(public, A_GEN, X3)
    assert u1 == nf_from_word(parse_word("x0 x1^-1 x0 x3"))
    assert word_to_pl(u1) == pl_compose(pl_compose(word_to_pl(A_GEN), word_to_pl(X0)), word_to_pl(X3))
    u2 = su_round_bob(public, X3, A_GEN)
    assert u2 == NormalForm((0, 0, 5), (1,))
    assert su_key_alice(public, u2, A_GEN, X3) == su_key_bob(public, u1, X3, A_GEN)


def test_round_rejects_keys_outside_subgroups():
    public = PublicData(s=2, w=X0)
    with pytest.raises(MembershipError):
        su_round_alice(public, X3, X3)
    with pytest.raises(MembershipError):
        kl_round_bob(public, A_GEN, X3)


@pytest.mark.parametrize("s", [1, 2, 4, 7])
def test_su_keys_agree(s, seeded_rng):
    public = draw_public(seeded_rng, s, 32)
    a1, b1 = sample_A(s, 32, seeded_rng), sample_B(s, 32, seeded_rng)
    b2, a2 = sample_B(s, 32, seeded_rng), sample_A(s, 32, seeded_rng)
    u1, u2 = su_round_alice(public, a1, b1), su_round_bob(public, b2, a2)
    assert word_to_pl(u2) == pl_compose(pl_compose(word_to_pl(b2), word_to_pl(public.w)), word_to_pl(a2))
    assert su_key_alice(public, u2, a1, b1) == su_key_bob(public, u1, b2, a2)


@pytest.mark.parametrize("s", [2, 3, 5])
def test_kl_keys_agree(s, seeded_rng):
    public = draw_public(seeded_rng, s, 32)
    a1, a2 = sample_A(s, 32, seeded_rng), sample_A(s, 32, seeded_rng)
    b1, b2 = sample_B(s, 32, seeded_rng), sample_B(s, 32, seeded_rng)
    u1, u2 = kl_round_alice(public, a1, a2), kl_round_bob(public, b1, b2)
    assert kl_key_alice(public, u2, a1, a2) == kl_key_bob(public, u1, b1, b2)
    assert kl_key_alice(public, u2, EPSILON, EPSILON).value == u2


def test_case_of():
    assert case_of(PublicData(s=2, w=X0)) is CaseBranch.BELOW
    assert case_of(PublicData(s=2, w=nf_generator(0, -1))) is CaseBranch.ABOVE
    assert case_of(PublicData(s=3, w=EPSILON)) is CaseBranch.BELOW


def test_draw_public_respects_case():
    rng = random.Random(3)
    for case in CaseBranch:
        assert case_of(draw_public(rng, 3, 16, case)) is case
    with pytest.raises(PreconditionError):
        draw_public(rng, 3, 0, CaseBranch.ABOVE)


@pytest.mark.parametrize("variant", list(Variant))
def test_run_exchange(variant):
    run = run_exchange(variant, 3, 64, 64, seed=11)
    assert run.keys_agree
    check_key_material(run.alice, 3)
    check_key_material(run.bob, 3)
    assert run.alice.role is Role.ALICE and run.alice.variant is variant
    again = run_exchange(variant, 3, 64, 64, seed=11)
    assert again.document(include_private=True).model_dump_json() == run.document(True).model_dump_json()


def test_run_exchange_empty_public_word():
    run = run_exchange(Variant.SU, 2, 0, 16, seed=1)
    assert run.transcript.public.w == EPSILON
    assert run.keys_agree


def test_run_exchange_rejects_bad_parameters():
    with pytest.raises(PreconditionError):
        run_exchange(Variant.SU, 0, 16, 16, seed=1)


def test_check_key_material_rejects_wrong_subgroup():
    km = KeyMaterial(role=Role.ALICE, variant=Variant.KL, first=A_GEN, second=X3)
    with pytest.raises(MembershipError):
        check_key_material(km, 2)


def test_transcript_document_round_trip():
    run = run_exchange(Variant.KL, 2, 16, 16, seed=5)
    text = run.document(include_private=True).model_dump_json()
    doc = TranscriptDocument.parse(text)
    assert doc.model_dump_json() == text
    assert doc.to_transcript() == run.transcript
    assert doc.private.keys_agree
    public_only = run.document().model_dump_json()
    assert TranscriptDocument.parse(public_only).private is None


@pytest.mark.parametrize(
    "text",
    ["not json", '{"variant": "su", "s": 2, "w": "x0", "u1": "x0"}', '{"variant": "su", "s": 2, "w": "x0", "u1": "x0", "u2": "x0 xq"}'],
)
def test_transcript_document_rejects_malformed(text):
    with pytest.raises(TranscriptFormatError):
        TranscriptDocument.parse(text)
