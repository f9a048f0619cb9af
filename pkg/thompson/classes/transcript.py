from __future__ import annotations

from enum import Enum
from typing import Annotated, Any

from pydantic import BaseModel, BeforeValidator, ConfigDict, Field, PlainSerializer, PositiveInt

from thompson.classes.errors import TranscriptFormatError
from thompson.group_tools.words import NormalForm, parse_normal_form


def coerce_normal_form(value: Any) -> Any:
    if isinstance(value, str):
        return parse_normal_form(value)
    return value


# нормальная форма в JSON записывается текстом слова: "x0 x1^-1 x3"
NormalFormField = Annotated[
    NormalForm,
    BeforeValidator(coerce_normal_form),
    PlainSerializer(str, return_type=str),
]


class Variant(str, Enum):
    SU = "su"
    KL = "kl"


class Role(str, Enum):
    ALICE = "alice"
    BOB = "bob"


class CaseBranch(str, Enum):
    BELOW = "below"  # w(φ_s) ≤ φ_s
    ABOVE = "above"  # w(φ_s) > φ_s


class PublicData(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    s: PositiveInt
    w: NormalFormField


class KeyMaterial(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    role: Role
    variant: Variant
    first: NormalFormField
    second: NormalFormField


class Transcript(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    public: PublicData
    u1: NormalFormField
    u2: NormalFormField
    variant: Variant = Field(default=Variant.SU)


class SharedKey(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    value: NormalFormField


class PrivateSection(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    alice: KeyMaterial
    bob: KeyMaterial
    key_alice: SharedKey
    key_bob: SharedKey
    keys_agree: bool


class TranscriptDocument(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    variant: Variant
    s: PositiveInt
    w: NormalFormField
    u1: NormalFormField
    u2: NormalFormField
    private: PrivateSection | None = Field(default=None)

    @classmethod
    def parse(cls, text: str) -> TranscriptDocument:
        try:
            return cls.model_validate_json(text)
        except ValueError as err:
            raise TranscriptFormatError(f"malformed transcript: {err}") from err

    def to_transcript(self) -> Transcript:
        return Transcript(
            public=PublicData(s=self.s, w=self.w), u1=self.u1, u2=self.u2, variant=self.variant
        )


class ExchangeRun(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    transcript: Transcript
    alice: KeyMaterial
    bob: KeyMaterial
    key_alice: SharedKey
    key_bob: SharedKey

    @property
    def keys_agree(self) -> bool:
        return self.key_alice == self.key_bob

    @property
    def key(self) -> SharedKey:
        return self.key_alice

    def document(self, include_private: bool = False) -> TranscriptDocument:
        t = self.transcript
        private = None
        if include_private:
            private = PrivateSection(
                alice=self.alice,
                bob=self.bob,
                key_alice=self.key_alice,
                key_bob=self.key_bob,
                keys_agree=self.keys_agree,
            )
        return TranscriptDocument(
            variant=t.variant, s=t.public.s, w=t.public.w, u1=t.u1, u2=t.u2, private=private
        )
