from __future__ import annotations

from enum import Enum

from pydantic import BaseModel, ConfigDict, Field

from thompson.classes.transcript import CaseBranch, NormalFormField, Role, SharedKey


class AttackMethod(str, Enum):
    RESTRICTION = "restriction"
    TRANSITIVITY = "transitivity"
    WORD_LEVEL = "word-level"
    KL = "kl"


class Verification(BaseModel):
    model_config = ConfigDict(frozen=True)

    membership: bool
    reconstruction: bool
    key_equality: bool | None = Field(default=None)
    intermediate_identity: bool | None = Field(default=None)
    candidates_agree: bool | None = Field(default=None)

    @property
    def passed(self) -> bool:
        flags = (self.key_equality, self.intermediate_identity, self.candidates_agree)
        return self.membership and self.reconstruction and all(f is not False for f in flags)


class AttackResult(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    method: AttackMethod
    cracked_party: Role
    case_branch: CaseBranch
    recovered_pair: tuple[NormalFormField, NormalFormField]
    key: SharedKey
    verification: Verification

    def verify_against(self, key: SharedKey) -> AttackResult:
        """Заполняет key_equality по известному ключу честных сторон."""
        verification = self.verification.model_copy(update={"key_equality": self.key == key})
        return self.model_copy(update={"verification": verification})
