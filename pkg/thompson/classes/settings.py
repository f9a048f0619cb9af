from __future__ import annotations

from enum import Enum

from pydantic import Field, model_validator
from pydantic_settings import BaseSettings, PydanticBaseSettingsSource, SettingsConfigDict

from thompson.classes.transcript import Variant
from thompson.group_tools.numerics import DEFAULT_SCALE_LIMIT


class Method(str, Enum):
    RESTRICTION = "restriction"
    TRANSITIVITY = "transitivity"
    WORD = "word"
    KL = "kl"
    ALL = "all"


class OutputFormat(str, Enum):
    JSON = "json"
    TEXT = "text"


SU_METHODS = {Method.RESTRICTION, Method.TRANSITIVITY, Method.WORD, Method.ALL}
KL_METHODS = {Method.KL, Method.ALL}


class RunConfig(BaseSettings):
    model_config = SettingsConfigDict(frozen=True)

    # параметры протокола
    s: int = Field(default=4, ge=1)
    w_length: int = Field(default=256, ge=0)
    key_length: int = Field(default=256, ge=1)
    variant: Variant = Field(default=Variant.SU)
    # параметры прогонов
    trials: int = Field(default=100, ge=0)
    seed: int = Field(default=0)
    method: Method = Field(default=Method.ALL)
    # вывод и ограничения
    output_format: OutputFormat = Field(default=OutputFormat.JSON)
    scale_limit: int = Field(default=DEFAULT_SCALE_LIMIT, ge=1)
    # bench-nf
    min_exp: int = Field(default=10, ge=0)
    max_exp: int = Field(default=20, ge=0)
    repeats: int = Field(default=3, ge=1)
    oracle_max_exp: int = Field(default=8, ge=0)

    @classmethod
    def settings_customise_sources(
        cls,
        settings_cls: type[BaseSettings],
        init_settings: PydanticBaseSettingsSource,
        env_settings: PydanticBaseSettingsSource,
        dotenv_settings: PydanticBaseSettingsSource,
        file_secret_settings: PydanticBaseSettingsSource,
    ) -> tuple[PydanticBaseSettingsSource, ...]:
        # только явные флаги командной строки, окружение не читается
        return (init_settings,)

    @model_validator(mode="after")
    def check_method(self) -> RunConfig:
        allowed = SU_METHODS if self.variant is Variant.SU else KL_METHODS
        if self.method not in allowed:
            raise ValueError(f"method {self.method.value} is not applicable to variant {self.variant.value}")
        return self

    @model_validator(mode="after")
    def check_exponents(self) -> RunConfig:
        if self.max_exp < self.min_exp:
            raise ValueError(f"max_exp {self.max_exp} is below min_exp {self.min_exp}")
        return self

    def trial_seed(self, trial: int) -> int:
        return self.seed ^ trial
