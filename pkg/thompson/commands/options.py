"""
Общие опции команд и превращение исключений в конверт CommandResult с кодом выхода.
"""
from __future__ import annotations

import logging
from typing import Any, Callable

import click
from pydantic import ValidationError

from thompson.classes.errors import INPUT_ERRORS, ThompsonError
from thompson.classes.result import CommandResult
from thompson.classes.settings import Method, OutputFormat, RunConfig
from thompson.classes.transcript import Variant
from thompson.tools.output import emit

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VERIFICATION = 1
EXIT_INPUT = 2


def _choice(enum: type) -> click.Choice:
    return click.Choice([member.value for member in enum])


s_option = click.option("-s", "s", type=int, default=None, help="Параметр подгрупп A_s, B_s (по умолчанию 4).")
w_length_option = click.option("--w-length", type=int, default=None, help="Длина открытого слова w.")
key_length_option = click.option("--key-length", type=int, default=None, help="Длина закрытых ключей.")
variant_option = click.option("--variant", type=_choice(Variant), default=None, help="su или kl.")
seed_option = click.option("--seed", type=int, default=None, help="Зерно генератора.")
trials_option = click.option("--trials", type=int, default=None, help="Число проб.")
method_option = click.option("--method", type=_choice(Method), default=None, help="Метод атаки.")
format_option = click.option(
    "--format", "output_format", type=_choice(OutputFormat), default=None, help="json или text."
)
scale_limit_option = click.option(
    "--scale-limit", type=int, default=None, help="Максимальный показатель знаменателя."
)


def build_config(**params: Any) -> RunConfig:
    """RunConfig из явно заданных флагов; ошибки проверки - ошибки ввода (код 2)."""
    try:
        return RunConfig(**{key: value for key, value in params.items() if value is not None})
    except ValidationError as err:
        raise click.UsageError(f"invalid parameters: {err.errors(include_url=False)}") from err


def error_result(err: Exception) -> CommandResult:
    return CommandResult(status="error", message=f"{type(err).__name__}: {err}")


def exit_code_for(err: Exception) -> int:
    return EXIT_INPUT if isinstance(err, INPUT_ERRORS) else EXIT_VERIFICATION


def run_guarded(
    action: Callable[[], CommandResult], output_format: OutputFormat = OutputFormat.JSON
) -> None:
    """Выполняет команду, печатает конверт и завершает процесс с нужным кодом."""
    ctx = click.get_current_context()
    try:
        res = action()
    except ThompsonError as err:
        logger.debug("command failed", exc_info=True)
        emit(error_result(err), output_format)
        ctx.exit(exit_code_for(err))
        return
    emit(res, output_format)
    ctx.exit(EXIT_OK if res.ok else EXIT_VERIFICATION)
