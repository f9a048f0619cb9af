from __future__ import annotations

import logging
from pathlib import Path
from typing import Optional

import click

from thompson.classes.errors import ThompsonError
from thompson.commands.options import (
    EXIT_OK,
    EXIT_VERIFICATION,
    build_config,
    error_result,
    exit_code_for,
    key_length_option,
    s_option,
    scale_limit_option,
    seed_option,
    variant_option,
    w_length_option,
)
from thompson.crypto_tools.protocol import run_exchange
from thompson.group_tools.numerics import scale_limit as scale_limit_context
from thompson.tools.output import emit

logger = logging.getLogger(__name__)


@click.command("exchange")
@s_option
@w_length_option
@key_length_option
@variant_option
@seed_option
@scale_limit_option
@click.option("--include-private", is_flag=True, help="Добавить закрытые ключи и общий ключ.")
@click.option(
    "--output",
    type=click.Path(dir_okay=False, writable=True, path_type=Path),
    default=None,
    help="Файл для транскрипта вместо stdout.",
)
@click.pass_context
def cmd_exchange(
    ctx: click.Context,
    s: Optional[int],
    w_length: Optional[int],
    key_length: Optional[int],
    variant: Optional[str],
    seed: Optional[int],
    scale_limit: Optional[int],
    include_private: bool,
    output: Optional[Path],
):
    """
    **Моделирование обмена ключами.**

    Параметры:
    -----------
    - `-s` (int):
        Параметр подгрупп A_s и B_s.
    - `--w-length`, `--key-length` (int):
        Длины случайного открытого слова и закрытых ключей.
    - `--variant` (str):
        su - протокол Шпильрайна–Ушакова, kl - вариант Ко–Ли.
    - `--include-private` (flag):
        Записать в транскрипт закрытую часть.

    Возвращает:
    -----------
    JSON-документ транскрипта (TranscriptDocument).
    """
    cfg = build_config(
        s=s,
        w_length=w_length,
        key_length=key_length,
        variant=variant,
        seed=seed,
        scale_limit=scale_limit,
    )
    try:
        with scale_limit_context(cfg.scale_limit):
            run = run_exchange(cfg.variant, cfg.s, cfg.w_length, cfg.key_length, cfg.seed)
            text = run.document(include_private).model_dump_json(indent=2)
    except ThompsonError as err:
        emit(error_result(err))
        ctx.exit(exit_code_for(err))
        return

    if output is None:
        click.echo(text)
    else:
        output.write_text(text + "\n", encoding="utf-8")
        logger.info("transcript written to %s", output)
    ctx.exit(EXIT_OK if run.keys_agree else EXIT_VERIFICATION)
