from __future__ import annotations

import logging
from pathlib import Path
from typing import Optional

import click

from thompson.classes.attack_result import AttackMethod
from thompson.classes.errors import TranscriptFormatError
from thompson.classes.result import CommandResult
from thompson.classes.settings import Method
from thompson.classes.transcript import Role, TranscriptDocument
from thompson.commands.options import (
    EXIT_INPUT,
    build_config,
    error_result,
    format_option,
    method_option,
    run_guarded,
    scale_limit_option,
)
from thompson.crypto_tools.attack import keys_agree, run_method
from thompson.group_tools.numerics import scale_limit as scale_limit_context
from thompson.tools.output import emit

logger = logging.getLogger(__name__)

METHODS = {
    Method.RESTRICTION: AttackMethod.RESTRICTION,
    Method.TRANSITIVITY: AttackMethod.TRANSITIVITY,
    Method.WORD: AttackMethod.WORD_LEVEL,
    Method.KL: AttackMethod.KL,
    Method.ALL: None,
}


@click.command("attack")
@click.argument("transcript", type=click.Path(exists=True, dir_okay=False, path_type=Path))
@method_option
@click.option(
    "--target",
    type=click.Choice([role.value for role in Role]),
    default=None,
    help="Сторона для transitivity; по умолчанию выбирается по ветви w(φ_s).",
)
@format_option
@scale_limit_option
def cmd_attack(
    transcript: Path,
    method: Optional[str],
    target: Optional[str],
    output_format: Optional[str],
    scale_limit: Optional[int],
):
    """
    **Восстановление общего ключа по транскрипту.**

    Параметры:
    -----------
    - `TRANSCRIPT` (path):
        JSON-документ, записанный командой exchange. Атаки читают только открытую часть;
        закрытая часть, если есть, нужна лишь для поля key_equality.
    - `--method` (str):
        restriction, transitivity, word, kl или all.
    - `--target` (str):
        alice или bob, только для transitivity.

    Возвращает:
    -----------
    Конверт CommandResult со списком AttackResult и флагом keys_agree.
    """
    try:
        doc = TranscriptDocument.parse(transcript.read_text(encoding="utf-8"))
    except TranscriptFormatError as err:
        emit(error_result(err))
        click.get_current_context().exit(EXIT_INPUT)
        return
    cfg = build_config(
        s=doc.s,
        variant=doc.variant,
        method=method,
        output_format=output_format,
        scale_limit=scale_limit,
    )

    def action() -> CommandResult:
        with scale_limit_context(cfg.scale_limit):
            results = run_method(
                doc.to_transcript(), METHODS[cfg.method], Role(target) if target else None
            )
        if doc.private is not None:
            results = [result.verify_against(doc.private.key_alice) for result in results]
        agree = keys_agree(results)
        passed = agree and all(result.verification.passed for result in results)
        logger.info("%d attacks, keys agree: %s", len(results), agree)
        return CommandResult(
            status="ok" if passed else "error",
            message=None if passed else "verification failed",
            result={
                "attacks": [result.model_dump(mode="json") for result in results],
                "keys_agree": agree,
            },
        )

    run_guarded(action, cfg.output_format)
