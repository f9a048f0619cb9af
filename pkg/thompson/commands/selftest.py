from __future__ import annotations

from typing import Optional

import click

from thompson.classes.result import CommandResult
from thompson.commands.options import (
    build_config,
    format_option,
    key_length_option,
    run_guarded,
    s_option,
    scale_limit_option,
    seed_option,
    trials_option,
    w_length_option,
)
from thompson.tools.checks import case_split, run_checks


@click.command("selftest")
@s_option
@w_length_option
@key_length_option
@trials_option
@seed_option
@scale_limit_option
@format_option
def cmd_selftest(
    s: Optional[int],
    w_length: Optional[int],
    key_length: Optional[int],
    trials: Optional[int],
    seed: Optional[int],
    scale_limit: Optional[int],
    output_format: Optional[str],
):
    """
    **Самопроверка: инварианты всех модулей и сокращённые прогоны атак.**

    Параметры:
    -----------
    - `--trials` (int):
        Число проб на каждую проверку; при 0 отчёт пустой и проверка считается пройденной.
    - `--scale-limit` (int):
        Переполнение знаменателя засчитывается как проваленная проба.

    Возвращает:
    -----------
    Конверт CommandResult со списком проверок и числом открытых слов в ветвях
    w(φ_s) ≤ φ_s (below) и w(φ_s) > φ_s (above).
    """
    cfg = build_config(
        s=s,
        w_length=w_length,
        key_length=key_length,
        trials=trials,
        seed=seed,
        scale_limit=scale_limit,
        output_format=output_format,
    )

    def action() -> CommandResult:
        outcomes = run_checks(cfg)
        failed = [outcome.name for outcome in outcomes if not outcome.passed]
        return CommandResult(
            status="error" if failed else "ok",
            message=f"failed checks: {', '.join(failed)}" if failed else None,
            result={
                "checks": [outcome.model_dump() for outcome in outcomes],
                "case_split": case_split(outcomes),
            },
        )

    run_guarded(action, cfg.output_format)
