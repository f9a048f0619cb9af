from __future__ import annotations

import json
import logging
import random
import time
from typing import Callable, Optional

import click
import pandas as pd

from thompson.classes.result import CommandResult
from thompson.commands.options import build_config, format_option, run_guarded, seed_option
from thompson.group_tools.words import Letter, NormalForm, Word, nf_from_word, nf_from_word_naive

logger = logging.getLogger(__name__)

# линейно-логарифмический рост даёт отношение ≈ 4.4 при учетверении длины
RATIO_LIMIT = 5.0
ORACLE_MIN_EXP = 4
MAX_INDEX = 3


def random_word(rng: random.Random, length: int) -> Word:
    return Word(tuple(Letter(rng.randint(0, MAX_INDEX), rng.choice((1, -1))) for _ in range(length)))


def time_once(fn: Callable[[Word], NormalForm], word: Word) -> float:
    start = time.perf_counter()
    fn(word)
    return time.perf_counter() - start


def collect_timings(
    seed: int, min_exp: int, max_exp: int, repeats: int, oracle_max_exp: int
) -> pd.DataFrame:
    rng = random.Random(seed)
    rows = []
    plan = [("nf_from_word", nf_from_word, range(min_exp, max_exp + 1))]
    plan.append(("rewriting_oracle", nf_from_word_naive, range(ORACLE_MIN_EXP, oracle_max_exp + 1)))
    for impl, fn, exps in plan:
        for exp in exps:
            for _ in range(repeats):
                word = random_word(rng, 2**exp)
                rows.append({"impl": impl, "length": 2**exp, "seconds": time_once(fn, word)})
            logger.debug("%s timed at length 2^%d", impl, exp)
    return pd.DataFrame(rows, columns=["impl", "length", "seconds"])


def summarize(timings: pd.DataFrame) -> pd.DataFrame:
    """Медиана по длине и отношение time(4n)/time(n) для каждой реализации."""
    medians = timings.groupby(["impl", "length"], as_index=False)["seconds"].median()
    quadrupled = medians.assign(length=medians["length"] // 4).rename(columns={"seconds": "seconds_4n"})
    summary = medians.merge(quadrupled, on=["impl", "length"], how="left")
    summary["ratio_4n"] = summary["seconds_4n"] / summary["seconds"]
    return summary.drop(columns="seconds_4n")


def soft_pass(summary: pd.DataFrame) -> bool:
    ratios = summary.loc[summary["impl"] == "nf_from_word", "ratio_4n"].dropna()
    return bool((ratios <= RATIO_LIMIT).all())


@click.command("bench-nf")
@click.option("--min-exp", type=int, default=None, help="Наименьший показатель длины (по умолчанию 10).")
@click.option("--max-exp", type=int, default=None, help="Наибольший показатель длины (по умолчанию 20).")
@click.option("--repeats", type=int, default=None, help="Повторов на длину (по умолчанию 3).")
@click.option("--oracle-max-exp", type=int, default=None, help="Предел длины для эталона (по умолчанию 8).")
@seed_option
@format_option
def cmd_bench_nf(
    min_exp: Optional[int],
    max_exp: Optional[int],
    repeats: Optional[int],
    oracle_max_exp: Optional[int],
    seed: Optional[int],
    output_format: Optional[str],
):
    """
    **Замер nf_from_word на случайных словах длины 2^min-exp … 2^max-exp.**

    Переписывающий эталон замеряется отдельно на длинах до 2^oracle-max-exp
    и приводится только для сравнения.

    Возвращает:
    -----------
    Конверт CommandResult с медианами, отношениями time(4n)/time(n) и флагом soft_pass.
    """
    cfg = build_config(
        min_exp=min_exp,
        max_exp=max_exp,
        repeats=repeats,
        oracle_max_exp=oracle_max_exp,
        seed=seed,
        output_format=output_format,
    )

    def action() -> CommandResult:
        timings = collect_timings(cfg.seed, cfg.min_exp, cfg.max_exp, cfg.repeats, cfg.oracle_max_exp)
        summary = summarize(timings)
        passed = soft_pass(summary)
        if not passed:
            logger.warning("time(4n)/time(n) exceeds %.1f for nf_from_word", RATIO_LIMIT)
        records = json.loads(summary.to_json(orient="records"))
        return CommandResult(
            status="ok",
            message=None if passed else "ratio above limit",
            result={"ratio_limit": RATIO_LIMIT, "soft_pass": passed, "medians": records},
        )

    run_guarded(action, cfg.output_format)
