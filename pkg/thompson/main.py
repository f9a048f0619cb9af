import click

from thompson.commands.attack import cmd_attack
from thompson.commands.bench import cmd_bench_nf
from thompson.commands.exchange import cmd_exchange
from thompson.commands.selftest import cmd_selftest
from thompson.tools.logs import setup_logging


@click.group(
    help="""
Точная модель группы Томпсона F, протокола Шпильрайна–Ушакова и атак на него.

Команды attack, bench-nf и selftest печатают конверт

    {status: "ok" | "error", message: str | null, result: dict | null}

Коды выхода: 0 - успех, 1 - проверка не прошла, 2 - ошибка ввода.
"""
)
@click.option(
    "--log-level",
    type=click.Choice(["DEBUG", "INFO", "WARNING", "ERROR"], case_sensitive=False),
    default="WARNING",
    show_default=True,
    help="Уровень логов (stderr).",
)
def cli(log_level: str):
    setup_logging(log_level)


cli.add_command(cmd_exchange)
cli.add_command(cmd_attack)
cli.add_command(cmd_bench_nf)
cli.add_command(cmd_selftest)


if __name__ == "__main__":
    cli()
