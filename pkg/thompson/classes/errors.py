from __future__ import annotations


class ThompsonError(Exception):
    """Базовое исключение пакета."""


class DyadicError(ThompsonError, ValueError):
    pass


class DyadicOverflowError(DyadicError):
    pass


class InvalidIntervalError(ThompsonError, ValueError):
    pass


class MalformedMapError(ThompsonError, ValueError):
    pass


class WordFormatError(ThompsonError, ValueError):
    pass


class PreconditionError(ThompsonError, ValueError):
    pass


class MembershipError(ThompsonError):
    pass


class ProtocolViolationError(ThompsonError):
    """Транскрипт не мог быть получен честным выполнением протокола."""


class PatchError(ProtocolViolationError):
    pass


class CaseMismatchError(ThompsonError):
    pass


class TranscriptFormatError(ThompsonError, ValueError):
    pass


# ошибки, которые CLI считает ошибками ввода (код выхода 2)
INPUT_ERRORS = (
    TranscriptFormatError,
    WordFormatError,
    DyadicError,
    InvalidIntervalError,
    PreconditionError,
    CaseMismatchError,
)


class CheckFailedError(ThompsonError):
    """Проверка самотестирования нашла расхождение."""
