"""
Слова над порождающими x₀, x₁, … и нормальная форма
x_{i₁}…x_{i_u} x_{j_v}⁻¹…x_{j₁}⁻¹ (i и j не убывают).
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Sequence

from thompson.classes.errors import PreconditionError, WordFormatError

_TOKEN_RE = re.compile(r"^x(\d+)(\^-1)?$")

IDENTITY_TOKEN = "e"


@dataclass(frozen=True, slots=True)
class Letter:
    index: int
    sign: int = 1

    def __post_init__(self) -> None:
        if self.index < 0 or self.sign not in (1, -1):
            raise WordFormatError(f"invalid letter x{self.index} with sign {self.sign}")

    def inverse(self) -> Letter:
        return Letter(self.index, -self.sign)

    def __str__(self) -> str:
        return f"x{self.index}" if self.sign == 1 else f"x{self.index}^-1"


@dataclass(frozen=True, slots=True)
class Word:
    letters: tuple[Letter, ...] = ()

    def __len__(self) -> int:
        return len(self.letters)

    def __add__(self, other: Word) -> Word:
        return Word(self.letters + other.letters)

    def inverse(self) -> Word:
        return Word(tuple(letter.inverse() for letter in reversed(self.letters)))

    def __str__(self) -> str:
        return " ".join(map(str, self.letters)) or IDENTITY_TOKEN


def parse_word(text: str) -> Word:
    tokens = text.split()
    if tokens == [IDENTITY_TOKEN]:
        return Word()
    letters = []
    for token in tokens:
        match = _TOKEN_RE.match(token)
        if match is None:
            raise WordFormatError(f"cannot parse token {token!r} in word {text!r}")
        letters.append(Letter(int(match.group(1)), -1 if match.group(2) else 1))
    return Word(tuple(letters))


def word_of(*tokens: tuple[int, int] | int) -> Word:
    """word_of(0, (1, -1)) == x0 x1^-1."""
    return Word(tuple(Letter(t) if isinstance(t, int) else Letter(*t) for t in tokens))


@dataclass(frozen=True, slots=True)
class NormalForm:
    """pos = (i₁ ≤ … ≤ i_u), neg = (j₁ ≤ … ≤ j_v)."""

    pos: tuple[int, ...] = ()
    neg: tuple[int, ...] = ()

    @property
    def is_identity(self) -> bool:
        return not self.pos and not self.neg

    def word(self) -> Word:
        return Word(
            tuple(Letter(i) for i in self.pos) + tuple(Letter(j, -1) for j in reversed(self.neg))
        )

    def __len__(self) -> int:
        return len(self.pos) + len(self.neg)

    def __str__(self) -> str:
        return str(self.word())


EPSILON = NormalForm()


def parse_normal_form(text: str) -> NormalForm:
    return nf_from_word(parse_word(text))


def nf_generator(index: int, sign: int = 1) -> NormalForm:
    return NormalForm((index,), ()) if sign == 1 else NormalForm((), (index,))


def _merge_positive(a: Sequence[int], b: Sequence[int]) -> list[int]:
    # произведение двух положительных нормальных форм: x_j x_i = x_i x_{j+1} при i < j
    out = []
    i = j = shift = 0
    while i < len(a) and j < len(b):
        if b[j] < a[i] + shift:
            out.append(b[j])
            shift += 1
            j += 1
        else:
            out.append(a[i] + shift)
            i += 1
    out.extend(x + shift for x in a[i:])
    out.extend(b[j:])
    return out


def _swap_past(q: Sequence[int], p: Sequence[int]) -> tuple[list[int], list[int]]:
    # Q⁻¹P = P'Q'⁻¹
    pos, neg = [], []
    i = j = dp = dq = 0
    while i < len(p) and j < len(q):
        pi, qj = p[i] + dp, q[j] + dq
        if pi < qj:
            pos.append(pi)
            dq += 1
            i += 1
        elif qj < pi:
            neg.append(qj)
            dp += 1
            j += 1
        else:
            i += 1
            j += 1
    pos.extend(x + dp for x in p[i:])
    neg.extend(x + dq for x in q[j:])
    return pos, neg


def _runs(seq: Sequence[int]) -> list[tuple[int, int]]:
    return [(level, sum(1 for _ in group)) for level, group in itertools.groupby(seq)]


def nf_reduce(pos: Sequence[int], neg: Sequence[int]) -> NormalForm:
    """
    Приводит отсортированную пару (pos, neg) к единственной нормальной форме.

    Уровни обходятся сверху вниз: сокращение пары x_i … x_i⁻¹ уменьшает на единицу
    все индексы выше i и не затрагивает индексы ниже, поэтому новые нарушения
    возможны только на уже не обработанных уровнях. Линейное время.
    """
    pos_runs, neg_runs = _runs(pos), _runs(neg)
    levels: list[list[int]] = []  # [уровень, число x_i, число x_i⁻¹]
    a = b = 0
    while a < len(pos_runs) or b < len(neg_runs):
        if b == len(neg_runs) or (a < len(pos_runs) and pos_runs[a][0] < neg_runs[b][0]):
            levels.append([pos_runs[a][0], pos_runs[a][1], 0])
            a += 1
        elif a == len(pos_runs) or neg_runs[b][0] < pos_runs[a][0]:
            levels.append([neg_runs[b][0], 0, neg_runs[b][1]])
            b += 1
        else:
            levels.append([pos_runs[a][0], pos_runs[a][1], neg_runs[b][1]])
            a += 1
            b += 1

    removed = [0] * len(levels)
    lowest_above: int | None = None
    for k in range(len(levels) - 1, -1, -1):
        level, p_count, n_count = levels[k]
        while p_count and n_count and lowest_above != level + 1:
            p_count -= 1
            n_count -= 1
            removed[k] += 1
            if lowest_above is not None:
                lowest_above -= 1
        levels[k][1], levels[k][2] = p_count, n_count
        if p_count or n_count:
            lowest_above = level

    if not any(removed):
        return NormalForm(tuple(pos), tuple(neg))
    new_pos: list[int] = []
    new_neg: list[int] = []
    below = 0
    for k, (level, p_count, n_count) in enumerate(levels):
        value = level - below
        new_pos.extend([value] * p_count)
        new_neg.extend([value] * n_count)
        below += removed[k]
    return NormalForm(tuple(new_pos), tuple(new_neg))


def nf_multiply(a: NormalForm, b: NormalForm) -> NormalForm:
    if a.is_identity:
        return b
    if b.is_identity:
        return a
    middle_pos, middle_neg = _swap_past(a.neg, b.pos)
    pos = _merge_positive(a.pos, middle_pos)
    # Q'⁻¹ Q₂⁻¹ = (Q₂ Q')⁻¹
    neg = _merge_positive(b.neg, middle_neg)
    return nf_reduce(pos, neg)


def nf_product(*factors: NormalForm) -> NormalForm:
    result = EPSILON
    for factor in factors:
        result = nf_multiply(result, factor)
    return result


def nf_invert(a: NormalForm) -> NormalForm:
    return NormalForm(a.neg, a.pos)


def nf_from_word(w: Word) -> NormalForm:
    """Разделяй и властвуй: попарное слияние нормальных форм, O(n log n)."""
    forms = [nf_generator(letter.index, letter.sign) for letter in w.letters]
    if not forms:
        return EPSILON
    while len(forms) > 1:
        merged = [nf_multiply(forms[k], forms[k + 1]) for k in range(0, len(forms) - 1, 2)]
        if len(forms) % 2:
            merged.append(forms[-1])
        forms = merged
    return forms[0]


def nf_is_reduced_shape(pos: Sequence[int], neg: Sequence[int]) -> bool:
    present = set(pos) | set(neg)
    return all(i + 1 in present for i in set(pos) & set(neg))


def nf_is_sorted(pos: Sequence[int], neg: Sequence[int]) -> bool:
    return all(x <= y for x, y in zip(pos, pos[1:])) and all(x <= y for x, y in zip(neg, neg[1:]))


def nf_shift(g: NormalForm, offset: int) -> NormalForm:
    if offset < 0 and any(i + offset < 0 for i in g.pos + g.neg):
        raise PreconditionError(f"shift by {offset} produces a negative index in {g}")
    return NormalForm(tuple(i + offset for i in g.pos), tuple(j + offset for j in g.neg))


def meets_a_criterion(g: NormalForm, s: int) -> bool:
    """Сбалансированная форма с i_k − k < s и j_k − k < s (k с единицы)."""
    if len(g.pos) != len(g.neg):
        return False
    return all(i - k < s and j - k < s for k, (i, j) in enumerate(zip(g.pos, g.neg), start=1))


def nf_product_special(a: NormalForm, b: NormalForm, s: int) -> NormalForm:
    """
    Нормальная форма ab для a ∈ A_s и b ∈ B_s без переписывания:
    положительная часть b вставляется после первых m букв a со сдвигом на m,
    отрицательная - перед последними m буквами.
    """
    if not meets_a_criterion(a, s):
        raise PreconditionError(f"{a} does not satisfy the A_{s} index criterion")
    if any(i < s + 1 for i in b.pos + b.neg):
        raise PreconditionError(f"{b} has an index below {s + 1}")
    m = len(a.pos)
    return NormalForm(
        a.pos + tuple(c + m for c in b.pos),
        a.neg + tuple(d + m for d in b.neg),
    )


def _rewrite_once(letters: list[Letter]) -> bool:
    for k in range(len(letters) - 1):
        left, right = letters[k], letters[k + 1]
        i, j = left.index, right.index
        if i == j and left.sign != right.sign:
            del letters[k : k + 2]
            return True
        if left.sign == 1 and right.sign == 1 and i > j:
            letters[k : k + 2] = [Letter(j), Letter(i + 1)]
            return True
        if left.sign == -1 and right.sign == -1 and i < j:
            letters[k : k + 2] = [Letter(j + 1, -1), Letter(i, -1)]
            return True
        if left.sign == -1 and right.sign == 1:
            if i < j:
                letters[k : k + 2] = [Letter(j + 1), Letter(i, -1)]
            else:
                letters[k : k + 2] = [Letter(j), Letter(i + 1, -1)]
            return True
    return False


def _cancel_once(letters: list[Letter]) -> bool:
    split = next((k for k, letter in enumerate(letters) if letter.sign == -1), len(letters))
    positive = {letter.index for letter in letters[:split]}
    negative = {letter.index for letter in letters[split:]}
    for i in sorted(positive & negative, reverse=True):
        if i + 1 in positive or i + 1 in negative:
            continue
        first = max(k for k in range(split) if letters[k].index == i)
        last = min(k for k in range(split, len(letters)) if letters[k].index == i)
        between = [
            Letter(letter.index - 1 if letter.index > i else letter.index, letter.sign)
            for letter in letters[first + 1 : last]
        ]
        letters[first : last + 1] = between
        return True
    return False


def nf_from_word_naive(w: Word) -> NormalForm:
    """Переписывание по одному соотношению за шаг; квадратичный эталон для тестов."""
    letters = list(w.letters)
    while _rewrite_once(letters):
        pass
    while _cancel_once(letters):
        pass
    split = next((k for k, letter in enumerate(letters) if letter.sign == -1), len(letters))
    return NormalForm(
        tuple(letter.index for letter in letters[:split]),
        tuple(letter.index for letter in reversed(letters[split:])),
    )
