"""
Переход между нормальными формами и кусочно-линейными отображениями
через отображения порождающих и пары деревьев.
"""
from __future__ import annotations

import bisect
from dataclasses import dataclass
from functools import lru_cache

from pydantic import BaseModel, ConfigDict, Field, model_validator

from thompson.group_tools.numerics import (
    ONE,
    ZERO,
    Dyadic,
    PLMap,
    dy_make,
    pl_compose,
    pl_from_points,
    pl_identity,
    pl_invert,
)
from thompson.group_tools.words import NormalForm, Word, nf_reduce

# стандартный двоичный отрезок [j/2^m, (j+1)/2^m] как пара (j, m)
StdInterval = tuple[int, int]


@lru_cache(maxsize=None)
def generator_map(k: int) -> PLMap:
    """x_k: тождество на [0, 1 − 2^-k], сжатая копия x₀ на [1 − 2^-k, 1]."""
    if k < 0:
        raise ValueError(f"generator index must be non-negative, got {k}")
    start = ONE - dy_make(1, k)

    def local(x: Dyadic) -> Dyadic:
        return start + x.shift(-k)

    shape = [(dy_make(1, 1), dy_make(1, 2)), (dy_make(3, 2), dy_make(1, 1))]
    points = [(ZERO, ZERO)] if k else []
    points += [(start, start)] if k else [(ZERO, ZERO)]
    points += [(local(x), local(y)) for x, y in shape] + [(ONE, ONE)]
    return pl_from_points(points)


@lru_cache(maxsize=None)
def generator_inverse_map(k: int) -> PLMap:
    return pl_invert(generator_map(k))


def _letter_maps(a: NormalForm | Word) -> list[PLMap]:
    word = a.word() if isinstance(a, NormalForm) else a
    return [
        generator_map(letter.index) if letter.sign == 1 else generator_inverse_map(letter.index)
        for letter in word.letters
    ]


@lru_cache(maxsize=4096)
def word_to_pl(a: NormalForm | Word) -> PLMap:
    """Композиция отображений букв, сворачиваемая попарно (сбалансированное дерево)."""
    maps = _letter_maps(a)
    if not maps:
        return pl_identity()
    while len(maps) > 1:
        folded = [pl_compose(maps[k], maps[k + 1]) for k in range(0, len(maps) - 1, 2)]
        if len(maps) % 2:
            folded.append(maps[-1])
        maps = folded
    return maps[0]


@dataclass(frozen=True)
class BinTree:
    left: BinTree | None = None
    right: BinTree | None = None

    @property
    def is_leaf(self) -> bool:
        return self.left is None

    @property
    def leaf_count(self) -> int:
        if self.is_leaf:
            return 1
        return self.left.leaf_count + self.right.leaf_count

    @classmethod
    def from_leaves(cls, leaves: tuple[StdInterval, ...]) -> BinTree:
        position = 0

        def build(j: int, m: int) -> BinTree:
            nonlocal position
            if leaves[position] == (j, m):
                position += 1
                return LEAF
            return cls(build(2 * j, m + 1), build(2 * j + 1, m + 1))

        return build(0, 0)

    def __str__(self) -> str:
        if self.is_leaf:
            return "."
        return f"({self.left} {self.right})"


LEAF = BinTree()


class TreePair(BaseModel):
    """Пара деревьев, заданных разбиениями [0,1] на стандартные отрезки (область и образ)."""

    model_config = ConfigDict(frozen=True)

    domain_leaves: tuple[StdInterval, ...] = Field(min_length=1)
    range_leaves: tuple[StdInterval, ...] = Field(min_length=1)

    @model_validator(mode="after")
    def check_leaf_counts(self) -> TreePair:
        if len(self.domain_leaves) != len(self.range_leaves):
            raise ValueError(
                f"tree pair has {len(self.domain_leaves)} domain leaves and {len(self.range_leaves)} range leaves"
            )
        return self

    @property
    def domain(self) -> BinTree:
        return BinTree.from_leaves(self.domain_leaves)

    @property
    def range(self) -> BinTree:
        return BinTree.from_leaves(self.range_leaves)

    def __len__(self) -> int:
        return len(self.domain_leaves)


def _start(interval: StdInterval) -> Dyadic:
    return dy_make(interval[0], interval[1])


def _standard_image(f: PLMap, j: int, m: int) -> StdInterval | None:
    lo, hi = dy_make(j, m), dy_make(j + 1, m)
    i = bisect.bisect_right(f.xs, lo) - 1
    if f.xs[i + 1] < hi:
        return None
    y_lo = f.ys[i] + (lo - f.xs[i]).shift(f.exps[i])
    length = dy_make(1, m).shift(f.exps[i])
    if length.scale < y_lo.scale:
        return None
    return y_lo.numerator << (length.scale - y_lo.scale), length.scale


def pl_to_treepair(f: PLMap) -> TreePair:
    """
    Минимальное разбиение на стандартные отрезки, на каждом из которых f аффинно
    и переводит его в стандартный отрезок. Получающаяся пара деревьев приведена.
    """
    domain, image = [], []
    stack: list[StdInterval] = [(0, 0)]
    while stack:
        j, m = stack.pop()
        target = _standard_image(f, j, m)
        if target is None:
            stack.append((2 * j + 1, m + 1))
            stack.append((2 * j, m + 1))
            continue
        domain.append((j, m))
        image.append(target)
    return TreePair(domain_leaves=tuple(domain), range_leaves=tuple(image))


def treepair_to_pl(tp: TreePair) -> PLMap:
    points = [(_start(d), _start(r)) for d, r in zip(tp.domain_leaves, tp.range_leaves)]
    return pl_from_points(points + [(ONE, ONE)])


def leaf_exponents(leaves: tuple[StdInterval, ...]) -> list[int]:
    """
    Показатель листа - длина максимального пути по левым рёбрам вверх от листа,
    не доходящего до правой ветви дерева.
    """
    exponents = []
    for j, m in leaves:
        count = 0
        while m > 0 and j % 2 == 0:
            j, m = j // 2, m - 1
            if j + 1 == 1 << m:
                break
            count += 1
        exponents.append(count)
    return exponents


def _expand(exponents: list[int]) -> list[int]:
    return [k for k, a in enumerate(exponents) for _ in range(a)]


def treepair_to_nf(tp: TreePair) -> NormalForm:
    # положительный элемент с областью «правая лоза» и образом T равен x₀^{a₀} x₁^{a₁} …
    pos = _expand(leaf_exponents(tp.range_leaves))
    neg = _expand(leaf_exponents(tp.domain_leaves))
    return nf_reduce(pos, neg)


def pl_to_word(f: PLMap) -> NormalForm:
    return treepair_to_nf(pl_to_treepair(f))
