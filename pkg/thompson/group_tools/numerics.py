"""
Точная двоично-рациональная арифметика и кусочно-линейные гомеоморфизмы [0, 1]
с наклонами вида 2^e и двоично-рациональными точками излома.

Соглашение о произведении во всём пакете: fg означает t ↦ f(g(t)).
"""
from __future__ import annotations

import bisect
import re
from contextlib import contextmanager
from contextvars import ContextVar
from dataclasses import dataclass, field
from enum import Enum
from functools import total_ordering
from typing import Iterable, Iterator, Sequence

from thompson.classes.errors import (
    DyadicError,
    DyadicOverflowError,
    InvalidIntervalError,
    MalformedMapError,
    PatchError,
)

DEFAULT_SCALE_LIMIT = 2**20

_scale_limit: ContextVar[int] = ContextVar("dyadic_scale_limit", default=DEFAULT_SCALE_LIMIT)

_DYADIC_RE = re.compile(r"^\s*(-?\d+)(?:/2\^(\d+))?\s*$")


@contextmanager
def scale_limit(limit: int) -> Iterator[int]:
    """Временно ограничивает максимальный показатель знаменателя."""
    if limit < 1:
        raise DyadicError(f"scale limit must be positive, got {limit}")
    token = _scale_limit.set(limit)
    try:
        yield limit
    finally:
        _scale_limit.reset(token)


@total_ordering
@dataclass(frozen=True, slots=True)
class Dyadic:
    """Число numerator / 2^scale в канонической записи. Создаётся через dy_make."""

    numerator: int
    scale: int

    def __lt__(self, other: Dyadic) -> bool:
        a, b, _ = _aligned(self, other)
        return a < b

    def __add__(self, other: Dyadic) -> Dyadic:
        a, b, k = _aligned(self, other)
        return _canonical(a + b, k)

    def __sub__(self, other: Dyadic) -> Dyadic:
        a, b, k = _aligned(self, other)
        return _canonical(a - b, k)

    def __mul__(self, other: Dyadic) -> Dyadic:
        return _canonical(self.numerator * other.numerator, self.scale + other.scale)

    def __neg__(self) -> Dyadic:
        return Dyadic(-self.numerator, self.scale)

    def shift(self, exponent: int) -> Dyadic:
        """Умножение на 2^exponent."""
        if exponent >= 0:
            if exponent <= self.scale:
                return Dyadic(self.numerator, self.scale - exponent)
            return Dyadic(self.numerator << (exponent - self.scale), 0)
        return _canonical(self.numerator, self.scale - exponent)

    def __str__(self) -> str:
        if self.scale == 0:
            return str(self.numerator)
        return f"{self.numerator}/2^{self.scale}"

    def __repr__(self) -> str:
        return f"Dyadic({self})"


def _aligned(a: Dyadic, b: Dyadic) -> tuple[int, int, int]:
    if a.scale >= b.scale:
        return a.numerator, b.numerator << (a.scale - b.scale), a.scale
    return a.numerator << (b.scale - a.scale), b.numerator, b.scale


def _canonical(numerator: int, scale: int) -> Dyadic:
    if numerator == 0:
        return ZERO
    if scale > 0 and not numerator & 1:
        shift = min((numerator & -numerator).bit_length() - 1, scale)
        numerator >>= shift
        scale -= shift
    if scale > _scale_limit.get():
        raise DyadicOverflowError(f"dyadic scale {scale} exceeds limit {_scale_limit.get()}")
    return Dyadic(numerator, scale)


def dy_make(numerator: int, scale: int = 0) -> Dyadic:
    if scale < 0:
        raise DyadicError(f"negative scale {scale}")
    return _canonical(numerator, scale)


def dy_add(a: Dyadic, b: Dyadic) -> Dyadic:
    return a + b


def dy_sub(a: Dyadic, b: Dyadic) -> Dyadic:
    return a - b


def dy_mul(a: Dyadic, b: Dyadic) -> Dyadic:
    return a * b


def dy_cmp(a: Dyadic, b: Dyadic) -> int:
    x, y, _ = _aligned(a, b)
    return (x > y) - (x < y)


def parse_dyadic(text: str) -> Dyadic:
    match = _DYADIC_RE.match(text)
    if match is None:
        raise DyadicError(f"cannot parse dyadic {text!r}")
    numerator, scale = match.groups()
    return dy_make(int(numerator), int(scale or 0))


ZERO = Dyadic(0, 0)
ONE = Dyadic(1, 0)
HALF = Dyadic(1, 1)


def _slope_exponent(dx: Dyadic, dy: Dyadic) -> int:
    if dx.numerator <= 0 or dy.numerator <= 0:
        raise MalformedMapError("breakpoints must be strictly increasing in both coordinates")
    tx = (dx.numerator & -dx.numerator).bit_length() - 1
    ty = (dy.numerator & -dy.numerator).bit_length() - 1
    if dx.numerator >> tx != dy.numerator >> ty:
        raise MalformedMapError(f"slope ({dy})/({dx}) is not a power of two")
    return ty - tx + dx.scale - dy.scale


Point = tuple[Dyadic, Dyadic]


class Side(str, Enum):
    LEFT = "left"
    RIGHT = "right"


@dataclass(frozen=True, slots=True)
class PLMap:
    """
    Гомеоморфизм из PL₂([0,1]) в виде канонического списка точек излома.
    Создаётся через pl_from_points; поля xs, ys, exps вычисляются при создании.
    """

    breakpoints: tuple[Point, ...]
    xs: tuple[Dyadic, ...] = field(init=False, repr=False, compare=False)
    ys: tuple[Dyadic, ...] = field(init=False, repr=False, compare=False)
    exps: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        xs = tuple(x for x, _ in self.breakpoints)
        ys = tuple(y for _, y in self.breakpoints)
        object.__setattr__(self, "xs", xs)
        object.__setattr__(self, "ys", ys)
        object.__setattr__(
            self,
            "exps",
            tuple(_slope_exponent(xs[i + 1] - xs[i], ys[i + 1] - ys[i]) for i in range(len(xs) - 1)),
        )

    def __len__(self) -> int:
        return len(self.breakpoints)

    def __str__(self) -> str:
        return format_map(self)


def pl_from_points(points: Iterable[Point]) -> PLMap:
    """Проверяет инварианты PLMap и склеивает коллинеарные точки."""
    points = list(points)
    if len(points) < 2 or points[0] != (ZERO, ZERO) or points[-1] != (ONE, ONE):
        raise MalformedMapError("a map of [0,1] must start at (0,0) and end at (1,1)")
    exps = [
        _slope_exponent(points[i + 1][0] - points[i][0], points[i + 1][1] - points[i][1])
        for i in range(len(points) - 1)
    ]
    kept = [points[0]]
    for i in range(1, len(points) - 1):
        if exps[i - 1] != exps[i]:
            kept.append(points[i])
    kept.append(points[-1])
    return PLMap(tuple(kept))


def validate_map(f: PLMap) -> None:
    """Полная проверка инвариантов, включая каноничность."""
    rebuilt = pl_from_points(f.breakpoints)
    if rebuilt.breakpoints != f.breakpoints:
        raise MalformedMapError("map has collinear interior breakpoints")


def pl_identity() -> PLMap:
    return IDENTITY


IDENTITY = PLMap(((ZERO, ZERO), (ONE, ONE)))


def _check_unit(t: Dyadic) -> None:
    if t < ZERO or ONE < t:
        raise InvalidIntervalError(f"point {t} is outside [0,1]")


def _eval_sorted(xs: Sequence[Dyadic], ys: Sequence[Dyadic], exps: Sequence[int], t: Dyadic) -> Dyadic:
    i = bisect.bisect_right(xs, t) - 1
    if i >= len(exps):
        return ys[-1]
    return ys[i] + (t - xs[i]).shift(exps[i])


def pl_eval(f: PLMap, t: Dyadic) -> Dyadic:
    _check_unit(t)
    return _eval_sorted(f.xs, f.ys, f.exps, t)


def pl_eval_inverse(f: PLMap, t: Dyadic) -> Dyadic:
    """Значение f⁻¹(t) без построения обратного отображения."""
    _check_unit(t)
    return _eval_sorted(f.ys, f.xs, tuple(-e for e in f.exps), t)


def pl_compose(f: PLMap, g: PLMap) -> PLMap:
    """Отображение t ↦ f(g(t))."""
    if f is IDENTITY:
        return g
    if g is IDENTITY:
        return f
    g_inverse_exps = tuple(-e for e in g.exps)
    # изломы композиции: изломы g и прообразы изломов f
    candidates = set(g.xs)
    candidates.update(_eval_sorted(g.ys, g.xs, g_inverse_exps, x) for x in f.xs)
    points = []
    for t in sorted(candidates):
        inner = _eval_sorted(g.xs, g.ys, g.exps, t)
        points.append((t, _eval_sorted(f.xs, f.ys, f.exps, inner)))
    return pl_from_points(points)


def pl_invert(f: PLMap) -> PLMap:
    return PLMap(tuple((y, x) for x, y in f.breakpoints))


def _check_interval(lo: Dyadic, hi: Dyadic) -> None:
    if lo < ZERO or ONE < hi or not lo < hi:
        raise InvalidIntervalError(f"invalid interval [{lo}, {hi}]")


def pl_is_identity_on(f: PLMap, lo: Dyadic, hi: Dyadic) -> bool:
    _check_interval(lo, hi)
    if pl_eval(f, lo) != lo or pl_eval(f, hi) != hi:
        return False
    return all(x == y for x, y in f.breakpoints if lo < x < hi)


def pl_support(f: PLMap) -> tuple[Dyadic, Dyadic] | None:
    """Наименьший отрезок, вне которого f тождественно; None для тождественного отображения."""
    moving = [
        i
        for i in range(len(f.breakpoints) - 1)
        if f.xs[i] != f.ys[i] or f.xs[i + 1] != f.ys[i + 1]
    ]
    if not moving:
        return None
    return f.xs[moving[0]], f.xs[moving[-1] + 1]


def pl_supported_in(f: PLMap, lo: Dyadic, hi: Dyadic) -> bool:
    support = pl_support(f)
    return support is None or (lo <= support[0] and support[1] <= hi)


def pl_patch(g: PLMap, d: Dyadic, keep: Side) -> PLMap:
    """Совпадает с g по сторону keep от неподвижной точки d и тождественно по другую."""
    if pl_eval(g, d) != d:
        raise PatchError(f"patch point {d} is not fixed by the map")
    if keep is Side.LEFT:
        points = [p for p in g.breakpoints if p[0] < d] + [(d, d)]
        if d < ONE:
            points.append((ONE, ONE))
    else:
        points = [(ZERO, ZERO)] if ZERO < d else []
        points += [(d, d)] + [p for p in g.breakpoints if d < p[0]]
    return pl_from_points(points)


def standard_pieces(lo: Dyadic, hi: Dyadic) -> list[tuple[Dyadic, Dyadic]]:
    """Жадное разбиение [lo, hi] на максимальные стандартные отрезки; пары (начало, длина)."""
    _check_interval(lo, hi)
    pieces = []
    x = lo
    while x < hi:
        m = x.scale
        length = dy_make(1, m)
        while hi < x + length:
            m += 1
            length = dy_make(1, m)
        pieces.append((x, length))
        x = x + length
    return pieces


def _split_largest(pieces: list[tuple[Dyadic, Dyadic]]) -> None:
    index = max(range(len(pieces)), key=lambda i: (pieces[i][1], -i))
    start, length = pieces[index]
    half = length.shift(-1)
    pieces[index : index + 1] = [(start, half), (start + half, half)]


def _piece_points(p: Dyadic, q: Dyadic, p2: Dyadic, q2: Dyadic) -> list[Point]:
    source = standard_pieces(p, q)
    target = standard_pieces(p2, q2)
    while len(source) != len(target):
        _split_largest(source if len(source) < len(target) else target)
    return [(a[0], b[0]) for a, b in zip(source, target)] + [(q, q2)]


def _join(*segments: list[Point]) -> list[Point]:
    points: list[Point] = []
    for segment in segments:
        for point in segment:
            if not points or points[-1] != point:
                points.append(point)
    return points


def pl_interval_homeo(p: Dyadic, q: Dyadic, p2: Dyadic, q2: Dyadic) -> PLMap:
    """
    Гомеоморфизм, переводящий [p, q] в [p2, q2] по стандартным отрезкам.
    Вне [p, q] отрезки [0, p] → [0, p2] и [q, 1] → [q2, 1] строятся той же конструкцией,
    поэтому при (p, q) = (p2, q2) снаружи получается тождество.
    Концы 0 и 1 должны совпадать: [p, q] и [p2, q2] оба содержат 0 (или 1) либо оба нет.
    Для частичной биекции отрезков без этого условия - homeo_points.
    """
    _check_interval(p, q)
    _check_interval(p2, q2)
    if (p == ZERO) != (p2 == ZERO) or (q == ONE) != (q2 == ONE):
        raise InvalidIntervalError(
            f"[{p}, {q}] -> [{p2}, {q2}] cannot be extended to a homeomorphism of [0,1]"
        )
    segments = []
    if ZERO < p:
        segments.append(_piece_points(ZERO, p, ZERO, p2))
    segments.append(_piece_points(p, q, p2, q2))
    if q < ONE:
        segments.append(_piece_points(q, ONE, q2, ONE))
    return pl_from_points(_join(*segments))


def piecewise_points(f: PLMap, lo: Dyadic, hi: Dyadic) -> list[Point]:
    """Точки графика f на [lo, hi], включая концы."""
    inner = [p for p in f.breakpoints if lo < p[0] < hi]
    return [(lo, pl_eval(f, lo))] + inner + [(hi, pl_eval(f, hi))]


def homeo_points(p: Dyadic, q: Dyadic, p2: Dyadic, q2: Dyadic) -> list[Point]:
    """Точки кусочно-линейной биекции [p, q] → [p2, q2] (пустой список для вырожденного отрезка)."""
    if p == q:
        if p2 != q2:
            raise InvalidIntervalError(f"cannot map the point {p} onto [{p2}, {q2}]")
        return []
    if not p2 < q2:
        raise InvalidIntervalError(f"cannot map [{p}, {q}] onto the point {p2}")
    return _piece_points(p, q, p2, q2)


def glue(*segments: list[Point]) -> PLMap:
    return pl_from_points(_join(*segments))


def format_map(f: PLMap) -> str:
    return "[" + ", ".join(f"[{x}, {y}]" for x, y in f.breakpoints) + "]"


def parse_map(pairs: Sequence[Sequence[str]]) -> PLMap:
    return pl_from_points((parse_dyadic(x), parse_dyadic(y)) for x, y in pairs)
