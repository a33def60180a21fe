"""Finite downward-directed posets, down-sets, and two-column graphs.

Convention: an arrow ``u -> v`` means "u is above v".  ``above(u, v)`` is the
reflexive-transitive closure of the generating arrows.  Down-sets are closed
under going below and are represented as bitmasks over the point list, which
keeps meets, joins and interiors cheap for the enumerators downstream.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Hashable, Iterable, Sequence

from .errors import CycleError, NotDownClosed, SizeCapExceeded, UnknownPoint

PointId = Hashable

# Enumerators downstream are exponential in the point count.
DEFAULT_POINT_CAP = 16


class Poset:
    """A finite poset presented by points and generating arrows (a DAG)."""

    __slots__ = ("points", "arrows", "_index", "_down", "_hash")

    def __init__(self, points: Sequence[PointId], arrows: Iterable[tuple[PointId, PointId]] = ()):
        pts = tuple(points)
        if len(set(pts)) != len(pts):
            raise UnknownPoint(f"duplicate point names in {pts!r}")
        self.points = pts
        self.arrows = frozenset(arrows)
        self._index = {u: i for i, u in enumerate(pts)}
        for u, v in self.arrows:
            if u not in self._index or v not in self._index:
                raise UnknownPoint(f"arrow endpoint not a point: {(u, v)!r}")
        self._down = self._close()
        self._hash = hash((pts, self.arrows))

    def _close(self) -> tuple[int, ...]:
        n = len(self.points)
        step = [0] * n
        for u, v in self.arrows:
            step[self._index[u]] |= 1 << self._index[v]
        down = [1 << i for i in range(n)]
        changed = True
        while changed:
            changed = False
            for i in range(n):
                acc = down[i]
                rest = step[i]
                while rest:
                    j = (rest & -rest).bit_length() - 1
                    rest &= rest - 1
                    acc |= down[j]
                if acc != down[i]:
                    down[i] = acc
                    changed = True
        for i in range(n):
            for j in range(i + 1, n):
                if down[i] >> j & 1 and down[j] >> i & 1:
                    raise CycleError(
                        f"directed cycle through {self.points[i]!r} and {self.points[j]!r}"
                    )
        return tuple(down)

    # -- basic queries ------------------------------------------------------

    def __len__(self) -> int:
        return len(self.points)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Poset)
            and self.points == other.points
            and self.arrows == other.arrows
        )

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Poset({list(self.points)!r}, {sorted(map(repr, self.arrows))})"

    def index(self, u: PointId) -> int:
        try:
            return self._index[u]
        except KeyError:
            raise UnknownPoint(f"unknown point {u!r}") from None

    def above(self, u: PointId, v: PointId) -> bool:
        """True when u is above v (reflexive-transitive)."""
        return bool(self._down[self.index(u)] >> self.index(v) & 1)

    def down_mask(self, u: PointId) -> int:
        return self._down[self.index(u)]

    def down_mask_at(self, i: int) -> int:
        return self._down[i]

    @property
    def full_mask(self) -> int:
        return (1 << len(self.points)) - 1

    def mask_of(self, names: Iterable[PointId]) -> int:
        mask = 0
        for u in names:
            mask |= 1 << self.index(u)
        return mask

    def names_of(self, mask: int) -> tuple[PointId, ...]:
        return tuple(u for i, u in enumerate(self.points) if mask >> i & 1)

    def is_down_closed(self, mask: int) -> bool:
        acc = 0
        rest = mask
        while rest:
            i = (rest & -rest).bit_length() - 1
            rest &= rest - 1
            acc |= self._down[i]
        return acc == mask


@dataclass(frozen=True)
class DownSet:
    """A downward-closed subset of a poset, stored as a bitmask."""

    poset: Poset
    mask: int

    def __post_init__(self):
        if self.mask & ~self.poset.full_mask:
            raise UnknownPoint(f"mask {self.mask:#x} has bits outside the poset")
        if not self.poset.is_down_closed(self.mask):
            raise NotDownClosed(f"{self.poset.names_of(self.mask)!r} is not down-closed")

    @property
    def members(self) -> tuple[PointId, ...]:
        return self.poset.names_of(self.mask)

    def __contains__(self, u: PointId) -> bool:
        return bool(self.mask >> self.poset.index(u) & 1)

    def __le__(self, other: "DownSet") -> bool:
        return self.mask | other.mask == other.mask

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __repr__(self) -> str:
        return "{" + ",".join(str(u) for u in self.members) + "}"


def down_closure(poset: Poset, names: Iterable[PointId]) -> DownSet:
    """Smallest down-set containing the given points."""
    mask = 0
    for u in names:
        mask |= poset.down_mask(u)
    return DownSet(poset, mask)


def down_of_point(poset: Poset, u: PointId) -> DownSet:
    return DownSet(poset, poset.down_mask(u))


def strict_down(poset: Poset, u: PointId) -> DownSet:
    """Everything strictly below u; always a down-set."""
    return DownSet(poset, poset.down_mask(u) & ~(1 << poset.index(u)))


def interior(poset: Poset, names: Iterable[PointId]) -> DownSet:
    """Largest down-set contained in the given subset."""
    mask = poset.mask_of(names) if not isinstance(names, int) else names
    return DownSet(poset, interior_mask(poset, mask))


def interior_mask(poset: Poset, mask: int) -> int:
    out = 0
    rest = mask
    while rest:
        i = (rest & -rest).bit_length() - 1
        rest &= rest - 1
        if poset.down_mask_at(i) & ~mask == 0:
            out |= 1 << i
    return out


def downset_sort_key(poset: Poset, mask: int) -> tuple:
    """Order: size first, then lexicographic membership in point order."""
    return (mask.bit_count(), tuple(i for i in range(len(poset.points)) if mask >> i & 1))


@lru_cache(maxsize=None)
def enumerate_downsets(poset: Poset, cap: int = DEFAULT_POINT_CAP) -> tuple[DownSet, ...]:
    """All down-sets, in deterministic (size, membership) order."""
    if len(poset.points) > cap:
        raise SizeCapExceeded(f"{len(poset.points)} points exceeds cap {cap}")
    n = len(poset.points)
    strict = [poset.down_mask_at(i) & ~(1 << i) for i in range(n)]
    seen = {0}
    frontier = [0]
    while frontier:
        nxt = []
        for mask in frontier:
            for i in range(n):
                if mask >> i & 1:
                    continue
                if strict[i] & ~mask:
                    continue
                grown = mask | 1 << i
                if grown not in seen:
                    seen.add(grown)
                    nxt.append(grown)
        frontier = nxt
    masks = sorted(seen, key=lambda m: downset_sort_key(poset, m))
    return tuple(DownSet(poset, m) for m in masks)


def limited_downsets(poset: Poset, limit: int) -> tuple[DownSet, ...]:
    """First ``limit`` down-sets in (size, membership) order, generated lazily
    by size level so large posets never materialize their whole lattice."""
    n = len(poset.points)
    strict = [poset.down_mask_at(i) & ~(1 << i) for i in range(n)]
    collected: list[int] = []
    seen = {0}
    level = [0]
    while level and len(collected) < limit:
        level.sort(key=lambda m: downset_sort_key(poset, m))
        collected.extend(level)
        nxt = set()
        for mask in level:
            for i in range(n):
                if mask >> i & 1:
                    continue
                if strict[i] & ~mask:
                    continue
                grown = mask | 1 << i
                if grown not in seen:
                    seen.add(grown)
                    nxt.add(grown)
        level = list(nxt)
    return tuple(DownSet(poset, m) for m in collected[:limit])


@lru_cache(maxsize=None)
def sieves_on(poset: Poset, u: PointId) -> tuple[DownSet, ...]:
    """All sieves on u: down-sets of the ambient poset contained in ``down u``.

    Deterministic order, consistent with :func:`enumerate_downsets`.
    """
    top = poset.down_mask(u)
    n = len(poset.points)
    strict = [poset.down_mask_at(i) & ~(1 << i) for i in range(n)]
    seen = {0}
    frontier = [0]
    while frontier:
        nxt = []
        for mask in frontier:
            for i in range(n):
                if not top >> i & 1 or mask >> i & 1:
                    continue
                if strict[i] & ~mask:
                    continue
                grown = mask | 1 << i
                if grown not in seen:
                    seen.add(grown)
                    nxt.append(grown)
        frontier = nxt
    masks = sorted(seen, key=lambda m: downset_sort_key(poset, m))
    return tuple(DownSet(poset, m) for m in masks)


@lru_cache(maxsize=None)
def sieve_positions(poset: Poset, u: PointId) -> dict:
    """Mask -> index into :func:`sieves_on`, cached for the hot paths."""
    return {s.mask: k for k, s in enumerate(sieves_on(poset, u))}


# -- two-column graphs -----------------------------------------------------


def left_name(k: int) -> str:
    return f"{k}_"


def right_name(k: int) -> str:
    return f"_{k}"


@dataclass(frozen=True)
class TwoColumnGraph:
    """Two columns of heights p and q with optional cross arrows.

    Column arrows ``(k+1)_ -> k_`` and ``_(k+1) -> _k`` are implicit; cross
    arrows connect distinct columns and must keep the graph acyclic.
    """

    p: int
    q: int
    cross: frozenset = frozenset()

    def __post_init__(self):
        if self.p < 0 or self.q < 0:
            raise ValueError("column heights must be nonnegative")
        left = {left_name(k) for k in range(1, self.p + 1)}
        right = {right_name(k) for k in range(1, self.q + 1)}
        for u, v in self.cross:
            if not (
                (u in left and v in right) or (u in right and v in left)
            ):
                raise NotDownClosed(
                    f"cross arrow {(u, v)!r} must connect distinct columns"
                )
        object.__setattr__(self, "cross", frozenset(self.cross))

    def point_names(self) -> tuple[str, ...]:
        lefts = [left_name(k) for k in range(self.p, 0, -1)]
        rights = [right_name(k) for k in range(self.q, 0, -1)]
        return tuple(lefts + rights)

    def poset(self) -> Poset:
        arrows = set(self.cross)
        for k in range(1, self.p):
            arrows.add((left_name(k + 1), left_name(k)))
        for k in range(1, self.q):
            arrows.add((right_name(k + 1), right_name(k)))
        return _tcg_poset_cache(self.p, self.q, frozenset(arrows), self.point_names())

    def pile_mask(self, a: int, b: int) -> int:
        if not (0 <= a <= self.p and 0 <= b <= self.q):
            raise UnknownPoint(f"pile ({a},{b}) out of range for p={self.p}, q={self.q}")
        # points are listed left column top-down then right column top-down
        left_bits = ((1 << a) - 1) << (self.p - a)
        right_bits = ((1 << b) - 1) << (self.q - b)
        return left_bits | right_bits << self.p

    def pile(self, a: int, b: int) -> DownSet:
        """The down-set {a_, ..., 1_, _1, ..., _b}; NotDownClosed if a cross arrow is violated."""
        return DownSet(self.poset(), self.pile_mask(a, b))

    def pile_code(self, s: DownSet) -> tuple[int, int]:
        """Invert :meth:`pile`.  Every down-set of a 2CG poset is a pile."""
        poset = self.poset()
        if s.poset != poset:
            raise UnknownPoint("down-set belongs to a different poset")
        a = sum(1 for k in range(1, self.p + 1) if s.mask >> poset.index(left_name(k)) & 1)
        b = sum(1 for k in range(1, self.q + 1) if s.mask >> poset.index(right_name(k)) & 1)
        if s.mask != self.pile_mask(a, b):
            raise NotDownClosed(f"{s!r} is not a column segment")
        return (a, b)

    def code_of_mask(self, mask: int) -> tuple[int, int]:
        return self.pile_code(DownSet(self.poset(), mask))


_POSET_CACHE: dict = {}


def _tcg_poset_cache(p: int, q: int, arrows: frozenset, names: tuple) -> Poset:
    key = (p, q, arrows)
    got = _POSET_CACHE.get(key)
    if got is None:
        got = Poset(names, arrows)
        _POSET_CACHE[key] = got
    return got


def star_graph() -> TwoColumnGraph:
    """The running 4-point example: p = q = 2 with cross arrow 2_ -> _1."""
    return TwoColumnGraph(2, 2, frozenset({("2_", "_1")}))
