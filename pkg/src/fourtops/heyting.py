"""The Heyting algebra of down-sets, nuclei, and slashings.

A nucleus is an inflationary, idempotent, binary-meet-preserving endomap of
the down-set algebra.  Every subset Y of the points induces one via
``S -> interior(Q | S)`` where Q is the complement of Y, and every nucleus
arises this way; the slashing is the partition of the algebra into fibers of
the nucleus, each with a topmost element.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from ._kernels import enumerate_operator_tables
from .errors import InvalidNucleus, NotElement, SizeCapExceeded
from .poset import (
    DEFAULT_POINT_CAP,
    DownSet,
    Poset,
    enumerate_downsets,
    interior_mask,
)


class HeytingAlgebra:
    """All down-sets of a poset, ordered by inclusion."""

    __slots__ = ("poset", "elements", "_pos", "_hash")

    def __init__(self, poset: Poset, cap: int = DEFAULT_POINT_CAP):
        self.poset = poset
        self.elements = enumerate_downsets(poset, cap)
        self._pos = {s.mask: i for i, s in enumerate(self.elements)}
        self._hash = hash(poset)

    def __len__(self) -> int:
        return len(self.elements)

    def __eq__(self, other) -> bool:
        return isinstance(other, HeytingAlgebra) and self.poset == other.poset

    def __hash__(self) -> int:
        return self._hash

    @property
    def bottom(self) -> DownSet:
        return self.elements[0]

    @property
    def top(self) -> DownSet:
        return self.elements[-1]

    def index(self, s: DownSet) -> int:
        if s.poset != self.poset:
            raise NotElement(f"{s!r} lives on a different poset")
        try:
            return self._pos[s.mask]
        except KeyError:
            raise NotElement(f"{s!r} is not an element of this algebra") from None

    def element(self, mask: int) -> DownSet:
        if mask not in self._pos:
            raise NotElement(f"mask {mask:#x} is not down-closed here")
        return self.elements[self._pos[mask]]

    def from_names(self, names: Iterable) -> DownSet:
        return self.element(self.poset.mask_of(names))

    def meet(self, r: DownSet, s: DownSet) -> DownSet:
        self.index(r), self.index(s)
        return self.elements[self._pos[r.mask & s.mask]]

    def join(self, r: DownSet, s: DownSet) -> DownSet:
        self.index(r), self.index(s)
        return self.elements[self._pos[r.mask | s.mask]]

    def imp(self, r: DownSet, s: DownSet) -> DownSet:
        """Largest T with T meet R <= S: the interior of (complement of R) | S."""
        self.index(r), self.index(s)
        mask = interior_mask(self.poset, (self.poset.full_mask & ~r.mask) | s.mask)
        return self.elements[self._pos[mask]]

    def meet_table(self) -> tuple[int, ...]:
        n = len(self.elements)
        flat = [0] * (n * n)
        for i, r in enumerate(self.elements):
            for j, s in enumerate(self.elements):
                flat[i * n + j] = self._pos[r.mask & s.mask]
        return tuple(flat)

    def up_masks(self) -> tuple[int, ...]:
        n = len(self.elements)
        out = [0] * n
        for i, r in enumerate(self.elements):
            for j, s in enumerate(self.elements):
                if r.mask | s.mask == s.mask:
                    out[i] |= 1 << j
        return tuple(out)


@dataclass(frozen=True)
class Nucleus:
    """A total table on a down-set algebra, stored by element index."""

    algebra: HeytingAlgebra
    table: tuple[int, ...]

    def apply(self, s: DownSet) -> DownSet:
        return self.algebra.elements[self.table[self.algebra.index(s)]]

    def __call__(self, s: DownSet) -> DownSet:
        return self.apply(s)


@dataclass(frozen=True)
class AxiomFailure:
    axiom: str
    witness: tuple

    def __str__(self) -> str:
        parts = ", ".join(repr(w) for w in self.witness)
        return f"{self.axiom} fails at {parts}"


@dataclass(frozen=True)
class CheckReport:
    """Outcome of an axiom scan: empty failure list means pass."""

    subject: str
    failures: tuple[AxiomFailure, ...]

    @property
    def ok(self) -> bool:
        return not self.failures

    def summary(self) -> str:
        if self.ok:
            return f"{self.subject}: pass"
        lines = [f"{self.subject}: FAIL"]
        lines.extend(f"  {f}" for f in self.failures)
        return "\n".join(lines)


def is_nucleus(algebra: HeytingAlgebra, table: tuple[int, ...]) -> CheckReport:
    """Check the three nucleus axioms, reporting a witness per failure."""
    els = algebra.elements
    n = len(els)
    failures = []
    if len(table) != n or any(not 0 <= v < n for v in table):
        raise NotElement("table is not a total map on the algebra")
    for i in range(n):
        if els[i].mask & ~els[table[i]].mask:
            failures.append(AxiomFailure("inflationary", (els[i],)))
            break
    for i in range(n):
        if table[table[i]] != table[i]:
            failures.append(AxiomFailure("idempotent", (els[i],)))
            break
    done = False
    for i in range(n):
        for j in range(i, n):
            m = algebra._pos[els[i].mask & els[j].mask]
            if table[m] != algebra._pos[els[table[i]].mask & els[table[j]].mask]:
                failures.append(AxiomFailure("meet-preserving", (els[i], els[j])))
                done = True
                break
        if done:
            break
    return CheckReport("nucleus axioms", tuple(failures))


def nucleus_from_point_set(algebra: HeytingAlgebra, kept: Iterable) -> Nucleus:
    """Nucleus induced by a point set Y: S -> interior(Q | S), Q the complement."""
    poset = algebra.poset
    q_mask = poset.full_mask & ~poset.mask_of(kept)
    table = tuple(
        algebra._pos[interior_mask(poset, q_mask | s.mask)] for s in algebra.elements
    )
    return Nucleus(algebra, table)


def point_set_of_nucleus(nucleus: Nucleus) -> frozenset:
    """The points where the nucleus separates ``down u`` from ``strictly-down u``."""
    report = is_nucleus(nucleus.algebra, nucleus.table)
    if not report.ok:
        raise InvalidNucleus(report.summary())
    algebra = nucleus.algebra
    poset = algebra.poset
    out = []
    for i, u in enumerate(poset.points):
        full = algebra._pos[poset.down_mask_at(i)]
        strict = algebra._pos[poset.down_mask_at(i) & ~(1 << i)]
        if nucleus.table[full] != nucleus.table[strict]:
            out.append(u)
    return frozenset(out)


def modality_on_downset(nucleus: Nucleus, s: DownSet):
    """The induced operator R -> (R* meet S) on the elements below S."""
    algebra = nucleus.algebra
    si = algebra.index(s)
    els = algebra.elements

    def act(r: DownSet) -> DownSet:
        ri = algebra.index(r)
        if els[ri].mask & ~s.mask:
            raise NotElement(f"{r!r} is not below {s!r}")
        return algebra.element(els[nucleus.table[ri]].mask & els[si].mask)

    return act


@dataclass(frozen=True)
class Slashing:
    """A partition of the algebra into regions, each with a topmost element."""

    algebra: HeytingAlgebra
    classes: tuple[tuple[int, ...], ...]
    region_tops: tuple[int, ...]

    def class_of(self, i: int) -> int:
        for c, cls in enumerate(self.classes):
            if i in cls:
                return c
        raise NotElement(f"index {i} outside the algebra")

    def as_partition(self) -> frozenset:
        return frozenset(frozenset(c) for c in self.classes)


def _build_slashing(algebra: HeytingAlgebra, key_of) -> Slashing:
    groups: dict = {}
    for i in range(len(algebra.elements)):
        groups.setdefault(key_of(i), []).append(i)
    classes = sorted((tuple(v) for v in groups.values()), key=lambda c: c[0])
    tops = []
    for cls in classes:
        union = 0
        for i in cls:
            union |= algebra.elements[i].mask
        tops.append(algebra._pos[union])
    for cls, top in zip(classes, tops):
        if top not in cls:
            raise InvalidNucleus("region has no topmost member")
    return Slashing(algebra, tuple(classes), tuple(tops))


def slashing_from_erased(algebra: HeytingAlgebra, erased: Iterable) -> Slashing:
    """Regions of elements that agree once the erased points are removed."""
    q_mask = algebra.poset.mask_of(erased)
    return _build_slashing(algebra, lambda i: algebra.elements[i].mask & ~q_mask)


def slashing_from_nucleus(nucleus: Nucleus) -> Slashing:
    return _build_slashing(nucleus.algebra, lambda i: nucleus.table[i])


def slashings_agree(a: Slashing, b: Slashing) -> bool:
    return a.algebra == b.algebra and a.as_partition() == b.as_partition()


DEFAULT_ORACLE_POINT_CAP = 6


def enumerate_nucleus_tables(
    algebra: HeytingAlgebra, point_cap: int = DEFAULT_ORACLE_POINT_CAP
) -> list[tuple[int, ...]]:
    """Brute-force search for every table passing the nucleus axioms."""
    if len(algebra.poset.points) > point_cap:
        raise SizeCapExceeded(
            f"oracle nucleus enumeration capped at {point_cap} points"
        )
    return enumerate_operator_tables(
        len(algebra.elements),
        algebra.up_masks(),
        algebra.meet_table(),
        inflationary=True,
        top_fixed=False,
    )
