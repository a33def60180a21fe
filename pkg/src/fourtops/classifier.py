"""The subobject classifier of presheaves on a poset.

The component at u is the set of sieves on u (down-sets of the ambient poset
contained in ``down u``); restriction intersects with ``down v``.  Classifying
maps send b in B(u) to the truth-value of A meet the smallest sub-presheaf
containing b, which always lands inside ``down u``.
"""

from __future__ import annotations

from .errors import NotInclusion
from .poset import DownSet, Poset, sieves_on
from .presheaf import (
    Inclusion,
    Morphism,
    Presheaf,
    bang,
    can,
    cst,
    element_downset,
    intersection,
    is_inclusion,
    product,
    terminal,
)


class OmegaObject(Presheaf):
    """The classifier presheaf; caches per-point sieve lists in canonical order."""

    __slots__ = ("sieves",)

    def __init__(self, poset: Poset):
        sieves = {u: sieves_on(poset, u) for u in poset.points}
        sets = {u: sieves[u] for u in poset.points}
        restr = {}
        for (u, v) in poset.arrows:
            down_v = poset.down_mask(v)
            restr[(u, v)] = {
                s: DownSet(poset, s.mask & down_v) for s in sieves[u]
            }
        super().__init__(poset, sets, restr)
        self.sieves = sieves

    def sieve_index(self, u, s: DownSet) -> int:
        return self.sieves[u].index(s)


def omega(poset: Poset) -> OmegaObject:
    return OmegaObject(poset)


def true_map(poset: Poset, om: OmegaObject | None = None) -> Morphism:
    """The point of the classifier that marks everything below as present."""
    om = omega(poset) if om is None else om
    one = terminal(poset)
    comp = {
        u: {"*": DownSet(poset, poset.down_mask(u))} for u in poset.points
    }
    return Morphism(one, om, comp)


def true_inclusion(poset: Poset, om: OmegaObject | None = None) -> Inclusion:
    """The canonical inclusion equivalent to the true map."""
    return can(true_map(poset, om))


def chi(f: Inclusion, om: OmegaObject | None = None) -> Morphism:
    """Classifying map of an inclusion: b goes to the truth-value of
    (domain meet smallest-sub-presheaf-containing-b), reindexed as a sieve."""
    if not is_inclusion(f):
        raise NotInclusion("chi needs identity components")
    b = f.cod
    poset = b.poset
    om = omega(poset) if om is None else om
    comp: dict = {}
    for u in poset.points:
        down_u = poset.down_mask(u)
        table = {}
        for a in b.sets[u]:
            value = cst(intersection(f, element_downset(b, u, a)).dom)
            assert value.mask & ~down_u == 0
            table[a] = value
        comp[u] = table
    return Morphism(b, om, comp)


def sigma(g: Morphism) -> Inclusion:
    """The inclusion classified by a map into the classifier."""
    b = g.dom
    poset = b.poset
    sets = {
        u: frozenset(
            a for a in b.sets[u] if g.comp[u][a].mask == poset.down_mask(u)
        )
        for u in poset.points
    }
    return Inclusion(b.sub_from_sets(sets), b)


def omega_square(om: OmegaObject) -> Presheaf:
    return product(om, om)


def meet_map(poset: Poset, om: OmegaObject | None = None) -> Morphism:
    """Internal conjunction: componentwise intersection of sieve pairs."""
    om = omega(poset) if om is None else om
    sq = product(om, om)
    comp = {
        u: {(s, t): DownSet(poset, s.mask & t.mask) for (s, t) in sq.sets[u]}
        for u in poset.points
    }
    return Morphism(sq, om, comp)


def imp_map(poset: Poset, om: OmegaObject | None = None) -> Morphism:
    """Internal implication: largest sieve R on u with R meet S inside T."""
    om = omega(poset) if om is None else om
    sq = product(om, om)
    comp: dict = {}
    for u in poset.points:
        down_u = poset.down_mask(u)
        table = {}
        for (s, t) in sq.sets[u]:
            mask = 0
            rest = down_u
            while rest:
                i = (rest & -rest).bit_length() - 1
                rest &= rest - 1
                if poset.down_mask_at(i) & s.mask & ~t.mask == 0:
                    mask |= 1 << i
            table[(s, t)] = DownSet(poset, mask)
        comp[u] = table
    return Morphism(sq, om, comp)


def top_composite(b: Presheaf, om: OmegaObject) -> Morphism:
    """The constantly-true map on b: the bang followed by true."""
    one = terminal(b.poset)
    return bang(b, one).then(true_map(b.poset, om))
