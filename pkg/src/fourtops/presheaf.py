"""Finite presheaves on a poset: morphisms, inclusions, and the limit toolkit.

A presheaf assigns a finite label set to each point and a restriction map to
each generating arrow; composite restrictions must be path-independent, which
is verified at construction.  An inclusion is a morphism whose components are
literal identities, so the domain's label sets are genuine subsets of the
codomain's and the whole subobject calculus (preimage, intersection, image,
equalizer) stays on the nose.
"""

from __future__ import annotations

from typing import Hashable, Mapping

from .errors import (
    FunctorialityError,
    NaturalityError,
    NotInclusion,
    NotMonic,
    NotSubterminal,
    ShapeMismatch,
    UnknownElement,
)
from .poset import DownSet, Poset

Label = Hashable


def _label_key(label):
    return repr(label)


class Presheaf:
    """Finite-set-valued functor on a poset, restriction along 'below'."""

    __slots__ = ("poset", "sets", "restr", "_paths", "_support")

    def __init__(
        self,
        poset: Poset,
        sets: Mapping,
        restr: Mapping,
    ):
        self.poset = poset
        self.sets = {u: frozenset(sets.get(u, ())) for u in poset.points}
        self.restr = {}
        for (u, v), table in restr.items():
            if (u, v) not in poset.arrows:
                raise FunctorialityError(f"{(u, v)!r} is not a generating arrow")
            self.restr[(u, v)] = dict(table)
        for arrow in poset.arrows:
            self.restr.setdefault(arrow, {})
        self._paths = None
        self._support = None
        self._validate()

    def _validate(self) -> None:
        for (u, v), table in self.restr.items():
            if set(table) != set(self.sets[u]):
                raise FunctorialityError(
                    f"restriction along {(u, v)!r} is not total on {sorted(map(_label_key, self.sets[u]))}"
                )
            for a, b in table.items():
                if b not in self.sets[v]:
                    raise FunctorialityError(
                        f"restriction along {(u, v)!r} sends {a!r} outside the target set"
                    )
        self._paths = self._compose_paths()

    def _compose_paths(self) -> dict:
        """Maps (u, v) with u above v to the composite restriction, checking
        that every pair of parallel paths agrees."""
        poset = self.poset
        out = {}
        for u in poset.points:
            out[(u, u)] = {a: a for a in self.sets[u]}
        order = poset.points
        children = {u: [v for (x, v) in poset.arrows if x == u] for u in order}
        for u in order:
            pending = [u]
            while pending:
                w = pending.pop()
                for v in children[w]:
                    step = self.restr[(w, v)]
                    composite = {a: step[out[(u, w)][a]] for a in self.sets[u]}
                    if (u, v) in out:
                        if out[(u, v)] != composite:
                            raise FunctorialityError(
                                f"two paths {u!r} ~> {v!r} restrict differently"
                            )
                    else:
                        out[(u, v)] = composite
                        pending.append(v)
        return out

    def restrict(self, u, v, a):
        """Image of a in B(u) under the composite restriction to v."""
        try:
            return self._paths[(u, v)][a]
        except KeyError:
            if (u, v) not in self._paths:
                raise ShapeMismatch(f"{u!r} is not above {v!r}") from None
            raise UnknownElement(f"{a!r} not in the component at {u!r}") from None

    def at(self, u) -> frozenset:
        return self.sets[u]

    def element_support(self) -> dict:
        """(u, a) -> tuple of (v, image of a at v) over the points below u."""
        if self._support is None:
            support = {}
            for u in self.poset.points:
                below = [
                    v for v in self.poset.points if self.poset.above(u, v)
                ]
                for a in self.sets[u]:
                    support[(u, a)] = tuple(
                        (v, self._paths[(u, v)][a]) for v in below
                    )
            self._support = support
        return self._support

    def sorted_at(self, u) -> tuple:
        return tuple(sorted(self.sets[u], key=_label_key))

    def size(self) -> int:
        return sum(len(s) for s in self.sets.values())

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Presheaf)
            and self.poset == other.poset
            and self.sets == other.sets
            and self.restr == other.restr
        )

    def __hash__(self) -> int:
        return hash(
            (
                self.poset,
                tuple(tuple(self.sorted_at(u)) for u in self.poset.points),
            )
        )

    def __repr__(self) -> str:
        parts = ", ".join(
            f"{u}:{{{','.join(map(str, self.sorted_at(u)))}}}" for u in self.poset.points
        )
        return f"Presheaf({parts})"

    # -- derived structure ---------------------------------------------------

    def element_poset(self) -> Poset:
        """The poset of elements: points (u, a), with (u, a) above its images."""
        points = [
            (u, a) for u in self.poset.points for a in self.sorted_at(u)
        ]
        arrows = set()
        for (u, v), table in self.restr.items():
            for a, b in table.items():
                arrows.add(((u, a), (v, b)))
        return Poset(points, arrows)

    def sub_from_sets(self, sets: Mapping) -> "Presheaf":
        """Sub-presheaf on the given subsets, restriction inherited."""
        sub_restr = {
            (u, v): {a: table[a] for a in sets.get(u, ())}
            for (u, v), table in self.restr.items()
        }
        return Presheaf(self.poset, sets, sub_restr)


def presheaf_from_element_poset(element_poset: Poset, base: Poset) -> Presheaf:
    """Rebuild a presheaf from (a down-set of) its poset of elements."""
    sets: dict = {u: set() for u in base.points}
    for (u, a) in element_poset.points:
        sets[u].add(a)
    restr: dict = {arrow: {} for arrow in base.arrows}
    for ((u, a), (v, b)) in element_poset.arrows:
        if (u, v) in restr:
            restr[(u, v)][a] = b
    return Presheaf(base, sets, restr)


def terminal(poset: Poset) -> Presheaf:
    """The one-star presheaf."""
    sets = {u: ("*",) for u in poset.points}
    restr = {arrow: {"*": "*"} for arrow in poset.arrows}
    return Presheaf(poset, sets, restr)


def empty_presheaf(poset: Poset) -> Presheaf:
    return Presheaf(poset, {}, {})


class Morphism:
    """Natural transformation between presheaves on the same poset."""

    __slots__ = ("dom", "cod", "comp")

    def __init__(self, dom: Presheaf, cod: Presheaf, comp: Mapping):
        if dom.poset != cod.poset:
            raise ShapeMismatch("domain and codomain live on different posets")
        self.dom = dom
        self.cod = cod
        self.comp = {u: dict(comp.get(u, {})) for u in dom.poset.points}
        self._validate()

    def _validate(self) -> None:
        for u in self.dom.poset.points:
            table = self.comp[u]
            if set(table) != set(self.dom.sets[u]):
                raise NaturalityError(f"component at {u!r} is not total")
            for a, b in table.items():
                if b not in self.cod.sets[u]:
                    raise NaturalityError(
                        f"component at {u!r} sends {a!r} outside the codomain"
                    )
        for (u, v) in self.dom.poset.arrows:
            down = self.dom.restr[(u, v)]
            up = self.cod.restr[(u, v)]
            for a in self.dom.sets[u]:
                if self.comp[v][down[a]] != up[self.comp[u][a]]:
                    raise NaturalityError(
                        f"square at arrow {(u, v)!r} does not commute on {a!r}"
                    )

    def __call__(self, u, a):
        try:
            return self.comp[u][a]
        except KeyError:
            raise UnknownElement(f"{a!r} not in the domain at {u!r}") from None

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Morphism)
            and self.dom == other.dom
            and self.cod == other.cod
            and self.comp == other.comp
        )

    def __hash__(self) -> int:
        return hash((self.dom, self.cod))

    def is_monic(self) -> bool:
        return all(
            len(set(self.comp[u].values())) == len(self.comp[u])
            for u in self.dom.poset.points
        )

    def then(self, other: "Morphism") -> "Morphism":
        """Composite self;other (apply self first)."""
        if self.cod != other.dom:
            raise ShapeMismatch("composite endpoints do not match")
        comp = {
            u: {a: other.comp[u][b] for a, b in self.comp[u].items()}
            for u in self.dom.poset.points
        }
        return Morphism(self.dom, other.cod, comp)


def identity(b: Presheaf) -> "Inclusion":
    return Inclusion(b, b)


def bang(b: Presheaf, one: Presheaf | None = None) -> Morphism:
    """The unique map to the terminal."""
    one = terminal(b.poset) if one is None else one
    comp = {u: {a: "*" for a in b.sets[u]} for u in b.poset.points}
    return Morphism(b, one, comp)


class Inclusion(Morphism):
    """A morphism whose components are literal identities (IncSC)."""

    def __init__(self, dom: Presheaf, cod: Presheaf):
        for u in dom.poset.points:
            if not dom.sets[u] <= cod.sets[u]:
                raise NotInclusion(
                    f"component at {u!r} is not a subset of the codomain"
                )
        comp = {u: {a: a for a in dom.sets[u]} for u in dom.poset.points}
        super().__init__(dom, cod, comp)


def is_inclusion(m: Morphism) -> bool:
    return all(
        all(a == b for a, b in m.comp[u].items()) for u in m.dom.poset.points
    )


def can(f: Morphism) -> Inclusion:
    """The inclusion equivalent to a monic: image sets with inherited restriction."""
    if not f.is_monic():
        raise NotMonic("can() needs a componentwise-injective morphism")
    image = {u: frozenset(f.comp[u].values()) for u in f.dom.poset.points}
    return Inclusion(f.cod.sub_from_sets(image), f.cod)


def preimage(f: Morphism, g: Inclusion) -> tuple[Inclusion, Morphism]:
    """Pull an inclusion back along f; returns (left wall, top wall)."""
    if f.cod != g.cod:
        raise ShapeMismatch("preimage needs a shared codomain")
    sets = {
        u: frozenset(a for a in f.dom.sets[u] if f.comp[u][a] in g.dom.sets[u])
        for u in f.dom.poset.points
    }
    sub = f.dom.sub_from_sets(sets)
    left = Inclusion(sub, f.dom)
    top = Morphism(
        sub,
        g.dom,
        {u: {a: f.comp[u][a] for a in sets[u]} for u in f.dom.poset.points},
    )
    return left, top


def intersection(f: Inclusion, g: Inclusion) -> Inclusion:
    """Componentwise meet of two inclusions into the same presheaf."""
    if f.cod != g.cod:
        raise ShapeMismatch("intersection needs a shared codomain")
    sets = {u: f.dom.sets[u] & g.dom.sets[u] for u in f.cod.poset.points}
    return Inclusion(f.cod.sub_from_sets(sets), f.cod)


def product(a: Presheaf, b: Presheaf) -> Presheaf:
    """Pointwise pairs with pairwise restriction; labels are (left, right)."""
    if a.poset != b.poset:
        raise ShapeMismatch("product factors live on different posets")
    sets = {
        u: frozenset((x, y) for x in a.sets[u] for y in b.sets[u])
        for u in a.poset.points
    }
    restr = {
        (u, v): {
            (x, y): (a.restr[(u, v)][x], b.restr[(u, v)][y])
            for (x, y) in sets[u]
        }
        for (u, v) in a.poset.arrows
    }
    return Presheaf(a.poset, sets, restr)


def proj(p: Presheaf, a: Presheaf, b: Presheaf, which: int) -> Morphism:
    """Projection out of a product built by :func:`product`."""
    cod = a if which == 0 else b
    comp = {u: {pair: pair[which] for pair in p.sets[u]} for u in p.poset.points}
    return Morphism(p, cod, comp)


def pairing(f: Morphism, g: Morphism, prod: Presheaf) -> Morphism:
    """The map <f, g> into a product of the codomains."""
    if f.dom != g.dom:
        raise ShapeMismatch("pairing needs a shared domain")
    comp = {
        u: {a: (f.comp[u][a], g.comp[u][a]) for a in f.dom.sets[u]}
        for u in f.dom.poset.points
    }
    return Morphism(f.dom, prod, comp)


def equalizer(f: Morphism, g: Morphism) -> Inclusion:
    """The sub-presheaf where two parallel morphisms agree."""
    if f.dom != g.dom or f.cod != g.cod:
        raise ShapeMismatch("equalizer needs parallel morphisms")
    sets = {
        u: frozenset(a for a in f.dom.sets[u] if f.comp[u][a] == g.comp[u][a])
        for u in f.dom.poset.points
    }
    return Inclusion(f.dom.sub_from_sets(sets), f.dom)


def element_downset(b: Presheaf, u, a) -> Inclusion:
    """The smallest sub-presheaf of b containing a in the component at u."""
    if a not in b.sets[u]:
        raise UnknownElement(f"{a!r} not in the component at {u!r}")
    poset = b.poset
    sets = {}
    for v in poset.points:
        if poset.above(u, v):
            sets[v] = frozenset({b.restrict(u, v, a)})
        else:
            sets[v] = frozenset()
    return Inclusion(b.sub_from_sets(sets), b)


def cst(c: Presheaf) -> DownSet:
    """Truth-value of a subterminal: the down-set of points where it is inhabited."""
    mask = 0
    for i, u in enumerate(c.poset.points):
        k = len(c.sets[u])
        if k > 1:
            raise NotSubterminal(f"component at {u!r} has {k} elements")
        if k:
            mask |= 1 << i
    return DownSet(c.poset, mask)


def subterminal_of(poset: Poset, s: DownSet) -> Presheaf:
    """The subterminal presheaf whose truth-value is the given down-set."""
    sets = {u: ("*",) if u in s else () for u in poset.points}
    restr = {
        (u, v): ({"*": "*"} if u in s else {}) for (u, v) in poset.arrows
    }
    return Presheaf(poset, sets, restr)


def subobjects(b: Presheaf, limit: int | None = None) -> list[Inclusion]:
    """Inclusions into b, via down-sets of its poset of elements.

    Deterministic (size, membership) order; ``limit`` keeps only the first
    entries of that order and avoids materializing the rest.
    """
    from .poset import enumerate_downsets, limited_downsets

    epo = b.element_poset()
    if limit is None:
        downs = enumerate_downsets(epo, cap=len(epo.points))
    else:
        downs = limited_downsets(epo, limit)
    out = []
    for d in downs:
        sets: dict = {u: set() for u in b.poset.points}
        for (u, a) in d.members:
            sets[u].add(a)
        out.append(Inclusion(b.sub_from_sets(sets), b))
    return out


def _parents_first(poset: Poset) -> list:
    """Point order in which everything above a point comes before it."""
    points = list(poset.points)
    points.sort(key=lambda u: -poset.down_mask(u).bit_count())
    order = []
    placed = set()
    pending = points
    while pending:
        rest = []
        for u in pending:
            if all(w in placed for w, z in poset.arrows if z == u):
                order.append(u)
                placed.add(u)
            else:
                rest.append(u)
        if len(rest) == len(pending):
            raise ShapeMismatch("poset order is not well-founded")
        pending = rest
    return order


def natural_maps(t: Presheaf, b: Presheaf) -> list[Morphism]:
    """Every natural transformation t -> b (exhaustive; small inputs only)."""
    poset = t.poset
    if poset != b.poset:
        raise ShapeMismatch("natural_maps needs a shared poset")
    order = _parents_first(poset)
    parents = {u: [w for (w, z) in poset.arrows if z == u] for u in order}
    assignments: list[dict] = [{}]
    for u in order:
        for a in t.sorted_at(u):
            grown = []
            for cand in assignments:
                forced = None
                consistent = True
                for w in parents[u]:
                    for c in t.sets[w]:
                        if t.restr[(w, u)][c] != a:
                            continue
                        want = b.restr[(w, u)][cand[(w, c)]]
                        if forced is None:
                            forced = want
                        elif forced != want:
                            consistent = False
                            break
                    if not consistent:
                        break
                if not consistent:
                    continue
                options = [forced] if forced is not None else list(b.sorted_at(u))
                for x in options:
                    nxt = dict(cand)
                    nxt[(u, a)] = x
                    grown.append(nxt)
            assignments = grown
    out = []
    for assignment in assignments:
        comp = {u: {a: assignment[(u, a)] for a in t.sets[u]} for u in poset.points}
        out.append(Morphism(t, b, comp))
    return out
