"""Topology structures on presheaves over a poset, with exhaustive checkers.

Three equivalent presentations live here: per-point endomaps of the classifier
(with the three endomap laws), the closure operators they induce on
inclusions (checked against the five closure laws over a finite test
universe), and per-point families of covering sieves (checked against
hasmax / stab / trans and the filter laws).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .classifier import OmegaObject, chi, omega, sigma, true_inclusion
from .errors import InvalidTopology, NotInclusion, ShapeMismatch
from .heyting import AxiomFailure, CheckReport, HeytingAlgebra
from .poset import DownSet, Poset, downset_sort_key, sieve_positions, sieves_on
from .presheaf import (
    Inclusion,
    Morphism,
    Presheaf,
    bang,
    intersection,
    is_inclusion,
    preimage,
    product,
    subobjects,
    subterminal_of,
    terminal,
)


@dataclass(frozen=True)
class LTTopology:
    """Per-point endomap of the classifier, stored by sieve index."""

    poset: Poset
    tables: tuple[tuple[int, ...], ...]

    def sieve_lists(self) -> dict:
        return {u: sieves_on(self.poset, u) for u in self.poset.points}

    def apply(self, u, s: DownSet) -> DownSet:
        sieves = sieves_on(self.poset, u)
        return sieves[self.tables[self.poset.index(u)][sieves.index(s)]]

    def as_morphism(self, om: OmegaObject) -> Morphism:
        comp = {}
        for i, u in enumerate(self.poset.points):
            sieves = om.sieves[u]
            comp[u] = {s: sieves[self.tables[i][j]] for j, s in enumerate(sieves)}
        return Morphism(om, om, comp)


def lt_identity(poset: Poset) -> LTTopology:
    tables = tuple(
        tuple(range(len(sieves_on(poset, u)))) for u in poset.points
    )
    return LTTopology(poset, tables)


def lt_from_morphism(m: Morphism) -> LTTopology:
    om = m.dom
    if not isinstance(om, OmegaObject) or m.cod != om:
        raise ShapeMismatch("expected an endomap of the classifier")
    poset = om.poset
    tables = []
    for u in poset.points:
        sieves = om.sieves[u]
        tables.append(tuple(sieves.index(m.comp[u][s]) for s in sieves))
    return LTTopology(poset, tuple(tables))


def is_lt_topology(j: LTTopology, om: OmegaObject | None = None) -> CheckReport:
    """Naturality plus the three endomap laws, with witnesses.

    Meet preservation is checked twice on purpose: once per point on sieve
    pairs, and once as the commuting square against the internal conjunction
    morphism, to catch representation bugs in either route.
    """
    poset = j.poset
    om = omega(poset) if om is None else om
    failures = []
    for i, u in enumerate(poset.points):
        n = len(om.sieves[u])
        if len(j.tables[i]) != n or any(not 0 <= v < n for v in j.tables[i]):
            raise InvalidTopology(f"table at {u!r} does not match the classifier")
    for (u, v) in sorted(poset.arrows, key=repr):
        iu, iv = poset.index(u), poset.index(v)
        down_v = poset.down_mask(v)
        sieves_u, sieves_v = om.sieves[u], om.sieves[v]
        pos_v = {s.mask: k for k, s in enumerate(sieves_v)}
        for k, s in enumerate(sieves_u):
            left = sieves_u[j.tables[iu][k]].mask & down_v
            right = sieves_v[j.tables[iv][pos_v[s.mask & down_v]]].mask
            if left != right:
                failures.append(AxiomFailure("naturality", ((u, v), s)))
                break
    for i, u in enumerate(poset.points):
        table = j.tables[i]
        sieves = om.sieves[u]
        pos = {s.mask: k for k, s in enumerate(sieves)}
        top = len(sieves) - 1
        bad_idem = next((k for k in range(len(sieves)) if table[table[k]] != table[k]), None)
        if bad_idem is not None:
            failures.append(AxiomFailure("idempotent", (u, sieves[bad_idem])))
        if table[top] != top:
            failures.append(AxiomFailure("preserves-true", (u,)))
        done = False
        for a in range(len(sieves)):
            for b in range(a, len(sieves)):
                m = pos[sieves[a].mask & sieves[b].mask]
                if table[m] != pos[sieves[table[a]].mask & sieves[table[b]].mask]:
                    failures.append(
                        AxiomFailure("preserves-meets", (u, sieves[a], sieves[b]))
                    )
                    done = True
                    break
            if done:
                break
    if not failures:
        from .classifier import meet_map
        from .presheaf import pairing, proj

        jm = j.as_morphism(om)
        conj = meet_map(poset, om)
        sq = conj.dom
        after = conj.then(jm)
        p0, p1 = proj(sq, om, om, 0), proj(sq, om, om, 1)
        before = pairing(p0.then(jm), p1.then(jm), sq).then(conj)
        if after != before:
            failures.append(AxiomFailure("preserves-meets-as-map", ()))
    return CheckReport("topology axioms", tuple(failures))


@dataclass(frozen=True)
class ClosureOperator:
    """Closure on inclusions, represented by its inducing classifier endomap.

    A free-standing table over every object would be infinite; the inducing
    endomap determines the action on any inclusion, and the closure laws are
    validated against that action over a finite universe.
    """

    lt: LTTopology

    @property
    def poset(self) -> Poset:
        return self.lt.poset


def closure_of(clop: ClosureOperator, f: Inclusion, om: OmegaObject | None = None) -> Inclusion:
    """The inclusion classified by (endomap after classifying-map).

    Computed directly on sieve masks; ``closure_of_composite`` spells out the
    same composite through the classifier and the two must agree.
    """
    if not is_inclusion(f):
        raise NotInclusion("closure acts on inclusions")
    b = f.cod
    poset = clop.poset
    if b.poset != poset:
        raise ShapeMismatch("inclusion lives on a different poset")
    support = b.element_support()
    kept = {}
    for i, u in enumerate(poset.points):
        down_u = poset.down_mask_at(i)
        sieves = sieves_on(poset, u)
        pos = sieve_positions(poset, u)
        table = clop.lt.tables[i]
        keep = []
        for a in b.sets[u]:
            mask = 0
            for (v, img) in support[(u, a)]:
                if img in f.dom.sets[v]:
                    mask |= 1 << poset.index(v)
            if sieves[table[pos[mask]]].mask == down_u:
                keep.append(a)
        kept[u] = keep
    return Inclusion(b.sub_from_sets(kept), b)


def closure_of_composite(
    clop: ClosureOperator, f: Inclusion, om: OmegaObject | None = None
) -> Inclusion:
    """Reference route for :func:`closure_of`, via chi and sigma."""
    if not is_inclusion(f):
        raise NotInclusion("closure acts on inclusions")
    om = omega(clop.poset) if om is None else om
    return sigma(chi(f, om).then(clop.lt.as_morphism(om)))


def j_from_closure(clop: ClosureOperator, om: OmegaObject | None = None) -> LTTopology:
    """Classifying map of the closure of the true inclusion."""
    om = omega(clop.poset) if om is None else om
    closed_top = closure_of(clop, true_inclusion(clop.poset, om), om)
    return lt_from_morphism(chi(closed_top, om))


def is_dense(clop: ClosureOperator, f: Inclusion, om: OmegaObject | None = None) -> bool:
    closed = closure_of(clop, f, om)
    return closed.dom == f.cod


def is_closed(clop: ClosureOperator, f: Inclusion, om: OmegaObject | None = None) -> bool:
    closed = closure_of(clop, f, om)
    return closed.dom == f.dom


def dense_closed_factor(
    clop: ClosureOperator, f: Inclusion, om: OmegaObject | None = None
) -> tuple[Inclusion, Inclusion]:
    """Split an inclusion into a dense part followed by a closed part."""
    closed = closure_of(clop, f, om)
    dense_part = Inclusion(f.dom, closed.dom)
    return dense_part, closed


@dataclass(frozen=True)
class TestUniverse:
    """A finite, deterministic family of inclusions and map/inclusion pairs
    used to instantiate the 'for all inclusions' quantifiers."""

    poset: Poset
    inclusions: tuple[Inclusion, ...]
    pairs: tuple[tuple[Inclusion, Inclusion], ...]
    triples: tuple[tuple[Inclusion, Inclusion, Inclusion], ...]
    map_pairs: tuple[tuple[Morphism, Inclusion], ...]


def build_universe(
    poset: Poset,
    om: OmegaObject | None = None,
    pair_cap: int = 5000,
    omega_square_cap: int = 24,
    extra: Iterable[Presheaf] = (),
) -> TestUniverse:
    om = omega(poset) if om is None else om
    algebra = HeytingAlgebra(poset)
    objects: list[list[Inclusion]] = []
    one = terminal(poset)
    subterminals = [
        Inclusion(subterminal_of(poset, s), one) for s in algebra.elements
    ]
    objects.append(subterminals)
    objects.append(subobjects(om))
    objects.append(subobjects(product(om, om), limit=omega_square_cap))
    for b in extra:
        objects.append(subobjects(b))

    inclusions = tuple(f for group in objects for f in group)
    pairs: list[tuple[Inclusion, Inclusion]] = []
    for group in objects:
        for i, f in enumerate(group):
            for g in group[i:]:
                pairs.append((f, g))
                if len(pairs) >= pair_cap:
                    break
            if len(pairs) >= pair_cap:
                break
        if len(pairs) >= pair_cap:
            break
    triples = []
    for f, g in pairs:
        meet = intersection(f, g)
        triples.append((Inclusion(meet.dom, f.dom), f, meet))
    map_pairs: list[tuple[Morphism, Inclusion]] = []
    for group in objects:
        if not group:
            continue
        e = group[0].cod
        to_one = bang(e, one)
        for d in subterminals:
            map_pairs.append((to_one, d))
    omega_subs = objects[1]
    for f in objects[0][: len(algebra.elements)]:
        g = chi(f, om)
        for d in omega_subs[:12]:
            map_pairs.append((g, d))
    return TestUniverse(
        poset, inclusions, tuple(pairs), tuple(triples), tuple(map_pairs)
    )


def check_closure_axioms(
    clop: ClosureOperator, universe: TestUniverse, om: OmegaObject | None = None
) -> CheckReport:
    """The five closure laws, instantiated over the universe."""
    om = omega(clop.poset) if om is None else om
    failures = []
    closed: dict = {}

    def close(f: Inclusion) -> Inclusion:
        key = id(f)
        got = closed.get(key)
        if got is None:
            got = closure_of(clop, f, om)
            closed[key] = got
        return got

    for f in universe.inclusions:
        cf = close(f)
        if not all(f.dom.sets[u] <= cf.dom.sets[u] for u in clop.poset.points):
            failures.append(AxiomFailure("C1-inflationary", (f.dom,)))
            break
    for f in universe.inclusions:
        cf = close(f)
        again = closure_of(clop, cf, om)
        if again.dom != cf.dom:
            failures.append(AxiomFailure("C2-idempotent", (f.dom,)))
            break
    for f, g in universe.pairs:
        if all(f.dom.sets[u] <= g.dom.sets[u] for u in clop.poset.points):
            cf, cg = close(f), close(g)
            if not all(
                cf.dom.sets[u] <= cg.dom.sets[u] for u in clop.poset.points
            ):
                failures.append(AxiomFailure("C3-monotone", (f.dom, g.dom)))
                break
    for f, g in universe.pairs:
        lhs = closure_of(clop, intersection(f, g), om)
        rhs = intersection(close(f), close(g))
        if lhs.dom != rhs.dom:
            failures.append(AxiomFailure("C4-meets", (f.dom, g.dom)))
            break
    for m, d in universe.map_pairs:
        pulled, _ = preimage(m, d)
        lhs = closure_of(clop, pulled, om)
        rhs, _ = preimage(m, close(d))
        if lhs.dom != rhs.dom:
            failures.append(AxiomFailure("C5-pullback-stable", (m.dom, d.dom)))
            break
    return CheckReport("closure axioms", tuple(failures))


def restriction_check(
    clop: ClosureOperator,
    triple: tuple[Inclusion, Inclusion, Inclusion],
    om: OmegaObject | None = None,
) -> CheckReport:
    """Closure of the middle map computed from closures in the big object.

    ``triple`` is (m : C into D, d : D into E, c : C into E).
    """
    m, d, c = triple
    om = omega(clop.poset) if om is None else om
    failures = []
    closed_m = closure_of(clop, m, om)
    closed_c = closure_of(clop, c, om)
    pulled, _ = preimage(d, closed_c)
    if closed_m.dom != pulled.dom:
        failures.append(AxiomFailure("restricted-closure-is-pullback", (m.dom,)))
    expected = {
        u: closed_c.dom.sets[u] & d.dom.sets[u] for u in clop.poset.points
    }
    if {u: closed_m.dom.sets[u] for u in clop.poset.points} != expected:
        failures.append(AxiomFailure("restricted-closure-is-meet", (m.dom,)))
    return CheckReport("restriction identities", tuple(failures))


# -- covering-sieve topologies ----------------------------------------------


@dataclass(frozen=True)
class GrothendieckTopology:
    """Per-point families of covering sieves, stored as canonical mask tuples."""

    poset: Poset
    covers: tuple[tuple[int, ...], ...]

    def covers_at(self, u) -> tuple[DownSet, ...]:
        i = self.poset.index(u)
        return tuple(DownSet(self.poset, m) for m in self.covers[i])

    def covers_mask_set(self, i: int) -> frozenset:
        return frozenset(self.covers[i])


def make_grotop(poset: Poset, families: dict) -> GrothendieckTopology:
    """Build from a mapping point -> iterable of sieves (DownSets or masks)."""
    covers = []
    for u in poset.points:
        fam = []
        for s in families.get(u, ()):
            fam.append(s.mask if isinstance(s, DownSet) else int(s))
        fam = sorted(set(fam), key=lambda m: downset_sort_key(poset, m))
        covers.append(tuple(fam))
    return GrothendieckTopology(poset, tuple(covers))


def smallest_grotop(poset: Poset) -> GrothendieckTopology:
    """Only the maximal sieve covers each point."""
    return GrothendieckTopology(
        poset, tuple((poset.down_mask(u),) for u in poset.points)
    )


def largest_grotop(poset: Poset) -> GrothendieckTopology:
    """Every sieve covers."""
    return make_grotop(poset, {u: sieves_on(poset, u) for u in poset.points})


def is_grothendieck(j: GrothendieckTopology) -> CheckReport:
    """Bounds, hasmax, stab, and trans, with witnesses."""
    poset = j.poset
    failures = []
    sieve_masks = {
        u: frozenset(s.mask for s in sieves_on(poset, u)) for u in poset.points
    }
    family = {u: j.covers_mask_set(poset.index(u)) for u in poset.points}
    for u in poset.points:
        if not family[u] <= sieve_masks[u]:
            failures.append(AxiomFailure("bounds", (u,)))
        if poset.down_mask(u) not in family[u]:
            failures.append(AxiomFailure("hasmax", (u,)))
    for u in poset.points:
        down_u = poset.down_mask(u)
        for v in poset.points:
            if v == u or not poset.above(u, v):
                continue
            down_v = poset.down_mask(v)
            for m in family[u]:
                if m & down_v not in family[v]:
                    failures.append(
                        AxiomFailure("stab", (u, v, DownSet(poset, m)))
                    )
                    break
        for s_mask in sorted(sieve_masks[u]):
            if s_mask in family[u]:
                continue
            for cover in family[u]:
                ok = True
                rest = cover
                while rest:
                    i = (rest & -rest).bit_length() - 1
                    rest &= rest - 1
                    down_v = poset.down_mask_at(i)
                    if s_mask & down_v not in family[poset.points[i]]:
                        ok = False
                        break
                if ok:
                    failures.append(
                        AxiomFailure(
                            "trans", (u, DownSet(poset, cover), DownSet(poset, s_mask))
                        )
                    )
                    break
            else:
                continue
            break
    return CheckReport("covering axioms", tuple(failures))


@dataclass(frozen=True)
class FilterReport:
    report: CheckReport
    generators: tuple[DownSet, ...]


def filter_check(j: GrothendieckTopology) -> FilterReport:
    """Top membership, upward closure, binary meets, and the principal
    generator of each per-point family (finiteness makes filters principal)."""
    poset = j.poset
    failures = []
    generators = []
    for idx, u in enumerate(poset.points):
        fam = j.covers_mask_set(idx)
        down_u = poset.down_mask(u)
        if down_u not in fam:
            failures.append(AxiomFailure("filter-top", (u,)))
        all_sieves = [s.mask for s in sieves_on(poset, u)]
        for r in fam:
            for s in all_sieves:
                if r | s == s and s not in fam:
                    failures.append(
                        AxiomFailure("filter-up", (u, DownSet(poset, r), DownSet(poset, s)))
                    )
                    break
        for r in fam:
            for s in fam:
                if r & s not in fam:
                    failures.append(
                        AxiomFailure("filter-meet", (u, DownSet(poset, r), DownSet(poset, s)))
                    )
                    break
        gen = down_u
        for r in fam:
            gen &= r
        generators.append(DownSet(poset, gen))
        if fam and gen not in fam:
            failures.append(AxiomFailure("filter-principal", (u,)))
    return FilterReport(
        CheckReport("filter laws", tuple(failures)), tuple(generators)
    )


def canonical_grothendieck(base: Poset) -> GrothendieckTopology:
    """Covering-by-union topology on the space of down-sets of the base.

    The result is indexed by the poset of down-sets of ``base`` ordered by
    reverse inclusion (bigger opens above), and a sieve covers an open when
    the union of its members is that open.
    """
    from .poset import enumerate_downsets

    opens = enumerate_downsets(base)
    names = tuple("{" + ",".join(str(p) for p in o.members) + "}" for o in opens)
    by_name = dict(zip(names, opens))
    arrows = set()
    for i, o in enumerate(opens):
        for k, w in enumerate(opens):
            if i != k and w.mask | o.mask == o.mask:
                arrows.add((names[i], names[k]))
    space = Poset(names, arrows)
    families: dict = {}
    for name in names:
        o = by_name[name]
        fam = []
        for sieve in sieves_on(space, name):
            union = 0
            for member in sieve.members:
                union |= by_name[member].mask
            if union == o.mask:
                fam.append(sieve)
        families[name] = fam
    return make_grotop(space, families)
