"""Conversions among the four equivalent topology representations.

Point sets, nuclei on the down-set algebra, covering-sieve families, and
classifier endomaps determine each other.  Every conversion here follows its
defining formula directly; the enumerators double as evidence, with a formula
mode that generates one structure per point subset and an oracle mode that
searches every candidate table and filters by the axioms.  The route checkers
compose conversions along different paths and compare the results by value,
reporting counterexamples in full rather than asserting.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable

from .classifier import OmegaObject, chi, omega
from .errors import (
    IncoherentQuad,
    InvalidNucleus,
    InvalidTopology,
    SizeCapExceeded,
)
from .heyting import (
    HeytingAlgebra,
    Nucleus,
    enumerate_nucleus_tables,
    is_nucleus,
    nucleus_from_point_set,
    point_set_of_nucleus,
)
from ._kernels import enumerate_operator_tables
from .poset import DownSet, Poset, sieves_on
from .presheaf import Inclusion
from .topology import (
    ClosureOperator,
    GrothendieckTopology,
    LTTopology,
    closure_of,
    is_grothendieck,
    is_lt_topology,
    make_grotop,
)

DEFAULT_ENUM_POINT_CAP = 6


def _require_nucleus(n: Nucleus) -> None:
    report = is_nucleus(n.algebra, n.table)
    if not report.ok:
        raise InvalidNucleus(report.summary())


def _require_grotop(j: GrothendieckTopology) -> None:
    report = is_grothendieck(j)
    if not report.ok:
        raise InvalidTopology(report.summary())


# -- point set <-> covering families ----------------------------------------


def point_set_to_grotop(poset: Poset, kept: Iterable) -> GrothendieckTopology:
    """A sieve covers u exactly when it contains every kept point below u."""
    kept_mask = poset.mask_of(kept)
    families = {}
    for u in poset.points:
        need = kept_mask & poset.down_mask(u)
        families[u] = [s for s in sieves_on(poset, u) if need & ~s.mask == 0]
    return make_grotop(poset, families)


def grotop_to_point_set(j: GrothendieckTopology) -> frozenset:
    """The points whose only cover is the maximal sieve."""
    _require_grotop(j)
    poset = j.poset
    out = []
    for i, u in enumerate(poset.points):
        if j.covers[i] == (poset.down_mask(u),):
            out.append(u)
    return frozenset(out)


# -- nucleus <-> covering families ------------------------------------------


def nucleus_to_grotop(n: Nucleus) -> GrothendieckTopology:
    """A sieve covers u when u lands in the sieve's closure under the nucleus."""
    _require_nucleus(n)
    algebra = n.algebra
    poset = algebra.poset
    families = {}
    for i, u in enumerate(poset.points):
        fam = []
        for s in sieves_on(poset, u):
            star = algebra.elements[n.table[algebra.index(s)]]
            if star.mask >> i & 1:
                fam.append(s)
        families[u] = fam
    return make_grotop(poset, families)


def grotop_to_nucleus(j: GrothendieckTopology, algebra: HeytingAlgebra | None = None) -> Nucleus:
    """Closure of S collects the points u with S-restricted-to-u covering u."""
    _require_grotop(j)
    poset = j.poset
    algebra = HeytingAlgebra(poset) if algebra is None else algebra
    table = []
    for s in algebra.elements:
        mask = 0
        for i, u in enumerate(poset.points):
            if s.mask & poset.down_mask_at(i) in j.covers_mask_set(i):
                mask |= 1 << i
        table.append(algebra.index(DownSet(poset, mask)))
    return Nucleus(algebra, tuple(table))


# -- nucleus -> classifier endomap ------------------------------------------


def nucleus_to_lt(n: Nucleus) -> LTTopology:
    """Truncate the nucleus to each point's sieve lattice."""
    _require_nucleus(n)
    algebra = n.algebra
    poset = algebra.poset
    tables = []
    for u in poset.points:
        down_u = poset.down_mask(u)
        sieves = sieves_on(poset, u)
        pos = {s.mask: k for k, s in enumerate(sieves)}
        row = []
        for s in sieves:
            star = algebra.elements[n.table[algebra.index(s)]]
            row.append(pos[star.mask & down_u])
        tables.append(tuple(row))
    return LTTopology(poset, tuple(tables))


# -- covering families <-> classifier endomap --------------------------------


def grotop_inclusion(j: GrothendieckTopology, om: OmegaObject) -> Inclusion:
    """The covering families as a sub-presheaf of the classifier."""
    poset = j.poset
    sets = {
        u: frozenset(
            s for s in om.sieves[u] if s.mask in j.covers_mask_set(poset.index(u))
        )
        for u in poset.points
    }
    return Inclusion(om.sub_from_sets(sets), om)


def grotop_to_lt(j: GrothendieckTopology, om: OmegaObject | None = None) -> LTTopology:
    """Classifying map of the inclusion of the covering families."""
    from .topology import lt_from_morphism

    _require_grotop(j)
    om = omega(j.poset) if om is None else om
    return lt_from_morphism(chi(grotop_inclusion(j, om), om))


def grotop_to_lt_direct(j: GrothendieckTopology) -> LTTopology:
    """Independent route: j_u(S) collects the points of ``down u`` where the
    restricted sieve covers."""
    _require_grotop(j)
    poset = j.poset
    tables = []
    for u in poset.points:
        down_u = poset.down_mask(u)
        sieves = sieves_on(poset, u)
        pos = {s.mask: k for k, s in enumerate(sieves)}
        row = []
        for s in sieves:
            mask = 0
            rest = down_u
            while rest:
                i = (rest & -rest).bit_length() - 1
                rest &= rest - 1
                if s.mask & poset.down_mask_at(i) in j.covers_mask_set(i):
                    mask |= 1 << i
            row.append(pos[mask])
        tables.append(tuple(row))
    return LTTopology(poset, tuple(tables))


def lt_to_grotop(lt: LTTopology) -> GrothendieckTopology:
    """The sieves sent to the maximal sieve by each component."""
    poset = lt.poset
    families = {}
    for i, u in enumerate(poset.points):
        sieves = sieves_on(poset, u)
        top = len(sieves) - 1
        families[u] = [s for k, s in enumerate(sieves) if lt.tables[i][k] == top]
    return make_grotop(poset, families)


# -- closure operator -> nucleus ---------------------------------------------


def closure_to_nucleus(
    clop: ClosureOperator,
    algebra: HeytingAlgebra | None = None,
    om: OmegaObject | None = None,
) -> Nucleus:
    """Close each subterminal inclusion and read off its truth-value."""
    from .presheaf import Inclusion as Inc, cst, subterminal_of, terminal

    poset = clop.poset
    algebra = HeytingAlgebra(poset) if algebra is None else algebra
    om = omega(poset) if om is None else om
    one = terminal(poset)
    table = []
    for s in algebra.elements:
        f = Inc(subterminal_of(poset, s), one)
        closed = closure_of(clop, f, om)
        table.append(algebra.index(cst(closed.dom)))
    return Nucleus(algebra, tuple(table))


# -- enumerators --------------------------------------------------------------


def _subsets(points: tuple) -> list[frozenset]:
    out = []
    for k in range(len(points) + 1):
        for combo in combinations(points, k):
            out.append(frozenset(combo))
    return out


def enumerate_nuclei(
    algebra: HeytingAlgebra, mode: str = "formula", point_cap: int = DEFAULT_ENUM_POINT_CAP
) -> list[Nucleus]:
    if mode == "formula":
        return [
            nucleus_from_point_set(algebra, y)
            for y in _subsets(algebra.poset.points)
        ]
    if mode == "oracle":
        tables = enumerate_nucleus_tables(algebra, point_cap)
        return [Nucleus(algebra, t) for t in tables]
    raise ValueError(f"unknown mode {mode!r}")


def enumerate_grotops(
    poset: Poset, mode: str = "formula", point_cap: int = DEFAULT_ENUM_POINT_CAP
) -> list[GrothendieckTopology]:
    if mode == "formula":
        return [point_set_to_grotop(poset, y) for y in _subsets(poset.points)]
    if mode != "oracle":
        raise ValueError(f"unknown mode {mode!r}")
    if len(poset.points) > point_cap:
        raise SizeCapExceeded(f"oracle enumeration capped at {point_cap} points")
    # assign per-point families minimal-points-first so stab and trans are
    # checkable as soon as a point is placed
    order = sorted(
        range(len(poset.points)), key=lambda i: poset.down_mask_at(i).bit_count()
    )
    sieve_masks = [
        [s.mask for s in sieves_on(poset, u)] for u in poset.points
    ]
    results: list[GrothendieckTopology] = []
    chosen: dict[int, frozenset] = {}

    def candidates(i: int) -> list[frozenset]:
        down_u = poset.down_mask_at(i)
        rest = [m for m in sieve_masks[i] if m != down_u]
        out = []
        for k in range(len(rest) + 1):
            for combo in combinations(rest, k):
                out.append(frozenset(combo) | {down_u})
        return out

    def consistent(i: int, fam: frozenset) -> bool:
        down_u = poset.down_mask_at(i)
        for m in fam:
            rest = down_u & ~(1 << i)
            while rest:
                k = (rest & -rest).bit_length() - 1
                rest &= rest - 1
                if m & poset.down_mask_at(k) not in chosen[k]:
                    return False
        for s in sieve_masks[i]:
            if s in fam:
                continue
            for cover in fam:
                ok = True
                rest = cover
                while rest:
                    k = (rest & -rest).bit_length() - 1
                    rest &= rest - 1
                    if k == i:
                        if s not in fam:
                            ok = False
                            break
                    elif s & poset.down_mask_at(k) not in chosen[k]:
                        ok = False
                        break
                if ok:
                    return False
        return True

    def walk(pos: int) -> None:
        if pos == len(order):
            families = {
                poset.points[i]: [DownSet(poset, m) for m in fam]
                for i, fam in chosen.items()
            }
            results.append(make_grotop(poset, families))
            return
        i = order[pos]
        for fam in candidates(i):
            if consistent(i, fam):
                chosen[i] = fam
                walk(pos + 1)
                del chosen[i]

    walk(0)
    results.sort(key=lambda g: g.covers)
    return results


def enumerate_lts(
    poset: Poset, mode: str = "formula", point_cap: int = DEFAULT_ENUM_POINT_CAP
) -> list[LTTopology]:
    if mode == "formula":
        algebra = HeytingAlgebra(poset)
        return [
            nucleus_to_lt(nucleus_from_point_set(algebra, y))
            for y in _subsets(poset.points)
        ]
    if mode != "oracle":
        raise ValueError(f"unknown mode {mode!r}")
    if len(poset.points) > point_cap:
        raise SizeCapExceeded(f"oracle enumeration capped at {point_cap} points")
    per_point: list[list[tuple[int, ...]]] = []
    sieve_lists = [sieves_on(poset, u) for u in poset.points]
    for u, sieves in zip(poset.points, sieve_lists):
        n = len(sieves)
        pos = {s.mask: k for k, s in enumerate(sieves)}
        up = [0] * n
        meet = [0] * (n * n)
        for a in range(n):
            for b in range(n):
                if sieves[a].mask | sieves[b].mask == sieves[b].mask:
                    up[a] |= 1 << b
                meet[a * n + b] = pos[sieves[a].mask & sieves[b].mask]
        per_point.append(
            enumerate_operator_tables(
                n, tuple(up), tuple(meet), inflationary=False, top_fixed=True
            )
        )
    arrows = sorted(poset.arrows, key=repr)
    arrow_info = []
    for (u, v) in arrows:
        iu, iv = poset.index(u), poset.index(v)
        down_v = poset.down_mask(v)
        pos_v = {s.mask: k for k, s in enumerate(sieve_lists[iv])}
        restr = tuple(pos_v[s.mask & down_v] for s in sieve_lists[iu])
        arrow_info.append((iu, iv, restr))
    results: list[LTTopology] = []
    tables: list[tuple[int, ...] | None] = [None] * len(poset.points)

    def natural_so_far(i: int) -> bool:
        for (iu, iv, restr) in arrow_info:
            if tables[iu] is None or tables[iv] is None:
                continue
            if iu != i and iv != i:
                continue
            tu, tv = tables[iu], tables[iv]
            for k in range(len(restr)):
                if restr[tu[k]] != tv[restr[k]]:
                    return False
        return True

    def walk(i: int) -> None:
        if i == len(poset.points):
            results.append(LTTopology(poset, tuple(tables)))  # type: ignore[arg-type]
            return
        for cand in per_point[i]:
            tables[i] = cand
            if natural_so_far(i):
                walk(i + 1)
        tables[i] = None

    walk(0)
    results.sort(key=lambda lt: lt.tables)
    return results


# -- quadruples ----------------------------------------------------------------


@dataclass(frozen=True)
class Quad:
    """A mutually coherent (point set, nucleus, covering families, endomap)."""

    y: frozenset
    nucleus: Nucleus
    grotop: GrothendieckTopology
    lt: LTTopology

    @property
    def poset(self) -> Poset:
        return self.nucleus.algebra.poset


def complete_quad(
    poset: Poset,
    y: Iterable | None = None,
    nucleus: Nucleus | None = None,
    grotop: GrothendieckTopology | None = None,
    lt: LTTopology | None = None,
    algebra: HeytingAlgebra | None = None,
) -> Quad:
    """Fill in the other three representations from any single one."""
    given = [x is not None for x in (y, nucleus, grotop, lt)]
    if sum(given) != 1:
        raise IncoherentQuad("provide exactly one of y, nucleus, grotop, lt")
    algebra = HeytingAlgebra(poset) if algebra is None else algebra
    if y is not None:
        kept = frozenset(y)
        _ = [poset.index(u) for u in kept]
    elif nucleus is not None:
        kept = point_set_of_nucleus(nucleus)
    elif grotop is not None:
        kept = grotop_to_point_set(grotop)
    else:
        assert lt is not None
        report = is_lt_topology(lt)
        if not report.ok:
            raise InvalidTopology(report.summary())
        kept = grotop_to_point_set(lt_to_grotop(lt))
    built = Quad(
        kept,
        nucleus_from_point_set(algebra, kept),
        point_set_to_grotop(poset, kept),
        nucleus_to_lt(nucleus_from_point_set(algebra, kept)),
    )
    for name, given_value, built_value in (
        ("nucleus", nucleus, built.nucleus),
        ("grotop", grotop, built.grotop),
        ("lt", lt, built.lt),
    ):
        if given_value is not None and given_value != built_value:
            raise IncoherentQuad(
                f"supplied {name} disagrees with the structure it induces"
            )
    verify_quad(built)
    return built


def verify_quad(q: Quad) -> None:
    """All pairwise conversions must map each member to the others."""
    checks = (
        point_set_of_nucleus(q.nucleus) == q.y,
        grotop_to_point_set(q.grotop) == q.y,
        nucleus_to_grotop(q.nucleus) == q.grotop,
        grotop_to_nucleus(q.grotop, q.nucleus.algebra) == q.nucleus,
        nucleus_to_lt(q.nucleus) == q.lt,
        lt_to_grotop(q.lt) == q.grotop,
        grotop_to_lt_direct(q.grotop) == q.lt,
        point_set_to_grotop(q.poset, q.y) == q.grotop,
        nucleus_from_point_set(q.nucleus.algebra, q.y) == q.nucleus,
    )
    if not all(checks):
        raise IncoherentQuad("pairwise conversions disagree")


# -- route-agreement and round-trip checkers -----------------------------------


@dataclass(frozen=True)
class InstanceVerdict:
    label: str
    agrees: bool
    detail: str = ""


@dataclass(frozen=True)
class RouteReport:
    name: str
    verdicts: tuple[InstanceVerdict, ...]

    @property
    def ok(self) -> bool:
        return all(v.agrees for v in self.verdicts)

    def counterexamples(self) -> tuple[InstanceVerdict, ...]:
        return tuple(v for v in self.verdicts if not v.agrees)

    def summary(self) -> str:
        n = len(self.verdicts)
        good = sum(v.agrees for v in self.verdicts)
        head = f"{self.name}: {good}/{n} agree"
        if self.ok:
            return head
        lines = [head]
        for v in self.counterexamples():
            lines.append(f"  counterexample at {v.label}: {v.detail}")
        return "\n".join(lines)


def _y_label(poset: Poset, y: frozenset) -> str:
    names = [str(u) for u in poset.points if u in y]
    return "y={" + ",".join(names) + "}"


def check_truncation_route(poset: Poset, algebra: HeytingAlgebra | None = None) -> RouteReport:
    """nucleus->endomap directly versus nucleus->covers->endomap."""
    algebra = HeytingAlgebra(poset) if algebra is None else algebra
    om = omega(poset)
    verdicts = []
    for y in _subsets(poset.points):
        n = nucleus_from_point_set(algebra, y)
        direct = nucleus_to_lt(n)
        via_covers = grotop_to_lt(nucleus_to_grotop(n), om)
        agrees = direct == via_covers
        detail = "" if agrees else f"direct={direct.tables} via={via_covers.tables}"
        verdicts.append(InstanceVerdict(_y_label(poset, y), agrees, detail))
    return RouteReport("truncation route", tuple(verdicts))


def check_closure_route(poset: Poset, algebra: HeytingAlgebra | None = None) -> RouteReport:
    """closure->nucleus directly versus closure->endomap->covers->nucleus."""
    from .topology import j_from_closure

    algebra = HeytingAlgebra(poset) if algebra is None else algebra
    om = omega(poset)
    verdicts = []
    for y in _subsets(poset.points):
        clop = ClosureOperator(nucleus_to_lt(nucleus_from_point_set(algebra, y)))
        direct = closure_to_nucleus(clop, algebra, om)
        via = grotop_to_nucleus(lt_to_grotop(j_from_closure(clop, om)), algebra)
        agrees = direct == via
        detail = "" if agrees else f"direct={direct.table} via={via.table}"
        verdicts.append(InstanceVerdict(_y_label(poset, y), agrees, detail))
    return RouteReport("closure route", tuple(verdicts))


def check_top_region_covers(poset: Poset, algebra: HeytingAlgebra | None = None) -> RouteReport:
    """Covers at u versus the class of the maximal sieve under the endomap."""
    algebra = HeytingAlgebra(poset) if algebra is None else algebra
    verdicts = []
    for y in _subsets(poset.points):
        q = complete_quad(poset, y=y, algebra=algebra)
        agrees = True
        detail = ""
        for i, u in enumerate(poset.points):
            sieves = sieves_on(poset, u)
            table = q.lt.tables[i]
            top = len(sieves) - 1
            top_class = frozenset(
                sieves[k].mask for k in range(len(sieves)) if table[k] == table[top]
            )
            if top_class != q.grotop.covers_mask_set(i):
                agrees = False
                detail = f"at point {u!r}"
                break
        verdicts.append(InstanceVerdict(_y_label(poset, y), agrees, detail))
    return RouteReport("topmost region covers", tuple(verdicts))


def check_roundtrips(poset: Poset, algebra: HeytingAlgebra | None = None) -> RouteReport:
    """Every conversion cycle through the representations is the identity."""
    from .topology import j_from_closure

    algebra = HeytingAlgebra(poset) if algebra is None else algebra
    om = omega(poset)
    verdicts = []
    for y in _subsets(poset.points):
        kept = frozenset(y)
        n = nucleus_from_point_set(algebra, kept)
        j = point_set_to_grotop(poset, kept)
        lt = nucleus_to_lt(n)
        clop = ClosureOperator(lt)
        cycles = (
            point_set_of_nucleus(n) == kept,
            grotop_to_point_set(j) == kept,
            grotop_to_nucleus(nucleus_to_grotop(n), algebra) == n,
            nucleus_to_grotop(grotop_to_nucleus(j, algebra)) == j,
            lt_to_grotop(grotop_to_lt(j, om)) == j,
            grotop_to_lt(lt_to_grotop(lt), om) == lt,
            j_from_closure(clop, om) == lt,
            closure_to_nucleus(clop, algebra, om) == n,
        )
        agrees = all(cycles)
        detail = "" if agrees else f"failed cycles: {[i for i, c in enumerate(cycles) if not c]}"
        verdicts.append(InstanceVerdict(_y_label(poset, kept), agrees, detail))
    return RouteReport("round trips", tuple(verdicts))
