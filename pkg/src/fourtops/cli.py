"""Command-line front door: text/JSON input, subcommands, batch sweeps.

Input grammar (hand-editable, piles name sieves on two-column graphs):

    poset { points: <id>+ ; arrows: (<id> > <id>)* }
    2cg p=<n> q=<n> [cross { (<id> > <id>)* }]
    y { <id>* }
    nucleus { (<pile> -> <pile> ;)* }
    j { (<point> : <pile> -> <pile> ;)* }
    grotop { (<point> : <pile>+ ;)* }

Inputs starting with '{' are parsed as the JSON schema this tool emits, so
every JSON output can be fed back in unchanged.  Exit codes: 0 all checks
pass, 1 counterexample found, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from dataclasses import dataclass
from itertools import combinations

from .convert import (
    check_closure_route,
    check_roundtrips,
    check_top_region_covers,
    check_truncation_route,
    complete_quad,
    enumerate_grotops,
    enumerate_lts,
    enumerate_nuclei,
    grotop_to_nucleus,
    lt_to_grotop,
)
from .classifier import chi as chi_map
from .classifier import omega
from .errors import FourtopsError, ParseError
from .heyting import HeytingAlgebra, Nucleus, is_nucleus
from .poset import DownSet, Poset, TwoColumnGraph, sieves_on
from .presheaf import Inclusion, subterminal_of, terminal
from .render import (
    render_grotop,
    render_lt,
    render_omega,
    render_quad,
    render_zha,
)
from .topology import (
    ClosureOperator,
    LTTopology,
    build_universe,
    check_closure_axioms,
    filter_check,
    is_grothendieck,
    is_lt_topology,
    make_grotop,
)

STRUCTURE_KINDS = ("y", "nucleus", "grotop", "lt")


@dataclass
class InputSpec:
    """Parsed poset (plus its two-column form when available) and an optional
    structure payload."""

    poset: Poset
    graph: TwoColumnGraph | None = None
    kind: str | None = None
    payload: object = None


# -- tokenizer / text grammar -------------------------------------------------

_TOKEN = re.compile(r"->|[{}:;>=]|[A-Za-z0-9_]+")


def _tokenize(text: str) -> list[tuple[str, int, int]]:
    tokens = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        pos = 0
        stripped = line.split("#", 1)[0]
        for m in _TOKEN.finditer(stripped):
            if stripped[pos : m.start()].strip():
                raise ParseError(
                    f"unexpected character {stripped[pos:m.start()].strip()[0]!r}",
                    lineno,
                    pos + 1,
                )
            tokens.append((m.group(), lineno, m.start() + 1))
            pos = m.end()
        if stripped[pos:].strip():
            raise ParseError(
                f"unexpected character {stripped[pos:].strip()[0]!r}", lineno, pos + 1
            )
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.at = 0

    def peek(self) -> str | None:
        return self.tokens[self.at][0] if self.at < len(self.tokens) else None

    def take(self, expected: str | None = None) -> str:
        if self.at >= len(self.tokens):
            raise ParseError(f"unexpected end of input, wanted {expected or 'a token'}")
        tok, line, col = self.tokens[self.at]
        if expected is not None and tok != expected:
            raise ParseError(f"expected {expected!r}, found {tok!r}", line, col)
        self.at += 1
        return tok

    def error(self, message: str) -> ParseError:
        if self.at < len(self.tokens):
            _, line, col = self.tokens[self.at]
            return ParseError(message, line, col)
        return ParseError(message)


def _parse_arrows(p: _Parser) -> set[tuple[str, str]]:
    arrows = set()
    while p.peek() not in (None, "}", ";"):
        src = p.take()
        p.take(">")
        dst = p.take()
        arrows.add((src, dst))
    return arrows


def _parse_pile(p: _Parser, graph: TwoColumnGraph) -> DownSet:
    tok = p.take()
    if not tok.isdigit() or len(tok) != 2:
        raise p.error(f"expected a two-digit pile code, found {tok!r}")
    return graph.pile(int(tok[0]), int(tok[1]))


def parse_input(text: str) -> InputSpec:
    """Parse the text grammar, or the JSON schema when text starts with '{'.

    Construction errors (cycles, bad piles, same-column cross arrows) surface
    as ParseError with the position of the form that caused them.
    """
    if text.lstrip().startswith("{"):
        return _parse_json_input(text)
    p = _Parser(text)
    try:
        return _parse_text(p)
    except ParseError:
        raise
    except FourtopsError as e:
        raise p.error(str(e)) from e


def _parse_text(p: _Parser) -> InputSpec:
    spec: InputSpec | None = None
    while p.peek() is not None:
        head = p.take()
        if head == "2cg":
            p.take("p")
            p.take("=")
            pp = int(p.take())
            p.take("q")
            p.take("=")
            qq = int(p.take())
            cross: set = set()
            if p.peek() == "cross":
                p.take("cross")
                p.take("{")
                cross = _parse_arrows(p)
                p.take("}")
            graph = TwoColumnGraph(pp, qq, frozenset(cross))
            spec = InputSpec(graph.poset(), graph)
        elif head == "poset":
            p.take("{")
            p.take("points")
            p.take(":")
            points = []
            while p.peek() not in (";",):
                points.append(p.take())
            p.take(";")
            p.take("arrows")
            p.take(":")
            arrows = _parse_arrows(p)
            p.take("}")
            spec = InputSpec(Poset(points, arrows))
        elif head in STRUCTURE_KINDS or head == "j":
            if spec is None:
                raise p.error("a poset or 2cg must come before the structure payload")
            kind = "lt" if head == "j" else head
            spec.kind = kind
            spec.payload = _parse_structure(p, kind, spec)
        else:
            raise ParseError(f"unknown form {head!r}")
    if spec is None:
        raise ParseError("empty input")
    _realize_structure(spec)
    return spec


def _parse_structure(p: _Parser, kind: str, spec: InputSpec):
    p.take("{")
    if kind == "y":
        members = []
        while p.peek() != "}":
            members.append(p.take())
        p.take("}")
        for u in members:
            spec.poset.index(u)
        return frozenset(members)
    if spec.graph is None:
        raise p.error(f"{kind} payloads use pile codes and need a 2cg input")
    graph = spec.graph
    if kind == "nucleus":
        entries = {}
        while p.peek() != "}":
            src = _parse_pile(p, graph)
            p.take("->")
            dst = _parse_pile(p, graph)
            entries[src] = dst
            if p.peek() == ";":
                p.take(";")
        p.take("}")
        return entries
    if kind == "lt":
        entries: dict = {}
        while p.peek() != "}":
            point = p.take()
            spec.poset.index(point)
            p.take(":")
            src = _parse_pile(p, graph)
            p.take("->")
            dst = _parse_pile(p, graph)
            entries.setdefault(point, {})[src] = dst
            if p.peek() == ";":
                p.take(";")
        p.take("}")
        return entries
    if kind == "grotop":
        families: dict = {}
        while p.peek() != "}":
            point = p.take()
            spec.poset.index(point)
            p.take(":")
            fam = []
            while p.peek() not in (";", "}"):
                fam.append(_parse_pile(p, graph))
            families.setdefault(point, []).extend(fam)
            if p.peek() == ";":
                p.take(";")
        p.take("}")
        return families
    raise p.error(f"unknown structure kind {kind!r}")


def _realize_structure(spec: InputSpec) -> None:
    """Turn raw payload dictionaries into validated structure objects."""
    if spec.kind is None:
        return
    poset = spec.poset
    if spec.kind == "y":
        return
    if spec.kind == "nucleus":
        algebra = HeytingAlgebra(poset)
        entries = spec.payload
        if set(map(lambda s: s.mask, entries)) != {s.mask for s in algebra.elements}:
            raise ParseError("nucleus table must be total on the down-set algebra")
        table = tuple(
            algebra.index(entries[s]) for s in algebra.elements
        )
        spec.payload = Nucleus(algebra, table)
        return
    if spec.kind == "lt":
        entries = spec.payload
        tables = []
        for u in poset.points:
            sieves = sieves_on(poset, u)
            row = entries.get(u, {})
            by_mask = {s.mask: t for s, t in row.items()}
            if set(by_mask) != {s.mask for s in sieves}:
                raise ParseError(f"j table at {u!r} must be total on the sieves of {u!r}")
            pos = {s.mask: k for k, s in enumerate(sieves)}
            for s, t in row.items():
                if t.mask not in pos:
                    raise ParseError(f"value {t!r} is not a sieve on {u!r}")
            tables.append(tuple(pos[by_mask[s.mask].mask] for s in sieves))
        spec.payload = LTTopology(poset, tuple(tables))
        return
    if spec.kind == "grotop":
        spec.payload = make_grotop(poset, spec.payload)
        return


# -- JSON schema ---------------------------------------------------------------


def _downset_json(ds: DownSet) -> list[str]:
    return sorted(str(u) for u in ds.members)


def _names_json(poset: Poset, mask: int) -> list[str]:
    return sorted(str(u) for u in poset.names_of(mask))


def poset_json(spec: InputSpec) -> dict:
    if spec.graph is not None:
        return {
            "kind": "2cg",
            "p": spec.graph.p,
            "q": spec.graph.q,
            "cross": sorted([u, v] for (u, v) in spec.graph.cross),
        }
    return {
        "kind": "poset",
        "points": [str(u) for u in spec.poset.points],
        "arrows": sorted([str(u), str(v)] for (u, v) in spec.poset.arrows),
    }


def structure_json(poset: Poset, kind: str, value) -> dict:
    if kind == "y":
        return {"kind": "y", "members": sorted(str(u) for u in value)}
    if kind == "nucleus":
        table = [
            [_downset_json(s), _downset_json(value.apply(s))]
            for s in value.algebra.elements
        ]
        return {"kind": "nucleus", "table": sorted(table)}
    if kind == "grotop":
        covers = []
        for i, u in enumerate(poset.points):
            fams = sorted(_names_json(poset, m) for m in value.covers[i])
            covers.append([str(u), fams])
        return {"kind": "grotop", "covers": sorted(covers)}
    if kind == "lt":
        table = []
        for i, u in enumerate(poset.points):
            sieves = sieves_on(poset, u)
            pairs = sorted(
                [_downset_json(s), _downset_json(sieves[value.tables[i][k]])]
                for k, s in enumerate(sieves)
            )
            table.append([str(u), pairs])
        return {"kind": "lt", "table": sorted(table)}
    raise ValueError(f"unknown structure kind {kind!r}")


def _parse_json_input(text: str) -> InputSpec:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"bad JSON: {e}") from None
    pj = data.get("poset")
    if not isinstance(pj, dict):
        raise ParseError("JSON input needs a 'poset' object")
    if pj.get("kind") == "2cg":
        graph = TwoColumnGraph(
            int(pj["p"]), int(pj["q"]), frozenset(tuple(a) for a in pj.get("cross", []))
        )
        spec = InputSpec(graph.poset(), graph)
    elif pj.get("kind") == "poset":
        spec = InputSpec(Poset(pj["points"], {tuple(a) for a in pj.get("arrows", [])}))
    else:
        raise ParseError("poset.kind must be '2cg' or 'poset'")
    sj = data.get("structure")
    if sj is None:
        return spec
    kind = sj.get("kind")
    poset = spec.poset
    if kind == "y":
        spec.kind = "y"
        spec.payload = frozenset(sj["members"])
        for u in spec.payload:
            poset.index(u)
    elif kind == "nucleus":
        algebra = HeytingAlgebra(poset)
        table_pairs = {
            poset.mask_of(src): poset.mask_of(dst) for src, dst in sj["table"]
        }
        if set(table_pairs) != {s.mask for s in algebra.elements}:
            raise ParseError("nucleus table must be total on the down-set algebra")
        table = tuple(
            algebra.index(DownSet(poset, table_pairs[s.mask]))
            for s in algebra.elements
        )
        spec.kind, spec.payload = "nucleus", Nucleus(algebra, table)
    elif kind == "grotop":
        families = {}
        for name, fams in sj["covers"]:
            poset.index(name)
            families[name] = [DownSet(poset, poset.mask_of(f)) for f in fams]
        spec.kind, spec.payload = "grotop", make_grotop(poset, families)
    elif kind == "lt":
        tables = []
        rows = dict((name, pairs) for name, pairs in sj["table"])
        for u in poset.points:
            sieves = sieves_on(poset, u)
            pos = {s.mask: k for k, s in enumerate(sieves)}
            row = {
                poset.mask_of(src): poset.mask_of(dst)
                for src, dst in rows.get(str(u), [])
            }
            if set(row) != set(pos):
                raise ParseError(f"j table at {u!r} must be total on the sieves of {u!r}")
            tables.append(tuple(pos[row[s.mask]] for s in sieves))
        spec.kind, spec.payload = "lt", LTTopology(poset, tuple(tables))
    else:
        raise ParseError("structure.kind must be y, nucleus, grotop, or lt")
    return spec


def emit_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


# -- structure conversion helpers ----------------------------------------------


def convert_structure(spec: InputSpec, target: str):
    poset = spec.poset
    algebra = HeytingAlgebra(poset)
    kind, value = spec.kind, spec.payload
    if kind is None:
        raise ParseError("this command needs a structure payload in the input")
    quad = complete_quad(poset, algebra=algebra, **{kind: value})
    return {
        "y": quad.y,
        "nucleus": quad.nucleus,
        "grotop": quad.grotop,
        "lt": quad.lt,
    }[target]


def _pile_str(graph: TwoColumnGraph, mask: int) -> str:
    a, b = graph.code_of_mask(mask)
    return f"{a}{b}"


def _downset_str(spec: InputSpec, ds: DownSet) -> str:
    if spec.graph is not None:
        return _pile_str(spec.graph, ds.mask)
    return "{" + ",".join(str(u) for u in ds.members) + "}"


def structure_text(spec: InputSpec, kind: str, value) -> str:
    poset = spec.poset
    if kind == "y":
        return "y { " + " ".join(str(u) for u in poset.points if u in value) + " }"
    if kind == "nucleus":
        rows = "; ".join(
            f"{_downset_str(spec, s)} -> {_downset_str(spec, value.apply(s))}"
            for s in value.algebra.elements
        )
        return "nucleus { " + rows + " }"
    if kind == "grotop":
        rows = []
        for i, u in enumerate(poset.points):
            fams = " ".join(
                _downset_str(spec, DownSet(poset, m)) for m in value.covers[i]
            )
            rows.append(f"{u}: {fams}")
        return "grotop { " + "; ".join(rows) + " }"
    if kind == "lt":
        rows = []
        for i, u in enumerate(poset.points):
            sieves = sieves_on(poset, u)
            for k, s in enumerate(sieves):
                t = sieves[value.tables[i][k]]
                rows.append(f"{u}: {_downset_str(spec, s)} -> {_downset_str(spec, t)}")
        return "j { " + "; ".join(rows) + " }"
    raise ValueError(kind)


# -- subcommands -----------------------------------------------------------------


def _read_input(args) -> InputSpec:
    if getattr(args, "text", None):
        return parse_input(args.text)
    if getattr(args, "input", None) and args.input != "-":
        with open(args.input, "r", encoding="utf-8") as fh:
            return parse_input(fh.read())
    return parse_input(sys.stdin.read())


def cmd_show(args, out) -> int:
    spec = _read_input(args)
    poset = spec.poset
    if args.what == "h":
        algebra = HeytingAlgebra(poset)
        if args.render:
            if spec.graph is None:
                raise ParseError("--render needs a 2cg input")
            out.write(render_zha(spec.graph) + "\n")
        elif args.json:
            out.write(
                emit_json(
                    {
                        "poset": poset_json(spec),
                        "result": {"h": [_downset_json(s) for s in algebra.elements]},
                    }
                )
            )
        else:
            out.write(" ".join(_downset_str(spec, s) for s in algebra.elements) + "\n")
        return 0
    if args.what == "omega":
        if args.render:
            if spec.graph is None:
                raise ParseError("--render needs a 2cg input")
            out.write(render_omega(spec.graph) + "\n")
            return 0
        rows = [
            (str(u), [_downset_json(s) for s in sieves_on(poset, u)])
            for u in poset.points
        ]
        if args.json:
            out.write(
                emit_json(
                    {
                        "poset": poset_json(spec),
                        "result": {"omega": [[u, v] for u, v in sorted(rows)]},
                    }
                )
            )
        else:
            for u in poset.points:
                line = " ".join(_downset_str(spec, s) for s in sieves_on(poset, u))
                out.write(f"{u}: {line}\n")
        return 0
    if args.what == "true":
        rows = [
            (str(u), _downset_json(DownSet(poset, poset.down_mask(u))))
            for u in poset.points
        ]
        if args.json:
            out.write(
                emit_json(
                    {
                        "poset": poset_json(spec),
                        "result": {"true": [[u, v] for u, v in sorted(rows)]},
                    }
                )
            )
        else:
            for u in poset.points:
                ds = DownSet(poset, poset.down_mask(u))
                out.write(f"{u}: {_downset_str(spec, ds)}\n")
        return 0
    raise ParseError(f"unknown show target {args.what!r}")


def cmd_chi(args, out) -> int:
    spec = _read_input(args)
    if spec.kind != "y":
        raise ParseError("chi needs a y payload naming a down-closed subterminal")
    poset = spec.poset
    sub = DownSet(poset, poset.mask_of(spec.payload))
    one = terminal(poset)
    f = Inclusion(subterminal_of(poset, sub), one)
    g = chi_map(f)
    rows = []
    for u in poset.points:
        rows.append((str(u), _downset_json(g.comp[u]["*"])))
    if args.json:
        out.write(
            emit_json(
                {
                    "poset": poset_json(spec),
                    "result": {"chi": [[u, v] for u, v in sorted(rows)]},
                }
            )
        )
    else:
        for u in poset.points:
            out.write(f"{u}: {_downset_str(spec, g.comp[u]['*'])}\n")
    return 0


def cmd_convert(args, out) -> int:
    spec = _read_input(args)
    if spec.kind != args.source:
        raise ParseError(
            f"input structure is {spec.kind!r} but --from says {args.source!r}"
        )
    value = convert_structure(spec, args.target)
    if args.json:
        out.write(
            emit_json(
                {
                    "poset": poset_json(spec),
                    "structure": structure_json(spec.poset, args.target, value),
                }
            )
        )
    else:
        out.write(structure_text(spec, args.target, value) + "\n")
    return 0


def cmd_fouruple(args, out) -> int:
    spec = _read_input(args)
    if spec.kind != args.source:
        raise ParseError(
            f"input structure is {spec.kind!r} but --from says {args.source!r}"
        )
    algebra = HeytingAlgebra(spec.poset)
    quad = complete_quad(
        spec.poset, algebra=algebra, **{spec.kind: spec.payload}
    )
    if args.render:
        if spec.graph is None:
            raise ParseError("--render needs a 2cg input")
        out.write(render_quad(spec.graph, quad) + "\n")
        return 0
    if args.json:
        out.write(
            emit_json(
                {
                    "poset": poset_json(spec),
                    "result": {
                        "y": structure_json(spec.poset, "y", quad.y),
                        "nucleus": structure_json(spec.poset, "nucleus", quad.nucleus),
                        "grotop": structure_json(spec.poset, "grotop", quad.grotop),
                        "lt": structure_json(spec.poset, "lt", quad.lt),
                    },
                }
            )
        )
    else:
        for kind, value in (
            ("y", quad.y),
            ("nucleus", quad.nucleus),
            ("grotop", quad.grotop),
            ("lt", quad.lt),
        ):
            out.write(structure_text(spec, kind, value) + "\n")
    return 0


def cmd_enumerate(args, out) -> int:
    spec = _read_input(args)
    poset = spec.poset
    mode = args.mode
    if args.family == "nuclei":
        items = enumerate_nuclei(HeytingAlgebra(poset), mode, point_cap=args.cap)
        kind = "nucleus"
    elif args.family == "grotops":
        items = enumerate_grotops(poset, mode, point_cap=args.cap)
        kind = "grotop"
    else:
        items = enumerate_lts(poset, mode, point_cap=args.cap)
        kind = "lt"
    if args.json:
        out.write(
            emit_json(
                {
                    "poset": poset_json(spec),
                    "result": {
                        "count": len(items),
                        "items": sorted(
                            (structure_json(poset, kind, v) for v in items),
                            key=lambda d: json.dumps(d, sort_keys=True),
                        ),
                    },
                }
            )
        )
    else:
        out.write(f"{len(items)}\n")
        for v in items:
            out.write(structure_text(spec, kind, v) + "\n")
    return 0


def _axiom_results(poset: Poset, cap: int) -> tuple[list, bool]:
    algebra = HeytingAlgebra(poset)
    om = omega(poset)
    universe = build_universe(poset, om, pair_cap=cap)
    results = []
    all_ok = True
    for i, lt in enumerate(enumerate_lts(poset, "formula")):
        entry = {"index": i}
        lt_report = is_lt_topology(lt, om)
        entry["lt_axioms"] = lt_report.ok
        clop = ClosureOperator(lt)
        closure_report = check_closure_axioms(clop, universe, om)
        entry["closure_axioms"] = closure_report.ok
        grotop = lt_to_grotop(lt)
        g_report = is_grothendieck(grotop)
        entry["covering_axioms"] = g_report.ok
        f_report = filter_check(grotop)
        entry["filter_laws"] = f_report.report.ok
        entry["filter_generators"] = [
            _downset_json(g) for g in f_report.generators
        ]
        nucleus = grotop_to_nucleus(grotop, algebra)
        entry["nucleus_axioms"] = is_nucleus(algebra, nucleus.table).ok
        results.append(entry)
        all_ok = all_ok and all(
            v for k, v in entry.items() if isinstance(v, bool)
        )
    return results, all_ok


def cmd_check(args, out) -> int:
    spec = _read_input(args)
    poset = spec.poset
    if args.what == "axioms":
        results, ok = _axiom_results(poset, args.cap)
        if args.json:
            out.write(
                emit_json(
                    {
                        "poset": poset_json(spec),
                        "result": {"instances": results, "ok": ok},
                    }
                )
            )
        else:
            out.write(
                f"{sum(all(v for k, v in e.items() if isinstance(v, bool)) for e in results)}"
                f"/{len(results)} structures pass all axiom suites\n"
            )
        return 0 if ok else 1
    reports = {
        "conjectures": (check_truncation_route, check_closure_route),
        "topmost": (check_top_region_covers,),
        "roundtrips": (check_roundtrips,),
    }[args.what]
    outputs = [fn(poset) for fn in reports]
    ok = all(r.ok for r in outputs)
    if args.json:
        out.write(
            emit_json(
                {
                    "poset": poset_json(spec),
                    "result": {
                        "reports": [
                            {
                                "name": r.name,
                                "ok": r.ok,
                                "agree": sum(v.agrees for v in r.verdicts),
                                "total": len(r.verdicts),
                                "counterexamples": [
                                    {"label": v.label, "detail": v.detail}
                                    for v in r.counterexamples()
                                ],
                            }
                            for r in outputs
                        ],
                        "ok": ok,
                    },
                }
            )
        )
    else:
        for r in outputs:
            out.write(r.summary() + "\n")
    return 0 if ok else 1


def cmd_render(args, out) -> int:
    spec = _read_input(args)
    if spec.graph is None:
        raise ParseError("render needs a 2cg input")
    graph = spec.graph
    if args.what == "zha":
        out.write(render_zha(graph) + "\n")
        return 0
    if args.what == "omega":
        out.write(render_omega(graph) + "\n")
        return 0
    if spec.kind is None:
        raise ParseError(f"render {args.what} needs a structure payload")
    algebra = HeytingAlgebra(spec.poset)
    quad = complete_quad(
        spec.poset, algebra=algebra, **{spec.kind: spec.payload}
    )
    if args.what == "j":
        out.write(render_lt(graph, quad.lt) + "\n")
    elif args.what == "grotop":
        out.write(render_grotop(graph, quad.grotop) + "\n")
    elif args.what == "fouruple":
        out.write(render_quad(graph, quad) + "\n")
    else:
        raise ParseError(f"unknown render target {args.what!r}")
    return 0


def cross_configurations(p: int, q: int) -> list[frozenset]:
    """Every acyclic cross-arrow set for the given column heights,
    deterministically ordered."""
    lefts = [f"{i}_" for i in range(1, p + 1)]
    rights = [f"_{j}" for j in range(1, q + 1)]
    candidates = sorted(
        [(l, r) for l in lefts for r in rights]
        + [(r, l) for l in lefts for r in rights]
    )
    configs = []
    for k in range(len(candidates) + 1):
        for combo in combinations(candidates, k):
            try:
                TwoColumnGraph(p, q, frozenset(combo)).poset()
            except FourtopsError:
                continue
            configs.append(frozenset(combo))
    return configs


def sweep_instance(graph: TwoColumnGraph, cap: int) -> dict:
    """All acceptance-style checks for one two-column graph."""
    poset = graph.poset()
    algebra = HeytingAlgebra(poset)
    expected = 2 ** len(poset.points)
    nf = enumerate_nuclei(algebra, "formula")
    no = enumerate_nuclei(algebra, "oracle", point_cap=cap)
    gf = enumerate_grotops(poset, "formula")
    go = enumerate_grotops(poset, "oracle", point_cap=cap)
    lf = enumerate_lts(poset, "formula")
    lo = enumerate_lts(poset, "oracle", point_cap=cap)
    census = {
        "nuclei": len(no) == expected and set(nf) == set(no),
        "grotops": len(go) == expected and set(gf) == set(go),
        "lts": len(lo) == expected and set(lf) == set(lo),
    }
    reports = {
        "roundtrips": check_roundtrips(poset, algebra).ok,
        "truncation_route": check_truncation_route(poset, algebra).ok,
        "closure_route": check_closure_route(poset, algebra).ok,
        "topmost": check_top_region_covers(poset, algebra).ok,
    }
    verdict = all(census.values()) and all(reports.values())
    return {
        "census": census,
        "checks": reports,
        "expected_count": expected,
        "ok": verdict,
    }


def cmd_sweep(args, out) -> int:
    instances = []
    ok = True
    cache: dict = {}
    for p in range(args.pmax + 1):
        for q in range(args.qmax + 1):
            for cross in cross_configurations(p, q):
                graph = TwoColumnGraph(p, q, cross)
                poset = graph.poset()
                key = (poset.points, tuple(poset._down))
                result = cache.get(key)
                if result is None:
                    result = sweep_instance(graph, args.cap)
                    cache[key] = result
                label = f"p={p} q={q} cross={{{' '.join(f'{u}>{v}' for u, v in sorted(cross))}}}"
                instances.append(
                    {
                        "p": p,
                        "q": q,
                        "cross": sorted([u, v] for (u, v) in cross),
                        **result,
                    }
                )
                ok = ok and result["ok"]
                if not args.json:
                    out.write(f"{label}: {'ok' if result['ok'] else 'FAIL'}\n")
    if args.json:
        out.write(emit_json({"result": {"instances": instances, "ok": ok}}))
    else:
        out.write(
            f"{sum(1 for e in instances if e['ok'])}/{len(instances)} instances ok\n"
        )
    return 0 if ok else 1


# -- entry point -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="fourtops",
        description="compute, convert, render, and check topologies on "
        "presheaves over finite posets",
    )
    sub = top.add_subparsers(dest="command", required=True)

    def add_common(p, render=False, cap=5000):
        p.add_argument("-i", "--input", help="input file ('-' for stdin)")
        p.add_argument("-t", "--text", help="inline input text")
        p.add_argument("--json", action="store_true", help="structured output")
        p.add_argument("--cap", type=int, default=cap, help="work cap")
        if render:
            p.add_argument("--render", action="store_true", help="panel output")

    p_show = sub.add_parser("show", help="display h, omega, or the true map")
    p_show.add_argument("what", choices=["h", "omega", "true"])
    add_common(p_show, render=True)

    p_chi = sub.add_parser("chi", help="classifying map of a subterminal (y payload)")
    add_common(p_chi)

    p_conv = sub.add_parser("convert", help="convert between representations")
    p_conv.add_argument("--from", dest="source", choices=STRUCTURE_KINDS, required=True)
    p_conv.add_argument("--to", dest="target", choices=STRUCTURE_KINDS, required=True)
    add_common(p_conv)

    p_four = sub.add_parser("fouruple", help="complete all four representations")
    p_four.add_argument("--from", dest="source", choices=STRUCTURE_KINDS, required=True)
    add_common(p_four, render=True)

    p_enum = sub.add_parser("enumerate", help="enumerate structures on the poset")
    p_enum.add_argument("family", choices=["nuclei", "grotops", "lttops"])
    p_enum.add_argument(
        "--mode", choices=["formula", "oracle"], default="formula"
    )
    add_common(p_enum, cap=6)

    p_check = sub.add_parser("check", help="run axiom or agreement checkers")
    p_check.add_argument(
        "what", choices=["axioms", "conjectures", "topmost", "roundtrips"]
    )
    add_common(p_check)

    p_render = sub.add_parser("render", help="text renderings")
    p_render.add_argument(
        "what", choices=["zha", "omega", "j", "grotop", "fouruple"]
    )
    add_common(p_render)

    p_sweep = sub.add_parser("sweep", help="batch checks over a 2cg family")
    p_sweep.add_argument("--pmax", type=int, default=2)
    p_sweep.add_argument("--qmax", type=int, default=2)
    p_sweep.add_argument("--json", action="store_true")
    p_sweep.add_argument("--cap", type=int, default=6)
    return top


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code not in (0, None) else 0
    handlers = {
        "show": cmd_show,
        "chi": cmd_chi,
        "convert": cmd_convert,
        "fouruple": cmd_fouruple,
        "enumerate": cmd_enumerate,
        "check": cmd_check,
        "render": cmd_render,
        "sweep": cmd_sweep,
    }
    try:
        return handlers[args.command](args, out)
    except ParseError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except FourtopsError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
