"""Finite strict 2-categories and 2-groupoids given by explicit tables.

A Fin2Cat stores objects, arrows and 2-cells as strings, with source and
target tables, a composition table for arrows, horizontal and vertical
composition tables for 2-cells (defined exactly on the composable pairs) and
unit tables.  A Fin2Groupoid adds a vertical inversion table; quasi-inverses
of arrows are found by search.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Mapping

from .groupoid import FinGroupoid
from .reports import Violation


@dataclass
class Fin2Cat:
    objects: tuple[str, ...]
    arrows: dict[str, tuple[str, str]]  # arrow -> (src obj, tgt obj)
    cells: dict[str, tuple[str, str]]  # cell -> (src arrow, tgt arrow)
    comp1: dict[tuple[str, str], str]  # (g, f), src(g) = tgt(f) -> g . f
    hcomp: dict[tuple[str, str], str]  # horizontally composable cell pairs
    vcomp: dict[tuple[str, str], str]  # (s, r) with tgt(r) = src(s)
    unit_arrow: dict[str, str]  # object -> identity arrow
    unit_cell: dict[str, str]  # arrow -> identity cell

    def arrow_src(self, f: str) -> str:
        return self.arrows[f][0]

    def arrow_tgt(self, f: str) -> str:
        return self.arrows[f][1]

    def cell_src(self, r: str) -> str:
        return self.cells[r][0]

    def cell_tgt(self, r: str) -> str:
        return self.cells[r][1]

    def compose(self, g: str, f: str) -> str:
        if self.arrow_src(g) != self.arrow_tgt(f):
            raise ValueError(f"arrows not composable: {g} . {f}")
        return self.comp1[(g, f)]

    def vcompose(self, s: str, r: str) -> str:
        """r first, then s."""
        if self.cell_tgt(r) != self.cell_src(s):
            raise ValueError(f"cells not vertically composable: {s} * {r}")
        return self.vcomp[(s, r)]

    def hcompose(self, s: str, r: str) -> str:
        if self.arrow_src(self.cell_src(s)) != self.arrow_tgt(self.cell_src(r)):
            raise ValueError(f"cells not horizontally composable: {s} o {r}")
        return self.hcomp[(s, r)]

    def cells_between(self, f: str, g: str) -> list[str]:
        return [r for r, (a, b) in self.cells.items() if a == f and b == g]

    def cells_between_any(self, f: str) -> list[str]:
        return [r for r, (a, _) in self.cells.items() if a == f]

    def arrows_between(self, x: str, y: str) -> list[str]:
        return [f for f, (a, b) in self.arrows.items() if a == x and b == y]

    def composable_arrow_pairs(self):
        for g, f in product(self.arrows, self.arrows):
            if self.arrow_src(g) == self.arrow_tgt(f):
                yield g, f

    def vcomposable_cell_pairs(self):
        for s, r in product(self.cells, self.cells):
            if self.cell_tgt(r) == self.cell_src(s):
                yield s, r

    def hcomposable_cell_pairs(self):
        for s, r in product(self.cells, self.cells):
            if self.arrow_src(self.cell_src(s)) == self.arrow_tgt(self.cell_src(r)):
                yield s, r


@dataclass
class Fin2Groupoid(Fin2Cat):
    inv2: dict[str, str] = field(default_factory=dict)  # vertical inverses


def verify_2category(c: Fin2Cat) -> list[Violation]:
    out: list[Violation] = []
    for f, (s, t) in c.arrows.items():
        if s not in c.objects or t not in c.objects:
            out.append(Violation("endpoint", (f,)))
    for r, (f, g) in c.cells.items():
        if f not in c.arrows or g not in c.arrows:
            out.append(Violation("endpoint", (r,)))
        elif c.arrows[f] != c.arrows[g]:
            out.append(Violation("endpoint", (r,), "2-cell between non-parallel arrows"))
    if out:
        return out
    for x in c.objects:
        u = c.unit_arrow.get(x)
        if u is None or c.arrows.get(u) != (x, x):
            out.append(Violation("unit law", (x,)))
    for f in c.arrows:
        u = c.unit_cell.get(f)
        if u is None or c.cells.get(u) != (f, f):
            out.append(Violation("unit law", (f,)))
    if out:
        return out

    # totality of the tables on composable pairs
    for g, f in c.composable_arrow_pairs():
        r = c.comp1.get((g, f))
        if r is None or c.arrows.get(r) != (c.arrow_src(f), c.arrow_tgt(g)):
            out.append(Violation("composability", (g, f)))
    for s, r in c.vcomposable_cell_pairs():
        v = c.vcomp.get((s, r))
        if v is None or c.cells.get(v) != (c.cell_src(r), c.cell_tgt(s)):
            out.append(Violation("composability", (s, r), "vertical"))
    for s, r in c.hcomposable_cell_pairs():
        h = c.hcomp.get((s, r))
        expect = (
            c.comp1[(c.cell_src(s), c.cell_src(r))],
            c.comp1[(c.cell_tgt(s), c.cell_tgt(r))],
        )
        if h is None or c.cells.get(h) != expect:
            out.append(Violation("composability", (s, r), "horizontal"))
    if out:
        return out

    for g, f in c.composable_arrow_pairs():
        gf = c.compose(g, f)
        if c.compose(gf, c.unit_arrow[c.arrow_src(f)]) != gf:
            out.append(Violation("unit law", (gf,)))
    for f in c.arrows:
        if (
            c.compose(f, c.unit_arrow[c.arrow_src(f)]) != f
            or c.compose(c.unit_arrow[c.arrow_tgt(f)], f) != f
        ):
            out.append(Violation("unit law", (f,)))
    for h, g in c.composable_arrow_pairs():
        for f in c.arrows:
            if c.arrow_src(g) == c.arrow_tgt(f):
                if c.compose(c.compose(h, g), f) != c.compose(h, c.compose(g, f)):
                    out.append(Violation("associativity", (h, g, f)))
    for r in c.cells:
        f, g = c.cells[r]
        if c.vcompose(r, c.unit_cell[f]) != r or c.vcompose(c.unit_cell[g], r) != r:
            out.append(Violation("unit law", (r,), "vertical"))
    for t, s in c.vcomposable_cell_pairs():
        for r in c.cells:
            if c.cell_tgt(r) == c.cell_src(s):
                if c.vcompose(c.vcompose(t, s), r) != c.vcompose(t, c.vcompose(s, r)):
                    out.append(Violation("associativity", (t, s, r), "vertical"))
    for s, r in c.hcomposable_cell_pairs():
        for q in c.cells:
            if c.arrow_src(c.cell_src(r)) == c.arrow_tgt(c.cell_src(q)):
                if c.hcompose(c.hcompose(s, r), q) != c.hcompose(s, c.hcompose(r, q)):
                    out.append(Violation("associativity", (s, r, q), "horizontal"))
    for f in c.arrows:
        u_src = c.unit_cell[c.unit_arrow[c.arrow_src(f)]]
        u_tgt = c.unit_cell[c.unit_arrow[c.arrow_tgt(f)]]
        for r in c.cells_between_any(f):
            if c.hcompose(r, u_src) != r or c.hcompose(u_tgt, r) != r:
                out.append(Violation("unit law", (r,), "horizontal"))
    # identity cells are multiplicative for horizontal composition
    for g, f in c.composable_arrow_pairs():
        if c.hcompose(c.unit_cell[g], c.unit_cell[f]) != c.unit_cell[c.compose(g, f)]:
            out.append(Violation("unit law", (g, f), "horizontal composite of identity cells"))
    # interchange
    for sp, s in c.vcomposable_cell_pairs():
        for rp, r in c.vcomposable_cell_pairs():
            if c.arrow_src(c.cell_src(s)) == c.arrow_tgt(c.cell_src(r)):
                lhs = c.hcompose(c.vcompose(sp, s), c.vcompose(rp, r))
                rhs = c.vcompose(c.hcompose(sp, rp), c.hcompose(s, r))
                if lhs != rhs:
                    out.append(Violation("interchange", (sp, s, rp, r)))
    return out


def find_quasi_inverse(c: Fin2Cat, f: str) -> tuple[str, str, str] | None:
    """Search for (g, eta, eps) with eta: id_src => g.f and eps: id_tgt => f.g."""
    x, y = c.arrows[f]
    for g in c.arrows_between(y, x):
        etas = c.cells_between(c.unit_arrow[x], c.comp1[(g, f)])
        epss = c.cells_between(c.unit_arrow[y], c.comp1[(f, g)])
        if etas and epss:
            return g, sorted(etas)[0], sorted(epss)[0]
    return None


def verify_2groupoid(g: Fin2Groupoid) -> list[Violation]:
    out = verify_2category(g)
    if out:
        return out
    for r in g.cells:
        s = g.inv2.get(r)
        f_src, f_tgt = g.cells[r]
        if s is None or g.cells.get(s) != (f_tgt, f_src):
            out.append(Violation("inverse law", (r,), "vertical inverse missing"))
        elif (
            g.vcompose(s, r) != g.unit_cell[f_src]
            or g.vcompose(r, s) != g.unit_cell[f_tgt]
        ):
            out.append(Violation("inverse law", (r,), "2-cell not invertible"))
    for f in g.arrows:
        if find_quasi_inverse(g, f) is None:
            out.append(Violation("quasi-inverse", (f,), "arrow not invertible up to a 2-cell"))
    return out


def delooping(
    elements: Iterable[str], mul: Mapping[tuple[str, str], str], unit: str
) -> Fin2Groupoid:
    """One object, one arrow, 2-cells an abelian group under both compositions.

    Raises when the group is not abelian: horizontal and vertical composition
    coincide on a single arrow, so interchange forces commutativity.
    """
    els = tuple(elements)
    for a, b in product(els, els):
        if mul[(a, b)] != mul[(b, a)]:
            raise ValueError("interchange fails: the group is not abelian")
    inv = {a: next(b for b in els if mul[(a, b)] == unit) for a in els}
    table = dict(mul)
    return Fin2Groupoid(
        objects=("*",),
        arrows={"id": ("*", "*")},
        cells={a: ("id", "id") for a in els},
        comp1={("id", "id"): "id"},
        hcomp=table,
        vcomp=dict(table),
        unit_arrow={"*": "id"},
        unit_cell={"id": unit},
        inv2=inv,
    )


def monoid_delooping(
    elements: Iterable[str], mul: Mapping[tuple[str, str], str], unit: str
) -> Fin2Cat:
    """Like delooping but for a commutative monoid; 2-cells need not invert."""
    els = tuple(elements)
    for a, b in product(els, els):
        if mul[(a, b)] != mul[(b, a)]:
            raise ValueError("interchange fails: the monoid is not commutative")
    table = dict(mul)
    return Fin2Cat(
        objects=("*",),
        arrows={"id": ("*", "*")},
        cells={a: ("id", "id") for a in els},
        comp1={("id", "id"): "id"},
        hcomp=table,
        vcomp=dict(table),
        unit_arrow={"*": "id"},
        unit_cell={"id": unit},
    )


def from_groupoid(g: FinGroupoid) -> Fin2Groupoid:
    """A groupoid viewed as a 2-groupoid with identity 2-cells only."""
    cell = lambda f: f"id[{f}]"
    return Fin2Groupoid(
        objects=g.objects,
        arrows=dict(g.arrows),
        cells={cell(f): (f, f) for f in g.arrows},
        comp1=dict(g.comp),
        hcomp={
            (cell(h), cell(f)): cell(g.comp[(h, f)])
            for (h, f) in g.comp
        },
        vcomp={(cell(f), cell(f)): cell(f) for f in g.arrows},
        unit_arrow=dict(g.units),
        unit_cell={f: cell(f) for f in g.arrows},
        inv2={cell(f): cell(f) for f in g.arrows},
    )


@dataclass(frozen=True)
class RightMultWitness:
    """Data of the equivalence 'compose with f' between hom-categories.

    The inverse functor composes with a chosen quasi-inverse g of f; the
    natural families nu and mu connect the round trips to the identities:
    nu[a]: a => (a g) f for arrows a: x -> z and mu[c]: c => (c f) g for
    arrows c: y -> z.
    """

    f: str
    inverse: str
    nu: dict[str, str]
    mu: dict[str, str]


def right_mult_equivalence(c: Fin2Groupoid, f: str, z: str) -> RightMultWitness:
    """Witness that right multiplication by f: x -> y on hom(y, z) -> hom(x, z)
    is fully faithful and essentially surjective, by explicit enumeration."""
    x, y = c.arrows[f]
    qi = find_quasi_inverse(c, f)
    if qi is None:
        raise ValueError(f"quasi-inverse fails at {f}")
    g, eta, eps = qi
    nu: dict[str, str] = {}
    mu: dict[str, str] = {}
    for a in c.arrows_between(x, z):
        # whisker eta: id_x => g f by a on the left: a => a (g f) = (a g) f...
        cand = c.hcompose(c.unit_cell[a], eta)
        nu[a] = cand
        if c.cells[cand] != (a, c.comp1[(c.comp1[(a, g)], f)]):
            raise AssertionError("naturality witness has wrong endpoints")
    for b in c.arrows_between(y, z):
        cand = c.hcompose(c.unit_cell[b], eps)
        mu[b] = cand
        if c.cells[cand] != (b, c.comp1[(c.comp1[(b, f)], g)]):
            raise AssertionError("naturality witness has wrong endpoints")
    # fully faithful: composing with f is a bijection on each cell set
    for a1 in c.arrows_between(x, z):
        for a2 in c.arrows_between(x, z):
            cells = c.cells_between(a1, a2)
            images = {
                c.hcompose(r, c.unit_cell[f]): r for r in cells
            }
            if len(images) != len(cells):
                raise ValueError(f"fully-faithfulness fails at ({a1}, {a2})")
    return RightMultWitness(f=f, inverse=g, nu=nu, mu=mu)
