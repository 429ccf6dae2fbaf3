"""Finite groupoids given by explicit tables, and their simplicial nerves.

Objects and arrows are strings.  The composition table maps composable pairs
(h, g) with src(h) = tgt(g) to h . g.  The nerve at level n is the set of
chains of n composable arrows, stored source-first: chain[i] goes from vertex
i to vertex i + 1.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Iterator, Mapping

from .reports import Violation


@dataclass
class FinGroupoid:
    objects: tuple[str, ...]
    arrows: dict[str, tuple[str, str]]  # arrow -> (src, tgt)
    comp: dict[tuple[str, str], str]  # (h, g) with src(h) = tgt(g) -> h . g
    units: dict[str, str]  # object -> identity arrow
    inv: dict[str, str]  # arrow -> inverse arrow

    def src(self, a: str) -> str:
        return self.arrows[a][0]

    def tgt(self, a: str) -> str:
        return self.arrows[a][1]

    def compose(self, h: str, g: str) -> str:
        """h after g."""
        if self.src(h) != self.tgt(g):
            raise ValueError(f"arrows not composable: {h} . {g}")
        return self.comp[(h, g)]

    def unit(self, x: str) -> str:
        return self.units[x]

    def inverse(self, a: str) -> str:
        return self.inv[a]

    def composable_pairs(self) -> Iterator[tuple[str, str]]:
        for h, g in product(self.arrows, self.arrows):
            if self.src(h) == self.tgt(g):
                yield h, g

    def composable_triples(self) -> Iterator[tuple[str, str, str]]:
        for k, h in product(self.arrows, self.arrows):
            if self.src(k) != self.tgt(h):
                continue
            for g in self.arrows:
                if self.src(h) == self.tgt(g):
                    yield k, h, g


def verify_groupoid(g: FinGroupoid) -> list[Violation]:
    out: list[Violation] = []
    for a, (s, t) in g.arrows.items():
        if s not in g.objects or t not in g.objects:
            out.append(Violation("endpoint", (a,)))
    for x in g.objects:
        u = g.units.get(x)
        if u is None or g.arrows.get(u) != (x, x):
            out.append(Violation("unit law", (x,)))
    for (h, a), r in g.comp.items():
        if g.src(h) != g.tgt(a):
            out.append(Violation("composability", (h, a)))
        elif g.arrows[r] != (g.src(a), g.tgt(h)):
            out.append(Violation("endpoint", (h, a)))
    for h, a in g.composable_pairs():
        if (h, a) not in g.comp:
            out.append(Violation("composability", (h, a)))
    if out:
        return out
    for a in g.arrows:
        if g.compose(a, g.units[g.src(a)]) != a or g.compose(g.units[g.tgt(a)], a) != a:
            out.append(Violation("unit law", (a,)))
        b = g.inv.get(a)
        if b is None or g.arrows.get(b) != (g.tgt(a), g.src(a)):
            out.append(Violation("inverse law", (a,)))
        elif (
            g.compose(b, a) != g.units[g.src(a)]
            or g.compose(a, b) != g.units[g.tgt(a)]
        ):
            out.append(Violation("inverse law", (a,)))
    for k, h, a in g.composable_triples():
        if g.compose(g.compose(k, h), a) != g.compose(k, g.compose(h, a)):
            out.append(Violation("associativity", (k, h, a)))
    return out


def _checked(g: FinGroupoid) -> FinGroupoid:
    bad = verify_groupoid(g)
    if bad:
        raise ValueError(f"not a groupoid: {bad[0]}")
    return g


def pair_groupoid(points: Iterable[str]) -> FinGroupoid:
    """Exactly one arrow y|x from x to y for every ordered pair."""
    pts = tuple(points)
    arrows = {f"{y}|{x}": (x, y) for y in pts for x in pts}
    comp = {
        (f"{z}|{y}", f"{y}|{x}"): f"{z}|{x}"
        for z in pts
        for y in pts
        for x in pts
    }
    units = {x: f"{x}|{x}" for x in pts}
    inv = {f"{y}|{x}": f"{x}|{y}" for y in pts for x in pts}
    return _checked(FinGroupoid(pts, arrows, comp, units, inv))


def action_groupoid(
    elements: tuple[str, ...],
    mul: Mapping[tuple[str, str], str],
    unit: str,
    points: tuple[str, ...],
    action: Mapping[tuple[str, str], str],
) -> FinGroupoid:
    """The translation groupoid of a finite group action on a finite set.

    Arrows are pairs g*x from x to g(x); composition multiplies the group
    elements.  Raises when the tables do not define an action.
    """
    for x in points:
        if action[(unit, x)] != x:
            raise ValueError("unit does not act trivially")
    for a, b in product(elements, elements):
        for x in points:
            if action[(a, action[(b, x)])] != action[(mul[(a, b)], x)]:
                raise ValueError("action is not multiplicative")
    inv_el = {}
    for a in elements:
        inv_el[a] = next(b for b in elements if mul[(a, b)] == unit)
    name = lambda g, x: f"{g}*{x}"
    arrows = {name(g, x): (x, action[(g, x)]) for g in elements for x in points}
    comp = {}
    for a in elements:
        for b in elements:
            for x in points:
                comp[(name(a, action[(b, x)]), name(b, x))] = name(mul[(a, b)], x)
    units = {x: name(unit, x) for x in points}
    inv = {name(g, x): name(inv_el[g], action[(g, x)]) for g in elements for x in points}
    return _checked(FinGroupoid(points, arrows, comp, units, inv))


def cyclic_group(n: int) -> tuple[tuple[str, ...], dict[tuple[str, str], str], str]:
    """Element names, multiplication table and unit of Z/n."""
    els = tuple(str(i) for i in range(n))
    mul = {(str(a), str(b)): str((a + b) % n) for a in range(n) for b in range(n)}
    return els, mul, "0"


def projection_to_pair(g: FinGroupoid) -> dict[str, str]:
    """The canonical functor onto the pair groupoid of the object set.

    Returns the arrow map and checks functoriality; the object map is the
    identity.
    """
    target = pair_groupoid(g.objects)
    m = {a: f"{g.tgt(a)}|{g.src(a)}" for a in g.arrows}
    for x in g.objects:
        if m[g.unit(x)] != target.unit(x):
            raise AssertionError("projection does not preserve units")
    for h, a in g.composable_pairs():
        if m[g.compose(h, a)] != target.compose(m[h], m[a]):
            raise AssertionError("projection does not preserve composition")
    return m


Chain = tuple[str, ...]


def nerve1(g: FinGroupoid, n: int) -> list[Chain]:
    """All chains of n composable arrows; level 0 lists the objects."""
    if n == 0:
        return [(x,) for x in g.objects]
    chains: list[Chain] = [(a,) for a in g.arrows]
    for _ in range(n - 1):
        chains = [
            c + (a,) for c in chains for a in g.arrows if g.src(a) == g.tgt(c[-1])
        ]
    return chains


def chain_vertices(g: FinGroupoid, c: Chain) -> tuple[str, ...]:
    return (g.src(c[0]),) + tuple(g.tgt(a) for a in c)


def nerve1_face(g: FinGroupoid, c: Chain, i: int) -> Chain:
    n = len(c)
    if not 0 <= i <= n:
        raise ValueError("face index out of range")
    if n == 1:
        return (g.tgt(c[0]),) if i == 0 else (g.src(c[0]),)
    if i == 0:
        return c[1:]
    if i == n:
        return c[:-1]
    return c[: i - 1] + (g.compose(c[i], c[i - 1]),) + c[i + 1 :]


def nerve1_degeneracy(g: FinGroupoid, c: Chain, j: int) -> Chain:
    if len(c) == 1 and c[0] in g.objects:
        if j != 0:
            raise ValueError("degeneracy index out of range")
        return (g.unit(c[0]),)
    n = len(c)
    if not 0 <= j <= n:
        raise ValueError("degeneracy index out of range")
    verts = chain_vertices(g, c)
    return c[:j] + (g.unit(verts[j]),) + c[j:]
