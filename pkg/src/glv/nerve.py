"""Nerves of 2-categories: labelled simplices, horns, filling, filtration.

A simplex of dimension n is a labelling of the simplicial set Delta^n:
vertices carry objects u_i, edges carry arrows u_{j,i}: u_i -> u_j for j > i,
and triangles carry 2-cells

    u_{k,j,i} : u_{k,i}  =>  u_{k,j} . u_{j,i}      (k > j > i).

A labelling is a simplex when every tetrahedron (l, k, j, i) commutes:

    (u_{l,k} o u_{k,j,i}) * u_{l,k,i}  =  (u_{l,k,j} o u_{j,i}) * u_{l,j,i}

where o whiskers and * composes vertically.  Nothing is stored above
dimension 2; validity of the tetrahedra makes the nerve 3-coskeletal.

Weak index lookups fill in degeneracies: u_{i,i} is the identity arrow of
u_i, and triangles with repeated indices are identity 2-cells.

The code is generic over a handle, either finite tables (TableHandle) or the
2-groupoid of 2-term chain complexes (GLHandle).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from . import gl2
from .reports import Violation
from .twocat import Fin2Cat, Fin2Groupoid, find_quasi_inverse


class NoFillerError(Exception):
    """The horn admits no filler over this handle."""


class IncompatibleBoundaryError(Exception):
    """Boundary facets disagree on shared faces or fail a tetrahedron."""


class TableHandle:
    """Operations of a finite 2-category given by tables."""

    def __init__(self, cat: Fin2Cat):
        self.cat = cat

    def id_arrow(self, x):
        return self.cat.unit_arrow[x]

    def id_cell(self, f):
        return self.cat.unit_cell[f]

    def arrow_src(self, f):
        return self.cat.arrow_src(f)

    def arrow_tgt(self, f):
        return self.cat.arrow_tgt(f)

    def cell_src(self, r):
        return self.cat.cell_src(r)

    def cell_tgt(self, r):
        return self.cat.cell_tgt(r)

    def compose(self, g, f):
        return self.cat.compose(g, f)

    def vcompose(self, s, r):
        return self.cat.vcompose(s, r)

    def hcompose(self, s, r):
        return self.cat.hcompose(s, r)

    def whisker_left(self, g, r):
        return self.cat.hcompose(self.cat.unit_cell[g], r)

    def whisker_right(self, r, f):
        return self.cat.hcompose(r, self.cat.unit_cell[f])

    def invert_cell(self, r):
        if isinstance(self.cat, Fin2Groupoid):
            return self.cat.inv2[r]
        f, g = self.cat.cells[r]
        for s in self.cat.cells_between(g, f):
            if (
                self.cat.vcompose(s, r) == self.cat.unit_cell[f]
                and self.cat.vcompose(r, s) == self.cat.unit_cell[g]
            ):
                return s
        raise NoFillerError(f"2-cell {r} is not invertible")

    def quasi_inverse(self, f):
        got = find_quasi_inverse(self.cat, f)
        if got is None:
            raise NoFillerError(f"arrow {f} has no quasi-inverse")
        return got

    # enumeration hooks
    def objects(self):
        return list(self.cat.objects)

    def arrows_from(self, x):
        return [f for f, (s, _) in self.cat.arrows.items() if s == x]

    def cells_into(self, g):
        return [r for r, (_, t) in self.cat.cells.items() if t == g]

    def cells_between(self, f, g):
        return self.cat.cells_between(f, g)


class GLHandle:
    """Operations of the 2-groupoid of 2-term chain complexes."""

    def id_arrow(self, x):
        return gl2.identity_arrow(x)

    def id_cell(self, f):
        return gl2.identity_cell(f)

    def arrow_src(self, f):
        return f.src

    def arrow_tgt(self, f):
        return f.dst

    def cell_src(self, r):
        return r.source

    def cell_tgt(self, r):
        return r.target

    def compose(self, g, f):
        return gl2.compose_arrows(g, f)

    def vcompose(self, s, r):
        return gl2.vcompose(s, r)

    def hcompose(self, s, r):
        return gl2.hcompose(s, r)

    def whisker_left(self, g, r):
        return gl2.whisker_left(g, r)

    def whisker_right(self, r, f):
        return gl2.whisker_right(r, f)

    def invert_cell(self, r):
        return gl2.invert_cell(r)

    def quasi_inverse(self, f):
        qi = gl2.quasi_inverse(f)
        return qi.inverse, qi.unit, qi.counit


def _freeze(mapping: Mapping) -> tuple:
    return tuple(sorted(mapping.items(), key=lambda kv: kv[0]))


@dataclass(frozen=True)
class SimplexLabel:
    vertices: tuple
    edges: tuple  # ((j, i), arrow), j > i
    triangles: tuple  # ((k, j, i), cell), k > j > i

    @property
    def n(self) -> int:
        return len(self.vertices) - 1

    def edge_map(self) -> dict:
        return dict(self.edges)

    def triangle_map(self) -> dict:
        return dict(self.triangles)


def make_simplex(vertices: Sequence, edges: Mapping, triangles: Mapping) -> SimplexLabel:
    n = len(vertices) - 1
    want_edges = {(j, i) for j in range(n + 1) for i in range(j)}
    want_tris = {(k, j, i) for k in range(n + 1) for j in range(k) for i in range(j)}
    if set(edges) != want_edges:
        raise ValueError("edge labels do not cover the simplex")
    if set(triangles) != want_tris:
        raise ValueError("triangle labels do not cover the simplex")
    return SimplexLabel(tuple(vertices), _freeze(edges), _freeze(triangles))


def edge_of(handle, s, j: int, i: int):
    """u_{j,i} with the degenerate case u_{i,i} = identity."""
    if j == i:
        return handle.id_arrow(s.vertices[i])
    return s.edge_map()[(j, i)]


def triangle_of(handle, s, k: int, j: int, i: int):
    """u_{k,j,i} with repeated indices giving identity 2-cells."""
    if k == j == i:
        return handle.id_cell(handle.id_arrow(s.vertices[i]))
    if k == j or j == i:
        return handle.id_cell(edge_of(handle, s, k, i))
    return s.triangle_map()[(k, j, i)]


def _tetrahedron_sides(handle, edges: Mapping, tris: Mapping, quad):
    l, k, j, i = quad
    lhs = handle.vcompose(
        handle.whisker_left(edges[(l, k)], tris[(k, j, i)]), tris[(l, k, i)]
    )
    rhs = handle.vcompose(
        handle.whisker_right(tris[(l, k, j)], edges[(j, i)]), tris[(l, j, i)]
    )
    return lhs, rhs


def tetrahedron_holds(handle, s: SimplexLabel, quad) -> bool:
    lhs, rhs = _tetrahedron_sides(handle, s.edge_map(), s.triangle_map(), quad)
    return lhs == rhs


def validate_simplex(handle, s: SimplexLabel) -> list[Violation]:
    out: list[Violation] = []
    n = s.n
    edges = s.edge_map()
    tris = s.triangle_map()
    for (j, i), f in edges.items():
        if handle.arrow_src(f) != s.vertices[i] or handle.arrow_tgt(f) != s.vertices[j]:
            out.append(Violation("endpoint", (j, i), "edge does not match its vertices"))
    if out:
        return out
    for (k, j, i), r in tris.items():
        want_src = edges[(k, i)]
        want_tgt = handle.compose(edges[(k, j)], edges[(j, i)])
        if handle.cell_src(r) != want_src or handle.cell_tgt(r) != want_tgt:
            out.append(Violation("endpoint", (k, j, i), "triangle cell does not match its edges"))
    if out:
        return out
    for quad in combinations(range(n, -1, -1), 4):
        lhs, rhs = _tetrahedron_sides(handle, edges, tris, quad)
        if lhs != rhs:
            out.append(Violation("tetrahedron", quad))
    return out


def face(handle, s: SimplexLabel, i: int) -> SimplexLabel:
    n = s.n
    if not 0 <= i <= n:
        raise ValueError("face index out of range")
    m = lambda t: t if t < i else t + 1
    verts = tuple(s.vertices[m(t)] for t in range(n))
    edges = {
        (b, a): edge_of(handle, s, m(b), m(a)) for b in range(n) for a in range(b)
    }
    tris = {
        (c, b, a): triangle_of(handle, s, m(c), m(b), m(a))
        for c in range(n)
        for b in range(c)
        for a in range(b)
    }
    return make_simplex(verts, edges, tris)


def degeneracy(handle, s: SimplexLabel, j: int) -> SimplexLabel:
    n = s.n
    if not 0 <= j <= n:
        raise ValueError("degeneracy index out of range")
    m = lambda t: t if t <= j else t - 1
    verts = tuple(s.vertices[m(t)] for t in range(n + 2))
    edges = {
        (b, a): edge_of(handle, s, m(b), m(a)) for b in range(n + 2) for a in range(b)
    }
    tris = {
        (c, b, a): triangle_of(handle, s, m(c), m(b), m(a))
        for c in range(n + 2)
        for b in range(c)
        for a in range(b)
    }
    return make_simplex(verts, edges, tris)


@dataclass(frozen=True)
class Horn:
    """The data of Lambda^n_k: every face except the k-th."""

    k: int
    vertices: tuple
    edges: tuple
    triangles: tuple

    @property
    def n(self) -> int:
        return len(self.vertices) - 1

    def edge_map(self) -> dict:
        return dict(self.edges)

    def triangle_map(self) -> dict:
        return dict(self.triangles)


def _horn_shape(n: int, k: int) -> tuple[set, set]:
    """Index sets (edges, triangles) carried by Lambda^n_k."""
    edges = set()
    tris = set()
    for omit in range(n + 1):
        if omit == k:
            continue
        verts = [t for t in range(n + 1) if t != omit]
        edges.update({(b, a) for b in verts for a in verts if a < b})
        tris.update(
            {(c, b, a) for c in verts for b in verts for a in verts if a < b < c}
        )
    return edges, tris


def make_horn(n: int, k: int, vertices: Sequence, edges: Mapping, triangles: Mapping) -> Horn:
    if not 0 <= k <= n:
        raise ValueError("horn index out of range")
    want_edges, want_tris = _horn_shape(n, k)
    if set(edges) != want_edges:
        raise ValueError("edge labels do not cover the horn")
    if set(triangles) != want_tris:
        raise ValueError("triangle labels do not cover the horn")
    return Horn(k, tuple(vertices), _freeze(edges), _freeze(triangles))


def horn_of(s: SimplexLabel, k: int) -> Horn:
    """Forget the k-th face of a simplex."""
    want_edges, want_tris = _horn_shape(s.n, k)
    edges = {e: v for e, v in s.edge_map().items() if e in want_edges}
    tris = {t: v for t, v in s.triangle_map().items() if t in want_tris}
    return Horn(k, s.vertices, _freeze(edges), _freeze(tris))


def validate_horn(handle, h: Horn) -> list[Violation]:
    out: list[Violation] = []
    edges = h.edge_map()
    tris = h.triangle_map()
    for (j, i), f in edges.items():
        if handle.arrow_src(f) != h.vertices[i] or handle.arrow_tgt(f) != h.vertices[j]:
            out.append(Violation("endpoint", (j, i), "edge does not match its vertices"))
    if out:
        return out
    for (k, j, i), r in tris.items():
        want_src = edges[(k, i)]
        want_tgt = handle.compose(edges[(k, j)], edges[(j, i)])
        if handle.cell_src(r) != want_src or handle.cell_tgt(r) != want_tgt:
            out.append(Violation("endpoint", (k, j, i), "triangle cell does not match its edges"))
    if out:
        return out
    for quad in combinations(range(h.n, -1, -1), 4):
        # only the tetrahedra lying in a present face are part of the horn
        if not (set(range(h.n + 1)) - set(quad) - {h.k}):
            continue
        lhs, rhs = _tetrahedron_sides(handle, edges, tris, quad)
        if lhs != rhs:
            out.append(Violation("tetrahedron", quad))
    return out


def fill_horn(handle, h: Horn) -> SimplexLabel:
    """A simplex restricting to the horn on its present faces.

    For inner horns this is 2-cell algebra; outer horns use quasi-inverses
    and can raise NoFillerError over handles whose arrows are not invertible
    up to homotopy.  For n >= 4 the horn already carries the full 2-skeleton
    and filling is assembly plus validation.
    """
    bad = validate_horn(handle, h)
    if bad:
        raise NoFillerError(f"horn data is not valid: {bad[0]}")
    n, k = h.n, h.k
    if n < 2:
        raise ValueError("horn filling starts at dimension 2")
    edges = h.edge_map()
    tris = h.triangle_map()
    if n == 2:
        if k == 1:
            beta, alpha = edges[(2, 1)], edges[(1, 0)]
            gamma = handle.compose(beta, alpha)
            cell = handle.id_cell(gamma)
            edges[(2, 0)] = gamma
        elif k == 0:
            alpha, gamma = edges[(1, 0)], edges[(2, 0)]
            q, eta, _ = handle.quasi_inverse(alpha)
            beta = handle.compose(gamma, q)
            cell = handle.whisker_left(gamma, eta)
            edges[(2, 1)] = beta
        else:
            beta, gamma = edges[(2, 1)], edges[(2, 0)]
            q, _, eps = handle.quasi_inverse(beta)
            alpha = handle.compose(q, gamma)
            cell = handle.whisker_right(eps, gamma)
            edges[(1, 0)] = alpha
        tris[(2, 1, 0)] = cell
        filled = make_simplex(h.vertices, edges, tris)
    elif n == 3:
        tris = dict(tris)
        v = handle.vcompose
        inv = handle.invert_cell
        wl = handle.whisker_left
        wr = handle.whisker_right
        if k == 1:
            tris[(3, 2, 0)] = v(
                v(inv(wl(edges[(3, 2)], tris[(2, 1, 0)])), wr(tris[(3, 2, 1)], edges[(1, 0)])),
                tris[(3, 1, 0)],
            )
        elif k == 2:
            tris[(3, 1, 0)] = v(
                v(inv(wr(tris[(3, 2, 1)], edges[(1, 0)])), wl(edges[(3, 2)], tris[(2, 1, 0)])),
                tris[(3, 2, 0)],
            )
        elif k == 3:
            w = v(v(wr(tris[(3, 2, 1)], edges[(1, 0)]), tris[(3, 1, 0)]), inv(tris[(3, 2, 0)]))
            g = edges[(3, 2)]
            c = edges[(2, 0)]
            d = handle.compose(edges[(2, 1)], edges[(1, 0)])
            q, eta, _ = handle.quasi_inverse(g)
            tris[(2, 1, 0)] = v(v(inv(wr(eta, d)), wl(q, w)), wr(eta, c))
        else:  # k == 0
            w = v(v(wl(edges[(3, 2)], tris[(2, 1, 0)]), tris[(3, 2, 0)]), inv(tris[(3, 1, 0)]))
            f = edges[(1, 0)]
            a = edges[(3, 1)]
            b = handle.compose(edges[(3, 2)], edges[(2, 1)])
            q, _, eps = handle.quasi_inverse(f)
            tris[(3, 2, 1)] = v(v(wl(b, inv(eps)), wr(w, q)), wl(a, eps))
        filled = make_simplex(h.vertices, edges, tris)
    else:
        filled = make_simplex(h.vertices, edges, tris)
    bad = validate_simplex(handle, filled)
    if bad:
        raise NoFillerError(f"no filler exists: {bad[0]}")
    return filled


def facets(handle, s: SimplexLabel) -> list[SimplexLabel]:
    return [face(handle, s, i) for i in range(s.n + 1)]


def coskeletal_extend(handle, boundary: Sequence[SimplexLabel]) -> SimplexLabel:
    """Assemble a simplex from compatible facets d_0, ..., d_n.

    The boundary determines the entire labelling (nothing is stored above
    dimension 2); shared faces must agree and all tetrahedra must commute.
    """
    n = len(boundary) - 1
    if n < 3:
        raise ValueError("boundary assembly needs dimension at least 3")
    for i, f in enumerate(boundary):
        if f.n != n - 1:
            raise IncompatibleBoundaryError(f"facet {i} has the wrong dimension")
    verts: dict[int, object] = {}
    edges: dict[tuple, object] = {}
    tris: dict[tuple, object] = {}

    def put(store, key, value, what):
        if key in store and store[key] != value:
            raise IncompatibleBoundaryError(f"facets disagree on {what} {key}")
        store[key] = value

    for i in range(n + 1):
        m = lambda t: t if t < i else t + 1
        fac = boundary[i]
        for t in range(n):
            put(verts, m(t), fac.vertices[t], "vertex")
        for (b, a), v in fac.edge_map().items():
            put(edges, (m(b), m(a)), v, "edge")
        for (c, b, a), v in fac.triangle_map().items():
            put(tris, (m(c), m(b), m(a)), v, "triangle")
    s = make_simplex([verts[i] for i in range(n + 1)], edges, tris)
    bad = validate_simplex(handle, s)
    if bad:
        raise IncompatibleBoundaryError(str(bad[0]))
    return s


@dataclass(frozen=True)
class FiltrationStage:
    """The stage F_k of the filtration interpolating the inclusion
    of the last face: F_k carries the labels a with max(a) < n or min(a) >= k."""

    n: int
    k: int
    vertices: tuple
    edges: tuple
    triangles: tuple

    def edge_map(self) -> dict:
        return dict(self.edges)

    def triangle_map(self) -> dict:
        return dict(self.triangles)


def _stage_edge_present(n: int, k: int, j: int, i: int) -> bool:
    return j < n or i >= k


def _stage_triangle_present(n: int, k: int, t: int, j: int, i: int) -> bool:
    return t < n or i >= k


def strip_to_stage(s: SimplexLabel, k: int) -> FiltrationStage:
    n = s.n
    if not 0 <= k <= n - 1:
        raise ValueError("stage index out of range")
    edges = {
        e: v for e, v in s.edge_map().items() if _stage_edge_present(n, k, *e)
    }
    tris = {
        t: v
        for t, v in s.triangle_map().items()
        if _stage_triangle_present(n, k, *t)
    }
    return FiltrationStage(n, k, s.vertices, _freeze(edges), _freeze(tris))


def stage_to_simplex(stage: FiltrationStage) -> SimplexLabel:
    if stage.k != 0:
        raise ValueError("only the last stage carries a full simplex")
    return make_simplex(stage.vertices, stage.edge_map(), stage.triangle_map())


def reconstruct_stage(handle, stage: FiltrationStage, alpha) -> FiltrationStage:
    """Extend F_{k+1} labels to F_k given the new triangle (n, k+1, k).

    The 2-cell alpha labels the triangle (n, k+1, k); its source is the new
    edge (n, k).  The remaining new triangles (n, l, k) for k+1 < l < n are
    forced:

        u_{n,l,k} = (u_{n,l} o inv(u_{l,k+1,k})) * (u_{n,l,k+1} o u_{k+1,k})
                     * u_{n,k+1,k}

    vertically composed bottom-up, whiskering on the left of the first factor
    and the right of the second.
    """
    n, k1 = stage.n, stage.k
    if k1 < 1:
        raise ValueError("nothing left to reconstruct")
    k = k1 - 1
    edges = stage.edge_map()
    tris = stage.triangle_map()
    target = handle.compose(edges[(n, k1)], edges[(k1, k)])
    if handle.cell_tgt(alpha) != target:
        raise ValueError("new 2-cell does not target the composite over the new edge")
    new_edge = handle.cell_src(alpha)
    if handle.arrow_src(new_edge) != stage.vertices[k] or handle.arrow_tgt(
        new_edge
    ) != stage.vertices[n]:
        raise ValueError("new 2-cell source is not an edge from vertex k to vertex n")
    edges[(n, k)] = new_edge
    tris[(n, k1, k)] = alpha
    for l in range(k1 + 1, n):
        step = handle.vcompose(
            handle.whisker_right(tris[(n, l, k1)], edges[(k1, k)]), alpha
        )
        tris[(n, l, k)] = handle.vcompose(
            handle.whisker_left(edges[(n, l)], handle.invert_cell(tris[(l, k1, k)])),
            step,
        )
    return FiltrationStage(n, k, stage.vertices, _freeze(edges), _freeze(tris))


def initial_stage(handle, base: SimplexLabel, top_vertex, last_edge) -> FiltrationStage:
    """F_{n-1}: a full (n-1)-simplex plus the edge (n, n-1)."""
    n = base.n + 1
    if handle.arrow_src(last_edge) != base.vertices[-1] or handle.arrow_tgt(
        last_edge
    ) != top_vertex:
        raise ValueError("edge does not connect the base simplex to the top vertex")
    edges = base.edge_map()
    edges[(n, n - 1)] = last_edge
    return FiltrationStage(
        n, n - 1, base.vertices + (top_vertex,), _freeze(edges), base.triangles
    )


def enumerate_nerve(handle: TableHandle, level: int) -> list[SimplexLabel]:
    """All simplices of a finite handle at the given level."""
    if level == 0:
        return [SimplexLabel((x,), (), ()) for x in handle.objects()]
    if level == 1:
        return [
            make_simplex(
                (handle.arrow_src(f), handle.arrow_tgt(f)), {(1, 0): f}, {}
            )
            for x in handle.objects()
            for f in handle.arrows_from(x)
        ]
    out: list[SimplexLabel] = []
    for base in enumerate_nerve(handle, level - 1):
        for e in handle.arrows_from(base.vertices[-1]):
            top = handle.arrow_tgt(e)
            stages = [initial_stage(handle, base, top, e)]
            for k1 in range(level - 1, 0, -1):
                nxt = []
                for st in stages:
                    edges = st.edge_map()
                    target = handle.compose(edges[(level, k1)], edges[(k1, k1 - 1)])
                    for alpha in handle.cells_into(target):
                        nxt.append(reconstruct_stage(handle, st, alpha))
                stages = nxt
            out.extend(stage_to_simplex(st) for st in stages)
    return out
