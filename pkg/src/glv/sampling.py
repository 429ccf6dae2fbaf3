"""Seeded random generators for fibers, arrows, cells and larger structures.

Everything takes an explicit ``random.Random`` so that callers own their seed
and runs are reproducible.  Generators only ever return valid structures; the
checked constructors double as assertions.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .chain2 import (
    ChainMap2,
    Fiber2,
    chain_map_from_vector,
    chain_map_space,
    cokernel_complement,
    cokernel_projection,
    find_homotopy,
    homology,
    homotopy_kernel_basis,
    is_quasi_iso,
    kernel_inclusion,
)
from .gl2 import GL2Cell, GLArrow, GLObject, compose_arrows
from .groupoid import FinGroupoid
from .linalg import RatMatrix, hstack, left_inverse, rank, solve
from .nerve import GLHandle, SimplexLabel, TableHandle, make_simplex
from .ruth import Ruth2, RuthMorphism, compose_morphisms, double_rep


def rand_rat(rng: random.Random, span: int = 3) -> Fraction:
    return Fraction(rng.randint(-span, span), rng.choice((1, 1, 2)))


def rand_matrix(rng: random.Random, rows: int, cols: int, span: int = 3) -> RatMatrix:
    return RatMatrix(
        rows, cols, tuple(rand_rat(rng, span) for _ in range(rows * cols))
    )


def rand_fiber(rng: random.Random, max_dim: int = 3) -> Fiber2:
    d1 = rng.randint(0, max_dim)
    d0 = rng.randint(0, max_dim)
    return Fiber2(d1, d0, rand_matrix(rng, d0, d1))


def rand_fiber_with_homology(
    rng: random.Random, h1: int, h0: int, max_extra: int = 2
) -> Fiber2:
    """A fiber with prescribed homology dimensions."""
    for _ in range(100):
        r = rng.randint(0, max_extra)
        d1, d0 = h1 + r, h0 + r
        if r == 0:
            return Fiber2(d1, d0, RatMatrix.zeros(d0, d1))
        d = rand_matrix(rng, d0, r) @ rand_matrix(rng, r, d1)
        if rank(d) == r:
            return Fiber2(d1, d0, d)
    raise AssertionError("failed to sample a fiber of the requested homology")


def rand_chain_map(rng: random.Random, src: Fiber2, dst: Fiber2) -> ChainMap2:
    """A random solution of the chain condition between the given fibers."""
    basis = chain_map_space(src, dst)
    coeffs = RatMatrix.column([rand_rat(rng) for _ in range(basis.cols)])
    return chain_map_from_vector(src, dst, basis @ coeffs)


def _projection_to_minimal(x: Fiber2) -> ChainMap2:
    # quasi-isomorphism from x onto the fiber (H1, H0, 0)
    h = homology(x)
    minimal = Fiber2(h.h1, h.h0, RatMatrix.zeros(h.h0, h.h1))
    ker = kernel_inclusion(x.d)
    cols = [ker]
    r = h.h1
    current = ker
    for i in range(x.dim1):
        if r == x.dim1:
            break
        e = RatMatrix.column([1 if k == i else 0 for k in range(x.dim1)])
        cand = hstack(current, e)
        if rank(cand) > r:
            cols.append(e)
            current = cand
            r += 1
    basis = hstack(*cols) if x.dim1 else RatMatrix.zeros(0, 0)
    inv = solve(basis, RatMatrix.identity(x.dim1))
    p1 = RatMatrix(h.h1, x.dim1, tuple(inv.entry(i, j) for i in range(h.h1) for j in range(x.dim1)))
    p0 = cokernel_projection(x)
    return ChainMap2(x, minimal, p1, p0)


def _inclusion_of_minimal(y: Fiber2) -> ChainMap2:
    h = homology(y)
    minimal = Fiber2(h.h1, h.h0, RatMatrix.zeros(h.h0, h.h1))
    return ChainMap2(minimal, y, kernel_inclusion(y.d), cokernel_complement(y))


def perturb_chain_map(rng: random.Random, m: ChainMap2, span: int = 2) -> ChainMap2:
    """A chain map homotopic to m (same fibers, random homotopy applied)."""
    r = rand_matrix(rng, m.dst.dim1, m.src.dim0, span)
    return ChainMap2(m.src, m.dst, m.a1 - r @ m.src.d, m.a0 - m.dst.d @ r)


def rand_quasi_iso(rng: random.Random, src: Fiber2, dst: Fiber2) -> ChainMap2:
    """A random quasi-isomorphism; the fibers must have equal homology."""
    if homology(src) != homology(dst):
        raise ValueError("no quasi-isomorphism exists: homology differs")
    basis = chain_map_space(src, dst)
    for _ in range(40):
        coeffs = RatMatrix.column([rand_rat(rng) for _ in range(basis.cols)])
        m = chain_map_from_vector(src, dst, basis @ coeffs)
        if is_quasi_iso(m):
            return m
    # guaranteed fallback: route through the minimal fiber, then perturb
    via = ChainMap2(
        src,
        dst,
        _inclusion_of_minimal(dst).a1 @ _projection_to_minimal(src).a1,
        _inclusion_of_minimal(dst).a0 @ _projection_to_minimal(src).a0,
    )
    return perturb_chain_map(rng, via)


def rand_gl_arrow(rng: random.Random, src: GLObject, dst: GLObject) -> GLArrow:
    return GLArrow(src, dst, rand_quasi_iso(rng, src.fiber, dst.fiber))


def rand_gl_objects(
    rng: random.Random, count: int, max_h: int = 1, max_extra: int = 2
) -> list[GLObject]:
    """Objects over points p0, p1, ... sharing their homology dimensions."""
    h1, h0 = rng.randint(0, max_h), rng.randint(0, max_h)
    return [
        GLObject(f"p{i}", rand_fiber_with_homology(rng, h1, h0, max_extra))
        for i in range(count)
    ]


def rand_cell_on(rng: random.Random, f: GLArrow, span: int = 2) -> GL2Cell:
    """A random 2-cell out of f, obtained by perturbing f along a homotopy."""
    r = rand_matrix(rng, f.dst.fiber.dim1, f.src.fiber.dim0, span)
    target = GLArrow(
        f.src,
        f.dst,
        ChainMap2(
            f.src.fiber,
            f.dst.fiber,
            f.a1 - r @ f.src.fiber.d,
            f.a0 - f.dst.fiber.d @ r,
        ),
    )
    return GL2Cell(f, target, r)


def rand_cell_between(rng: random.Random, f: GLArrow, g: GLArrow) -> GL2Cell:
    """A random 2-cell f => g; the arrows must be homotopic."""
    h = find_homotopy(f.map, g.map)
    if h is None:
        raise ValueError("arrows are not homotopic")
    basis = homotopy_kernel_basis(f.src.fiber, f.dst.fiber)
    r = h.r
    if basis.cols:
        coeffs = RatMatrix.column([rand_rat(rng, 2) for _ in range(basis.cols)])
        r = r + RatMatrix(r.rows, r.cols, (basis @ coeffs).entries)
    return GL2Cell(f, g, r)


def rand_interchange_square(rng: random.Random, max_extra: int = 2):
    """Cells r: f => f' => f'' over x -> y and s: g => g' => g'' over y -> z.

    Returns ((r2, r1), (s2, s1)) ready for an interchange check.
    """
    x, y, z = rand_gl_objects(rng, 3, max_extra=max_extra)
    f = rand_gl_arrow(rng, x, y)
    g = rand_gl_arrow(rng, y, z)
    r1 = rand_cell_on(rng, f)
    r2 = rand_cell_on(rng, r1.target)
    s1 = rand_cell_on(rng, g)
    s2 = rand_cell_on(rng, s1.target)
    return (r2, r1), (s2, s1)


def _solve_outer_triangle(handle, edges, tris, l, k, j, i):
    """The (l, k, i) label forced by the tetrahedron (l, k, j, i)."""
    return handle.vcompose(
        handle.vcompose(
            handle.invert_cell(handle.whisker_left(edges[(l, k)], tris[(k, j, i)])),
            handle.whisker_right(tris[(l, k, j)], edges[(j, i)]),
        ),
        tris[(l, j, i)],
    )


def _solve_inner_triangle(handle, edges, tris, l, k, j, i):
    """The (l, j, i) label forced by the tetrahedron (l, k, j, i)."""
    return handle.vcompose(
        handle.vcompose(
            handle.invert_cell(handle.whisker_right(tris[(l, k, j)], edges[(j, i)])),
            handle.whisker_left(edges[(l, k)], tris[(k, j, i)]),
        ),
        tris[(l, k, i)],
    )


def complete_to_simplex(handle, vertices, edges, pick_cell) -> SimplexLabel:
    """Extend full edge data to a simplex, choosing the free triangles.

    pick_cell(f, g) supplies a 2-cell f => g for the triangles that are not
    forced; the remaining labels are solved from tetrahedron equations.
    Supports dimensions up to 4.  The solved labels satisfy every equation
    used to produce them; for dimension 4 the one remaining equation
    (4, 3, 2, 0) holds automatically, which callers are free to re-check.
    """
    n = len(vertices) - 1
    if n > 4:
        raise ValueError("supported up to dimension 4")
    tris: dict = {}

    def composite(k, j, i):
        return handle.compose(edges[(k, j)], edges[(j, i)])

    if n >= 2:
        tris[(2, 1, 0)] = pick_cell(edges[(2, 0)], composite(2, 1, 0))
    if n >= 3:
        tris[(3, 2, 1)] = pick_cell(edges[(3, 1)], composite(3, 2, 1))
        tris[(3, 2, 0)] = pick_cell(edges[(3, 0)], composite(3, 2, 0))
        tris[(3, 1, 0)] = _solve_inner_triangle(handle, edges, tris, 3, 2, 1, 0)
    if n >= 4:
        tris[(4, 2, 1)] = pick_cell(edges[(4, 1)], composite(4, 2, 1))
        tris[(4, 1, 0)] = pick_cell(edges[(4, 0)], composite(4, 1, 0))
        tris[(4, 3, 2)] = pick_cell(edges[(4, 2)], composite(4, 3, 2))
        tris[(4, 2, 0)] = _solve_outer_triangle(handle, edges, tris, 4, 2, 1, 0)
        tris[(4, 3, 1)] = _solve_outer_triangle(handle, edges, tris, 4, 3, 2, 1)
        tris[(4, 3, 0)] = _solve_outer_triangle(handle, edges, tris, 4, 3, 1, 0)
    return make_simplex(vertices, edges, tris)


def sample_gl_simplex(
    rng: random.Random, n: int, max_h: int = 1, max_extra: int = 1
) -> SimplexLabel:
    """A random valid simplex in the 2-groupoid of 2-term complexes.

    Edges are homotopy perturbations of composites along the spine, so
    every triangle admits 2-cells and the free choices stay free.
    """
    objs = rand_gl_objects(rng, n + 1, max_h=max_h, max_extra=max_extra)
    spine = [rand_gl_arrow(rng, objs[i], objs[i + 1]) for i in range(n)]
    edges: dict = {}
    for j in range(1, n + 1):
        for i in range(j):
            c = spine[i]
            for t in range(i + 1, j):
                c = compose_arrows(spine[t], c)
            if j > i + 1:
                c = rand_cell_on(rng, c).target
            edges[(j, i)] = c
    handle = GLHandle()
    return complete_to_simplex(
        handle, tuple(objs), edges, lambda f, g: rand_cell_between(rng, f, g)
    )


def sample_table_simplex(
    handle: TableHandle, rng: random.Random, n: int, start=None
) -> SimplexLabel:
    """A random valid simplex of a finite 2-groupoid given by tables."""
    x = start if start is not None else rng.choice(sorted(handle.objects()))
    verts = [x]
    spine = []
    for _ in range(n):
        f = rng.choice(sorted(handle.arrows_from(verts[-1])))
        spine.append(f)
        verts.append(handle.arrow_tgt(f))
    edges: dict = {}
    for j in range(1, n + 1):
        for i in range(j):
            c = spine[i]
            for t in range(i + 1, j):
                c = handle.compose(spine[t], c)
            if j > i + 1:
                beta = rng.choice(sorted(handle.cells_into(c)))
                c = handle.cell_src(beta)
            edges[(j, i)] = c

    def pick(f, g):
        cells = sorted(handle.cells_between(f, g))
        if not cells:
            raise ValueError("no 2-cell between parallel arrows")
        return rng.choice(cells)

    return complete_to_simplex(handle, tuple(verts), edges, pick)


def rand_invertible(rng: random.Random, n: int, span: int = 3) -> RatMatrix:
    if n == 0:
        return RatMatrix.zeros(0, 0)
    while True:
        m = rand_matrix(rng, n, n, span)
        if rank(m) == n:
            return m


def _inv(m: RatMatrix) -> RatMatrix:
    return left_inverse(m)


def rand_strict_ruth(rng: random.Random, g: FinGroupoid, base: Fiber2) -> Ruth2:
    """A strictly multiplicative representation: conjugates of the identity.

    Each point gets an invertible change of basis from a base fiber, and
    each arrow acts by the composite change; corrections vanish."""
    a1 = {x: rand_invertible(rng, base.dim1, 2) for x in g.objects}
    a0 = {x: rand_invertible(rng, base.dim0, 2) for x in g.objects}
    fibers = {x: Fiber2(base.dim1, base.dim0, a0[x] @ base.d @ _inv(a1[x])) for x in g.objects}
    rho1 = {}
    rho0 = {}
    for f, (x, y) in g.arrows.items():
        rho1[f] = a1[y] @ _inv(a1[x])
        rho0[f] = a0[y] @ _inv(a0[x])
    gamma = {
        (h, a): RatMatrix.zeros(base.dim1, base.dim0) for h, a in g.composable_pairs()
    }
    return Ruth2(g, fibers, rho1, rho0, gamma)


def rand_double_ruth(rng: random.Random, g: FinGroupoid, dims: dict | None = None) -> Ruth2:
    """The doubling of a random pseudo-representation on vector spaces."""
    if dims is None:
        dims = {x: rng.randint(1, 2) for x in g.objects}
    units = {g.unit(x) for x in g.objects}
    rho = {}
    for f, (x, y) in g.arrows.items():
        if f in units:
            rho[f] = RatMatrix.identity(dims[x])
        else:
            rho[f] = rand_matrix(rng, dims[y], dims[x], 2)
    return double_rep(g, rho)


def rand_gauge(rng: random.Random, r: Ruth2) -> tuple[Ruth2, RuthMorphism]:
    """Shear a representation by a family of degree-shifting maps.

    Returns the sheared representation together with the connecting
    morphism (identity components, homotopies the shears) back to r."""
    g = r.groupoid
    units = {g.unit(x) for x in g.objects}
    lam = {}
    for f, (x, y) in g.arrows.items():
        if f in units:
            lam[f] = RatMatrix.zeros(r.fibers[y].dim1, r.fibers[x].dim0)
        else:
            lam[f] = rand_matrix(rng, r.fibers[y].dim1, r.fibers[x].dim0, 2)
    rho1 = {}
    rho0 = {}
    for f, (x, y) in g.arrows.items():
        rho1[f] = r.rho1[f] + lam[f] @ r.fibers[x].d
        rho0[f] = r.rho0[f] + r.fibers[y].d @ lam[f]
    gamma = {}
    for h, a in g.composable_pairs():
        ha = g.compose(h, a)
        gamma[(h, a)] = (
            r.gamma[(h, a)] + lam[ha] - rho1[h] @ lam[a] - lam[h] @ r.rho0[a]
        )
    sheared = Ruth2(g, dict(r.fibers), rho1, rho0, gamma)
    back = RuthMorphism(
        sheared,
        r,
        {x: RatMatrix.identity(r.fibers[x].dim1) for x in g.objects},
        {x: RatMatrix.identity(r.fibers[x].dim0) for x in g.objects},
        lam,
    )
    return sheared, back


def rand_transport(rng: random.Random, r: Ruth2) -> tuple[Ruth2, RuthMorphism]:
    """Conjugate a representation by invertible per-point changes of basis.

    Returns the conjugated representation and the morphism from r with
    vanishing homotopies."""
    g = r.groupoid
    b1 = {x: rand_invertible(rng, r.fibers[x].dim1, 2) for x in g.objects}
    b0 = {x: rand_invertible(rng, r.fibers[x].dim0, 2) for x in g.objects}
    fibers = {
        x: Fiber2(
            r.fibers[x].dim1,
            r.fibers[x].dim0,
            b0[x] @ r.fibers[x].d @ _inv(b1[x]),
        )
        for x in g.objects
    }
    rho1 = {}
    rho0 = {}
    for f, (x, y) in g.arrows.items():
        rho1[f] = b1[y] @ r.rho1[f] @ _inv(b1[x])
        rho0[f] = b0[y] @ r.rho0[f] @ _inv(b0[x])
    gamma = {}
    for h, a in g.composable_pairs():
        x = g.src(a)
        z = g.tgt(h)
        gamma[(h, a)] = b1[z] @ r.gamma[(h, a)] @ _inv(b0[x])
    moved = Ruth2(g, fibers, rho1, rho0, gamma)
    fwd = RuthMorphism(
        r,
        moved,
        b1,
        b0,
        {a: RatMatrix.zeros(fibers[g.tgt(a)].dim1, r.fibers[g.src(a)].dim0) for a in g.arrows},
    )
    return moved, fwd


def rand_ruth(rng: random.Random, g: FinGroupoid, style: str | None = None) -> Ruth2:
    """A random valid representation up to homotopy in one of three styles:
    doubled pseudo-representation, strict conjugation, or a sheared strict
    one (nonzero corrections over nontrivial homology)."""
    style = style or rng.choice(["double", "strict", "sheared"])
    if style == "double":
        return rand_double_ruth(rng, g)
    base = rand_fiber_with_homology(rng, rng.randint(0, 1), rng.randint(0, 1), 1)
    r = rand_strict_ruth(rng, g, base)
    if style == "sheared":
        r, _ = rand_gauge(rng, r)
    return r


def rand_ruth_morphism(rng: random.Random, r: Ruth2) -> RuthMorphism:
    """A morphism with invertible components and nonzero homotopies."""
    sheared, back = rand_gauge(rng, r)
    moved, fwd = rand_transport(rng, r)
    return compose_morphisms(fwd, back)


def perturb_correction(rng: random.Random, r: Ruth2):
    """Add a homotopy-kernel element to one correction matrix.

    Chain and composition conditions survive; the cocycle identity breaks
    whenever perturbation is possible.  Returns (perturbed, pair) or None
    when every kernel is trivial."""
    g = r.groupoid
    units = {g.unit(x) for x in g.objects}
    pairs = [
        (h, a)
        for h, a in g.composable_pairs()
        if h not in units and a not in units
    ]
    rng.shuffle(pairs)
    for h, a in pairs:
        basis = homotopy_kernel_basis(r.fibers[g.src(a)], r.fibers[g.tgt(h)])
        if basis.cols == 0:
            continue
        coeffs = [Fraction(0)] * basis.cols
        coeffs[rng.randrange(basis.cols)] = Fraction(rng.randint(1, 3))
        col = basis @ RatMatrix.column(coeffs)
        old = r.gamma[(h, a)]
        delta = RatMatrix(old.rows, old.cols, col.entries)
        gamma = dict(r.gamma)
        gamma[(h, a)] = old + delta
        return Ruth2(g, dict(r.fibers), dict(r.rho1), dict(r.rho0), gamma), (h, a)
    return None
