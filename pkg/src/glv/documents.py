"""Reading and writing the JSON documents used by the command line tool.

One file holds one document: a JSON object with exactly the fields "kind",
"version" and "payload".  The version is the string "1".  Scalars are
strings "p/q" (or just "p" for integers); matrices are nested arrays of
such strings, row by row, with their shapes coming from the dimension data
next to them, so zero-sized matrices survive a round trip.  dump_document
writes keys in sorted order and list-valued tables in a fixed order, which
makes the output canonical: converting a document twice reproduces the
first conversion byte for byte.

Structural problems, such as missing or unknown fields, malformed scalars,
wrong matrix shapes and names that do not resolve, raise DocumentError.
Payloads that are well formed but violate an equation of the objects they
describe either surface through the verifiers or, for the checked GL
constructors, as ValueError naming the offending piece.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Mapping, Sequence

from .chain2 import ChainMap2, Fiber2
from .gl2 import GL2Cell, GLArrow, GLObject, compose_arrows
from .groupoid import FinGroupoid
from .linalg import RatMatrix
from .nerve import Horn, SimplexLabel, make_horn, make_simplex
from .ruth import PseudoFunctorGL, Ruth2, RuthMorphism
from .twocat import Fin2Cat, Fin2Groupoid

VERSION = "1"

KINDS = (
    "groupoid",
    "bundle",
    "ruth",
    "functor",
    "two-category",
    "simplex",
    "horn",
    "morphism",
)


class DocumentError(Exception):
    """A document is structurally malformed."""


# ---------------------------------------------------------------------------
# low level shapes


def _as_dict(obj, where: str) -> dict:
    if not isinstance(obj, dict):
        raise DocumentError(f"{where}: expected an object")
    return obj


def _as_list(obj, where: str) -> list:
    if not isinstance(obj, list):
        raise DocumentError(f"{where}: expected an array")
    return obj


def _as_str(obj, where: str) -> str:
    if not isinstance(obj, str):
        raise DocumentError(f"{where}: expected a string")
    return obj


def _as_int(obj, where: str) -> int:
    if not isinstance(obj, int) or isinstance(obj, bool):
        raise DocumentError(f"{where}: expected an integer")
    return obj


def _fields(obj, where: str, required: Sequence[str], optional: Sequence[str] = ()):
    """Check that obj is an object with exactly the given fields."""
    d = _as_dict(obj, where)
    for name in required:
        if name not in d:
            raise DocumentError(f"{where}: missing field {name!r}")
    known = set(required) | set(optional)
    for name in d:
        if name not in known:
            raise DocumentError(f"{where}: unknown field {name!r}")
    return d


def _str_dict(obj, where: str) -> dict:
    d = _as_dict(obj, where)
    return {k: _as_str(v, f"{where}.{k}") for k, v in d.items()}


def _str_list(obj, where: str) -> list:
    return [_as_str(v, f"{where}[{i}]") for i, v in enumerate(_as_list(obj, where))]


# ---------------------------------------------------------------------------
# scalars and matrices


def scalar_to_str(x: Fraction) -> str:
    return str(Fraction(x))


def scalar_from_str(s, where: str) -> Fraction:
    text = _as_str(s, where)
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as e:
        raise DocumentError(f"{where}: bad scalar {text!r}: {e}") from e


def matrix_to_lists(m: RatMatrix) -> list:
    return [
        [scalar_to_str(m.entry(i, j)) for j in range(m.cols)] for i in range(m.rows)
    ]


def matrix_from_lists(obj, rows: int, cols: int, where: str) -> RatMatrix:
    data = _as_list(obj, where)
    if len(data) != rows:
        raise DocumentError(f"{where}: expected {rows} rows, found {len(data)}")
    entries = []
    for i, row in enumerate(data):
        row = _as_list(row, f"{where}[{i}]")
        if len(row) != cols:
            raise DocumentError(
                f"{where}[{i}]: expected {cols} entries, found {len(row)}"
            )
        entries.extend(scalar_from_str(v, f"{where}[{i}][{j}]") for j, v in enumerate(row))
    return RatMatrix(rows, cols, tuple(entries))


# ---------------------------------------------------------------------------
# shared pieces: fibers, endpoint maps, pair-keyed tables


def fiber_to_json(f: Fiber2) -> dict:
    return {"dim1": f.dim1, "dim0": f.dim0, "d": matrix_to_lists(f.d)}


def fiber_from_json(obj, where: str) -> Fiber2:
    d = _fields(obj, where, ("dim1", "dim0", "d"))
    dim1 = _as_int(d["dim1"], f"{where}.dim1")
    dim0 = _as_int(d["dim0"], f"{where}.dim0")
    if dim1 < 0 or dim0 < 0:
        raise DocumentError(f"{where}: negative dimension")
    return Fiber2(dim1, dim0, matrix_from_lists(d["d"], dim0, dim1, f"{where}.d"))


def _endpoints_from_json(obj, where: str) -> dict:
    """An object mapping names to [src, tgt] pairs."""
    out = {}
    for name, val in _as_dict(obj, where).items():
        pair = _str_list(val, f"{where}.{name}")
        if len(pair) != 2:
            raise DocumentError(f"{where}.{name}: expected [source, target]")
        out[name] = (pair[0], pair[1])
    return out


def _endpoints_to_json(table: Mapping) -> dict:
    return {name: [s, t] for name, (s, t) in table.items()}


def _pairs_to_json(table: Mapping) -> list:
    """A dict keyed by string pairs, as a sorted array of triples."""
    return [[h, g, v] for (h, g), v in sorted(table.items())]


def _pairs_from_json(obj, where: str) -> dict:
    out = {}
    for i, item in enumerate(_as_list(obj, where)):
        triple = _str_list(item, f"{where}[{i}]")
        if len(triple) != 3:
            raise DocumentError(f"{where}[{i}]: expected [left, right, result]")
        key = (triple[0], triple[1])
        if key in out:
            raise DocumentError(f"{where}[{i}]: duplicate pair {key}")
        out[key] = triple[2]
    return out


def _pair_matrices_to_json(table: Mapping) -> list:
    return [[h, g, matrix_to_lists(m)] for (h, g), m in sorted(table.items())]


def _pair_matrices_from_json(obj, where: str) -> dict:
    """A dict keyed by string pairs with raw (unshaped) matrix values."""
    out = {}
    for i, item in enumerate(_as_list(obj, where)):
        triple = _as_list(item, f"{where}[{i}]")
        if len(triple) != 3:
            raise DocumentError(f"{where}[{i}]: expected [left, right, matrix]")
        h = _as_str(triple[0], f"{where}[{i}][0]")
        g = _as_str(triple[1], f"{where}[{i}][1]")
        if (h, g) in out:
            raise DocumentError(f"{where}[{i}]: duplicate pair {(h, g)}")
        out[(h, g)] = triple[2]
    return out


# ---------------------------------------------------------------------------
# groupoid


def encode_groupoid(g: FinGroupoid) -> dict:
    return {
        "objects": list(g.objects),
        "arrows": _endpoints_to_json(g.arrows),
        "compose": _pairs_to_json(g.comp),
        "units": dict(g.units),
        "inverses": dict(g.inv),
    }


def decode_groupoid(obj, where: str = "payload") -> FinGroupoid:
    d = _fields(obj, where, ("objects", "arrows", "compose", "units", "inverses"))
    objects = tuple(_str_list(d["objects"], f"{where}.objects"))
    arrows = _endpoints_from_json(d["arrows"], f"{where}.arrows")
    comp = _pairs_from_json(d["compose"], f"{where}.compose")
    units = _str_dict(d["units"], f"{where}.units")
    inv = _str_dict(d["inverses"], f"{where}.inverses")
    for a, (s, t) in arrows.items():
        for x in (s, t):
            if x not in objects:
                raise DocumentError(f"{where}.arrows.{a}: unknown object {x!r}")
    for (h, g), r in comp.items():
        for a in (h, g, r):
            if a not in arrows:
                raise DocumentError(f"{where}.compose: unknown arrow {a!r}")
    for x, u in units.items():
        if x not in objects:
            raise DocumentError(f"{where}.units: unknown object {x!r}")
        if u not in arrows:
            raise DocumentError(f"{where}.units.{x}: unknown arrow {u!r}")
    for a, b in inv.items():
        if a not in arrows or b not in arrows:
            raise DocumentError(f"{where}.inverses: unknown arrow")
    return FinGroupoid(objects, arrows, comp, units, inv)


# ---------------------------------------------------------------------------
# bundle


def encode_bundle(fibers: Mapping) -> dict:
    return {
        "base": sorted(fibers),
        "fibers": {x: fiber_to_json(f) for x, f in fibers.items()},
    }


def decode_bundle(obj, where: str = "payload") -> dict:
    d = _fields(obj, where, ("base", "fibers"))
    base = _str_list(d["base"], f"{where}.base")
    raw = _as_dict(d["fibers"], f"{where}.fibers")
    if set(raw) != set(base):
        raise DocumentError(f"{where}.fibers: keys do not match the base points")
    return {x: fiber_from_json(raw[x], f"{where}.fibers.{x}") for x in base}


# ---------------------------------------------------------------------------
# two-category


def encode_two_category(c: Fin2Cat) -> dict:
    out = {
        "objects": list(c.objects),
        "arrows": _endpoints_to_json(c.arrows),
        "cells": _endpoints_to_json(c.cells),
        "compose": _pairs_to_json(c.comp1),
        "hcompose": _pairs_to_json(c.hcomp),
        "vcompose": _pairs_to_json(c.vcomp),
        "unit_arrows": dict(c.unit_arrow),
        "unit_cells": dict(c.unit_cell),
    }
    if isinstance(c, Fin2Groupoid):
        out["cell_inverses"] = dict(c.inv2)
    return out


def decode_two_category(obj, where: str = "payload") -> Fin2Cat:
    d = _fields(
        obj,
        where,
        (
            "objects",
            "arrows",
            "cells",
            "compose",
            "hcompose",
            "vcompose",
            "unit_arrows",
            "unit_cells",
        ),
        optional=("cell_inverses",),
    )
    objects = tuple(_str_list(d["objects"], f"{where}.objects"))
    arrows = _endpoints_from_json(d["arrows"], f"{where}.arrows")
    cells = _endpoints_from_json(d["cells"], f"{where}.cells")
    comp1 = _pairs_from_json(d["compose"], f"{where}.compose")
    hcomp = _pairs_from_json(d["hcompose"], f"{where}.hcompose")
    vcomp = _pairs_from_json(d["vcompose"], f"{where}.vcompose")
    unit_arrow = _str_dict(d["unit_arrows"], f"{where}.unit_arrows")
    unit_cell = _str_dict(d["unit_cells"], f"{where}.unit_cells")
    for f, (s, t) in arrows.items():
        if s not in objects or t not in objects:
            raise DocumentError(f"{where}.arrows.{f}: unknown object")
    for r, (s, t) in cells.items():
        if s not in arrows or t not in arrows:
            raise DocumentError(f"{where}.cells.{r}: unknown arrow")
    for label, table, names in (
        ("compose", comp1, arrows),
        ("hcompose", hcomp, cells),
        ("vcompose", vcomp, cells),
    ):
        for (a, b), c_ in table.items():
            if a not in names or b not in names or c_ not in names:
                raise DocumentError(f"{where}.{label}: unknown name")
    for x, f in unit_arrow.items():
        if x not in objects or f not in arrows:
            raise DocumentError(f"{where}.unit_arrows: unknown name")
    for f, r in unit_cell.items():
        if f not in arrows or r not in cells:
            raise DocumentError(f"{where}.unit_cells: unknown name")
    if "cell_inverses" in d:
        inv2 = _str_dict(d["cell_inverses"], f"{where}.cell_inverses")
        for r, s in inv2.items():
            if r not in cells or s not in cells:
                raise DocumentError(f"{where}.cell_inverses: unknown cell")
        return Fin2Groupoid(
            objects, arrows, cells, comp1, hcomp, vcomp, unit_arrow, unit_cell, inv2
        )
    return Fin2Cat(objects, arrows, cells, comp1, hcomp, vcomp, unit_arrow, unit_cell)


# ---------------------------------------------------------------------------
# representations up to homotopy and pseudo-functors


def _check_fibers_total(fibers: dict, g: FinGroupoid, where: str) -> None:
    if set(fibers) != set(g.objects):
        raise DocumentError(f"{where}: keys do not match the groupoid objects")


def _arrow_matrices_from_json(obj, g, fibers, degree: int, where: str) -> dict:
    """Per-arrow matrices in one degree, shaped by the surrounding fibers."""
    out = {}
    for a, raw in _as_dict(obj, where).items():
        if a not in g.arrows:
            raise DocumentError(f"{where}: unknown arrow {a!r}")
        x, y = g.arrows[a]
        if degree == 1:
            rows, cols = fibers[y].dim1, fibers[x].dim1
        else:
            rows, cols = fibers[y].dim0, fibers[x].dim0
        out[a] = matrix_from_lists(raw, rows, cols, f"{where}.{a}")
    return out


def _corrections_from_json(obj, g, fibers, where: str) -> dict:
    """Pair-keyed degree-raising matrices V0(src g) -> V1(tgt h)."""
    out = {}
    for (h, a), raw in _pair_matrices_from_json(obj, where).items():
        if h not in g.arrows or a not in g.arrows:
            raise DocumentError(f"{where}: unknown arrow in pair {(h, a)}")
        if g.src(h) != g.tgt(a):
            raise DocumentError(f"{where}: pair {(h, a)} is not composable")
        rows = fibers[g.tgt(h)].dim1
        cols = fibers[g.src(a)].dim0
        out[(h, a)] = matrix_from_lists(raw, rows, cols, f"{where}[{h},{a}]")
    return out


def encode_ruth(r: Ruth2) -> dict:
    return {
        "groupoid": encode_groupoid(r.groupoid),
        "fibers": {x: fiber_to_json(f) for x, f in r.fibers.items()},
        "rho1": {a: matrix_to_lists(m) for a, m in r.rho1.items()},
        "rho0": {a: matrix_to_lists(m) for a, m in r.rho0.items()},
        "gamma": _pair_matrices_to_json(r.gamma),
    }


def decode_ruth(obj, where: str = "payload") -> Ruth2:
    d = _fields(obj, where, ("groupoid", "fibers", "rho1", "rho0", "gamma"))
    g = decode_groupoid(d["groupoid"], f"{where}.groupoid")
    raw_fibers = _as_dict(d["fibers"], f"{where}.fibers")
    _check_fibers_total(raw_fibers, g, f"{where}.fibers")
    fibers = {x: fiber_from_json(v, f"{where}.fibers.{x}") for x, v in raw_fibers.items()}
    rho1 = _arrow_matrices_from_json(d["rho1"], g, fibers, 1, f"{where}.rho1")
    rho0 = _arrow_matrices_from_json(d["rho0"], g, fibers, 0, f"{where}.rho0")
    gamma = _corrections_from_json(d["gamma"], g, fibers, f"{where}.gamma")
    return Ruth2(g, fibers, rho1, rho0, gamma)


def encode_functor(p: PseudoFunctorGL) -> dict:
    return {
        "groupoid": encode_groupoid(p.groupoid),
        "fibers": {x: fiber_to_json(o.fiber) for x, o in p.at_obj.items()},
        "arrows": {
            a: {"a1": matrix_to_lists(f.a1), "a0": matrix_to_lists(f.a0)}
            for a, f in p.at_arrow.items()
        },
        "compare": _pair_matrices_to_json({k: c.r for k, c in p.comp_cell.items()}),
    }


def decode_functor(obj, where: str = "payload") -> PseudoFunctorGL:
    """Rebuild a pseudo-functor through the checked GL constructors.

    Shapes are validated here and raise DocumentError; the chain map and
    homotopy equations are enforced by the constructors and surface as
    ValueError naming the arrow or pair, so that verification can report
    them as violations rather than parse failures."""
    d = _fields(obj, where, ("groupoid", "fibers", "arrows", "compare"))
    g = decode_groupoid(d["groupoid"], f"{where}.groupoid")
    raw_fibers = _as_dict(d["fibers"], f"{where}.fibers")
    _check_fibers_total(raw_fibers, g, f"{where}.fibers")
    fibers = {x: fiber_from_json(v, f"{where}.fibers.{x}") for x, v in raw_fibers.items()}
    at_obj = {x: GLObject(x, f) for x, f in fibers.items()}

    raw_arrows = _as_dict(d["arrows"], f"{where}.arrows")
    if set(raw_arrows) != set(g.arrows):
        raise DocumentError(f"{where}.arrows: keys do not match the groupoid arrows")
    at_arrow = {}
    for a in sorted(raw_arrows):
        spot = f"{where}.arrows.{a}"
        pair = _fields(raw_arrows[a], spot, ("a1", "a0"))
        x, y = g.arrows[a]
        a1 = matrix_from_lists(pair["a1"], fibers[y].dim1, fibers[x].dim1, f"{spot}.a1")
        a0 = matrix_from_lists(pair["a0"], fibers[y].dim0, fibers[x].dim0, f"{spot}.a0")
        try:
            at_arrow[a] = GLArrow(at_obj[x], at_obj[y], ChainMap2(fibers[x], fibers[y], a1, a0))
        except ValueError as e:
            raise ValueError(f"arrow {a} does not give a valid map: {e}") from e

    comp_cell = {}
    for (h, a), m in _corrections_from_json(
        d["compare"], g, fibers, f"{where}.compare"
    ).items():
        try:
            comp_cell[(h, a)] = GL2Cell(
                at_arrow[g.compose(h, a)],
                compose_arrows(at_arrow[h], at_arrow[a]),
                m,
            )
        except ValueError as e:
            raise ValueError(f"pair ({h}, {a}) does not give a valid correction: {e}") from e
    return PseudoFunctorGL(g, at_obj, at_arrow, comp_cell)


# ---------------------------------------------------------------------------
# simplices and horns


def _index_key(indices: tuple) -> str:
    return ",".join(str(i) for i in indices)


def _indices_from_key(key: str, length: int, where: str) -> tuple:
    parts = key.split(",")
    out = []
    for p in parts:
        if not p.isdigit():
            raise DocumentError(f"{where}: bad index key {key!r}")
        out.append(int(p))
    if len(out) != length or list(out) != sorted(out, reverse=True) or len(set(out)) != length:
        raise DocumentError(f"{where}: bad index key {key!r}")
    return tuple(out)


def _encode_simplex_tables(vertices, edges: Mapping, triangles: Mapping) -> dict:
    first = next(iter(vertices), None)
    if isinstance(first, GLObject):
        return {
            "handle": "gl",
            "vertices": [
                {"point": v.point, "fiber": fiber_to_json(v.fiber)} for v in vertices
            ],
            "edges": {
                _index_key(k): {
                    "a1": matrix_to_lists(f.a1),
                    "a0": matrix_to_lists(f.a0),
                }
                for k, f in edges.items()
            },
            "triangles": {
                _index_key(k): matrix_to_lists(c.r) for k, c in triangles.items()
            },
        }
    return {
        "handle": "table",
        "vertices": list(vertices),
        "edges": {_index_key(k): f for k, f in edges.items()},
        "triangles": {_index_key(k): c for k, c in triangles.items()},
    }


def encode_simplex(s: SimplexLabel, category: Fin2Cat | None = None) -> dict:
    out = _encode_simplex_tables(s.vertices, dict(s.edges), dict(s.triangles))
    if out["handle"] == "table":
        if category is None:
            raise ValueError("a table simplex needs its two-category to serialize")
        out["category"] = encode_two_category(category)
    return out


def encode_horn(h: Horn, category: Fin2Cat | None = None) -> dict:
    out = _encode_simplex_tables(h.vertices, dict(h.edges), dict(h.triangles))
    out["missing"] = h.k
    if out["handle"] == "table":
        if category is None:
            raise ValueError("a table horn needs its two-category to serialize")
        out["category"] = encode_two_category(category)
    return out


def _decode_gl_tables(d: dict, where: str):
    raw_vertices = _as_list(d["vertices"], f"{where}.vertices")
    objs = []
    for i, raw in enumerate(raw_vertices):
        spot = f"{where}.vertices[{i}]"
        v = _fields(raw, spot, ("point", "fiber"))
        objs.append(
            GLObject(_as_str(v["point"], f"{spot}.point"), fiber_from_json(v["fiber"], f"{spot}.fiber"))
        )
    edges = {}
    for key, raw in sorted(_as_dict(d["edges"], f"{where}.edges").items()):
        j, i = _indices_from_key(key, 2, f"{where}.edges.{key}")
        if j >= len(objs):
            raise DocumentError(f"{where}.edges.{key}: index out of range")
        spot = f"{where}.edges.{key}"
        pair = _fields(raw, spot, ("a1", "a0"))
        fi, fj = objs[i].fiber, objs[j].fiber
        a1 = matrix_from_lists(pair["a1"], fj.dim1, fi.dim1, f"{spot}.a1")
        a0 = matrix_from_lists(pair["a0"], fj.dim0, fi.dim0, f"{spot}.a0")
        try:
            edges[(j, i)] = GLArrow(objs[i], objs[j], ChainMap2(fi, fj, a1, a0))
        except ValueError as e:
            raise ValueError(f"edge ({j},{i}) does not give a valid map: {e}") from e
    triangles = {}
    for key, raw in sorted(_as_dict(d["triangles"], f"{where}.triangles").items()):
        k, j, i = _indices_from_key(key, 3, f"{where}.triangles.{key}")
        if k >= len(objs):
            raise DocumentError(f"{where}.triangles.{key}: index out of range")
        for pair in ((k, i), (k, j), (j, i)):
            if pair not in edges:
                raise DocumentError(f"{where}.triangles.{key}: edge {pair} is missing")
        m = matrix_from_lists(
            raw,
            objs[k].fiber.dim1,
            objs[i].fiber.dim0,
            f"{where}.triangles.{key}",
        )
        try:
            triangles[(k, j, i)] = GL2Cell(
                edges[(k, i)], compose_arrows(edges[(k, j)], edges[(j, i)]), m
            )
        except ValueError as e:
            raise ValueError(
                f"triangle ({k},{j},{i}) does not give a valid homotopy: {e}"
            ) from e
    return objs, edges, triangles, None


def _decode_table_tables(d: dict, where: str):
    if "category" not in d:
        raise DocumentError(f"{where}: a table document needs a category field")
    cat = decode_two_category(d["category"], f"{where}.category")
    vertices = _str_list(d["vertices"], f"{where}.vertices")
    for i, x in enumerate(vertices):
        if x not in cat.objects:
            raise DocumentError(f"{where}.vertices[{i}]: unknown object {x!r}")
    edges = {}
    for key, name in sorted(_str_dict(d["edges"], f"{where}.edges").items()):
        j, i = _indices_from_key(key, 2, f"{where}.edges.{key}")
        if name not in cat.arrows:
            raise DocumentError(f"{where}.edges.{key}: unknown arrow {name!r}")
        edges[(j, i)] = name
    triangles = {}
    for key, name in sorted(_str_dict(d["triangles"], f"{where}.triangles").items()):
        k, j, i = _indices_from_key(key, 3, f"{where}.triangles.{key}")
        if name not in cat.cells:
            raise DocumentError(f"{where}.triangles.{key}: unknown cell {name!r}")
        triangles[(k, j, i)] = name
    return vertices, edges, triangles, cat


def _decode_tables(d: dict, where: str):
    handle = _as_str(d["handle"], f"{where}.handle")
    if handle == "gl":
        return ("gl",) + _decode_gl_tables(d, where)
    if handle == "table":
        return ("table",) + _decode_table_tables(d, where)
    raise DocumentError(f"{where}.handle: expected 'gl' or 'table', found {handle!r}")


def decode_simplex(obj, where: str = "payload"):
    """Returns (handle kind, SimplexLabel, category or None)."""
    d = _fields(
        obj, where, ("handle", "vertices", "edges", "triangles"), optional=("category",)
    )
    kind, vertices, edges, triangles, cat = _decode_tables(d, where)
    if kind == "gl" and "category" in d:
        raise DocumentError(f"{where}: a gl document does not carry a category")
    try:
        return kind, make_simplex(vertices, edges, triangles), cat
    except ValueError as e:
        raise DocumentError(f"{where}: {e}") from e


def decode_horn(obj, where: str = "payload"):
    """Returns (handle kind, Horn, category or None)."""
    d = _fields(
        obj,
        where,
        ("handle", "missing", "vertices", "edges", "triangles"),
        optional=("category",),
    )
    k = _as_int(d["missing"], f"{where}.missing")
    kind, vertices, edges, triangles, cat = _decode_tables(d, where)
    if kind == "gl" and "category" in d:
        raise DocumentError(f"{where}: a gl document does not carry a category")
    n = len(vertices) - 1
    try:
        return kind, make_horn(n, k, vertices, edges, triangles), cat
    except ValueError as e:
        raise DocumentError(f"{where}: {e}") from e


# ---------------------------------------------------------------------------
# morphisms, in both presentations


def encode_ruth_morphism(m: RuthMorphism) -> dict:
    return {
        "style": "ruth",
        "source": encode_ruth(m.src),
        "target": encode_ruth(m.dst),
        "theta1": {x: matrix_to_lists(v) for x, v in m.theta1.items()},
        "theta0": {x: matrix_to_lists(v) for x, v in m.theta0.items()},
        "mu": {a: matrix_to_lists(v) for a, v in m.mu.items()},
    }


def encode_lax_morphism(src: PseudoFunctorGL, dst: PseudoFunctorGL, at_obj, at_arrow) -> dict:
    """A transformation between pseudo-functors: per-point arrows H_x and,
    for every groupoid arrow, the matrix of the 2-cell H_y rho(f) => rho'(f) H_x."""
    return {
        "style": "lax",
        "source": encode_functor(src),
        "target": encode_functor(dst),
        "components": {
            x: {"a1": matrix_to_lists(f.a1), "a0": matrix_to_lists(f.a0)}
            for x, f in at_obj.items()
        },
        "cells": {a: matrix_to_lists(c.r) for a, c in at_arrow.items()},
    }


def morphism_style(obj, where: str = "payload") -> str:
    d = _as_dict(obj, where)
    style = d.get("style")
    if style not in ("ruth", "lax"):
        raise DocumentError(f"{where}.style: expected 'ruth' or 'lax'")
    return style


def _point_matrices_from_json(obj, g, src_fibers, dst_fibers, degree, where) -> dict:
    out = {}
    for x, raw in _as_dict(obj, where).items():
        if x not in g.objects:
            raise DocumentError(f"{where}: unknown object {x!r}")
        if degree == 1:
            rows, cols = dst_fibers[x].dim1, src_fibers[x].dim1
        else:
            rows, cols = dst_fibers[x].dim0, src_fibers[x].dim0
        out[x] = matrix_from_lists(raw, rows, cols, f"{where}.{x}")
    return out


def decode_ruth_morphism(obj, where: str = "payload") -> RuthMorphism:
    d = _fields(obj, where, ("style", "source", "target", "theta1", "theta0", "mu"))
    if d["style"] != "ruth":
        raise DocumentError(f"{where}.style: expected 'ruth'")
    src = decode_ruth(d["source"], f"{where}.source")
    dst = decode_ruth(d["target"], f"{where}.target")
    if src.groupoid != dst.groupoid:
        raise DocumentError(f"{where}: source and target live over different groupoids")
    g = src.groupoid
    theta1 = _point_matrices_from_json(d["theta1"], g, src.fibers, dst.fibers, 1, f"{where}.theta1")
    theta0 = _point_matrices_from_json(d["theta0"], g, src.fibers, dst.fibers, 0, f"{where}.theta0")
    mu = {}
    for a, raw in _as_dict(d["mu"], f"{where}.mu").items():
        if a not in g.arrows:
            raise DocumentError(f"{where}.mu: unknown arrow {a!r}")
        x, y = g.arrows[a]
        mu[a] = matrix_from_lists(
            raw, dst.fibers[y].dim1, src.fibers[x].dim0, f"{where}.mu.{a}"
        )
    return RuthMorphism(src, dst, theta1, theta0, mu)


def decode_lax_morphism(obj, where: str = "payload"):
    """Returns (source functor, target functor, at_obj, at_arrow).

    at_obj maps each point to a GLArrow between the fibers; at_arrow maps
    each groupoid arrow f: x -> y to the GL2Cell H_y rho(f) => rho'(f) H_x.
    Component maps that fail to be quasi-isomorphisms, or cell matrices
    that fail the homotopy equations, surface as ValueError."""
    d = _fields(obj, where, ("style", "source", "target", "components", "cells"))
    if d["style"] != "lax":
        raise DocumentError(f"{where}.style: expected 'lax'")
    src = decode_functor(d["source"], f"{where}.source")
    dst = decode_functor(d["target"], f"{where}.target")
    if src.groupoid != dst.groupoid:
        raise DocumentError(f"{where}: source and target live over different groupoids")
    g = src.groupoid
    raw_comp = _as_dict(d["components"], f"{where}.components")
    if set(raw_comp) != set(g.objects):
        raise DocumentError(f"{where}.components: keys do not match the objects")
    at_obj = {}
    for x in sorted(raw_comp):
        spot = f"{where}.components.{x}"
        pair = _fields(raw_comp[x], spot, ("a1", "a0"))
        fx, gx = src.at_obj[x].fiber, dst.at_obj[x].fiber
        a1 = matrix_from_lists(pair["a1"], gx.dim1, fx.dim1, f"{spot}.a1")
        a0 = matrix_from_lists(pair["a0"], gx.dim0, fx.dim0, f"{spot}.a0")
        try:
            at_obj[x] = GLArrow(src.at_obj[x], dst.at_obj[x], ChainMap2(fx, gx, a1, a0))
        except ValueError as e:
            raise ValueError(f"component at {x} does not give a valid map: {e}") from e
    raw_cells = _as_dict(d["cells"], f"{where}.cells")
    at_arrow = {}
    for a in sorted(raw_cells):
        if a not in g.arrows:
            raise DocumentError(f"{where}.cells: unknown arrow {a!r}")
        x, y = g.arrows[a]
        m = matrix_from_lists(
            raw_cells[a],
            dst.at_obj[y].fiber.dim1,
            src.at_obj[x].fiber.dim0,
            f"{where}.cells.{a}",
        )
        try:
            at_arrow[a] = GL2Cell(
                compose_arrows(at_obj[y], src.at_arrow[a]),
                compose_arrows(dst.at_arrow[a], at_obj[x]),
                m,
            )
        except ValueError as e:
            raise ValueError(f"cell at {a} does not give a valid homotopy: {e}") from e
    return src, dst, at_obj, at_arrow


# ---------------------------------------------------------------------------
# whole documents


def dump_document(kind: str, payload: dict) -> str:
    if kind not in KINDS:
        raise ValueError(f"unknown document kind {kind!r}")
    doc = {"kind": kind, "version": VERSION, "payload": payload}
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def load_document(text: str):
    """Parse a document, returning (kind, payload) without decoding the payload."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise DocumentError(f"not valid JSON: {e}") from e
    d = _fields(doc, "document", ("kind", "version", "payload"))
    kind = _as_str(d["kind"], "document.kind")
    version = _as_str(d["version"], "document.version")
    if kind not in KINDS:
        raise DocumentError(f"document.kind: unknown kind {kind!r}")
    if version != VERSION:
        raise DocumentError(f"document.version: expected {VERSION!r}, found {version!r}")
    return kind, _as_dict(d["payload"], "document.payload")
