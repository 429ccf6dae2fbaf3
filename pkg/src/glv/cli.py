"""Command line interface over the JSON document format.

Verbs: verify, convert, fill, generate, nerve.  Exit codes: 0 when the
requested operation succeeds, 1 when the document is well formed but
violates a law (one line per violated equation) or a requested filler or
example does not exist, 2 on unreadable files, malformed documents and
kind mismatches.
"""

from __future__ import annotations

import random
import sys
from fractions import Fraction
from pathlib import Path

import click

from . import documents as docs
from .documents import DocumentError
from .groupoid import action_groupoid, cyclic_group, pair_groupoid, verify_groupoid
from .laxmaps import LaxTransformation, verify_lax_transformation
from .nerve import (
    GLHandle,
    NoFillerError,
    TableHandle,
    enumerate_nerve,
    fill_horn,
    validate_horn,
    validate_simplex,
)
from .ruth import (
    NotQuasiIsoError,
    as_lax_functor,
    double_rep,
    lines_projection_rep,
    lines_projection_scalars,
    morphism_to_transformation,
    pseudofunctor_to_ruth,
    ruth_to_pseudofunctor,
    transformation_to_morphism,
    verify_morphism,
    verify_pseudofunctor,
    verify_ruth,
)
from .sampling import rand_double_ruth
from .twocat import Fin2Groupoid, delooping, verify_2category, verify_2groupoid


def _structural(message: str):
    click.echo(f"error: {message}")
    sys.exit(2)


def _semantic(lines) -> None:
    for line in lines:
        click.echo(str(line))
    sys.exit(1)


def _read(path: str):
    try:
        text = Path(path).read_text()
    except OSError as e:
        _structural(f"cannot read {path}: {e}")
    try:
        return docs.load_document(text)
    except DocumentError as e:
        _structural(str(e))


def _write(text: str, out: str | None) -> None:
    if out is None:
        click.echo(text, nl=False)
        return
    try:
        Path(out).write_text(text)
    except OSError as e:
        _structural(f"cannot write {out}: {e}")


def _handle(kind: str, cat):
    return GLHandle() if kind == "gl" else TableHandle(cat)


@click.group()
def main():
    """Exact arithmetic for 2-term complexes, their 2-groupoid, nerves and
    representations up to homotopy of finite groupoids."""


# ---------------------------------------------------------------------------
# verify


def _verify_payload(kind: str, payload: dict):
    if kind == "groupoid":
        return verify_groupoid(docs.decode_groupoid(payload))
    if kind == "bundle":
        docs.decode_bundle(payload)
        return []
    if kind == "two-category":
        c = docs.decode_two_category(payload)
        if isinstance(c, Fin2Groupoid):
            return verify_2groupoid(c)
        return verify_2category(c)
    if kind == "ruth":
        return verify_ruth(docs.decode_ruth(payload))
    if kind == "functor":
        return verify_pseudofunctor(docs.decode_functor(payload))
    if kind == "simplex":
        handle_kind, s, cat = docs.decode_simplex(payload)
        return validate_simplex(_handle(handle_kind, cat), s)
    if kind == "horn":
        handle_kind, h, cat = docs.decode_horn(payload)
        return validate_horn(_handle(handle_kind, cat), h)
    style = docs.morphism_style(payload)
    if style == "ruth":
        return verify_morphism(docs.decode_ruth_morphism(payload))
    src, dst, at_obj, at_arrow = docs.decode_lax_morphism(payload)
    h = LaxTransformation(at_obj, at_arrow)
    return verify_lax_transformation(
        h, as_lax_functor(src), as_lax_functor(dst), GLHandle()
    )


@main.command()
@click.argument("path", type=click.Path())
@click.option("--kind", type=click.Choice(docs.KINDS), help="require this document kind")
def verify(path, kind):
    """Check a document against the laws of the structure it describes."""
    got, payload = _read(path)
    if kind is not None and got != kind:
        _structural(f"document is a {got}, expected {kind}")
    try:
        bad = _verify_payload(got, payload)
    except DocumentError as e:
        _structural(str(e))
    except ValueError as e:
        _semantic([e])
    if bad:
        _semantic(bad)
    click.echo(f"ok: {got}")


# ---------------------------------------------------------------------------
# convert

DIRECTIONS = ("ruth-to-functor", "functor-to-ruth", "morphism-to-lax", "lax-to-morphism")


def _convert(direction: str, payload: dict) -> tuple[str, dict]:
    if direction == "ruth-to-functor":
        r = docs.decode_ruth(payload)
        bad = verify_ruth(r)
        if bad:
            _semantic(bad)
        return "functor", docs.encode_functor(ruth_to_pseudofunctor(r))
    if direction == "functor-to-ruth":
        p = docs.decode_functor(payload)
        bad = verify_pseudofunctor(p)
        if bad:
            _semantic(bad)
        return "ruth", docs.encode_ruth(pseudofunctor_to_ruth(p))
    if direction == "morphism-to-lax":
        m = docs.decode_ruth_morphism(payload)
        bad = verify_morphism(m)
        if bad:
            _semantic(bad)
        h = morphism_to_transformation(m)
        src = ruth_to_pseudofunctor(m.src)
        dst = ruth_to_pseudofunctor(m.dst)
        return "morphism", docs.encode_lax_morphism(src, dst, h.at_obj, h.at_arrow)
    src, dst, at_obj, at_arrow = docs.decode_lax_morphism(payload)
    h = LaxTransformation(at_obj, at_arrow)
    bad = verify_lax_transformation(
        h, as_lax_functor(src), as_lax_functor(dst), GLHandle()
    )
    if bad:
        _semantic(bad)
    m = transformation_to_morphism(h, pseudofunctor_to_ruth(src), pseudofunctor_to_ruth(dst))
    return "morphism", docs.encode_ruth_morphism(m)


@main.command()
@click.argument("path", type=click.Path())
@click.option("--direction", required=True, type=click.Choice(DIRECTIONS))
@click.option("--out", type=click.Path(), help="write here instead of stdout")
def convert(path, direction, out):
    """Convert between the matrix and functor presentations.

    The input is verified first; converting a converted document back
    reproduces it byte for byte."""
    kind, payload = _read(path)
    want = "morphism" if direction.startswith(("morphism", "lax")) else direction.split("-")[0]
    if kind != want:
        _structural(f"document is a {kind}, but {direction} needs a {want}")
    if kind == "morphism":
        style = docs.morphism_style(payload)
        need = "ruth" if direction == "morphism-to-lax" else "lax"
        if style != need:
            _structural(f"morphism has style {style}, but {direction} needs style {need}")
    try:
        out_kind, out_payload = _convert(direction, payload)
    except DocumentError as e:
        _structural(str(e))
    except NotQuasiIsoError as e:
        _semantic([f"not a quasi-isomorphism: {e}"])
    except ValueError as e:
        _semantic([e])
    _write(docs.dump_document(out_kind, out_payload), out)


# ---------------------------------------------------------------------------
# fill


@main.command()
@click.argument("path", type=click.Path())
@click.option("--out", type=click.Path(), help="write here instead of stdout")
@click.option(
    "--handle",
    "handle_kind",
    type=click.Choice(["gl", "table"]),
    help="require the horn to live over this handle",
)
def fill(path, out, handle_kind):
    """Fill a horn, writing the completed simplex."""
    kind, payload = _read(path)
    if kind != "horn":
        _structural(f"document is a {kind}, expected horn")
    try:
        got, horn, cat = docs.decode_horn(payload)
    except DocumentError as e:
        _structural(str(e))
    except ValueError as e:
        _semantic([e])
    if handle_kind is not None and got != handle_kind:
        _structural(f"horn lives over the {got} handle, expected {handle_kind}")
    try:
        s = fill_horn(_handle(got, cat), horn)
    except NoFillerError as e:
        _semantic([f"no filler: {e}"])
    _write(docs.dump_document("simplex", docs.encode_simplex(s, cat)), out)


# ---------------------------------------------------------------------------
# generate

EXAMPLES = ("pair", "action", "delooping", "lines-projection", "doubling")


def _parse_lines(text: str):
    out = []
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        parts = chunk.split(",")
        if len(parts) != 2:
            raise ValueError(f"bad line {chunk!r}: expected two coordinates")
        out.append((Fraction(parts[0].strip()), Fraction(parts[1].strip())))
    if not out:
        raise ValueError("no lines given")
    return out


def _generate(example, seed, points, n, lines) -> tuple[str, dict]:
    if example == "pair":
        names = [p.strip() for p in points.split(",") if p.strip()]
        if not names or len(set(names)) != len(names):
            raise ValueError("pair needs distinct, nonempty point names")
        return "groupoid", docs.encode_groupoid(pair_groupoid(names))
    if example == "action":
        if n < 1:
            raise ValueError("action needs a group order of at least 1")
        els, mul, unit = cyclic_group(n)
        return "groupoid", docs.encode_groupoid(action_groupoid(els, mul, unit, els, mul))
    if example == "delooping":
        if n < 1:
            raise ValueError("delooping needs a group order of at least 1")
        els, mul, unit = cyclic_group(n)
        return "two-category", docs.encode_two_category(delooping(els, mul, unit))
    if example == "lines-projection":
        r = lines_projection_rep(_parse_lines(lines))
        return "ruth", docs.encode_ruth(r)
    if seed != 0:
        rng = random.Random(seed)
        r = rand_double_ruth(rng, pair_groupoid(["p0", "p1", "p2"]))
        return "ruth", docs.encode_ruth(r)
    data = _parse_lines(lines)
    scalars = lines_projection_scalars(data)
    g = pair_groupoid([f"l{i}" for i in range(len(data))])
    return "ruth", docs.encode_ruth(double_rep(g, scalars))


@main.command()
@click.argument("example", type=click.Choice(EXAMPLES))
@click.option("--out", type=click.Path(), help="write here instead of stdout")
@click.option("--seed", type=int, default=0, help="doubling: nonzero seeds a random input")
@click.option("--points", default="a,b,c", help="pair: comma separated point names")
@click.option("--n", type=int, default=3, help="action, delooping: order of the cyclic group")
@click.option(
    "--lines",
    default="1,0;1,1;2,1",
    help="lines-projection, doubling: semicolon separated plane vectors",
)
def generate(example, out, seed, points, n, lines):
    """Write a worked example document.

    lines-projection deliberately emits a pseudo-representation whose
    composition defect cannot be corrected on one-dimensional fibers, so
    verify rejects it; doubling emits the repaired representation."""
    try:
        kind, payload = _generate(example, seed, points, n, lines)
    except (ValueError, ZeroDivisionError) as e:
        _semantic([e])
    _write(docs.dump_document(kind, payload), out)


# ---------------------------------------------------------------------------
# nerve


@main.command()
@click.argument("path", type=click.Path())
@click.option("--level", type=int, default=3, help="enumerate levels up to here")
def nerve(path, level):
    """Enumerate and validate the nerve of a two-category document."""
    kind, payload = _read(path)
    if kind != "two-category":
        _structural(f"document is a {kind}, expected two-category")
    try:
        c = docs.decode_two_category(payload)
    except DocumentError as e:
        _structural(str(e))
    bad = verify_2groupoid(c) if isinstance(c, Fin2Groupoid) else verify_2category(c)
    if bad:
        _semantic(bad)
    if level < 0:
        _semantic(["level must not be negative"])
    handle = TableHandle(c)
    for lv in range(level + 1):
        simplices = enumerate_nerve(handle, lv)
        for s in simplices:
            broken = validate_simplex(handle, s)
            if broken:
                _semantic(broken)
        click.echo(f"level {lv}: {len(simplices)} simplices")


if __name__ == "__main__":
    main()
