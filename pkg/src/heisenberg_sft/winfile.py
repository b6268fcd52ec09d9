"""Plain-text window files.

    # heisenberg-sft window
    version: 1
    variant: Omega
    box: x0:x1,y0:y1,z0:z1
    parity: even
    provenance: ...
    ---
    x y z | R <base> <rot>
    x y z | C <digit> <bold> <seg>
    x y z | S <letter>

Records run x-major, then y, then z.
"""
from __future__ import annotations

import io

import numpy as np

from .counter import CHAR_SEG, SEG_CHAR, VARIANTS, CounterSym
from .robinson import RobTile, tile
from .sft import SOFIC, SOFIC_LETTERS, Window, decode, encode, parse_box

MAGIC = "# heisenberg-sft window"
VERSION = "1"


class FormatError(ValueError):
    pass


def _record(sym) -> str:
    if isinstance(sym, RobTile):
        return f"R {sym.base} {sym.rot}"
    if isinstance(sym, CounterSym):
        return f"C {sym.digit} {int(sym.bold)} {SEG_CHAR[sym.seg]}"
    return f"S {sym}"


def dumps(w: Window) -> str:
    out = io.StringIO()
    out.write(f"{MAGIC}\nversion: {VERSION}\nvariant: {w.variant}\nbox: {w.box.text()}\n"
              f"parity: {w.parity}\nprovenance: {w.provenance}\n---\n")
    b = w.box
    recs = {c: _record(decode(c)) for c in np.unique(w.data).tolist()}
    for ix, x in enumerate(range(b.x0, b.x1 + 1)):
        for iy, y in enumerate(range(b.y0, b.y1 + 1)):
            row = w.data[ix, iy]
            for iz, z in enumerate(range(b.z0, b.z1 + 1)):
                out.write(f"{x} {y} {z} | {recs[int(row[iz])]}\n")
    return out.getvalue()


def _parse_sym(parts, lineno):
    try:
        kind = parts[0]
        if kind == "R" and len(parts) == 3:
            base, rot = int(parts[1]), int(parts[2])
            if not (1 <= base <= 14 and 0 <= rot <= 3):
                raise ValueError
            return tile(base, rot)
        if kind == "C" and len(parts) == 4:
            d, bold = int(parts[1]), int(parts[2])
            if d not in (0, 1) or bold not in (0, 1):
                raise ValueError
            return CounterSym(d, bool(bold), CHAR_SEG[parts[3]])
        if kind == "S" and len(parts) == 2 and parts[1] in SOFIC_LETTERS:
            return parts[1]
    except (ValueError, KeyError, IndexError):
        pass
    raise FormatError(f"line {lineno}: bad symbol record {' '.join(parts)!r}")


def loads(text: str) -> Window:
    lines = text.split("\n")
    if not lines or lines[0] != MAGIC:
        raise FormatError("missing header line")
    head = {}
    i = 1
    while i < len(lines) and lines[i] != "---":
        key, sep, val = lines[i].partition(": ")
        if not sep:
            key, sep, val = lines[i].partition(":")
        if not sep:
            raise FormatError(f"line {i + 1}: bad header entry")
        head[key.strip()] = val
        i += 1
    if i == len(lines):
        raise FormatError("no body separator")
    for k in ("version", "variant", "box", "parity"):
        if k not in head:
            raise FormatError(f"header lacks {k}")
    if head["version"].strip() != VERSION:
        raise FormatError(f"unsupported version {head['version']}")
    variant = head["variant"].strip()
    if variant not in VARIANTS + (SOFIC,):
        raise FormatError(f"unknown variant {variant}")
    try:
        box = parse_box(head["box"].strip())
    except ValueError as e:
        raise FormatError(str(e)) from None
    w = Window.empty(variant, box, parity=head["parity"].strip(),
                     provenance=head.get("provenance", ""))
    body = lines[i + 1:]
    if body and body[-1] == "":
        body = body[:-1]
    if len(body) != box.volume:
        raise FormatError(f"expected {box.volume} records, found {len(body)}")
    flat = w.data.reshape(-1)
    cache = {}
    for n, (site, line) in enumerate(zip(box.sites(), body)):
        lineno = i + 2 + n
        left, sep, right = line.partition(" | ")
        if not sep:
            raise FormatError(f"line {lineno}: missing separator")
        try:
            coords = tuple(int(t) for t in left.split())
        except ValueError:
            raise FormatError(f"line {lineno}: bad coordinates") from None
        if coords != tuple(site):
            raise FormatError(f"line {lineno}: expected site {tuple(site)}, got {coords}")
        if right not in cache:
            cache[right] = encode(_parse_sym(right.split(), lineno))
        flat[n] = cache[right]
    return w


def save(w: Window, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(dumps(w))


def load(path) -> Window:
    with open(path, encoding="utf-8") as f:
        return loads(f.read())
