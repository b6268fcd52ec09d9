"""Heisenberg group arithmetic in (x, y, z) coordinates.

A triple (x, y, z) stands for z^z y^y x^x. Product:
    (x, y, z) * (a, b, c) = (x + a, y + b, z + c + x*b)
Neighbors always act on the left: s*h.
"""
from __future__ import annotations

from typing import NamedTuple

# coordinates are kept inside signed 64-bit range
INT_MAX = 2**63 - 1
INT_MIN = -(2**63)


class GroupOverflow(ArithmeticError):
    pass


def _chk(v: int) -> int:
    if v > INT_MAX or v < INT_MIN:
        raise GroupOverflow(f"coordinate {v} outside int64")
    return v


class Site(NamedTuple):
    x: int
    y: int
    z: int


IDENTITY = Site(0, 0, 0)
GEN = {
    "X": Site(1, 0, 0),
    "Y": Site(0, 1, 0),
    "Z": Site(0, 0, 1),
}


def mul(a, b) -> Site:
    return Site(
        _chk(a[0] + b[0]),
        _chk(a[1] + b[1]),
        _chk(a[2] + b[2] + _chk(a[0] * b[1])),
    )


def inv(a) -> Site:
    x, y, z = a
    # (x,y,z)*(−x,−y,c) = (0,0,z+c−xy)  =>  c = xy − z
    return Site(_chk(-x), _chk(-y), _chk(_chk(x * y) - z))


def neighbor(h, generator: str, sign: int = 1) -> Site:
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    g = GEN[generator]
    if sign < 0:
        g = inv(g)
    return mul(g, h)


def commutator(a, b) -> Site:
    return mul(mul(a, b), mul(inv(a), inv(b)))
