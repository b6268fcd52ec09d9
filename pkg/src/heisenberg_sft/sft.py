"""Windows, symbol codes and the local rule checker.

A window stores int codes in an (nx, ny, nz) array:
    0..55      Robinson tile index (base-1)*4 + rot
    64..95     counter symbol 64 | digit<<4 | bold<<3 | seg
    128..133   sofic letters A, C, 0, 1, B0, B1
Neighbors act on the left: g*(x,y,z) = (x+a, y+b, z+c+a*y) for g=(a,b,c).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .counter import OMEGA, SEGS, TILDE, CounterSym, symbol_allowed, ADDITION_PATTERNS
from .group import Site
from .robinson import COMP_E, COMP_N, NTILES, TILES, RobTile

SOFIC = "Sofic"
SOFIC_LETTERS = ("A", "C", "0", "1", "B0", "B1")
CNT = 64
SOF = 128


class Box(NamedTuple):
    x0: int
    x1: int
    y0: int
    y1: int
    z0: int
    z1: int

    @property
    def shape(self):
        return (self.x1 - self.x0 + 1, self.y1 - self.y0 + 1, self.z1 - self.z0 + 1)

    @property
    def volume(self) -> int:
        a, b, c = self.shape
        return a * b * c

    def __contains__(self, s) -> bool:
        x, y, z = s
        return self.x0 <= x <= self.x1 and self.y0 <= y <= self.y1 and self.z0 <= z <= self.z1

    def sites(self):
        for x in range(self.x0, self.x1 + 1):
            for y in range(self.y0, self.y1 + 1):
                for z in range(self.z0, self.z1 + 1):
                    yield Site(x, y, z)

    def text(self) -> str:
        return f"{self.x0}:{self.x1},{self.y0}:{self.y1},{self.z0}:{self.z1}"


def parse_box(s: str) -> Box:
    parts = s.split(",")
    if len(parts) != 3:
        raise ValueError(f"box needs three ranges: {s!r}")
    vals = []
    for p in parts:
        lo, sep, hi = p.strip().rpartition(":")
        if not sep:
            raise ValueError(f"bad range {p!r}")
        lo, hi = int(lo), int(hi)
        if lo > hi:
            raise ValueError(f"empty range {p!r}")
        vals += [lo, hi]
    return Box(*vals)


def encode(sym) -> int:
    if isinstance(sym, RobTile):
        return sym.index
    if isinstance(sym, CounterSym):
        return CNT | sym.digit << 4 | int(sym.bold) << 3 | SEGS.index(sym.seg)
    if isinstance(sym, str) and sym in SOFIC_LETTERS:
        return SOF + SOFIC_LETTERS.index(sym)
    raise TypeError(f"not a symbol: {sym!r}")


def decode(code: int):
    code = int(code)
    if 0 <= code < NTILES:
        return TILES[code]
    if CNT <= code < CNT + 32 and (code & 7) < len(SEGS):
        return CounterSym((code >> 4) & 1, bool(code >> 3 & 1), SEGS[code & 7])
    if SOF <= code < SOF + len(SOFIC_LETTERS):
        return SOFIC_LETTERS[code - SOF]
    raise ValueError(f"bad symbol code {code}")


def valid_code(code: int) -> bool:
    try:
        decode(code)
        return True
    except ValueError:
        return False


@dataclass
class Window:
    variant: str
    box: Box
    data: np.ndarray
    parity: str = "even"
    provenance: str = ""

    def __post_init__(self):
        self.box = Box(*self.box)
        if self.data.shape != self.box.shape:
            raise ValueError(f"data shape {self.data.shape} != box {self.box.shape}")

    def __getitem__(self, s):
        x, y, z = s
        b = self.box
        return decode(self.data[x - b.x0, y - b.y0, z - b.z0])

    def __setitem__(self, s, sym):
        x, y, z = s
        b = self.box
        self.data[x - b.x0, y - b.y0, z - b.z0] = encode(sym)

    def __eq__(self, other):
        return (isinstance(other, Window) and self.variant == other.variant
                and self.box == other.box and self.parity == other.parity
                and np.array_equal(self.data, other.data))

    def copy(self) -> "Window":
        return Window(self.variant, self.box, self.data.copy(), self.parity, self.provenance)

    def items(self):
        for s in self.box.sites():
            yield s, self[s]

    def layer(self, x: int) -> np.ndarray:
        return self.data[x - self.box.x0]

    @classmethod
    def empty(cls, variant, box, **kw):
        return cls(variant, Box(*box), np.full(Box(*box).shape, -1, dtype=np.int16), **kw)


@dataclass(frozen=True, order=True)
class Violation:
    rule_id: str
    sites: tuple
    detail: str = field(default="", compare=False)


RULES = ("R-ALPHABET", "R-COSET", "R-ALT-X", "R-ROB-E", "R-ROB-N", "R-SEG-DIAG",
         "R-SEG-FWD", "R-CROSS-PROP", "R-LSB", "R-ADD", "R-MSB-DECOR", "R-OC1", "R-OC2")
OC_RULES = ("R-OC1", "R-OC2")

# supports as left-multiplier offsets (a, b, c)
_SUPPORT = {
    "R-ALPHABET": [(0, 0, 0)],
    "R-COSET": [(0, 0, 0), (0, 1, 0), (0, 0, 1)],
    "R-ALT-X": [(0, 0, 0), (1, 0, 0)],
    "R-ROB-E": [(0, 0, 0), (0, 1, 0)],
    "R-ROB-N": [(0, 0, 0), (0, 0, 1)],
    "R-SEG-DIAG": [(0, 0, 0), (0, -1, 1), (0, 1, -1)],
    "R-SEG-FWD": [(0, 0, 0), (0, 0, 1), (0, 0, -1)],
    "R-CROSS-PROP": [(0, 0, 0), (1, 0, 0), (-1, 0, 0)],
    "R-LSB": [(0, 0, 0), (0, 0, 1), (2, 0, 0)],
    "R-ADD": [(0, 0, 0), (0, 0, 1), (2, 0, 0), (2, 0, 1)],
    "R-MSB-DECOR": [(0, 0, 0), (2, 0, 0)],
    "R-OC1": [(0, 0, 0), (2, 0, 0), (0, 1, 0), (0, -1, 0)],
    "R-OC2": [(0, 0, 0), (2, 0, 0), (0, 1, 0), (0, -1, 0)],
}


def _left(off, h) -> Site:
    a, b, c = off
    x, y, z = h
    return Site(x + a, y + b, z + c + a * y)


def rule_support(rule_id: str, h) -> list:
    if rule_id not in _SUPPORT:
        raise KeyError(f"unknown rule {rule_id}")
    return [_left(o, h) for o in _SUPPORT[rule_id]]


# ---- lookup tables indexed by code (index 255 = outside the box) ----
_NONE = 255


def _lut(fn, dtype=bool):
    t = np.zeros(256, dtype=dtype)
    for c in range(256):
        if c != _NONE and valid_code(c):
            t[c] = fn(decode(c))
    return t


IS_ROB = _lut(lambda s: isinstance(s, RobTile))
IS_CNT = _lut(lambda s: isinstance(s, CounterSym))
IS_CROSS = _lut(lambda s: isinstance(s, RobTile) and s.kind == "cross")
BOLD = _lut(lambda s: isinstance(s, CounterSym) and s.bold)
DIGIT = _lut(lambda s: s.digit if isinstance(s, CounterSym) else 0, np.int8)
DIAG = _lut(lambda s: isinstance(s, CounterSym) and s.has_diag)
FWD = _lut(lambda s: isinstance(s, CounterSym) and s.has_fwd)
SEG = _lut(lambda s: SEGS.index(s.seg) if isinstance(s, CounterSym) else 0, np.int8)
# kind: 1 Robinson, 2 counter, 3 sofic
KIND = _lut(lambda s: 1 if isinstance(s, RobTile) else 2 if isinstance(s, CounterSym) else 3, np.int8)
ALLOWED = {
    v: _lut(lambda s, v=v: (isinstance(s, RobTile) and v != SOFIC)
            or (isinstance(s, CounterSym) and v != SOFIC and symbol_allowed(s, v))
            or (isinstance(s, str) and v == SOFIC))
    for v in (OMEGA, TILDE, SOFIC)
}
_COMP_E = np.array([[COMP_E[i] >> j & 1 for j in range(NTILES)] for i in range(NTILES)], bool)
_COMP_N = np.array([[COMP_N[i] >> j & 1 for j in range(NTILES)] for i in range(NTILES)], bool)
_ADD = np.zeros((4, 4, 4, 4), bool)  # index digit + 2*bold
for _p in ADDITION_PATTERNS:
    _ADD[tuple(d + 2 * b for d, b in _p)] = True
ONE_BOTH = CNT | 1 << 4 | 1 << 3 | SEGS.index("both")
ONE_COORD = CNT | 1 << 4 | 1 << 3 | SEGS.index("coord")


class _Grid:
    """Gathers codes at left-multiplied offsets; out-of-box reads give _NONE."""

    def __init__(self, w: Window):
        self.w = w
        b = w.box
        self.X, self.Y, self.Z = np.meshgrid(
            np.arange(b.x0, b.x1 + 1), np.arange(b.y0, b.y1 + 1),
            np.arange(b.z0, b.z1 + 1), indexing="ij")
        self.codes = w.data.astype(np.int64)
        if (self.codes < 0).any() or (self.codes >= _NONE).any():
            raise ValueError("window is not total")
        self._cache = {}

    def at(self, off):
        if off in self._cache:
            return self._cache[off]
        a, bb, c = off
        b = self.w.box
        x = self.X + a
        y = self.Y + bb
        z = self.Z + c + a * self.Y
        ok = ((x >= b.x0) & (x <= b.x1) & (y >= b.y0) & (y <= b.y1)
              & (z >= b.z0) & (z <= b.z1))
        out = np.full(self.X.shape, _NONE, dtype=np.int64)
        out[ok] = self.codes[x[ok] - b.x0, y[ok] - b.y0, z[ok] - b.z0]
        self._cache[off] = (ok, out)
        return ok, out

    def full(self, rule):
        ok = np.ones(self.X.shape, bool)
        for off in _SUPPORT[rule]:
            ok &= self.at(off)[0]
        return ok


def _rule_masks(g: _Grid, variant: str, rules):
    h = g.at((0, 0, 0))[1]
    out = {}

    def need(r):
        return r in rules

    if need("R-ALPHABET"):
        out["R-ALPHABET"] = (~ALLOWED[variant][h], "symbol not in alphabet")
    if need("R-COSET"):
        _, yp = g.at((0, 1, 0))
        _, zp = g.at((0, 0, 1))
        bad = (KIND[h] != KIND[yp]) | (KIND[h] != KIND[zp])
        out["R-COSET"] = (bad & g.full("R-COSET"), "kind changes within a yz-coset")
    if need("R-ALT-X"):
        _, xp = g.at((1, 0, 0))
        bad = ~((IS_ROB[h] & IS_CNT[xp]) | (IS_CNT[h] & IS_ROB[xp]))
        out["R-ALT-X"] = (bad & g.full("R-ALT-X"), "kinds do not alternate along x")
    rob_h = IS_ROB[h]
    hi = np.where(rob_h, h, 0)
    if need("R-ROB-E"):
        _, yp = g.at((0, 1, 0))
        both = rob_h & IS_ROB[yp]
        bad = both & ~_COMP_E[hi, np.where(both, yp, 0)]
        out["R-ROB-E"] = (bad & g.full("R-ROB-E"), "east edge mismatch")
    if need("R-ROB-N"):
        _, zp = g.at((0, 0, 1))
        both = rob_h & IS_ROB[zp]
        bad = both & ~_COMP_N[hi, np.where(both, zp, 0)]
        out["R-ROB-N"] = (bad & g.full("R-ROB-N"), "north edge mismatch")
    if need("R-SEG-DIAG"):
        _, a = g.at((0, -1, 1))
        _, b = g.at((0, 1, -1))
        bad = DIAG[h] & ~(DIAG[a] & DIAG[b])
        out["R-SEG-DIAG"] = (bad & g.full("R-SEG-DIAG"), "diagonal segment breaks")
    if need("R-SEG-FWD"):
        _, a = g.at((0, 0, 1))
        _, b = g.at((0, 0, -1))
        bad = FWD[h] & ~(FWD[a] & FWD[b])
        out["R-SEG-FWD"] = (bad & g.full("R-SEG-FWD"), "forward segment breaks")
    if need("R-CROSS-PROP"):
        _, a = g.at((1, 0, 0))
        _, b = g.at((-1, 0, 0))
        act = rob_h & IS_CNT[a] & IS_CNT[b]
        c = IS_CROSS[h]
        bad = act & ((c != BOLD[a]) | (c != BOLD[b]))
        out["R-CROSS-PROP"] = (bad & g.full("R-CROSS-PROP"), "cross/bold mismatch along x")
    cnt_h = IS_CNT[h]
    _, x2 = g.at((2, 0, 0))
    if need("R-LSB"):
        _, zp = g.at((0, 0, 1))
        act = cnt_h & ~BOLD[h] & BOLD[zp] & IS_CNT[x2]
        bad = act & (DIGIT[h] == DIGIT[x2])
        out["R-LSB"] = (bad & g.full("R-LSB"), "least significant bit does not flip")
    if need("R-ADD"):
        _, zp = g.at((0, 0, 1))
        _, x2z = g.at((2, 0, 1))
        act = cnt_h & IS_CNT[zp] & ~BOLD[zp] & IS_CNT[x2] & IS_CNT[x2z]

        def q(c):
            return DIGIT[c].astype(np.int64) + 2 * BOLD[c]

        ok = _ADD[q(h), q(zp), q(x2), q(x2z)] & (BOLD[h] == BOLD[x2])
        out["R-ADD"] = (act & ~ok & g.full("R-ADD"), "addition pattern not admissible")
    if need("R-MSB-DECOR"):
        act = cnt_h & BOLD[h] & IS_CNT[x2]
        ovf = (DIGIT[h] == 1) & BOLD[x2] & (DIGIT[x2] == 0)
        seg = SEG[h]
        both_i, coord_i, blank_i = SEGS.index("both"), SEGS.index("coord"), SEGS.index("blank")
        if variant == TILDE:
            good_ovf = (seg == both_i) | (seg == coord_i)
        else:
            good_ovf = seg == both_i
        good = np.where(ovf, good_ovf, seg == blank_i)
        out["R-MSB-DECOR"] = (act & ~good & g.full("R-MSB-DECOR"), "bold decoration wrong")
    if variant == TILDE and (need("R-OC1") or need("R-OC2")):
        _, yp = g.at((0, 1, 0))
        _, ym = g.at((0, -1, 0))
        plain = cnt_h & ~BOLD[h] & IS_CNT[x2]
        if need("R-OC1"):
            calm = plain & ((DIGIT[h] == 0) | ((DIGIT[h] == 1) & (DIGIT[x2] == 1)))
            bad = calm & ((yp == ONE_BOTH) != (ym == ONE_BOTH))
            out["R-OC1"] = (bad & g.full("R-OC1"), "(B1,both) not mirrored across y")
        if need("R-OC2"):
            trig = (plain & (DIGIT[h] == 1) & (DIGIT[x2] == 0)) | (h == ONE_COORD)
            bad = trig & ((BOLD[yp] & (yp != ONE_COORD)) | (BOLD[ym] & (ym != ONE_COORD)))
            out["R-OC2"] = (bad & g.full("R-OC2"), "bold y-neighbour of an overflow not coord")
    return out


def check_window(w: Window, rules=None, exclude=(), variant=None) -> list:
    """All violations of rule instances whose support lies inside the box."""
    variant = variant or w.variant
    if variant not in (OMEGA, TILDE):
        raise ValueError(f"cannot check variant {variant}")
    active = [r for r in (rules or RULES) if r not in exclude]
    if variant == OMEGA:
        active = [r for r in active if r not in OC_RULES]
    g = _Grid(w)
    b = w.box
    out = []
    for rule, (bad, detail) in _rule_masks(g, variant, set(active)).items():
        for ix, iy, iz in np.argwhere(bad):
            anchor = Site(int(ix) + b.x0, int(iy) + b.y0, int(iz) + b.z0)
            out.append(Violation(rule, tuple(rule_support(rule, anchor)), detail))
    out.sort()
    return out


def right_translate(w: Window, g) -> Window:
    """Window of sigma^g(w): new(h) = w(h*g), on the box of sites h with h*g in w."""
    a, bb, c = g
    b = w.box
    # h*g = (x+a, y+bb, z+c+x*bb); preimage of the box is slanted unless bb=0
    if bb != 0:
        raise ValueError("only translations with b=0 keep boxes axis-aligned")
    nb = Box(b.x0 - a, b.x1 - a, b.y0, b.y1, b.z0 - c, b.z1 - c)
    return Window(w.variant, nb, w.data.copy(), w.parity, w.provenance)
