"""Window analyzers: period scan, strip widths, sync, alignment, factor maps."""
from __future__ import annotations

import itertools
from typing import NamedTuple, Optional

import numpy as np

from .counter import OMEGA, TILDE
from .group import Site
from .robinson import cross_set
from .sft import (BOLD, DIGIT, IS_CNT, IS_CROSS, IS_ROB, KIND, ONE_BOTH, ONE_COORD,
                  SOF, SOFIC, SOFIC_LETTERS, Box, Violation, Window, _SUPPORT, _left)


class PeriodCandidate(NamedTuple):
    a: int
    b: int
    c: int


def scan_periods(w: Window, N: int) -> list:
    """Candidates p with 0 < |p|_inf <= N that no in-box pair (h, h*p) refutes."""
    b = w.box
    X, Y, Z = np.meshgrid(np.arange(b.x0, b.x1 + 1), np.arange(b.y0, b.y1 + 1),
                          np.arange(b.z0, b.z1 + 1), indexing="ij")
    d = w.data
    out = []
    rng = range(-N, N + 1)
    for a, bb, c in itertools.product(rng, rng, rng):
        if a == bb == c == 0:
            continue
        x = X + a
        y = Y + bb
        z = Z + c + X * bb
        ok = ((x >= b.x0) & (x <= b.x1) & (y >= b.y0) & (y <= b.y1)
              & (z >= b.z0) & (z <= b.z1))
        if not ok.any() or np.array_equal(d[ok], d[x[ok] - b.x0, y[ok] - b.y0, z[ok] - b.z0]):
            out.append(PeriodCandidate(a, bb, c))
    return out


def minimal_refuting_box(gen, N: int, max_r: int = 40, max_a: int = 8) -> Optional[Box]:
    """Smallest symmetric box x in [-a,a], y,z in [-r,r] (by volume, then a)
    on which scan_periods(gen(box), N) is empty."""
    cands = sorted(((2 * a + 1) * (2 * r + 1) ** 2, a, r)
                   for a in range(max_a + 1) for r in range(max_r + 1))
    for _, a, r in cands:
        box = Box(-a, a, -r, r, -r, r)
        if not scan_periods(gen(box), N):
            return box
    return None


def counter_layers(w: Window) -> list:
    b = w.box
    return [x for x in range(b.x0, b.x1 + 1) if IS_CNT[w.layer(x)].all()]


def robinson_layers(w: Window) -> list:
    b = w.box
    return [x for x in range(b.x0, b.x1 + 1) if IS_ROB[w.layer(x)].all()]


def strip_widths(w: Window, x: int) -> dict:
    """Row y -> width exponent i (bold period 2^i), None when undetermined."""
    b = w.box
    lay = w.layer(x)
    if not IS_CNT[lay].all():
        raise ValueError(f"layer {x} is not a counter layer")
    out = {}
    for y in range(b.y0, b.y1 + 1):
        zs = np.flatnonzero(BOLD[lay[y - b.y0]])
        gaps = set(np.diff(zs).tolist())
        if len(zs) < 2 or len(gaps) != 1:
            out[y] = None
            continue
        g = gaps.pop()
        out[y] = g.bit_length() - 1 if g & (g - 1) == 0 else None
    return out


def _counters(w: Window, x: int, widths: dict):
    """(y, msb_z, i) for every strip on layer x lying fully in the box."""
    b = w.box
    lay = w.layer(x)
    for y, i in widths.items():
        if i is None:
            continue
        for z in np.flatnonzero(BOLD[lay[y - b.y0]]):
            z = int(z) + b.z0
            if z + 2**i - 1 <= b.z1:
                yield y, z, i


def _strip_digits(w: Window, x, y, z, n):
    b = w.box
    if not (b.x0 <= x <= b.x1 and b.z0 <= z and z + n - 1 <= b.z1):
        return None
    return DIGIT[w.layer(x)[y - b.y0, z - b.z0: z - b.z0 + n]]


def total_overflows(w: Window) -> dict:
    """(x, i) -> {(y, msb_z): overflows?} for counters whose next state is visible."""
    out = {}
    for x in counter_layers(w):
        if x + 2 > w.box.x1:
            continue
        widths = strip_widths(w, x)
        for y, z, i in _counters(w, x, widths):
            n = 2**i
            now = _strip_digits(w, x, y, z, n)
            nxt = _strip_digits(w, x + 2, y, z + 2 * y, n)
            if nxt is None:
                continue
            out.setdefault((x, i), {})[(y, z)] = bool(now.all() and not nxt.any())
    return out


def check_sync(w: Window) -> list:
    out = []
    for (x, i), d in sorted(total_overflows(w).items()):
        yes = sorted(k for k, v in d.items() if v)
        no = sorted(k for k, v in d.items() if not v)
        if yes and no:
            s1, s2 = yes[0], no[0]
            out.append(Violation("SYNC", (Site(x, *s1), Site(x, *s2)),
                                 f"width 2^{i} counters out of phase on layer {x}"))
    return out


def check_coordination(w: Window) -> list:
    """Width-2^i total overflow on a layer forces it for every smaller width."""
    ov = total_overflows(w)
    out = []
    by_layer = {}
    for (x, i), d in ov.items():
        by_layer.setdefault(x, {})[i] = d
    for x, widths in sorted(by_layer.items()):
        for i, d in widths.items():
            if not any(d.values()):
                continue
            for j, dj in widths.items():
                if j < i and not all(dj.values()):
                    bad = min(k for k, v in dj.items() if not v)
                    out.append(Violation("COORD", (Site(x, *bad),),
                                         f"width 2^{i} overflows but width 2^{j} does not"))
    return out


def check_row_uniformity(w: Window) -> list:
    """No y-line (fixed x, z) holds both (B1,both) and (B1,coord)."""
    out = []
    b = w.box
    for x in counter_layers(w):
        lay = w.layer(x)
        mixed = (lay == ONE_BOTH).any(axis=0) & (lay == ONE_COORD).any(axis=0)
        for iz in np.flatnonzero(mixed):
            out.append(Violation("ROW-UNIFORM", (Site(x, b.y0, int(iz) + b.z0),),
                                 "y-line mixes both and coord"))
    return out


def check_equal_width(w: Window) -> list:
    """(B1,both) pairs offset by (-l, l) on a layer sit in rows of equal width."""
    out = []
    b = w.box
    for x in counter_layers(w):
        lay = w.layer(x)
        widths = strip_widths(w, x)
        ys, zs = np.nonzero(lay == ONE_BOTH)
        groups = {}
        for iy, iz in zip(ys, zs):
            y, z = int(iy) + b.y0, int(iz) + b.z0
            groups.setdefault(y + z, []).append(y)
        for c, rows in groups.items():
            known = {widths[y] for y in rows if widths[y] is not None}
            if len(known) > 1:
                out.append(Violation("EQUAL-WIDTH", tuple(Site(x, y, c - y) for y in sorted(rows)[:2]),
                                     f"widths {sorted(known)} on one diagonal"))
    return out


# --- supertile centres ---

def _signature(cross: np.ndarray, cy, cz, i, strict: bool):
    """Match crosses around (cy, cz) (array indices) against C_i.
    strict: window must fit. Returns True/False, or None if undecidable."""
    r = 2**i - 1
    ny, nz = cross.shape
    want = cross_set(i)
    saw_all = True
    for dy in range(-r, r + 1):
        for dz in range(-r, r + 1):
            y, z = cy + dy, cz + dz
            if not (0 <= y < ny and 0 <= z < nz):
                saw_all = False
                continue
            if bool(cross[y, z]) != ((dy, dz) in want):
                return False
    return True if saw_all else (None if not strict else False)


def supertile_centres(w: Window, x: int) -> dict:
    """(y, z) -> level for crosses whose level is fixed by the box contents."""
    b = w.box
    cross = IS_CROSS[w.layer(x)]
    out = {}
    for iy, iz in zip(*np.nonzero(cross)):
        best = None
        i = 1
        while True:
            m = _signature(cross, iy, iz, i, strict=True)
            if not m:
                break
            best = i
            i += 1
        if best is None:
            continue
        # the next level up must be refuted by something visible
        if _signature(cross, iy, iz, best + 1, strict=False) is False:
            out[(int(iy) + b.y0, int(iz) + b.z0)] = best
    return out


def check_alignment(w: Window) -> list:
    out = []
    refs = {}
    for x in robinson_layers(w):
        for (y, z), i in sorted(supertile_centres(w, x).items()):
            m = 2 ** (i + 1)
            if i not in refs:
                refs[i] = (x, y, z)
                continue
            x0, y0, z0 = refs[i]
            k2 = x - x0  # = 2k
            if (y - y0) % m or (z - z0 - k2 * y0) % m:
                out.append(Violation("ALIGN", (Site(x0, y0, z0), Site(x, y, z)),
                                     f"level-{i} centres off the common lattice"))
    return out


# --- factor maps ---

def factor_phi(w: Window) -> Window:
    if w.variant != TILDE:
        raise ValueError("factor_phi expects an OmegaTilde window")
    d = w.data.copy()
    d[d == ONE_COORD] = ONE_BOTH
    return Window(OMEGA, w.box, d, w.parity, w.provenance + " |phi")


_SOFIC_OF = np.full(256, -1, dtype=np.int16)
for _c in range(256):
    if IS_ROB[_c]:
        _SOFIC_OF[_c] = SOF + SOFIC_LETTERS.index("C" if IS_CROSS[_c] else "A")
    elif IS_CNT[_c]:
        _SOFIC_OF[_c] = SOF + SOFIC_LETTERS.index(("B" if BOLD[_c] else "") + str(DIGIT[_c]))
    elif KIND[_c] == 3:
        _SOFIC_OF[_c] = _c


def factor_sofic(w: Window) -> Window:
    d = _SOFIC_OF[w.data.astype(np.int64)]
    if (d < 0).any():
        raise ValueError("window holds codes outside the alphabet")
    return Window(SOFIC, w.box, d.astype(np.int16), w.parity, w.provenance + " |sofic")


def check_sofic_alternation(w: Window) -> list:
    """Along every in-box X-edge: C pairs with a bold digit, A with a plain one."""
    if w.variant != SOFIC:
        raise ValueError("expects a sofic window")
    b = w.box
    lc = {SOF + SOFIC_LETTERS.index(s): s for s in SOFIC_LETTERS}
    out = []
    for x in range(b.x0, b.x1):
        for y in range(b.y0, b.y1 + 1):
            for z in range(b.z0, b.z1 + 1):
                zn = z + y
                if not b.z0 <= zn <= b.z1:
                    continue
                p = lc[int(w.data[x - b.x0, y - b.y0, z - b.z0])]
                q = lc[int(w.data[x + 1 - b.x0, y - b.y0, zn - b.z0])]
                pair = {p, q}
                if not ({"C", "B0"} <= pair or {"C", "B1"} <= pair
                        or ({"A"} & pair and pair & {"0", "1"})):
                    out.append(Violation("SOFIC-ALT", (Site(x, y, z), Site(x + 1, y, zn)),
                                         f"{p} next to {q}"))
    return out


def covered_sites(w: Window) -> np.ndarray:
    """Mask of sites every rule instance through which lies fully in the box."""
    b = w.box
    mask = np.zeros(b.shape, bool)
    for s in b.sites():
        ok = True
        for offs in _SUPPORT.values():
            for o in offs:
                # anchor h with o*h = s: h = o^-1 * s
                a, bb, c = o
                h = Site(s.x - a, s.y - bb, s.z - c - a * (s.y - bb))
                if not all(_left(q, h) in b for q in offs):
                    ok = False
                    break
            if not ok:
                break
        mask[s.x - b.x0, s.y - b.y0, s.z - b.z0] = ok
    return mask
