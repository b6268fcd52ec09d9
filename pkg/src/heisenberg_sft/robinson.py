"""Robinson tiles, matching rules, supertiles and the aligned tiling rho.

Cells are addressed (y, z): y grows east, z grows north.

Edge descriptor = (black, slot_lo, slot_hi). black is 'in'/'out' for the
principal arrow. Slots hold either a red side-arrow mark ('r', 'in'|'out')
or a parity digit ('d', 0|1|2). Slot positions are absolute: on N/S edges
lo/hi means west/east half, on W/E edges south/north half.
Two tiles match across an edge iff the facing descriptors are complements
(in<->out, digit d <-> 2-d).
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

N, E, S, W = 0, 1, 2, 3
EDGE_NAMES = "NESW"
CROSS_BASES = (1, 8)
NTILES = 56


def _rot_slot(edge, s):
    # quarter turn ccw: N->W, E->N, S->E, W->S; lateral sign flips on two of them
    if edge == N:
        return W, s
    if edge == E:
        return N, -s
    if edge == S:
        return E, s
    return S, -s


def _cross(p):
    black = {N: "out", E: "out", S: "out", W: "out"}
    slots = {(N, -1): ("r", "out"), (E, -1): ("r", "out")}
    for e, s in ((W, 1), (W, -1), (E, 1), (S, -1), (S, 1), (N, 1)):
        slots[(e, s)] = ("d", p)
    return black, slots


# red marks of the six arm shapes in a Figure 1 row (main arrow points south)
_ARM_RED = {
    1: [(N, -1, "in"), (S, -1, "out")],
    2: [(N, 1, "in"), (S, 1, "out")],
    3: [(N, -1, "in"), (S, -1, "out"), (W, -1, "in"), (E, -1, "in")],
    4: [(N, 1, "in"), (S, 1, "out"), (W, -1, "in"), (E, -1, "in")],
    5: [(W, -1, "in"), (E, -1, "in")],
    6: [],
}


def _arm(k, p_we, p_ns):
    black = {N: "in", S: "out", W: "in", E: "in"}
    slots = {(e, s): ("r", d) for e, s, d in _ARM_RED[k]}
    for e in (W, E):
        for s in (-1, 1):
            slots.setdefault((e, s), ("d", p_we))
    for e in (N, S):
        for s in (-1, 1):
            slots.setdefault((e, s), ("d", p_ns))
    return black, slots


def base_marks():
    """Figure 1 transcription, row-major, top row first."""
    bases = {1: _cross(0), 8: _cross(1)}
    for k in range(1, 7):
        bases[1 + k] = _arm(k, 0, 0)
        bases[8 + k] = _arm(k, 1, 2)
    return bases


def _rotate_marks(black, slots):
    nb = {{N: W, E: N, S: E, W: S}[e]: v for e, v in black.items()}
    ns = {_rot_slot(e, s): v for (e, s), v in slots.items()}
    return nb, ns


@dataclass(frozen=True)
class RobTile:
    base: int
    rot: int
    edges: tuple  # (N, E, S, W) descriptors

    @property
    def kind(self) -> str:
        return "cross" if self.base in CROSS_BASES else "arm"

    @property
    def index(self) -> int:
        return (self.base - 1) * 4 + self.rot

    def __repr__(self):
        return f"RobTile({self.base},{self.rot})"


def _sanity_arm(black, slots):
    # side arrows on the flanks sit on the tip side of the main arrow (south half)
    tip = [e for e, v in black.items() if v == "out"]
    assert tip == [S]
    for (e, s), v in slots.items():
        if v[0] == "r" and e in (W, E):
            assert s == -1, "side arrow away from main-arrow tip"


def _build():
    tiles = []
    for b, (bl, sl) in sorted(base_marks().items()):
        if b not in CROSS_BASES:
            _sanity_arm(bl, sl)
        for r in range(4):
            desc = tuple((bl[e], sl.get((e, -1)), sl.get((e, 1))) for e in range(4))
            tiles.append(RobTile(b, r, desc))
            bl, sl = _rotate_marks(bl, sl)
        assert (bl, sl) == base_marks()[b]  # order 4
    assert len(tiles) == NTILES
    assert len({t.edges for t in tiles}) == NTILES
    assert sum(t.kind == "cross" for t in tiles) == 8
    return tuple(tiles)


TILES = _build()


def build_tileset() -> frozenset:
    return frozenset(TILES)


def tile(base: int, rot: int) -> RobTile:
    return TILES[(base - 1) * 4 + rot % 4]


def rotate(t: RobTile, k: int = 1) -> RobTile:
    return tile(t.base, (t.rot + k) % 4)


def _comp(m):
    if m[0] == "r":
        return ("r", "in" if m[1] == "out" else "out")
    return ("d", 2 - m[1])


def _compd(d):
    return ("in" if d[0] == "out" else "out", _comp(d[1]), _comp(d[2]))


def matches(a: RobTile, b: RobTile, dir: str) -> bool:
    """dir='E_of': b sits east of a; dir='N_of': b sits north of a."""
    if dir == "E_of":
        return _compd(a.edges[E]) == b.edges[W]
    if dir == "N_of":
        return _compd(a.edges[N]) == b.edges[S]
    raise ValueError(dir)


# compatibility bitmasks over tile indices
COMP_E = [0] * NTILES  # COMP_E[i] bit j: tile j may sit east of tile i
COMP_W = [0] * NTILES
COMP_N = [0] * NTILES
COMP_S = [0] * NTILES
for _a, _b in itertools.product(TILES, TILES):
    if matches(_a, _b, "E_of"):
        COMP_E[_a.index] |= 1 << _b.index
        COMP_W[_b.index] |= 1 << _a.index
    if matches(_a, _b, "N_of"):
        COMP_N[_a.index] |= 1 << _b.index
        COMP_S[_b.index] |= 1 << _a.index
CROSS_MASK = sum(1 << t.index for t in TILES if t.kind == "cross")
ARM_MASK = ((1 << NTILES) - 1) & ~CROSS_MASK


# --- small arc-consistency solver over (y,z) -> bitmask domains ---

def _support(dom, comp):
    m = 0
    while dom:
        low = dom & -dom
        m |= comp[low.bit_length() - 1]
        dom ^= low
    return m


_DIRS = ((1, 0, COMP_E), (-1, 0, COMP_W), (0, 1, COMP_N), (0, -1, COMP_S))


def propagate(dom: dict, cells=None) -> bool:
    q = list(dom if cells is None else cells)
    inq = set(q)
    while q:
        c = q.pop()
        inq.discard(c)
        y, z = c
        for dy, dz, comp in _DIRS:
            n = (y + dy, z + dz)
            if n in dom:
                nd = dom[n] & _support(dom[c], comp)
                if nd != dom[n]:
                    if not nd:
                        return False
                    dom[n] = nd
                    if n not in inq:
                        q.append(n)
                        inq.add(n)
    return True


def solve(dom: dict, limit: int = 2) -> list:
    """All (up to limit) full assignments; each a dict cell -> single-bit mask."""
    sols = []

    def rec(d):
        if not propagate(d):
            return
        open_ = [c for c in d if d[c] & (d[c] - 1)]
        if not open_:
            sols.append(dict(d))
            return
        c = min(open_, key=lambda c: bin(d[c]).count("1"))
        rest = d[c]
        while rest and len(sols) < limit:
            low = rest & -rest
            rest ^= low
            nd = dict(d)
            nd[c] = low
            rec(nd)

    rec(dict(dom))
    return sols


# --- cross sets ---

def cross_set(i: int) -> set:
    """Eq. (1) style evaluation: crosses of a level-i supertile centred at 0."""
    out = set()
    for j in range(i + 1):
        vals = [2**j * (2 * k + 1) - 2**i for k in range(2 ** (i - j))]
        out |= set(itertools.product(vals, vals))
    return out


def nu2(n: int) -> int:
    """2-adic valuation; nu2(0) is treated as infinite."""
    if n == 0:
        return 10**9
    return (n & -n).bit_length() - 1


def in_C(y: int, z: int) -> bool:
    if y == 0 or z == 0:
        return y == 0 and z == 0
    return nu2(y) == nu2(z)


def in_B(y: int, z: int) -> bool:
    if y == 0:
        return z == 0
    return z == 0 or nu2(z) >= nu2(y) + 1


# --- supertiles ---

@dataclass(frozen=True)
class Patch:
    origin: tuple  # (y, z) of lower-left cell
    width: int
    height: int
    tiles: tuple  # tiles[row z][col y], row 0 = bottom

    def at(self, y, z) -> RobTile:
        return self.tiles[z - self.origin[1]][y - self.origin[0]]

    def cells(self):
        y0, z0 = self.origin
        for dz in range(self.height):
            for dy in range(self.width):
                yield (y0 + dy, z0 + dz), self.tiles[dz][dy]

    def crosses(self) -> set:
        return {c for c, t in self.cells() if t.kind == "cross"}

    def violations(self) -> list:
        bad = []
        d = dict(self.cells())
        for (y, z), t in d.items():
            if (y + 1, z) in d and not matches(t, d[(y + 1, z)], "E_of"):
                bad.append(((y, z), (y + 1, z)))
            if (y, z + 1) in d and not matches(t, d[(y, z + 1)], "N_of"):
                bad.append(((y, z), (y, z + 1)))
        return bad


# child quadrant (sign y, sign z) -> orientation of the child's central cross;
# the L-shaped arrows point inward toward the parent centre
QUAD = {(-1, -1): 0, (1, -1): 1, (1, 1): 2, (-1, 1): 3}


class AssemblyError(RuntimeError):
    pass


@lru_cache(maxsize=None)
def _supertile_masks(i: int, o: int):
    if i == 0:
        return {(0, 0): 1 << tile(8, o).index}
    r = 2**i - 1
    h = 2 ** (i - 1)
    dom = {}
    for (sy, sz), qo in QUAD.items():
        for (a, b), v in _supertile_masks(i - 1, qo).items():
            dom[(sy * h + a, sz * h + b)] = v
    dom[(0, 0)] = 1 << tile(1, o).index
    for k in range(-r, r + 1):
        if k:
            dom[(0, k)] = ARM_MASK
            dom[(k, 0)] = ARM_MASK
    sols = solve(dom, limit=2)
    if len(sols) != 1:
        raise AssemblyError(f"supertile({i},{o}) has {len(sols)} completions")
    return sols[0]


def supertile(i: int, orientation: int = 0) -> Patch:
    if i < 1:
        raise ValueError("level must be >= 1")
    m = _supertile_masks(i, orientation % 4)
    r = 2**i - 1
    rows = tuple(
        tuple(TILES[m[(y, z)].bit_length() - 1] for y in range(-r, r + 1))
        for z in range(-r, r + 1)
    )
    p = Patch((-r, -r), 2 * r + 1, 2 * r + 1, rows)
    if p.violations():
        raise AssemblyError(f"supertile({i},{orientation}) inconsistent")
    return p


# Fault lines (y=0 xor z=0). Arc consistency over the whole plane forces a
# single tile per axis cell, depending only on the side and the parity.
_AXIS = {
    ("y", 1, 1): (9, 1), ("y", 1, 0): (2, 1),
    ("y", -1, 1): (14, 3), ("y", -1, 0): (7, 3),
    ("z", 1, 1): (10, 2), ("z", 1, 0): (3, 2),
    ("z", -1, 1): (14, 0), ("z", -1, 0): (7, 0),
}


def rho(y: int, z: int) -> RobTile:
    """Tile of the fully aligned tiling at (y, z)."""
    if y == 0 and z == 0:
        return tile(1, 0)
    if z == 0:
        return tile(*_AXIS[("y", 1 if y > 0 else -1, y & 1)])
    if y == 0:
        return tile(*_AXIS[("z", 1 if z > 0 else -1, z & 1)])
    i = max(nu2(y), nu2(z))
    cy = (y >> (i + 1) << (i + 1)) + 2**i
    cz = (z >> (i + 1) << (i + 1)) + 2**i
    py = (cy >> (i + 2) << (i + 2)) + 2 ** (i + 1)
    pz = (cz >> (i + 2) << (i + 2)) + 2 ** (i + 1)
    o = QUAD[((cy > py) - (cy < py), (cz > pz) - (cz < pz))]
    m = _supertile_masks(i, o)[(y - cy, z - cz)]
    return TILES[m.bit_length() - 1]


def rho_patch(y0: int, y1: int, z0: int, z1: int) -> Patch:
    rows = tuple(tuple(rho(y, z) for y in range(y0, y1 + 1)) for z in range(z0, z1 + 1))
    return Patch((y0, z0), y1 - y0 + 1, z1 - z0 + 1, rows)
