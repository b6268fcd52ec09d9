"""Closed-form builders for the explicit configurations.

Even parity: Robinson tiles on even x, counters on layer x = 2k+1.
Finite counters of row y != 0 have width 2^(nu2(y)+1) and hold
(k - K - 1) mod 2^width, so all of them overflow together on layer k = K
(K = -1 by default). Row y = 0 holds two infinite counters: the left one
(z < 0, LSB at z = -1) carries the two's complement bits of k - K - 1; the
right one (z >= 0, bold at z = 0, no LSB) is all 1 up to layer K and all 0
after it, or constantly 0 when no overflow layer is given.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .counter import OMEGA, TILDE, CounterSym, overflow_level
from .robinson import nu2, rho
from .sft import Box, Window, encode

_UNSET = object()


class FixpointError(RuntimeError):
    pass


@dataclass
class GenParams:
    box: Box
    variant: str = OMEGA
    parity: str = "even"
    exceptional_overflow_layer: Optional[object] = _UNSET

    def __post_init__(self):
        self.box = Box(*self.box)
        if self.parity not in ("even", "odd"):
            raise ValueError(f"parity {self.parity!r}")
        if self.variant not in (OMEGA, TILDE):
            raise ValueError(f"variant {self.variant!r}")


def _one_layer(K):
    if K is _UNSET:
        return -1
    if isinstance(K, (list, tuple)):
        if len(K) > 1:
            raise ValueError("at most one exceptional overflow layer")
        return K[0] if K else None
    return K


class _Layer:
    """Counter layer with index k (closed form)."""

    def __init__(self, k: int, K: Optional[int]):
        self.k = k
        self.K = K
        self.kp = k - (K if K is not None else -1) - 1
        self.top = overflow_level(self.kp)
        self.right_ovf = K is not None and k == K
        self.right_digit = 0 if K is None else int(k <= K)
        self._seed = {}

    def digit_bold(self, y, z):
        if y == 0:
            if z < 0:
                return (self.kp >> (-1 - z)) & 1, False
            return self.right_digit, z == 0
        w = 2 ** (nu2(y) + 1)
        d = z % w
        v = self.kp % 2**w
        return (v >> (w - 1 - d)) & 1, d == 0

    def total_ovf(self, y) -> bool:
        if y == 0:
            return self.right_ovf
        return nu2(y) < self.top

    def digit_overflows(self, y, z) -> bool:
        """Digit at (y, z) goes 1 -> 0 on the next layer."""
        if y == 0:
            if z < 0:
                return (-1 - z) < nu2(self.kp + 1)
            return self.right_ovf
        w = 2 ** (nu2(y) + 1)
        s = w - 1 - z % w
        return s < nu2(self.kp + 1)

    def line_seeded(self, z) -> bool:
        """Does the infinite y-line at height z hold a non-bold overflowing digit?"""
        if z in self._seed:
            return self._seed[z]
        hit = False
        if z != 0:
            hit = self.digit_overflows(0, z)
            # rows of width 2^i; beyond 2^i > |z| the offset pattern is stable
            i = 1
            while not hit:
                w = 2**i
                if z % w != 0 and self.digit_overflows(2 ** (i - 1), z):
                    hit = True
                if w > abs(z) + 1:
                    break
                i += 1
        self._seed[z] = hit
        return hit

    def decoration(self, y, z) -> str:
        c = y + z
        fwd = (y != 0 and nu2(y) < self.top) or (y == 0 and self.right_ovf)
        diag = (c != 0 and nu2(c) < self.top) or (c == 0 and self.right_ovf)
        return {(0, 0): "blank", (0, 1): "diag", (1, 0): "fwd", (1, 1): "both"}[(fwd, diag)]

    def symbol(self, y, z, tilde: bool) -> CounterSym:
        digit, bold = self.digit_bold(y, z)
        if bold:
            if self.total_ovf(y):
                seg = "coord" if tilde and self.line_seeded(z) else "both"
            else:
                seg = "blank"
        else:
            seg = self.decoration(y, z)
        return CounterSym(digit, bold, seg)


def _check_oc_fixpoint(lay: _Layer, box: Box, codes: np.ndarray):
    """Worklist propagation of the coordination rule from in-box seeds; every
    cell it reaches must already carry (B1, coord)."""
    coord = encode(CounterSym(1, True, "coord"))
    work = []
    for y in range(box.y0, box.y1 + 1):
        for z in range(box.z0, box.z1 + 1):
            d, bold = lay.digit_bold(y, z)
            if not bold and d == 1 and lay.digit_overflows(y, z):
                work.append((y, z))
    seen = set(work)
    while work:
        y, z = work.pop()
        for ny in (y - 1, y + 1):
            if not box.y0 <= ny <= box.y1 or (ny, z) in seen:
                continue
            if not lay.digit_bold(ny, z)[1]:
                continue
            if codes[ny - box.y0, z - box.z0] != coord:
                raise FixpointError(f"layer k={lay.k}: ({ny},{z}) reached but not coord")
            seen.add((ny, z))
            work.append((ny, z))


def _build(p: GenParams, K, tilde: bool, provenance: str) -> Window:
    b = p.box
    w = Window.empty(TILDE if tilde else OMEGA, b, parity=p.parity, provenance=provenance)
    shift = 0 if p.parity == "even" else 1
    rob = None
    for x in range(b.x0, b.x1 + 1):
        xe = x - shift
        layer = w.data[x - b.x0]
        if xe % 2 == 0:
            if rob is None:
                rob = np.array([[encode(rho(y, z)) for z in range(b.z0, b.z1 + 1)]
                                for y in range(b.y0, b.y1 + 1)], dtype=np.int16)
            layer[:] = rob
        else:
            lay = _Layer((xe - 1) // 2, K)
            for y in range(b.y0, b.y1 + 1):
                for z in range(b.z0, b.z1 + 1):
                    layer[y - b.y0, z - b.z0] = encode(lay.symbol(y, z, tilde))
            if tilde:
                _check_oc_fixpoint(lay, b, layer)
    return w


def gen_omega(p: GenParams) -> Window:
    if p.variant != OMEGA:
        raise ValueError("gen_omega needs variant Omega")
    return _build(p, -1, False, "gen_omega")


def gen_omega_tilde(p: GenParams) -> Window:
    if p.variant != TILDE:
        raise ValueError("gen_omega_tilde needs variant OmegaTilde")
    return _build(p, -1, True, "gen_omega_tilde")


def gen_exceptional(p: GenParams) -> Window:
    K = _one_layer(p.exceptional_overflow_layer)
    tilde = p.variant == TILDE
    if K == -1:  # same configuration as the plain generators
        return _build(p, K, tilde, "gen_omega_tilde" if tilde else "gen_omega")
    tag = "none" if K is None else str(K)
    return _build(p, K, tilde, f"gen_exceptional K={tag}")


def generate(box, variant=OMEGA, parity="even", overflow=_UNSET) -> Window:
    """Convenience front end used by the CLI."""
    p = GenParams(Box(*box), variant, parity, overflow)
    if overflow is _UNSET:
        return gen_omega_tilde(p) if variant == TILDE else gen_omega(p)
    return gen_exceptional(p)
