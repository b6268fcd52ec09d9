"""Counter symbols, the addition table, and digit/overflow/decoration helpers.

Strip geometry: MSB (bold) at offset 0, significance falls with +z,
LSB at offset 2^i - 1. Carries travel toward -z.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from .robinson import nu2

SEGS = ("blank", "diag", "fwd", "both", "coord")
SEG_CHAR = {"blank": "_", "diag": "d", "fwd": "f", "both": "b", "coord": "c"}
CHAR_SEG = {v: k for k, v in SEG_CHAR.items()}

OMEGA = "Omega"
TILDE = "OmegaTilde"
VARIANTS = (OMEGA, TILDE)


@dataclass(frozen=True)
class CounterSym:
    digit: int
    bold: bool
    seg: str = "blank"

    @property
    def has_diag(self) -> bool:
        # coord stands in for both wherever both was allowed, so it carries both lines
        return self.seg in ("diag", "both", "coord")

    @property
    def has_fwd(self) -> bool:
        return self.seg in ("fwd", "both", "coord")

    def __repr__(self):
        d = f"B{self.digit}" if self.bold else str(self.digit)
        return f"({d},{self.seg})"


def symbol_allowed(s: CounterSym, variant: str = OMEGA) -> bool:
    if s.digit not in (0, 1) or s.seg not in SEGS:
        return False
    if s.seg == "coord":
        return variant == TILDE and s.bold and s.digit == 1
    if s.bold:
        if s.seg not in ("blank", "both"):
            return False
        return s.seg != "both" or s.digit == 1
    if s.digit == 0:
        return s.seg in ("blank", "diag")
    return True


def all_symbols():
    for d, b, s in itertools.product((0, 1), (False, True), SEGS):
        yield CounterSym(d, b, s)


def allowed_symbols(variant: str = OMEGA) -> list:
    return [s for s in all_symbols() if symbol_allowed(s, variant)]


# Figure 5, each entry (b_h, b_zh, b_x2h, b_x2zh) as (digit, bold) pairs.
# Written in the figure as  top: b_x2h b_x2zh / bottom: b_h b_zh.
_RAW = [
    # (top_left, top_right, bottom_left, bottom_right); 'B' prefix = bold
    ("0", "0", "0", "0"), ("0", "1", "0", "0"), ("1", "0", "1", "0"), ("1", "1", "1", "0"),
    ("0", "1", "0", "1"), ("1", "0", "0", "1"), ("0", "0", "1", "1"), ("1", "1", "1", "1"),
    ("B0", "0", "B0", "0"), ("B0", "1", "B0", "0"), ("B1", "0", "B1", "0"), ("B1", "1", "B1", "0"),
    ("B0", "1", "B0", "1"), ("B1", "0", "B0", "1"), ("B0", "0", "B1", "1"), ("B1", "1", "B1", "1"),
]


def _bit(tok):
    return (int(tok[-1]), tok.startswith("B"))


ADDITION_PATTERNS = frozenset(
    (_bit(bl), _bit(br), _bit(tl), _bit(tr)) for tl, tr, bl, br in _RAW
)
assert len(ADDITION_PATTERNS) == 16


class PreconditionError(ValueError):
    pass


def addition_allowed(b_h, b_zh, b_x2h, b_x2zh) -> bool:
    """Each argument is (digit, bold). Raises PreconditionError when the
    rule does not apply (bold zh, or boldness changes between h and x^2 h)."""
    if b_zh[1]:
        raise PreconditionError("zh is bold; the addition rule does not apply")
    if bool(b_h[1]) != bool(b_x2h[1]):
        raise PreconditionError("boldness differs between h and x^2 h")
    key = tuple((int(d), bool(b)) for d, b in (b_h, b_zh, b_x2h, b_x2zh))
    return key in ADDITION_PATTERNS


def successor_rows(row: tuple) -> list:
    """All digit rows (offset 0 = bold MSB) that may sit two layers above `row`."""
    n = len(row)
    out = []
    for cand in itertools.product((0, 1), repeat=n):
        if cand[-1] == row[-1]:  # LSB must flip
            continue
        ok = True
        for d in range(n - 1):
            bold = d == 0
            if not addition_allowed((row[d], bold), (row[d + 1], False),
                                    (cand[d], bold), (cand[d + 1], False)):
                ok = False
                break
        if ok:
            out.append(cand)
    return out


def row_of_value(i: int, v: int) -> tuple:
    return tuple(digit_of_value(i, v, d) for d in range(2**i))


def digit_of_value(i: int, v: int, d: int) -> int:
    w = 2**i
    if not 0 <= v < 2**w:
        raise ValueError(f"value {v} out of range for width {w}")
    if not 0 <= d < w:
        raise ValueError(f"offset {d} out of range for width {w}")
    return (v >> (w - 1 - d)) & 1


def digit_overflows(i: int, k: int, s: int) -> bool:
    if not 0 <= s < 2**i:
        raise ValueError("significance out of range")
    return s < nu2(k + 1)


def overflow_level(k: int) -> float:
    """Largest i >= 1 with 2^(2^i) | k+1; inf for k = -1, 0 if none."""
    if k == -1:
        return float("inf")
    v = nu2(k + 1)
    i = 0
    while 2 ** (i + 1) <= v:
        i += 1
    return i


def decoration_omega(k: int, y: int, z: int) -> str:
    if k == -1:
        return "both"
    top = overflow_level(k)
    fwd = y != 0 and nu2(y) < top
    diag = y + z != 0 and nu2(y + z) < top
    return {(0, 0): "blank", (0, 1): "diag", (1, 0): "fwd", (1, 1): "both"}[(fwd, diag)]
