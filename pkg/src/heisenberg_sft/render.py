"""SVG slices of a window, drawn with matplotlib (Agg-free SVG backend)."""
from __future__ import annotations

import io

import matplotlib
from matplotlib.backends.backend_svg import FigureCanvasSVG
from matplotlib.figure import Figure
from matplotlib.patches import FancyArrow, Rectangle

from .counter import CounterSym
from .robinson import E, N, S, W, RobTile
from .sft import Window

_RC = {
    "svg.hashsalt": "heisenberg-sft",
    "svg.fonttype": "none",
    "font.family": "DejaVu Sans",
    "path.simplify": False,
}
# unit vectors per edge in (horizontal, vertical)
_DIR = {N: (0, 1), E: (1, 0), S: (0, -1), W: (-1, 0)}


class EmptySlice(ValueError):
    pass


def _slot_xy(cx, cy, edge, s):
    dx, dy = _DIR[edge]
    # slot sign runs along the edge: horizontal for N/S, vertical for E/W
    off = 0.25 * s
    if edge in (N, S):
        return cx + off, cy + 0.5 * dy
    return cx + 0.5 * dx, cy + off


def _draw_rob(ax, t: RobTile, cx, cy, gid, digits: bool):
    ax.add_patch(Rectangle((cx - .5, cy - .5), 1, 1, fc="#f4f1ea", ec="#999999", lw=.3))
    outs = [e for e in range(4) if t.edges[e][0] == "out"]
    ins = [e for e in range(4) if t.edges[e][0] == "in"]
    if t.kind == "cross":
        for e in outs:
            dx, dy = _DIR[e]
            ax.add_patch(FancyArrow(cx, cy, .38 * dx, .38 * dy, width=.03, head_width=.14,
                                    head_length=.1, length_includes_head=True, color="k",
                                    gid=f"{gid}-arm{e}"))
        ax.plot([cx], [cy], marker="s", ms=3, color="k", gid=gid)
    else:
        tip = outs[0]
        tail = [e for e in ins if _DIR[e] == tuple(-v for v in _DIR[tip])][0]
        tx, ty = _DIR[tail]
        dx, dy = _DIR[tip]
        ax.add_patch(FancyArrow(cx + .5 * tx, cy + .5 * ty, .88 * dx, .88 * dy, width=.03,
                                head_width=.14, head_length=.1, length_includes_head=True,
                                color="k", gid=gid))
    for e in range(4):
        for k, s in ((1, -1), (2, 1)):
            m = t.edges[e][k]
            px, py = _slot_xy(cx, cy, e, s)
            if m[0] == "r":
                ax.plot([px], [py], marker="o" if m[1] == "out" else "x", ms=2.2,
                        color="#c0392b", mew=.6)
            elif digits:
                ax.text(px, py, str(m[1]), fontsize=3, ha="center", va="center", color="#555555")


def _draw_cnt(ax, s: CounterSym, cx, cy, gid, horiz_is_y: bool):
    ax.add_patch(Rectangle((cx - .5, cy - .5), 1, 1, fc="#ffffff", ec="#bbbbbb", lw=.3))
    kw = dict(color="#2e86c1", lw=.8)
    if horiz_is_y:
        if s.has_diag:
            # continues to (y-1, z+1)
            ax.plot([cx + .5, cx - .5], [cy - .5, cy + .5], **kw)
        if s.has_fwd:
            ax.plot([cx, cx], [cy - .5, cy + .5], **kw)
        if s.seg == "coord":
            ax.plot([cx - .5, cx + .5], [cy, cy], color="#d35400", lw=1.0)
    ax.text(cx, cy, str(s.digit), fontsize=6, ha="center", va="center",
            fontweight="bold" if s.bold else "normal", gid=gid,
            color="k" if s.bold else "#444444")


def render_svg(w: Window, plane: str = "yz", fix: int = 0, digits: bool = True, fmt: str = "svg"):
    b = w.box
    if plane == "yz":
        if not b.x0 <= fix <= b.x1:
            raise EmptySlice(f"x={fix} outside the box")
        cells = [((fix, y, z), y, z) for y in range(b.y0, b.y1 + 1) for z in range(b.z0, b.z1 + 1)]
        xlabel, ylabel = "y", "z"
    elif plane == "xz":
        if not b.y0 <= fix <= b.y1:
            raise EmptySlice(f"y={fix} outside the box")
        cells = [((x, fix, z), z, x) for x in range(b.x0, b.x1 + 1) for z in range(b.z0, b.z1 + 1)]
        xlabel, ylabel = "z", "x"
    else:
        raise ValueError(f"plane {plane!r}")
    hs = [c[1] for c in cells]
    vs = [c[2] for c in cells]
    wid = max(hs) - min(hs) + 1
    hei = max(vs) - min(vs) + 1
    with matplotlib.rc_context(_RC):
        fig = Figure(figsize=(max(2.0, .25 * wid + 1), max(2.0, .25 * hei + 1)))
        FigureCanvasSVG(fig)
        ax = fig.add_subplot(111)
        for site, u, v in cells:
            sym = w[site]
            gid = "{}_{}_{}_{}".format("cross" if isinstance(sym, RobTile) and sym.kind == "cross"
                                       else "arm" if isinstance(sym, RobTile) else
                                       "bold" if isinstance(sym, CounterSym) and sym.bold else "cell",
                                       *site)
            if isinstance(sym, RobTile):
                _draw_rob(ax, sym, u, v, gid, digits and wid * hei <= 900)
            elif isinstance(sym, CounterSym):
                _draw_cnt(ax, sym, u, v, gid, plane == "yz")
            else:
                ax.text(u, v, str(sym), fontsize=6, ha="center", va="center", gid=gid)
        ax.set_xlim(min(hs) - .6, max(hs) + .6)
        ax.set_ylim(min(vs) - .6, max(vs) + .6)
        ax.set_aspect("equal")
        ax.set_xlabel(xlabel)
        ax.set_ylabel(ylabel)
        ax.set_title(f"{w.variant} {plane} slice at {'x' if plane == 'yz' else 'y'}={fix}", fontsize=8)
        if fmt == "png":
            from matplotlib.backends.backend_agg import FigureCanvasAgg
            FigureCanvasAgg(fig)
            raw = io.BytesIO()
            fig.savefig(raw, format="png", dpi=150)
            return raw.getvalue()
        buf = io.StringIO()
        fig.savefig(buf, format="svg", metadata={"Date": None})
    return buf.getvalue()
