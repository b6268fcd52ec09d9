"""Command line front end.

Exit codes: 0 clean, 1 violations / surviving periods, 2 usage or parse error.
"""
from __future__ import annotations

import argparse
import csv
import json
import os
import sys
import time

from .analyze import (check_alignment, check_coordination, check_row_uniformity, check_sync,
                      factor_phi, factor_sofic, scan_periods, check_sofic_alternation)
from .counter import OMEGA, TILDE
from .generate import generate
from .render import EmptySlice, render_svg
from .sft import OC_RULES, SOFIC, check_window, parse_box
from .winfile import FormatError, dumps, load

_VAR = {"omega": OMEGA, "tilde": TILDE}


class UsageError(Exception):
    pass


def _write(text: str, out):
    if out in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8", newline="\n") as f:
            f.write(text)


def _load(path):
    try:
        return load(path)
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from None
    except FormatError as e:
        raise UsageError(f"{path}: {e}") from None


def cmd_gen(a) -> int:
    try:
        box = parse_box(a.box)
    except ValueError as e:
        raise UsageError(f"--box: {e}") from None
    ovf = a.exceptional_overflow
    if ovf is not None and len(ovf) > 1:
        raise UsageError("at most one --exceptional-overflow layer")
    kw = {} if ovf is None else {"overflow": ovf[0]}
    w = generate(box, _VAR[a.variant], a.parity, **kw)
    _write(dumps(w), a.out)
    return 0


def cmd_verify(a) -> int:
    w = _load(a.path)
    if w.variant == SOFIC:
        vs = check_sofic_alternation(w)
    else:
        variant = _VAR[a.variant] if a.variant else None
        vs = check_window(w, variant=variant, exclude=OC_RULES if a.no_oc else ())
    if a.json:
        print(json.dumps([{"rule": v.rule_id, "sites": [list(s) for s in v.sites],
                           "detail": v.detail} for v in vs], indent=1))
    else:
        for v in vs:
            print(v.rule_id, " ".join("({},{},{})".format(*s) for s in v.sites), "#", v.detail)
        print(f"{len(vs)} violation(s)", file=sys.stderr)
    return 1 if vs else 0


def cmd_render(a) -> int:
    w = _load(a.path)
    try:
        svg = render_svg(w, a.plane, a.fix)
    except EmptySlice as e:
        raise UsageError(str(e)) from None
    _write(svg, a.out)
    return 0


def cmd_scan(a) -> int:
    w = _load(a.path)
    surv = scan_periods(w, a.max_period)
    for p in surv:
        print(f"{p.a} {p.b} {p.c}")
    print(f"{len(surv)} surviving candidate(s)", file=sys.stderr)
    return 1 if surv else 0


def cmd_factor(a) -> int:
    w = _load(a.path)
    if a.map == "phi":
        if w.variant != TILDE:
            raise UsageError("phi needs an OmegaTilde window")
        out = factor_phi(w)
    else:
        out = factor_sofic(w)
    _write(dumps(out), a.out)
    return 0


def cmd_report(a) -> int:
    """Generate both variants on a box, run every check, and write a CSV
    summary plus slice figures into a directory."""
    try:
        box = parse_box(a.box)
    except ValueError as e:
        raise UsageError(f"--box: {e}") from None
    os.makedirs(a.outdir, exist_ok=True)
    rows = []
    bad = 0
    for name, variant in (("omega", OMEGA), ("tilde", TILDE)):
        t = time.perf_counter()
        w = generate(box, variant, a.parity)
        gen_s = time.perf_counter() - t
        t = time.perf_counter()
        checks = {
            "rules": check_window(w),
            "sync": check_sync(w),
            "align": check_alignment(w),
            "coord": check_coordination(w) if variant == TILDE else [],
            "rows": check_row_uniformity(w) if variant == TILDE else [],
            "sofic": check_sofic_alternation(factor_sofic(w)),
        }
        if variant == TILDE:
            checks["phi"] = check_window(factor_phi(w))
        chk_s = time.perf_counter() - t
        periods = scan_periods(w, a.max_period)
        for k, vs in checks.items():
            rows.append([name, k, len(vs), f"{gen_s:.3f}", f"{chk_s:.3f}"])
            bad += len(vs)
        rows.append([name, f"periods<={a.max_period}", len(periods), f"{gen_s:.3f}", ""])
        bad += len(periods)
        mid = (box.x0 + box.x1) // 2
        rob_x = mid if w.layer(mid)[0, 0] < 64 else mid + 1
        for plane, fix, tag in (("yz", rob_x, "rob"), ("yz", rob_x + 1 if rob_x + 1 <= box.x1 else rob_x - 1, "cnt"),
                                ("xz", max(min(1, box.y1), box.y0), "xz")):
            with open(os.path.join(a.outdir, f"{name}_{tag}.svg"), "w", encoding="utf-8") as f:
                f.write(render_svg(w, plane, fix))
    with open(os.path.join(a.outdir, "summary.csv"), "w", newline="") as f:
        wr = csv.writer(f)
        wr.writerow(["variant", "check", "count", "gen_seconds", "check_seconds"])
        wr.writerows(rows)
    wr = csv.writer(sys.stdout)
    wr.writerow(["variant", "check", "count"])
    for r in rows:
        wr.writerow(r[:3])
    return 1 if bad else 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="heisenberg-sft", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="cmd", required=True)

    g = sub.add_parser("gen", help="generate a window")
    g.add_argument("--box", required=True, help="x0:x1,y0:y1,z0:z1")
    g.add_argument("--variant", choices=sorted(_VAR), default="omega")
    g.add_argument("--parity", choices=("even", "odd"), default="even")
    g.add_argument("--exceptional-overflow", type=int, action="append", metavar="K")
    g.add_argument("--out")
    g.set_defaults(fn=cmd_gen)

    v = sub.add_parser("verify", help="check a window file")
    v.add_argument("path")
    v.add_argument("--json", action="store_true")
    v.add_argument("--variant", choices=sorted(_VAR), help="override the file's variant")
    v.add_argument("--no-oc", action="store_true", help="skip the coordination rules")
    v.set_defaults(fn=cmd_verify)

    r = sub.add_parser("render", help="SVG slice of a window file")
    r.add_argument("path")
    r.add_argument("--plane", choices=("yz", "xz"), default="yz")
    r.add_argument("--fix", type=int, default=0)
    r.add_argument("--out")
    r.set_defaults(fn=cmd_render)

    s = sub.add_parser("scan", help="list period candidates the window does not refute")
    s.add_argument("path")
    s.add_argument("--max-period", type=int, default=4)
    s.set_defaults(fn=cmd_scan)

    f = sub.add_parser("factor", help="apply a 1-block factor map")
    f.add_argument("path")
    f.add_argument("--map", choices=("phi", "sofic"), required=True)
    f.add_argument("--out")
    f.set_defaults(fn=cmd_factor)

    rp = sub.add_parser("report", help="CSV summary and figures for generated windows")
    rp.add_argument("--box", default="-5:5,-17:17,-17:17")
    rp.add_argument("--parity", choices=("even", "odd"), default="even")
    rp.add_argument("--max-period", type=int, default=4)
    rp.add_argument("--outdir", default="report")
    rp.set_defaults(fn=cmd_report)
    return p


def _glue_box(argv):
    # "--box -3:3,..." would otherwise read as an option
    out = []
    it = iter(argv)
    for t in it:
        if t == "--box":
            nxt = next(it, None)
            out.append(t if nxt is None else f"--box={nxt}")
        else:
            out.append(t)
    return out


def main(argv=None) -> int:
    p = build_parser()
    a = p.parse_args(_glue_box(sys.argv[1:] if argv is None else list(argv)))
    try:
        return a.fn(a)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
