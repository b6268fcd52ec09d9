import numpy as np
import pytest

from heisenberg_sft.analyze import (check_alignment, check_coordination, check_equal_width,
                                    check_row_uniformity, check_sofic_alternation, check_sync,
                                    counter_layers, covered_sites, factor_phi, factor_sofic,
                                    robinson_layers, scan_periods, strip_widths, supertile_centres)
from heisenberg_sft.counter import OMEGA, TILDE, CounterSym
from heisenberg_sft.robinson import rho
from heisenberg_sft.sft import (OC_RULES, SOF, SOFIC, SOFIC_LETTERS, Box, Window, check_window,
                                encode)


def test_scan_one_site_everything_survives():
    w = Window(OMEGA, Box(0, 0, 0, 0, 0, 0), np.array([[[encode(rho(0, 0))]]], np.int16))
    assert len(scan_periods(w, 4)) == 9**3 - 1


def test_scan_constant_window():
    code = encode(CounterSym(0, False, "blank"))
    w = Window(OMEGA, Box(0, 2, 0, 2, 0, 2), np.full((3, 3, 3), code, np.int16))
    surv = scan_periods(w, 1)
    assert (0, 0, 1) in surv and len(surv) == 26


def test_scan_refutes_on_generated(gen):
    w = gen((-3, 3, -6, 6, -6, 6))
    surv = scan_periods(w, 2)
    assert (0, 0, 1) not in surv and (2, 0, 0) not in surv


def test_strip_widths_examples(gen):
    sw = strip_widths(gen((1, 1, -4, 4, -20, 20)), 1)
    assert sw[1] == 1 and sw[2] == 2 and sw[4] == 3 and sw[0] is None


def test_strip_widths_rejects_robinson(gen):
    with pytest.raises(ValueError):
        strip_widths(gen((0, 0, -2, 2, -2, 2)), 0)


def test_layer_lists(gen):
    w = gen((-3, 3, -2, 2, -2, 2))
    assert robinson_layers(w) == [-2, 0, 2]
    assert counter_layers(w) == [-3, -1, 1, 3]


def test_sync_catches_out_of_phase_strip(gen):
    w = gen((-1, 1, -3, 3, -4, 4))
    assert check_sync(w) == []
    # layer k=-1 overflows everywhere; knock one width-2 strip out of phase
    for z in (0, 1):
        w[(-1, 1, z)] = CounterSym(0, z == 0, "blank")
    vs = check_sync(w)
    assert vs and vs[0].rule_id == "SYNC"


def test_coordination_catches_missing_small_overflow(gen):
    w = gen((-1, 1, -4, 4, -8, 8))
    assert check_coordination(w) == []
    for z in (0, 1):  # width 2 at y=1 stops overflowing, width 4 at y=2 still does
        w[(-1, 1, z)] = CounterSym(0, z == 0, "blank")
    assert any(v.rule_id == "COORD" for v in check_coordination(w))


def test_row_uniformity_flags_mixed_line(gen):
    w = gen((31, 31, -4, 4, -8, 8), TILDE)
    assert check_row_uniformity(w) == []
    lay = w.layer(31)
    iy, iz = np.argwhere(lay == encode(CounterSym(1, True, "coord")))[0]
    w.data[0, iy, iz] = encode(CounterSym(1, True, "both"))
    # the rest of that y-line still has coord
    assert check_row_uniformity(w)


def test_equal_width_clean_and_broken(gen):
    w = gen((-5, 5, -12, 12, -12, 12))
    assert check_equal_width(w) == []
    w2 = gen((-1, -1, -4, 4, -8, 8))
    # rebuild row y=1 with bold period 8, so (1,1) and (2,0) share a diagonal
    for z in range(-8, 9):
        w2[(-1, 1, z)] = CounterSym(1, True, "both") if z % 8 == 1 else CounterSym(0, False, "blank")
    assert strip_widths(w2, -1)[1] == 3
    assert check_equal_width(w2)


def test_alignment_generated_and_shifted(gen):
    w = gen((0, 2, -12, 12, -12, 12))
    assert check_alignment(w) == []
    levels = set(supertile_centres(w, 0).values())
    assert {1, 2} <= levels
    b = w.box
    shifted = np.array([[encode(rho(y + 2, z)) for z in range(b.z0, b.z1 + 1)]
                        for y in range(b.y0, b.y1 + 1)], np.int16)
    w.data[2 - b.x0] = shifted
    vs = check_alignment(w)
    assert vs and all(v.rule_id == "ALIGN" for v in vs)


def test_alignment_single_layer_trivial(gen):
    assert check_alignment(gen((0, 0, -8, 8, -8, 8))) == []


def test_factor_phi_clean(gen):
    w = gen((-5, 5, -12, 12, -12, 12), TILDE)
    f = factor_phi(w)
    assert f.variant == OMEGA
    assert not (f.data == encode(CounterSym(1, True, "coord"))).any()
    assert check_window(f, exclude=OC_RULES) == []
    with pytest.raises(ValueError):
        factor_phi(gen((0, 0, 0, 0, 0, 0)))


def test_factor_sofic(gen):
    w = gen((-3, 3, -6, 6, -6, 6))
    s = factor_sofic(w)
    assert s.variant == SOFIC
    assert s[(0, 0, 0)] == "C"
    assert check_sofic_alternation(s) == []
    s.data[3, 6, 6] = SOF + SOFIC_LETTERS.index("A")
    vs = check_sofic_alternation(s)
    assert vs and vs[0].rule_id == "SOFIC-ALT"


def test_covered_sites(gen):
    w = gen((-3, 3, -3, 3, -6, 6))
    m = covered_sites(w)
    assert not m[0].any() and not m[-1].any()
    assert m[3, 3, 6]
    assert 0 < m.sum() < m.size
