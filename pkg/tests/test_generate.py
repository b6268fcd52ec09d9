import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from heisenberg_sft.analyze import counter_layers, strip_widths
from heisenberg_sft.counter import OMEGA, TILDE, CounterSym, digit_of_value
from heisenberg_sft.generate import GenParams, gen_exceptional, gen_omega, gen_omega_tilde, generate
from heisenberg_sft.robinson import in_B, in_C, nu2, rho
from heisenberg_sft.sft import ONE_BOTH, ONE_COORD, Box, check_window


def test_layer_minus_one_all_ones_both(gen):
    w = gen((-1, -1, -8, 8, -8, 8))
    for (x, y, z), s in w.items():
        assert s.digit == 1 and s.seg == "both"
        assert s.bold == in_B(y, z)


def test_layer_one_blank_zero(gen):
    w = gen((1, 1, -8, 8, -8, 8))
    for (x, y, z), s in w.items():
        assert s.digit == 0 and s.seg == "blank"
        assert s.bold == in_B(y, z)


def test_site_7_1_0():
    w = gen_omega(GenParams((7, 9, 1, 1, -2, 2)))
    s = w[(7, 1, 0)]
    assert s == CounterSym(1, True, "both")
    assert w[(9, 1, 2)].digit == 0
    assert check_window(gen_omega(GenParams((5, 9, -2, 2, -4, 4)))) == []


def test_robinson_layers_are_rho(gen):
    w = gen((-2, 2, -6, 6, -6, 6))
    for (x, y, z), s in w.items():
        if x % 2 == 0:
            assert s == rho(y, z)
    w = gen((-2, 2, -6, 6, -6, 6), parity="odd")
    for (x, y, z), s in w.items():
        if x % 2:
            assert s == rho(y, z)


@settings(max_examples=12, deadline=None)
@given(st.integers(-6, 4), st.integers(0, 2), st.integers(-40, 30), st.integers(0, 10),
       st.integers(-40, 30), st.integers(0, 10), st.sampled_from([OMEGA, TILDE]),
       st.sampled_from(["even", "odd"]))
def test_generators_clean_random_boxes(x0, dx, y0, dy, z0, dz, variant, parity):
    box = (x0, x0 + dx, y0, y0 + dy, z0, z0 + dz)
    assert check_window(generate(box, variant, parity)) == []


@pytest.mark.parametrize("variant", [OMEGA, TILDE])
def test_generators_clean_full_range(gen, variant):
    assert check_window(gen((-6, 6, -40, 40, -40, 40), variant)) == []


def test_cross_bold_duality(gen):
    w = gen((-4, 4, -12, 12, -12, 12))
    b = w.box
    n = 0
    for (x, y, z), s in w.items():
        if x % 2 == 0 and x + 1 <= b.x1 and b.z0 <= z + y <= b.z1:
            assert (s.kind == "cross") == w[(x + 1, y, z + y)].bold
            n += 1
    assert n > 1000


def _value(w, x, y, z, i):
    ds = [w[(x, y, z + d)].digit for d in range(2**i)]
    return int("".join(map(str, ds)), 2)


@pytest.mark.parametrize("i", [1, 2])
def test_counter_values_increase(gen, i):
    w = gen((-41, 41, -2, 2, -8, 8))
    y = 2 ** (i - 1)
    z = 0
    layers = counter_layers(w)
    assert len(layers) >= 40
    prev = None
    for x in layers:
        zz = z + (x - layers[0]) * y  # X-stacks drift by y per layer
        zz -= (zz - w.box.z0) // 2**i * 0
        zs = (zz % 2**i)
        zb = -8 + ((-8 - zs) % 2**i) if False else None
        # take the strip whose MSB is the lowest bold cell on the row
        bolds = [zc for zc in range(-8, 9) if w[(x, y, zc)].bold]
        v = _value(w, x, y, bolds[0], i)
        if prev is not None:
            assert v == (prev + 1) % 2 ** 2**i
        prev = v


def test_explicit_values(gen):
    w = gen((-9, 9, 1, 4, -8, 8))
    for x in counter_layers(w):
        k = (x - 1) // 2
        for y in (1, 2, 4):
            i = nu2(y) + 1
            for z in range(-8, 9):
                d = z % 2**i
                assert w[(x, y, z)].digit == digit_of_value(i, k % 2 ** 2**i, d)


def test_strip_widths(gen):
    w = gen((1, 1, -5, 5, -20, 20))
    sw = strip_widths(w, 1)
    for y in range(-5, 6):
        assert sw[y] == (None if y == 0 else nu2(y) + 1)


def test_tilde_coord_pattern(gen):
    # layer k=15: width-4 counters overflow, width-2 too; coord next to partial overflows
    w = gen((31, 31, -4, 4, -8, 8), TILDE)
    lay = w.layer(31)
    assert (lay == ONE_COORD).any()
    # no y-line mixes both and coord
    assert not ((lay == ONE_BOTH).any(axis=0) & (lay == ONE_COORD).any(axis=0)).any()


def test_tilde_no_overflow_no_coord(gen):
    w = gen((1, 1, -10, 10, -10, 10), TILDE)
    assert not (w.data == ONE_COORD).any()


def test_tilde_matches_omega_off_coord(gen):
    a = gen((-5, 5, -10, 10, -10, 10), OMEGA)
    b = gen((-5, 5, -10, 10, -10, 10), TILDE)
    d = b.data.copy()
    d[d == ONE_COORD] = ONE_BOTH
    assert np.array_equal(a.data, d)


def test_exceptional_minus_one_is_omega(gen):
    box = (-4, 4, -8, 8, -8, 8)
    for v in (OMEGA, TILDE):
        a = gen(box, v)
        b = gen_exceptional(GenParams(box, v, "even", -1))
        assert a == b


def test_exceptional_absent_constant_right_half(gen):
    w = gen_exceptional(GenParams((-9, 9, 0, 0, 0, 8), OMEGA, "even", None))
    vals = {w[(x, 0, z)].digit for x in counter_layers(w) for z in range(0, 9)}
    assert len(vals) == 1
    assert check_window(gen_exceptional(GenParams((-6, 6, -20, 20, -20, 20), TILDE, "even", None))) == []


def test_exceptional_five_total_overflow():
    w = gen_exceptional(GenParams((9, 13, -6, 6, -8, 8), TILDE, "even", 5))
    assert check_window(w) == []
    for y in range(-6, 7):
        if y == 0:
            continue
        i = nu2(y) + 1
        bolds = [z for z in range(-8, 9) if w[(11, y, z)].bold]
        for zb in bolds:
            if zb + 2**i - 1 <= 8:
                assert all(w[(11, y, zb + d)].digit == 1 for d in range(2**i))
                assert all(w[(13, y, zb + 2 * y + d)].digit == 0 for d in range(2**i)
                           if -8 <= zb + 2 * y + d <= 8)


def test_exceptional_two_layers_rejected():
    with pytest.raises(ValueError):
        gen_exceptional(GenParams((0, 1, 0, 1, 0, 1), OMEGA, "even", [2, 3]))


@pytest.mark.parametrize("K", [None, -3, 0, 5, 12])
@pytest.mark.parametrize("variant", [OMEGA, TILDE])
def test_exceptional_clean(K, variant):
    w = gen_exceptional(GenParams((-8, 30, -20, 20, -20, 20), variant, "even", K))
    assert check_window(w) == []


def test_wrong_variant_rejected():
    with pytest.raises(ValueError):
        gen_omega(GenParams((0, 1, 0, 1, 0, 1), TILDE))
    with pytest.raises(ValueError):
        gen_omega_tilde(GenParams((0, 1, 0, 1, 0, 1), OMEGA))
