"""Digit bookkeeping tests.

The oracle for radix conversion is the standard library itself: format()
for bases 2/8/16 and int(text, g) for the inverse. Everything else is
checked against brute-force digit filters.
"""

import random
from fractions import Fraction

import pytest

from smalldigits import (
    BaseSpec,
    DigitVector,
    digit_window,
    from_digits,
    large_digit_count,
    multi_base_profile,
    render_digit_grid,
    to_digits,
)


# --- oracles -------------------------------------------------------------------


def _stdlib_digits(n: int, g: int) -> list[int]:
    """LSB-first digits via string formatting, independent of the library."""
    if g == 2:
        text = format(n, "b")
    elif g == 8:
        text = format(n, "o")
    elif g == 16:
        text = format(n, "x")
    else:
        raise ValueError(g)
    return [int(c, 16) for c in reversed(text)] if n else []


def test_to_digits_matches_stdlib_formatting():
    rng = random.Random(20260819)
    for _ in range(300):
        n = rng.randrange(0, 10**rng.randrange(1, 30))
        for g in (2, 8, 16):
            assert list(to_digits(n, g).digits) == _stdlib_digits(n, g)


def test_from_digits_matches_int_parsing():
    rng = random.Random(42)
    for _ in range(200):
        g = rng.choice([2, 3, 5, 7, 10, 16])
        length = rng.randrange(1, 40)
        digits = [rng.randrange(g) for _ in range(length)]
        while digits and digits[-1] == 0:
            digits.pop()
        dv = DigitVector(g, tuple(digits))
        if g <= 10:
            text = "".join(str(d) for d in reversed(digits)) or "0"
            assert from_digits(dv) == int(text, g)
        assert to_digits(from_digits(dv), g).digits == dv.digits


def test_round_trip_small_and_large():
    for n in range(0, 2000):
        for g in (2, 3, 5, 7, 10):
            assert from_digits(to_digits(n, g)) == n
    big = 3**200 + 5**120 + 17
    for g in (3, 5, 64):
        assert from_digits(to_digits(big, g)) == big


# --- zero and rendering --------------------------------------------------------


def test_zero_has_empty_digit_tuple():
    dv = to_digits(0, 7)
    assert dv.digits == ()
    assert len(dv) == 0
    assert dv.render() == "(0)_7"
    assert dv.digit_at(0) == 0 and dv.digit_at(25) == 0


def test_render_worked_example():
    assert to_digits(756, 3).render() == "(1001000)_3"
    assert to_digits(756, 5).render() == "(11011)_5"
    assert to_digits(756, 7).render() == "(2130)_7"


def test_render_wide_base_uses_commas():
    assert to_digits(255, 16).render() == "(15,15)_16"
    assert to_digits(64, 64).render() == "(1,0)_64"


def test_to_digits_rejects_bad_base():
    with pytest.raises(ValueError):
        to_digits(5, 1)
    with pytest.raises(ValueError):
        to_digits(-1, 3)


# --- smallness thresholds ------------------------------------------------------


def test_base_spec_alphabet_boundaries():
    # strict inequality: kappa*g an integer means that digit is already large
    s4 = BaseSpec(4, Fraction(1, 2))
    assert s4.alphabet_size == 2 and s4.max_small_digit == 1
    assert s4.is_small(1) and not s4.is_small(2)
    s5 = BaseSpec(5, Fraction(1, 2))
    assert s5.alphabet_size == 3 and s5.max_small_digit == 2
    assert s5.is_small(2) and s5.is_large(3)
    s3 = BaseSpec(3, Fraction(2, 3))
    assert s3.alphabet_size == 2  # digits {0,1}: 2 < 2 fails


def test_base_spec_rejects_float_kappa():
    with pytest.raises(TypeError):
        BaseSpec(5, 0.5)


def test_base_spec_kappa_range():
    with pytest.raises(ValueError):
        BaseSpec(5, Fraction(0))
    with pytest.raises(ValueError):
        BaseSpec(5, Fraction(3, 2))
    BaseSpec(5, Fraction(1))  # kappa = 1 allowed: every digit small


def test_base_spec_label():
    assert BaseSpec(5, Fraction(1, 2)).label() == "5:1/2"


def test_large_digit_count_brute_force():
    spec = BaseSpec(7, Fraction(1, 2))
    for n in range(1500):
        expected = sum(1 for d in to_digits(n, 7).digits if d >= 3.5)
        assert large_digit_count(n, spec) == expected


def test_large_digit_count_strictness_at_half():
    # base 6, kappa 1/2: threshold exactly 3; digit 3 must count as large
    spec = BaseSpec(6, Fraction(1, 2))
    assert large_digit_count(3, spec) == 1
    assert large_digit_count(2, spec) == 0


# --- windows, profiles, grids --------------------------------------------------


def test_digit_window_collects_positions_by_place_value():
    spec = BaseSpec(5, Fraction(1, 2))
    n = from_digits(DigitVector(5, (4, 0, 3, 1, 4)))
    # window by place value: 5 <= 5^k <= 5^3 covers positions 1..3
    report = digit_window(n, spec, 5, 5**3)
    assert report.positions == (1, 2, 3)
    assert report.large_positions == (2,)  # the digit 3 at place 25
    # positions past the expansion hold zeros, never large
    tail = digit_window(n, spec, 5**6, 5**8)
    assert tail.positions == (6, 7, 8) and tail.large_positions == ()


def test_multi_base_profile_worked_example():
    specs = (BaseSpec(3, Fraction(1, 2)), BaseSpec(5, Fraction(1, 2)), BaseSpec(7, Fraction(1, 2)))
    assert multi_base_profile(756, specs) == ((7, 0), (5, 0), (4, 0))


def test_render_digit_grid_marks_large():
    specs = (BaseSpec(3, Fraction(1, 2)), BaseSpec(5, Fraction(1, 2)))
    grid = render_digit_grid(11, specs)
    assert "[2]" in grid  # 11 = (102)_3, the 2 is large
    assert grid.splitlines()[1] == "base 5 (kappa 1/2):  2 1"
