"""Exact radix arithmetic for arbitrary-precision integers.

Expansions are stored least-significant digit first, so the list index of a
digit equals its exponent. Zero is represented by the empty expansion.
Whether a digit counts as "small" is always decided by exact rational
comparison against kappa*g; no floats are involved anywhere in this module.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

RationalLike = Union[Fraction, int, str]


def _exact_fraction(value: RationalLike) -> Fraction:
    """Coerce to an exact Fraction. Floats are rejected: a threshold that
    arrives as 0.1 has already been silently rounded."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"kappa must be a Fraction, int, or 'p/q' string, got {type(value).__name__}")


@dataclass(frozen=True)
class BaseSpec:
    """A radix g >= 2 together with a smallness threshold kappa in (0, 1].

    A digit d is small iff d < kappa*g, strictly. The strictness matters
    exactly when kappa*g is an integer: for g=4, kappa=1/2 the digit 2 is
    large. Equivalently the small alphabet is {0, ..., ceil(kappa*g)-1}.
    """

    g: int
    kappa: Fraction = Fraction(1, 2)

    def __post_init__(self) -> None:
        object.__setattr__(self, "kappa", _exact_fraction(self.kappa))
        if not isinstance(self.g, int) or isinstance(self.g, bool) or self.g < 2:
            raise ValueError(f"base must be an integer >= 2, got {self.g!r}")
        if not (0 < self.kappa <= 1):
            raise ValueError(f"kappa must lie in (0, 1], got {self.kappa}")

    @property
    def max_small_digit(self) -> int:
        """Largest digit still counted small: ceil(kappa*g) - 1."""
        return math.ceil(self.kappa * self.g) - 1

    @property
    def alphabet_size(self) -> int:
        """Number of small digit values."""
        return self.max_small_digit + 1

    def is_small(self, d: int) -> bool:
        return d <= self.max_small_digit

    def is_large(self, d: int) -> bool:
        return d > self.max_small_digit

    def label(self) -> str:
        return f"{self.g}:{self.kappa}"


@dataclass(frozen=True)
class DigitVector:
    """Positional expansion of a non-negative integer, least-significant first.

    Canonical form only: no most-significant zero is stored, and zero is the
    empty tuple, so equal integers always compare equal digit-wise.
    """

    base: int
    digits: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "digits", tuple(self.digits))
        if self.base < 2:
            raise ValueError(f"base must be >= 2, got {self.base}")
        for d in self.digits:
            if not (0 <= d < self.base):
                raise ValueError(f"digit {d} outside [0, {self.base})")
        if self.digits and self.digits[-1] == 0:
            raise ValueError("non-canonical expansion: most-significant digit is zero")

    def __len__(self) -> int:
        return len(self.digits)

    def digit_at(self, k: int) -> int:
        """Digit at exponent k; positions beyond the expansion are zero."""
        if k < 0:
            raise ValueError("negative position")
        return self.digits[k] if k < len(self.digits) else 0

    def render(self) -> str:
        """Human form '(d_m...d_1d_0)_g', most-significant digit first."""
        if not self.digits:
            body = "0"
        elif self.base <= 10:
            body = "".join(str(d) for d in reversed(self.digits))
        else:
            body = ",".join(str(d) for d in reversed(self.digits))
        return f"({body})_{self.base}"

    def to_json_dict(self) -> dict:
        return {"base": self.base, "digits_lsb": list(self.digits)}


def to_digits(n: int, g: int) -> DigitVector:
    """Expand n >= 0 in base g >= 2."""
    if not isinstance(n, int) or isinstance(n, bool):
        raise TypeError(f"n must be an integer, got {type(n).__name__}")
    if n < 0:
        raise ValueError(f"n must be non-negative, got {n}")
    if g < 2:
        raise ValueError(f"base must be >= 2, got {g}")
    out = []
    while n:
        n, d = divmod(n, g)
        out.append(d)
    return DigitVector(g, tuple(out))


def from_digits(dv: DigitVector) -> int:
    """Evaluate an expansion back to the integer it denotes."""
    value = 0
    for d in reversed(dv.digits):
        value = value * dv.base + d
    return value


def large_digit_count(n: int, spec: BaseSpec) -> int:
    """Number of base-g digits of n that are >= kappa*g."""
    if n < 0:
        raise ValueError("n must be non-negative")
    bound = spec.max_small_digit
    g = spec.g
    count = 0
    while n:
        n, d = divmod(n, g)
        if d > bound:
            count += 1
    return count


@dataclass(frozen=True)
class DigitWindowReport:
    """Digit statistics of one integer restricted to positions k with
    lo <= g^k <= hi."""

    spec: BaseSpec
    lo: int
    hi: int
    positions: tuple[int, ...]
    large_positions: tuple[int, ...]

    def to_json_dict(self) -> dict:
        return {
            "base": self.spec.g,
            "kappa": str(self.spec.kappa),
            "lo": self.lo,
            "hi": self.hi,
            "positions": list(self.positions),
            "large_positions": list(self.large_positions),
        }


def digit_window(n: int, spec: BaseSpec, lo: int, hi: int) -> DigitWindowReport:
    """Report which positions fall in the window [lo, hi] (measured by the
    place value g^k) and which of those carry a large digit.

    positions is the exact set {k : lo <= g^k <= hi}; a position beyond the
    expansion of n holds digit 0 and is therefore never large.
    """
    if lo < 1 or lo > hi:
        raise ValueError(f"window requires 1 <= lo <= hi, got [{lo}, {hi}]")
    if n < 0:
        raise ValueError("n must be non-negative")
    g = spec.g
    k, place = 0, 1
    while place < lo:
        place *= g
        k += 1
    positions = []
    large = []
    bound = spec.max_small_digit
    while place <= hi:
        positions.append(k)
        if (n // place) % g > bound:
            large.append(k)
        place *= g
        k += 1
    return DigitWindowReport(spec, lo, hi, tuple(positions), tuple(large))


def multi_base_profile(n: int, specs: Sequence[BaseSpec]) -> tuple[tuple[int, int], ...]:
    """Per-base (total digit count, large digit count) for one integer."""
    out = []
    for spec in specs:
        dv = to_digits(n, spec.g)
        out.append((len(dv), large_digit_count(n, spec)))
    return tuple(out)


def render_digit_grid(n: int, specs: Sequence[BaseSpec]) -> str:
    """Multi-line rendering of n in every base, large digits bracketed.

    Example row: 'base  5 (kappa 1/2):  1 2 0 1 1 [3] [4] [4] [4]'
    """
    lines = []
    width = max(len(str(s.g)) for s in specs)
    for spec in specs:
        dv = to_digits(n, spec.g)
        cells = []
        for d in reversed(dv.digits) if dv.digits else (0,):
            cells.append(f"[{d}]" if spec.is_large(d) else str(d))
        lines.append(f"base {spec.g:>{width}} (kappa {spec.kappa}):  " + " ".join(cells))
    return "\n".join(lines)
