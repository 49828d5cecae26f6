"""Exact scalar utilities: rational parsing/formatting and integer root bounds.

Rationals are plain ``fractions.Fraction``.  Floats entering an exact code
path are converted with ``Fraction(float)``, which is exact (binary floats
are dyadic rationals), so "float mode" bodies can still be measured exactly.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Union

from .errors import InputFormatError

Scalar = Union[int, float, Fraction]


def parse_scalar(value) -> Union[Fraction, float]:
    """Parse a JSON scalar: int or "p/q" string -> Fraction, float -> float."""
    if isinstance(value, bool):
        raise InputFormatError(f"boolean is not a coordinate: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        return value
    if isinstance(value, Fraction):
        return value
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise InputFormatError(f"bad rational literal {value!r}") from exc
    raise InputFormatError(f"unsupported scalar {value!r}")


def exactify(value: Scalar) -> Fraction:
    """Convert a scalar to an exact Fraction (floats converted exactly)."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        if not math.isfinite(value):
            raise InputFormatError(f"non-finite scalar {value!r}")
        return Fraction(value)
    if isinstance(value, str):
        parsed = parse_scalar(value)
        return parsed if isinstance(parsed, Fraction) else Fraction(parsed)
    raise InputFormatError(f"unsupported scalar {value!r}")


def format_exact(q: Fraction) -> str:
    """Serialize a Fraction as "p" or "p/q"."""
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def iroot(x: int, n: int) -> tuple[int, bool]:
    """Floor n-th root of a nonnegative integer, plus exactness flag.

    A float-log seed lands within a few ulps of the root, so the exact
    integer correction needs only a handful of steps even for huge n (plain
    Newton from a bit-length seed would crawl at rate 1 - 1/n).
    """
    if n < 1:
        raise ValueError("root order must be >= 1")
    if x < 0:
        raise ValueError("negative radicand")
    if x == 0:
        return 0, True
    if n == 1:
        return x, True
    if n == 2:
        r = math.isqrt(x)
        return r, r * r == x
    if x.bit_length() <= n:
        return 1, x == 1
    # seed a hair ABOVE the true root (log2 split into exponent + mantissa);
    # Newton descent from above is monotone and quadratic, while a seed below
    # the root would first explode upward and then crawl back at rate 1 - 1/n
    bits = x.bit_length()
    top = x >> max(0, bits - 64)
    log2x = math.log2(top) + max(0, bits - 64)
    q, frac = divmod(log2x / n, 1.0)
    q = int(q)
    mant = 2.0 ** frac * (1.0 + 1e-9)
    if q <= 500:
        r = int(mant * (1 << q)) + 1
    else:
        r = (int(mant * (1 << 53)) + 1) << (q - 53)
    while True:
        nxt = ((n - 1) * r + x // r ** (n - 1)) // n
        if nxt >= r:
            break
        r = nxt
    while r ** n > x:
        r -= 1
    while (r + 1) ** n <= x:
        r += 1
    return r, r ** n == x


def nth_root_bounds(q: Fraction, n: int, bits: int = 128) -> tuple[Fraction, Fraction]:
    """Rational bracket [lo, hi] around q**(1/n) with hi - lo <= 2**(1-bits)-ish.

    Both bounds are certified: lo**n <= q <= hi**n.
    """
    if q < 0:
        raise ValueError("negative radicand")
    if q == 0:
        return Fraction(0), Fraction(0)
    root = perfect_nth_root(q, n)
    if root is not None:
        return root, root
    scale = 1 << bits
    num, den = q.numerator, q.denominator
    lo_int, _ = iroot(num * scale ** n // den, n)
    hi_int, exact = iroot(-(-num * scale ** n // den), n)
    if not exact:
        hi_int += 1
    return Fraction(lo_int, scale), Fraction(hi_int, scale)


def perfect_nth_root(q: Fraction, n: int):
    """Return the exact rational n-th root of q, or None if irrational."""
    if q < 0:
        raise ValueError("negative radicand")
    if q == 0:
        return Fraction(0)
    rn, okn = iroot(q.numerator, n)
    if not okn:
        return None
    rd, okd = iroot(q.denominator, n)
    if not okd:
        return None
    return Fraction(rn, rd)


def lcm_of_denominators(values: Iterable[Fraction]) -> int:
    out = 1
    for v in values:
        out = out * v.denominator // math.gcd(out, v.denominator)
    return out
