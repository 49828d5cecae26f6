"""The corner simplex as the sharpness example for the difference-body bound.

For A = {x >= 0, sum x_j <= L} the sumset and difference body satisfy the
exact ratios mu(A+A)/mu(A) = 2^n and mu(A-A)/mu(A) = C(2n, n); the lattice
point count of the difference set matches a trinomial sum exactly; and the
tightness ratio sqrt(n) C(2n,n) / 4^n stays in a narrow band approaching
1/sqrt(pi).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from .bodies import make_simplex
from .errors import PreconditionError
from .geometry import FACET_DIM_CAP, difference_body, exact_volume, minkowski_sum
from .rationals import exactify, format_exact

LIMIT_INV_SQRT_PI = 1.0 / math.sqrt(math.pi)

_BRUTE_FORCE_POINT_CAP = 10_000_000


@dataclass(frozen=True)
class SimplexReport:
    n: int
    length: Fraction
    vol_a: Fraction
    vol_sum: Fraction
    vol_diff: Fraction
    sum_ratio: Fraction
    diff_ratio: Fraction
    tightness: float
    kernel_verified: bool

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "L": format_exact(self.length),
            "volA": format_exact(self.vol_a),
            "volSum": format_exact(self.vol_sum),
            "volDiff": format_exact(self.vol_diff),
            "sumRatio": format_exact(self.sum_ratio),
            "diffRatio": format_exact(self.diff_ratio),
            "tightness": self.tightness,
            "kernelVerified": self.kernel_verified,
        }


def simplex_report(n: int, length) -> SimplexReport:
    """Exact volumes and ratios for the corner simplex family.

    Below the facet-dimension cap all three volumes come out of the geometry
    kernel (the sum via the genuine Minkowski construction, not the dilation
    shortcut).  Above the cap the closed forms are reported with
    kernel_verified = False.
    """
    if n < 1:
        raise PreconditionError("n must be >= 1")
    length = exactify(length)
    if length <= 0:
        raise PreconditionError("L must be positive")
    if n <= FACET_DIM_CAP:
        a = make_simplex(n, length)
        vol_a = exact_volume(a)
        vol_sum = exact_volume(minkowski_sum(a, a))
        vol_diff = exact_volume(difference_body(a))
        verified = True
    else:
        vol_a = length ** n / math.factorial(n)
        vol_sum = vol_a * 2 ** n
        vol_diff = vol_a * math.comb(2 * n, n)
        verified = False
    sum_ratio = vol_sum / vol_a
    diff_ratio = vol_diff / vol_a
    tightness = float(diff_ratio / 4 ** n) * math.sqrt(n)
    return SimplexReport(n=n, length=length, vol_a=vol_a, vol_sum=vol_sum,
                         vol_diff=vol_diff, sum_ratio=sum_ratio,
                         diff_ratio=diff_ratio, tightness=tightness,
                         kernel_verified=verified)


def trinomial_sum(n: int, length: int) -> int:
    """sum over a+b+c = n of multinomial(n; a,b,c) C(L,a) C(L,b), exactly.

    a, b, c count coordinates of a difference vector that are positive,
    negative and zero respectively.
    """
    if n < 1:
        raise PreconditionError("n must be >= 1")
    if length < 0:
        raise PreconditionError("L must be >= 0")
    fact_n = math.factorial(n)
    total = 0
    for a in range(n + 1):
        for b in range(n - a + 1):
            c = n - a - b
            multinomial = fact_n // (math.factorial(a) * math.factorial(b) * math.factorial(c))
            total += multinomial * math.comb(length, a) * math.comb(length, b)
    return total


def lattice_points_of_simplex(n: int, length: int) -> list[tuple[int, ...]]:
    """Integer points with x_j >= 0 and sum x_j <= L."""
    out = []
    for point in itertools.product(range(length + 1), repeat=n):
        if sum(point) <= length:
            out.append(point)
    return out


def lattice_diff_count(n: int, length: int) -> int:
    """Distinct pairwise differences of the simplex lattice points (brute force).

    Must equal trinomial_sum(n, L) exactly; guarded to n <= 3 and modest L
    because the point count grows like L^n.
    """
    if not 1 <= n <= 3:
        raise PreconditionError("brute-force count supported for n in {1, 2, 3}")
    if length < 0:
        raise PreconditionError("L must be >= 0")
    count = math.comb(length + n, n)
    if count > _BRUTE_FORCE_POINT_CAP:
        raise PreconditionError(
            f"{count} candidate points exceed the {_BRUTE_FORCE_POINT_CAP} guard"
        )
    import numpy as np

    pts = np.array(lattice_points_of_simplex(n, length), dtype=np.int64)
    span = 2 * length + 1
    strides = np.array([span ** (n - 1 - j) for j in range(n)], dtype=np.int64)
    codes = (pts + length) @ strides
    seen = np.zeros(span ** n, dtype=bool)
    base = pts @ strides
    for c in base:
        seen[codes - c] = True
    # codes - c encodes (p - q) + L*ones, which stays within [0, span^n)
    return int(np.count_nonzero(seen))


def tightness_sweep(nmax: int) -> dict:
    """Tightness ratio t(n) = sqrt(n) C(2n,n) / 4^n for n = 1..nmax.

    The exact rational part C(2n,n)/4^n is scaled by a float sqrt; the band
    [min, max] and the final value are reported next to the 1/sqrt(pi) limit.
    """
    if nmax < 1:
        raise PreconditionError("nmax must be >= 1")
    rows = []
    for n in range(1, nmax + 1):
        exact_part = Fraction(math.comb(2 * n, n), 4 ** n)
        t = float(exact_part) * math.sqrt(n)
        rows.append({"n": n, "ratio": t, "exact_part": exact_part})
    values = [r["ratio"] for r in rows]
    return {
        "rows": rows,
        "min": min(values),
        "max": max(values),
        "final": values[-1],
        "limit_reference": LIMIT_INV_SQRT_PI,
    }
