"""Exact radicals, symbolic times and high-precision phase reduction.

All eigenvalues of the tree families studied here square to integers, and
every prescribed readout time is a rational multiple of pi times a square
root.  Keeping both in exact form until the final trigonometric evaluation
avoids the catastrophic cancellation that plain doubles suffer once the
integer parts of the phases grow past ~1e15 (readout numerators grow
geometrically, so that happens early in every schedule).

Reduction rules for a phase t*lam with lam = c*sqrt(m) and
t = (num/den)*pi*sqrt(root):

* m*root a perfect square s^2  ->  the phase is (num*c*s/den)*pi; reduce the
  integer numerator mod 2*den exactly and evaluate cos/sin of the small
  remainder.
* otherwise                    ->  reduce (num*c*s)*sqrt(m')/(2*den) mod 1
  with mpmath at a working precision that scales with the digit count of the
  numerator, then scale back to an angle in [0, 2*pi).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from math import gcd

import mpmath

#: extra decimal digits kept beyond the integer part during phase reduction
_GUARD_DIGITS = 30


def squarefree_split(n: int) -> tuple[int, int]:
    """Write n >= 0 as c^2 * m with m squarefree; returns (c, m)."""
    if n < 0:
        raise ValueError("squarefree_split expects a nonnegative integer")
    if n == 0:
        return 0, 0
    c, m = 1, 1
    d = 2
    rest = n
    while d * d <= rest:
        if rest % d == 0:
            e = 0
            while rest % d == 0:
                rest //= d
                e += 1
            c *= d ** (e // 2)
            if e % 2:
                m *= d
        d += 1 if d == 2 else 2
    m *= rest
    return c, m


@dataclass(frozen=True)
class Radical:
    """Exact value c*sqrt(m) with m squarefree (m=1: integer, c=0 and m=0: zero)."""

    c: int
    m: int

    def __post_init__(self):
        if self.m < 0:
            raise ValueError("radical part must be nonnegative")
        if (self.c == 0) != (self.m == 0):
            raise ValueError("zero is represented as Radical(0, 0)")

    @classmethod
    def zero(cls) -> "Radical":
        return cls(0, 0)

    @classmethod
    def integer(cls, k: int) -> "Radical":
        return cls(k, 1) if k else cls(0, 0)

    @classmethod
    def from_square(cls, n: int, negative: bool = False) -> "Radical":
        """The value +-sqrt(n) for integer n >= 0."""
        c, m = squarefree_split(n)
        if c == 0:
            return cls(0, 0)
        return cls(-c if negative else c, m)

    @property
    def value(self) -> float:
        if self.c == 0:
            return 0.0
        return self.c * math.sqrt(self.m)

    def mpf(self) -> mpmath.mpf:
        if self.c == 0:
            return mpmath.mpf(0)
        return mpmath.mpf(self.c) * mpmath.sqrt(self.m)

    def __neg__(self) -> "Radical":
        return Radical(-self.c, self.m) if self.c else self

    def __str__(self) -> str:
        if self.c == 0:
            return "0"
        if self.m == 1:
            return str(self.c)
        if self.c == 1:
            return f"sqrt({self.m})"
        if self.c == -1:
            return f"-sqrt({self.m})"
        return f"{self.c}*sqrt({self.m})"


def recognize_radical(x: float, tol: float = 1e-9) -> Radical | None:
    """Exact form of x when x^2 is within tol of an integer, else None."""
    if abs(x) <= tol:
        return Radical.zero()
    sq = x * x
    n = round(sq)
    if n <= 0 or abs(sq - n) > tol:
        return None
    return Radical.from_square(n, negative=x < 0)


@dataclass(frozen=True)
class PiTime:
    """Time (num/den)*pi*sqrt(root), held exactly until evaluation.

    ``num`` may be an arbitrary-precision integer; ``den`` >= 1 and ``root``
    is squarefree >= 1 after normalization through :meth:`of`.
    """

    num: int
    den: int
    root: int

    @classmethod
    def of(cls, num: int, den: int = 1, root: int = 1) -> "PiTime":
        if den == 0:
            raise ValueError("den must be nonzero")
        if root < 1:
            raise ValueError("root must be >= 1")
        c, m = squarefree_split(root)
        num *= c
        if den < 0:
            num, den = -num, -den
        g = gcd(abs(num), den)
        if g > 1:
            num //= g
            den //= g
        return cls(num, den, m)

    @classmethod
    def multiple_of_pi(cls, k: int) -> "PiTime":
        return cls.of(k)

    @classmethod
    def over_sqrt(cls, num: int, q: int) -> "PiTime":
        """num*pi/sqrt(q), i.e. (num/q)*pi*sqrt(q)."""
        if q < 1:
            raise ValueError("q must be >= 1")
        return cls.of(num, q, q)

    def mpf(self) -> mpmath.mpf:
        x = mpmath.mpf(self.num) * mpmath.pi / self.den
        if self.root != 1:
            x *= mpmath.sqrt(self.root)
        return x

    @property
    def value(self) -> float:
        digits = len(str(abs(self.num))) + _GUARD_DIGITS
        with mpmath.workdps(digits):
            return float(self.mpf())

    def __str__(self) -> str:
        if self.root == 1:
            if self.den == 1:
                return f"{self.num}*pi"
            return f"({self.num}/{self.den})*pi"
        if self.den == self.root:
            return f"{self.num}*pi/sqrt({self.root})"
        if self.den == 1:
            return f"{self.num}*pi*sqrt({self.root})"
        return f"({self.num}/{self.den})*pi*sqrt({self.root})"


TimeLike = PiTime | float
EigenvalueLike = Radical | float


def eig_value(lam: EigenvalueLike) -> float:
    return lam.value if isinstance(lam, Radical) else float(lam)


def time_value(t: TimeLike) -> float:
    return t.value if isinstance(t, PiTime) else float(t)


def reduced_phase(lam: EigenvalueLike, t: TimeLike) -> float:
    """Phase t*lam reduced for trigonometric evaluation.

    Exact integer reduction mod 2*pi when both sides are exact and the
    radical product is a perfect square; mpmath reduction when exact but
    irrational; the plain double product otherwise.
    """
    if isinstance(t, PiTime) and isinstance(lam, Radical):
        if lam.c == 0 or t.num == 0:
            return 0.0
        p = t.num * lam.c
        s, m = squarefree_split(lam.m * t.root)
        p *= s
        if m == 1:
            return math.pi * ((p % (2 * t.den)) / t.den)
        digits = len(str(abs(p))) + _GUARD_DIGITS
        with mpmath.workdps(digits):
            x = mpmath.mpf(p) * mpmath.sqrt(m) / (2 * t.den)
            return float(2 * mpmath.pi * (x - mpmath.floor(x)))
    return time_value(t) * eig_value(lam)


def nearest_integer_distance(x: mpmath.mpf) -> mpmath.mpf:
    """Distance from x to the nearest integer (computed at ambient precision)."""
    return abs(x - mpmath.nint(x))
