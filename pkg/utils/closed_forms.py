"""
Closed-form values: D(K_k [] K_n) by the (d-1)^k < n <= d^k rule, D'(F_n) for
friendship graphs, and D(K_{p,q}).

Integer work stays in integers; only the friendship formula needs real
arithmetic, and that runs in decimal at configurable precision.
"""

import math
from dataclasses import dataclass
from decimal import Decimal, localcontext

from config import FRIENDSHIP_INTEGER_GUARD, FRIENDSHIP_PRECISION
from utils.errors import GraphInputError


@dataclass(frozen=True)
class IndexValue:
    """An exact value, an interval [lo, hi], or NotDefined.

    ``hi`` is None for an unresolved upper end.
    """

    lo: int | None
    hi: int | None
    source: str
    defined: bool = True

    @classmethod
    def exact(cls, value: int, source: str) -> "IndexValue":
        return cls(value, value, source)

    @classmethod
    def interval(cls, lo: int, hi: int | None, source: str) -> "IndexValue":
        return cls(lo, hi, source)

    @classmethod
    def not_defined(cls, source: str) -> "IndexValue":
        return cls(None, None, source, defined=False)

    @property
    def is_exact(self) -> bool:
        return self.defined and self.lo == self.hi

    @property
    def value(self) -> int | None:
        return self.lo if self.is_exact else None

    def plus(self, k: int) -> "IndexValue":
        if not self.defined:
            return self
        return IndexValue(self.lo + k, None if self.hi is None else self.hi + k, self.source)

    def contains(self, v: int) -> bool:
        return self.defined and self.lo <= v and (self.hi is None or v <= self.hi)

    def to_json(self):
        """Integer when exact, [lo, hi] otherwise, None when not defined."""
        if not self.defined:
            return None
        return self.lo if self.is_exact else [self.lo, self.hi]


@dataclass(frozen=True)
class ImrichResult:
    k: int
    n: int
    d: int
    log_ceiling: int
    lo: int
    hi: int

    @property
    def is_exact(self) -> bool:
        return self.lo == self.hi

    @property
    def boundary(self) -> bool:
        return not self.is_exact

    def as_index(self) -> IndexValue:
        return IndexValue(self.lo, self.hi, "imrich")

    def to_dict(self) -> dict:
        value = self.lo if self.is_exact else {"boundary": [self.lo, self.hi]}
        return {"k": self.k, "n": self.n, "d": self.d, "value": value}


def ceil_log(base: int, x: int) -> int:
    """Smallest e >= 0 with base**e >= x."""
    if base < 2 or x < 1:
        raise GraphInputError(f"ceil_log needs base >= 2 and x >= 1, got {base}, {x}")
    e, power = 0, 1
    while power < x:
        power *= base
        e += 1
    return e


def imrich(k: int, n: int) -> ImrichResult:
    """D(K_k [] K_n), equivalently D'(K_{k,n}) for k != n.

    d is the integer with (d-1)^k < n <= d^k. With e = ceil(log_d k) the value
    is d when n <= d^k - e - 1, d + 1 when n >= d^k - e + 1, and one of the
    two at n = d^k - e.
    """
    if k < 1 or n < 2:
        raise GraphInputError(f"imrich needs k >= 1 and n >= 2, got k={k}, n={n}")
    d = 2
    while d ** k < n:
        d += 1
    e = ceil_log(d, k)
    top = d ** k
    if n <= top - e - 1:
        lo = hi = d
    elif n >= top - e + 1:
        lo = hi = d + 1
    else:
        lo, hi = d, d + 1
    return ImrichResult(k, n, d, e, lo, hi)


def _friendship_value(n: int, precision: int) -> Decimal:
    with localcontext() as ctx:
        ctx.prec = precision
        a = 1 + 27 * Decimal(n) + 3 * (Decimal(81 * n * n + 6 * n)).sqrt()
        c = (a.ln() / 3).exp()
        return c / 3 + 1 / (3 * c) + Decimal(1) / 3


def friendship_index_formula(n: int, precision: int | None = None) -> int:
    """D'(F_n) = ceil(c/3 + 1/(3c) + 1/3) with c = a_n^(1/3), a_n = 1 + 27n + 3*sqrt(81n^2 + 6n)."""
    if n < 2:
        raise GraphInputError(f"friendship formula needs n >= 2, got {n}")
    precision = FRIENDSHIP_PRECISION if precision is None else precision
    x = _friendship_value(n, precision)
    nearest = x.to_integral_value()
    if abs(x - nearest) < Decimal(FRIENDSHIP_INTEGER_GUARD):
        x = _friendship_value(n, 2 * precision)
        if abs(x - nearest) < Decimal(10) ** -(2 * precision - 10):
            return int(nearest)
    return math.ceil(x)


def bipartite_number(p: int, q: int) -> int:
    """D(K_{p,q}): q for p < q, n + 1 for K_{n,n} with n >= 3, and D(K_{1,1}) = D(K_{2,2}) = 2, 3."""
    p, q = sorted((p, q))
    if p < 1:
        raise GraphInputError(f"complete bipartite sizes must be >= 1, got {p}, {q}")
    if p < q:
        return q
    return {1: 2, 2: 3}.get(p, p + 1)
