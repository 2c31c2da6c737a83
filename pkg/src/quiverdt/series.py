"""Exact truncated Laurent series in v = q^(1/2).

Coefficients are Python integers; there is no rational or floating
fallback, and any computation that would need one is a bug surfaced as
an error.  A series carries its truncation order v_max and keeps every
exponent up to and including it.  Mixing truncation orders is an error.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Mapping

from .errors import InvalidInputError, NonUnitSeriesError, TruncationMismatchError


@dataclass(frozen=True)
class VSeries:
    """Integer Laurent polynomial in v, exact below the cutoff v_max.

    Stored as a coefficient run starting at min_exp; the representation is
    canonical (no leading or trailing zeros), so equality is structural.
    """

    v_max: int
    min_exp: int = 0
    coeffs: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        coeffs = list(self.coeffs)
        min_exp = self.min_exp
        for c in coeffs:
            if not isinstance(c, int) or isinstance(c, bool):
                raise InvalidInputError(f"series coefficients must be integers, got {c!r}")
        drop = len(coeffs) - max(0, self.v_max - min_exp + 1)
        if drop > 0:
            del coeffs[len(coeffs) - drop:]
        while coeffs and coeffs[0] == 0:
            coeffs.pop(0)
            min_exp += 1
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        if not coeffs:
            min_exp = 0
        object.__setattr__(self, "min_exp", min_exp)
        object.__setattr__(self, "coeffs", tuple(coeffs))

    @classmethod
    def zero(cls, v_max: int) -> VSeries:
        return cls(v_max)

    @classmethod
    def one(cls, v_max: int) -> VSeries:
        return cls(v_max, 0, (1,))

    @classmethod
    def monomial(cls, v_max: int, coeff: int, exp: int) -> VSeries:
        return cls(v_max, exp, (coeff,))

    @classmethod
    def from_terms(cls, v_max: int, terms: Mapping[int, int]) -> VSeries:
        live = {e: c for e, c in terms.items() if c and e <= v_max}
        if not live:
            return cls(v_max)
        lo, hi = min(live), max(live)
        return cls(v_max, lo, tuple(live.get(e, 0) for e in range(lo, hi + 1)))

    def items(self) -> Iterator[tuple[int, int]]:
        """Nonzero (exponent, coefficient) pairs, ascending."""
        for i, c in enumerate(self.coeffs):
            if c:
                yield self.min_exp + i, c

    def coefficient(self, v_exp: int) -> int:
        if v_exp > self.v_max:
            raise InvalidInputError(f"exponent {v_exp} beyond truncation order {self.v_max}")
        i = v_exp - self.min_exp
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def q_coefficient(self, n: int) -> int:
        """Coefficient of q^n, i.e. of v^(2n)."""
        return self.coefficient(2 * n)

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def _check(self, other: VSeries) -> None:
        if self.v_max != other.v_max:
            raise TruncationMismatchError(
                f"truncation orders differ: {self.v_max} vs {other.v_max}"
            )

    def __add__(self, other: VSeries) -> VSeries:
        self._check(other)
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        lo = min(self.min_exp, other.min_exp)
        hi = max(self.min_exp + len(self.coeffs), other.min_exp + len(other.coeffs))
        out = [0] * (hi - lo)
        for i, c in enumerate(self.coeffs):
            out[self.min_exp - lo + i] += c
        for i, c in enumerate(other.coeffs):
            out[other.min_exp - lo + i] += c
        return VSeries(self.v_max, lo, tuple(out))

    def __neg__(self) -> VSeries:
        return VSeries(self.v_max, self.min_exp, tuple(-c for c in self.coeffs))

    def __sub__(self, other: VSeries) -> VSeries:
        return self + (-other)

    def __mul__(self, other: VSeries | int) -> VSeries:
        if isinstance(other, int):
            return VSeries(self.v_max, self.min_exp, tuple(other * c for c in self.coeffs))
        self._check(other)
        if self.is_zero or other.is_zero:
            return VSeries(self.v_max)
        acc: dict[int, int] = {}
        convolve_into(acc, self, other, 0, 1, self.v_max)
        return VSeries.from_terms(self.v_max, acc)

    def __rmul__(self, other: int) -> VSeries:
        return self.__mul__(other)

    def shift(self, k: int) -> VSeries:
        """Multiply by v^k."""
        return VSeries(self.v_max, self.min_exp + k, self.coeffs)

    def unit_inverse(self) -> VSeries:
        """Inverse of a series with constant term +1 or -1 and nothing below."""
        if self.is_zero or self.min_exp != 0 or self.coeffs[0] not in (1, -1):
            raise NonUnitSeriesError(
                "inverse requires constant leading term +1 or -1, got "
                + (self.__str__() if self.coeffs else "0")
            )
        lead = self.coeffs[0]
        a = list(self.coeffs) + [0] * (self.v_max + 1 - len(self.coeffs))
        b = [0] * (self.v_max + 1)
        b[0] = lead
        for k in range(1, self.v_max + 1):
            s = sum(a[j] * b[k - j] for j in range(1, k + 1))
            b[k] = -lead * s
        return VSeries(self.v_max, 0, tuple(b))

    def to_pairs(self) -> list[list[int]]:
        """Nonzero [v_exponent, coefficient] pairs; the JSON wire form."""
        return [[e, c] for e, c in self.items()]

    @classmethod
    def from_pairs(cls, v_max: int, pairs) -> VSeries:
        return cls.from_terms(v_max, {int(e): int(c) for e, c in pairs})

    def __str__(self) -> str:
        """Render as a q-power sum, lowest exponent first."""
        if self.is_zero:
            return "0"
        parts: list[str] = []
        for e, c in self.items():
            mag = abs(c)
            if e == 0:
                body = str(mag)
            else:
                if e == 2:
                    power = "q"
                elif e % 2 == 0:
                    power = f"q^{e // 2}"
                else:
                    power = f"q^({e}/2)"
                body = power if mag == 1 else f"{mag}*{power}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(("+ " if c > 0 else "- ") + body)
        return " ".join(parts)


def convolve_into(acc: dict[int, int], a: VSeries, b: VSeries, shift: int, sign: int, v_max: int) -> None:
    """Accumulate sign * v^shift * a * b into a coefficient map, truncating."""
    b_items = list(b.items())
    for e1, c1 in a.items():
        base = e1 + shift
        sc1 = sign * c1
        for e2, c2 in b_items:
            e = base + e2
            if e > v_max:
                break
            acc[e] = acc.get(e, 0) + sc1 * c2


@lru_cache(maxsize=None)
def poincare_series(k: int, v_max: int) -> VSeries:
    """P_k: the inverse of the product of (1 - q^j) for j = 1..k.

    P_0 is 1.  The coefficient of q^n is the number of partitions of n
    into parts of size at most k.
    """
    if k < 0:
        raise InvalidInputError(f"negative index {k}")
    if k == 0:
        return VSeries.one(v_max)
    factor = VSeries.from_terms(v_max, {0: 1, 2 * k: -1})
    return poincare_series(k - 1, v_max) * factor.unit_inverse()


def partition_count(n: int, k: int) -> int:
    """Number of integer partitions of n with parts of size at most k."""
    if n < 0 or k < 0:
        raise InvalidInputError("arguments must be non-negative")
    if n == 0:
        return 1
    if k == 0:
        return 0
    table = [1] + [0] * n
    for part in range(1, k + 1):
        for total in range(part, n + 1):
            table[total] += table[total - part]
    return table[n]
