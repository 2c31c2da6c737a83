"""Quantum torus elements, dilogarithms, and factorization verification.

Elements live in the quantum algebra of a quiver, truncated two ways: the
dimension vector support is capped componentwise by a bound, and series
coefficients are cut at a v truncation order (v = q^(1/2)).  The basis
elements y_gamma multiply by the signed rule

    y_a * y_b = -v^(skew(a, b)) * y_(a+b)     (a, b nonzero)

and y_0 is the multiplicative identity.  Repeated multiplication gives
y_gamma^k = (-1)^(k-1) * y_(k*gamma), which is what makes the quantum
dilogarithm of y_gamma a finite sum under a support bound.

Because the skew form can be negative, a product can lower series
exponents, so elements internally carry coefficients past v_max by a
headroom of sum(bound[tail] * bound[head]) over arrows: for factors
whose dimension vectors stay within the bound the total downward shift
can never exceed that, which makes every coefficient read back through
coefficient() exact regardless of how a product was parenthesized or
ordered.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product as iter_product
from typing import Mapping

from .errors import (
    BoundExceededError,
    InvalidInputError,
    InvalidOrderError,
    TruncationMismatchError,
)
from .ordering import RootOrder, admissible_total_order, validate_order
from .partitions import SubquiverPartition
from .quiver import DimVector, Quiver, _check_keys, topological_vertex_order
from .series import VSeries, convolve_into, poincare_series


def working_v_max(q: Quiver, bound: DimVector, v_max: int) -> int:
    """Internal series cutoff: v_max plus the worst possible downward shift."""
    b = bound.values
    return v_max + sum(b[t] * b[h] for t, h in q._arrow_pairs)


@dataclass(frozen=True)
class QuantumElement:
    """A finite sum of series coefficients times basis elements y_gamma.

    terms maps dimension vectors within the bound to nonzero series kept
    at the working cutoff; coefficient() truncates them back to v_max,
    the element's public precision.  The map is never mutated after
    construction.
    """

    quiver: Quiver
    bound: DimVector
    v_max: int
    terms: Mapping[DimVector, VSeries]

    def coefficient(self, gamma: DimVector) -> VSeries:
        _check_keys(self.quiver, gamma)
        if not gamma <= self.bound:
            raise BoundExceededError(f"{gamma} exceeds the support bound {self.bound}")
        s = self.terms.get(gamma)
        if s is None:
            return VSeries.zero(self.v_max)
        return VSeries(self.v_max, s.min_exp, s.coeffs)

    def _check(self, other: QuantumElement) -> None:
        if self.quiver != other.quiver:
            raise TruncationMismatchError("elements over different quivers")
        if self.bound != other.bound or self.v_max != other.v_max:
            raise TruncationMismatchError(
                f"truncation data differ: bound {self.bound} vs {other.bound}, "
                f"v_max {self.v_max} vs {other.v_max}"
            )

    def __add__(self, other: QuantumElement) -> QuantumElement:
        self._check(other)
        terms = dict(self.terms)
        for g, c in other.terms.items():
            s = terms.get(g)
            terms[g] = c if s is None else s + c
        return _element(self.quiver, self.bound, self.v_max, terms)

    def __sub__(self, other: QuantumElement) -> QuantumElement:
        return self + other.scale(-1)

    def scale(self, c: VSeries | int) -> QuantumElement:
        work = working_v_max(self.quiver, self.bound, self.v_max)
        if isinstance(c, int):
            c = VSeries.monomial(work, c, 0)
        elif c.v_max != work:
            c = VSeries(work, c.min_exp, c.coeffs)
        terms = {g: s * c for g, s in self.terms.items()}
        return _element(self.quiver, self.bound, self.v_max, terms)

    def __mul__(self, other: QuantumElement) -> QuantumElement:
        return qt_multiply(self, other)

    def support(self) -> list[DimVector]:
        return sorted(self.terms, key=lambda g: (g.height, g.values))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        lines = [f"({self.coefficient(g)}) * y{g}" for g in self.support()]
        return "\n".join(lines)


def _element(
    q: Quiver, bound: DimVector, v_max: int, terms: dict[DimVector, VSeries]
) -> QuantumElement:
    live = {g: s for g, s in terms.items() if not s.is_zero}
    return QuantumElement(q, bound, v_max, live)


def identity(q: Quiver, bound: DimVector, v_max: int) -> QuantumElement:
    return monomial(q, q.zero(), 1, bound, v_max)


def monomial(
    q: Quiver, gamma: DimVector, coeff: VSeries | int, bound: DimVector, v_max: int
) -> QuantumElement:
    """The element coeff * y_gamma.

    The coefficient is taken as an exact Laurent polynomial; it may be
    given at any truncation order up to the working cutoff.
    """
    _check_keys(q, gamma)
    _check_keys(q, bound)
    work = working_v_max(q, bound, v_max)
    if isinstance(coeff, int):
        coeff = VSeries.monomial(work, coeff, 0)
    elif coeff.v_max > work:
        raise TruncationMismatchError(
            f"coefficient truncated at {coeff.v_max}, working cutoff is {work}"
        )
    else:
        coeff = VSeries(work, coeff.min_exp, coeff.coeffs)
    if not gamma <= bound:
        raise BoundExceededError(f"{gamma} exceeds the support bound {bound}")
    return _element(q, bound, v_max, {gamma: coeff})


def qt_multiply(x: QuantumElement, y: QuantumElement) -> QuantumElement:
    """Product in the quantum algebra, truncated by bound and v_max.

    Basis products use the signed rule with the skew form; any summand
    whose dimension vector leaves the bound is dropped.
    """
    x._check(y)
    q = x.quiver
    bound = x.bound.values
    work = working_v_max(q, x.bound, x.v_max)
    acc: dict[tuple[int, ...], dict[int, int]] = {}
    for g1, c1 in x.terms.items():
        u = g1.values
        u_zero = g1.is_zero
        for g2, c2 in y.terms.items():
            w = g2.values
            total = tuple(a + b for a, b in zip(u, w))
            if any(a > b for a, b in zip(total, bound)):
                continue
            if u_zero or g2.is_zero:
                shift, sign = 0, 1
            else:
                shift, sign = q.skew_values(u, w), -1
            convolve_into(acc.setdefault(total, {}), c1, c2, shift, sign, work)
    terms = {
        DimVector(q.vertices, values): VSeries.from_terms(work, coeffs)
        for values, coeffs in acc.items()
    }
    return _element(q, x.bound, x.v_max, terms)


def dilog(q: Quiver, gamma: DimVector, bound: DimVector, v_max: int) -> QuantumElement:
    """Quantum dilogarithm of y_gamma: sum over k of (-y_gamma)^k q^(k^2/2) P_k.

    Powers are computed through qt_multiply; the sum terminates once
    k * gamma leaves the bound, so the result is a finite exact element.
    """
    _check_keys(q, gamma)
    if gamma.is_zero:
        raise InvalidInputError("dilogarithm of the zero dimension vector")
    result = identity(q, bound, v_max)
    if not gamma <= bound:
        return result
    work = working_v_max(q, bound, v_max)
    base = monomial(q, gamma, 1, bound, v_max)
    power = identity(q, bound, v_max)
    k = 1
    while k * gamma <= bound:
        power = qt_multiply(power, base)
        coeff = poincare_series(k, work).shift(k * k)
        if k % 2:
            coeff = -coeff
        result = result + power.scale(coeff)
        k += 1
    return result


def trivial_dt(q: Quiver, bound: DimVector, v_max: int) -> QuantumElement:
    """Product of the simple-root dilogarithms in topological vertex order.

    This is the combinatorial DT invariant of the quiver, truncated; it is
    the reference side of every factorization identity here.
    """
    order = topological_vertex_order(q)
    out = identity(q, bound, v_max)
    for v in order.sequence:
        out = qt_multiply(out, dilog(q, q.unit(v), bound, v_max))
    return out


def factorization_product(
    q: Quiver, order: RootOrder, bound: DimVector, v_max: int
) -> QuantumElement:
    """Product of root dilogarithms along a root order.

    The order is validated against its partition's pairing rules first.
    """
    verdict = validate_order(q, order.partition, order)
    if not verdict.valid:
        u, v, rule, val = verdict.violation
        raise InvalidOrderError(
            f"order violates the {rule} rule at positions {u},{v} (skew form {val})"
        )
    out = identity(q, bound, v_max)
    for entry in order.entries:
        out = qt_multiply(out, dilog(q, entry.root, bound, v_max))
    return out


@dataclass(frozen=True)
class VerificationReport:
    """Coefficientwise comparison of the two sides of a factorization.

    mismatches lists (gamma, trivial side, factorized side) for every
    discrepant dimension vector within the bound.
    """

    quiver: Quiver
    partition: SubquiverPartition
    order: RootOrder
    bound: DimVector
    v_max: int
    passed: bool
    mismatches: tuple[tuple[DimVector, VSeries, VSeries], ...]


def verify_factorization(
    q: Quiver,
    p: SubquiverPartition,
    bound: DimVector,
    v_max: int,
    reference: QuantumElement | None = None,
) -> VerificationReport:
    """Compare the partition's dilogarithm product with the trivial one.

    reference lets callers reuse a precomputed trivial product when
    sweeping many partitions of the same quiver.
    """
    _check_keys(q, bound)
    order = admissible_total_order(q, p)
    lhs = reference if reference is not None else trivial_dt(q, bound, v_max)
    if reference is not None:
        if reference.bound != bound or reference.v_max != v_max:
            raise TruncationMismatchError("reference computed with different truncation")
    rhs = factorization_product(q, order, bound, v_max)
    mismatches = []
    for values in iter_product(*(range(b + 1) for b in bound.values)):
        g = DimVector(q.vertices, values)
        a, b = lhs.coefficient(g), rhs.coefficient(g)
        if a != b:
            mismatches.append((g, a, b))
    mismatches.sort(key=lambda t: (t[0].height, t[0].values))
    return VerificationReport(
        q, order.partition, order, bound, v_max, not mismatches, tuple(mismatches)
    )


def coefficient(x: QuantumElement, gamma: DimVector) -> VSeries:
    """Series coefficient of y_gamma in x; zero when absent, error past the bound."""
    return x.coefficient(gamma)
