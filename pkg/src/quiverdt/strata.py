"""Strata bookkeeping: monomial normal forms, codimensions, Betti identities.

A Kostant series m for a partition of gamma names a product of root
basis elements.  Multiplying that product down to a single y_gamma and
re-expressing it against the simple-root monomial in topological vertex
order is pure integer bookkeeping (a sign and a v exponent); no series
truncation is involved, so codimension extraction is exact at any scale.
The complex codimension of the stratum of m solves

    v_power = 2*codim + sum(gamma_i^2) - sum(m_u^2)

and the sign must equal (-1) to the power sum(m_u * (height_u - 1)).
Both are checked and any failure is raised as an internal inconsistency.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .dynkin import KostantPartition, kostant_partitions, positive_roots
from .errors import (
    InconsistencyError,
    InvalidInputError,
    KeyMismatchError,
    NotTypeAError,
)
from .ordering import RootOrder, admissible_total_order, reineke_inner_order
from .partitions import (
    DEFAULT_CAP,
    KostantSeries,
    SubquiverPartition,
    check_admissible,
    kostant_series,
    order_blocks,
)
from .quiver import DimVector, Quiver, _check_keys, topological_vertex_order
from .series import VSeries, poincare_series


@dataclass(frozen=True)
class MonomialNormalForm:
    """sign * v^v_power times the simple-root monomial of gamma."""

    sign: int
    v_power: int
    gamma: DimVector


@dataclass(frozen=True)
class CodimReport:
    series: KostantSeries
    gamma: DimVector
    codim: int
    sign_exponent_parity: int


@dataclass(frozen=True)
class AdditivityVerdict:
    total_codim: int
    block_codims: tuple[int, ...]
    equal: bool


@dataclass(frozen=True)
class BettiTerm:
    """One right-hand summand: q^codim times a product of P factors."""

    series: KostantSeries
    codim: int
    factors: tuple[int, ...]


@dataclass(frozen=True)
class BettiVerdict:
    lhs: VSeries
    rhs: VSeries
    terms: tuple[BettiTerm, ...]
    equal: bool
    diffs: tuple[tuple[int, int, int], ...]


def _product_form(q: Quiver, factors: Sequence[tuple[tuple[int, ...], int]]) -> tuple[int, int, tuple[int, ...]]:
    """Multiply basis monomials with multiplicities into sign * v^power * y_total."""
    n = q.n
    sign, power = 1, 0
    current = (0,) * n
    for values, mult in factors:
        if not any(values):
            raise InvalidInputError("zero vector among monomial factors")
        for _ in range(mult):
            if any(current):
                sign = -sign
                power += q.skew_values(current, values)
            current = tuple(a + b for a, b in zip(current, values))
    return sign, power, current


def _simple_monomial_form(q: Quiver, values: tuple[int, ...]) -> tuple[int, int]:
    """Sign and v exponent of the simple-root monomial for a value tuple.

    The monomial multiplies gamma_i copies of each unit basis element in
    topological vertex order; collapsing it to y_gamma costs one sign per
    merge and a skew form summand per ordered pair, counted here directly.
    """
    total = sum(values)
    if total == 0:
        return 1, 0
    sign = -1 if (total - 1) % 2 else 1
    topo = topological_vertex_order(q).sequence
    idx = [q.index(v) for v in topo]
    unit = [tuple(1 if k == i else 0 for k in range(q.n)) for i in range(q.n)]
    power = 0
    for a in range(len(idx)):
        i = idx[a]
        if not values[i]:
            continue
        for b in range(a + 1, len(idx)):
            j = idx[b]
            if values[j]:
                power += values[i] * values[j] * q.skew_values(unit[i], unit[j])
    return sign, power


def _multiplicity(m: KostantSeries, p: SubquiverPartition, j: int, root: DimVector) -> int:
    """Multiplicity in m of an embedded root belonging to block j of p."""
    jm = m.partition.block_index(p.blocks[j])
    kp = m.per_block[jm]
    local = root.restrict(m.partition.blocks[jm])
    return kp.multiplicities[kp.root_set.index(local)]


def monomial_normal_form(
    q: Quiver, p: SubquiverPartition, order: RootOrder, m: KostantSeries
) -> MonomialNormalForm:
    """Normal form of the ordered root monomial named by m.

    The factors are regrouped block by block (heads-first block
    arrangement, each block keeping the order's inner sequence) and
    reduced to sign * v^v_power times the topologically ordered
    simple-root monomial of the total dimension vector.  Any valid
    interleaving multiplies out to the same element, so only the inner
    block orders matter; they must be valid.  Raises NotAdmissibleError
    when the partition admits no heads-first block arrangement.
    """
    if {frozenset(b) for b in p.blocks} != {frozenset(b) for b in m.partition.blocks}:
        raise KeyMismatchError("Kostant series built on a different partition")
    ordered = order_blocks(q, p)
    per_block: dict[int, list[tuple[tuple[int, ...], int]]] = {}
    for root, j in order.entries:
        mult = _multiplicity(m, order.partition, j, root)
        if mult:
            key = ordered.block_index(order.partition.blocks[j])
            per_block.setdefault(key, []).append((root.values, mult))
    factors = [f for j in sorted(per_block) for f in per_block[j]]
    sign, power, total = _product_form(q, factors)
    s_sign, s_power = _simple_monomial_form(q, total)
    return MonomialNormalForm(
        sign * s_sign, power - s_power, DimVector(q.vertices, total)
    )


def _solve_codim(v_power: int, gamma_sq: int, mult_sq: int, sign: int, s_parity: int, context: str) -> int:
    numerator = v_power - gamma_sq + mult_sq
    if numerator % 2 or numerator < 0:
        raise InconsistencyError(
            f"{context}: v exponent {v_power} gives codimension {numerator}/2"
        )
    expected_sign = -1 if s_parity % 2 else 1
    if sign != expected_sign:
        raise InconsistencyError(
            f"{context}: sign {sign} contradicts multiplicity parity {s_parity % 2}"
        )
    return numerator // 2


def _block_orbit_codim(block: Quiver, kp: KostantPartition) -> int:
    """Codimension of one block's orbit stratum (single-block case)."""
    inner = reineke_inner_order(block)
    pos = {r: i for i, r in enumerate(kp.root_set.roots)}
    factors = []
    s_parity = 0
    for root in inner:
        mult = kp.multiplicities[pos[root]]
        if mult:
            factors.append((root.values, mult))
            s_parity += mult * (root.height - 1)
    sign, power, total = _product_form(block, factors)
    s_sign, s_power = _simple_monomial_form(block, total)
    gamma_sq = sum(x * x for x in total)
    mult_sq = sum(m * m for m in kp.multiplicities)
    return _solve_codim(
        power - s_power, gamma_sq, mult_sq, sign * s_sign, s_parity,
        f"block {block.vertices}",
    )


def codim_of_stratum(
    q: Quiver, p: SubquiverPartition, m: KostantSeries, gamma: DimVector
) -> CodimReport:
    """Complex codimension of the stratum named by m inside gamma's space.

    Admissible partitions go through the full ordered-monomial normal
    form; otherwise the codimension is the sum of the per-block orbit
    codimensions, which is the same number where both are defined.
    """
    _check_keys(q, gamma)
    if m.gamma() != gamma:
        raise InvalidInputError(f"series sums to {m.gamma()}, not {gamma}")
    s_parity = sum(mult * (root.height - 1) for _, root, _, mult in m.entries())
    if check_admissible(q, p).admissible:
        order = admissible_total_order(q, p)
        nf = monomial_normal_form(q, p, order, m)
        gamma_sq = sum(x * x for x in gamma.values)
        mult_sq = sum(x * x for x in m.multiplicities())
        codim = _solve_codim(
            nf.v_power, gamma_sq, mult_sq, nf.sign, s_parity, f"stratum {m}"
        )
    else:
        codim = sum(
            _block_orbit_codim(m.partition.induced[j], kp)
            for j, kp in enumerate(m.per_block)
        )
    return CodimReport(m, gamma, codim, s_parity % 2)


def codim_additivity_check(
    q: Quiver, p: SubquiverPartition, m: KostantSeries, gamma: DimVector
) -> AdditivityVerdict:
    """Compare the stratum codimension with the sum over blocks."""
    total = codim_of_stratum(q, p, m, gamma).codim
    blocks = tuple(
        _block_orbit_codim(m.partition.induced[j], kp)
        for j, kp in enumerate(m.per_block)
    )
    return AdditivityVerdict(total, blocks, total == sum(blocks))


def betti_identity_check(
    q: Quiver,
    p: SubquiverPartition,
    gamma: DimVector,
    v_max: int,
    cap: int = DEFAULT_CAP,
) -> BettiVerdict:
    """Check the Poincare product identity for a partition.

    The product of P_(gamma_i) over vertices must equal the sum over
    Kostant series of q^codim times the product of P factors of the
    multiplicities.  Admissibility is not required; codimensions come
    from the per-block orbit computation.
    """
    _check_keys(q, gamma)
    lhs = VSeries.one(v_max)
    for x in gamma.values:
        lhs = lhs * poincare_series(x, v_max)
    rhs = VSeries.zero(v_max)
    terms = []
    for m in kostant_series(q, p, gamma, cap=cap):
        codim = sum(
            _block_orbit_codim(m.partition.induced[j], kp)
            for j, kp in enumerate(m.per_block)
        )
        factors = tuple(sorted(x for x in m.multiplicities() if x))
        prod = VSeries.one(v_max)
        for x in factors:
            prod = prod * poincare_series(x, v_max)
        rhs = rhs + prod.shift(2 * codim)
        terms.append(BettiTerm(m, codim, factors))
    diffs = []
    for e in range(min(lhs.min_exp, rhs.min_exp, 0), v_max + 1):
        a, b = lhs.coefficient(e), rhs.coefficient(e)
        if a != b:
            diffs.append((e, a, b))
    return BettiVerdict(lhs, rhs, tuple(terms), not diffs, tuple(diffs))


def series_from_inner_lists(
    q: Quiver, p: SubquiverPartition, lists: Sequence[Sequence[int]]
) -> KostantSeries:
    """Build a Kostant series from per-block multiplicity lists.

    Each list is indexed by the block's inner root order, the notation
    used in reports; internally multiplicities align with library order.
    """
    if len(lists) != p.size:
        raise InvalidInputError(f"expected {p.size} block lists, got {len(lists)}")
    per = []
    for j, lst in enumerate(lists):
        block = p.induced[j]
        inner = reineke_inner_order(block)
        if len(lst) != len(inner):
            raise InvalidInputError(
                f"block {j} has {len(inner)} roots, got {len(lst)} multiplicities"
            )
        rs = positive_roots(block)
        mult = [0] * len(rs.roots)
        for root, x in zip(inner, lst):
            if not isinstance(x, int) or isinstance(x, bool) or x < 0:
                raise InvalidInputError(f"multiplicities must be non-negative integers, got {x!r}")
            mult[rs.index(root)] = x
        per.append(KostantPartition(rs, tuple(mult)))
    return KostantSeries(p, tuple(per))


def inner_lists(m: KostantSeries) -> list[list[int]]:
    """Per-block multiplicities of m, indexed by each block's inner root order."""
    out = []
    for j, kp in enumerate(m.per_block):
        inner = reineke_inner_order(m.partition.induced[j])
        pos = {r: i for i, r in enumerate(kp.root_set.roots)}
        out.append([kp.multiplicities[pos[r]] for r in inner])
    return out


def _path_positions(q: Quiver) -> dict[str, int]:
    """Linear positions of vertices when the underlying graph is a path."""
    deg = q.underlying_degrees()
    if any(d > 2 for d in deg.values()):
        raise NotTypeAError("underlying graph branches")
    if q.n == 1:
        return {q.vertices[0]: 0}
    ends = [v for v in q.vertices if deg[v] <= 1]
    if len(ends) != 2 or len(q.arrows) != q.n - 1:
        raise NotTypeAError("underlying graph is not a path")
    adj: dict[str, list[str]] = {v: [] for v in q.vertices}
    for a in q.arrows:
        adj[a.tail].append(a.head)
        adj[a.head].append(a.tail)
    pos = {ends[0]: 0}
    prev, cur = None, ends[0]
    for i in range(1, q.n):
        nxt = [w for w in adj[cur] if w != prev]
        if not nxt:
            raise NotTypeAError("underlying graph is not a path")
        prev, cur = cur, nxt[0]
        pos[cur] = i
    return pos


def stratum_orbit_decomposition(
    q: Quiver,
    p: SubquiverPartition,
    m: KostantSeries,
    gamma: DimVector,
    cap: int = DEFAULT_CAP,
) -> list[KostantPartition]:
    """Orbits of the whole quiver whose block restrictions reproduce m.

    Implemented for type A only, where every root is an interval: a full
    Kostant partition restricts to each block by intersecting intervals,
    and the stratum of m is the union of the matching full orbits.
    """
    _check_keys(q, gamma)
    if m.gamma() != gamma:
        raise InvalidInputError(f"series sums to {m.gamma()}, not {gamma}")
    pos = _path_positions(q)
    by_pos = sorted(q.vertices, key=lambda v: pos[v])
    spans = {}
    for j, block in enumerate(m.partition.blocks):
        ps = sorted(pos[v] for v in block)
        spans[j] = (ps[0], ps[-1])

    def interval(root: DimVector) -> tuple[int, int]:
        hit = [pos[v] for v in root.support]
        return (min(hit), max(hit))

    matches = []
    for full in kostant_partitions(q, gamma, cap=cap):
        induced: dict[int, dict[DimVector, int]] = {j: {} for j in spans}
        for root, mult in full.nonzero():
            lo, hi = interval(root)
            for j, (blo, bhi) in spans.items():
                cut_lo, cut_hi = max(lo, blo), min(hi, bhi)
                if cut_lo > cut_hi:
                    continue
                members = [by_pos[i] for i in range(cut_lo, cut_hi + 1)]
                local = DimVector(
                    m.partition.blocks[j],
                    tuple(1 if v in members else 0 for v in m.partition.blocks[j]),
                )
                induced[j][local] = induced[j].get(local, 0) + mult
        if all(
            induced[j] == dict(m.per_block[j].nonzero())
            for j in range(m.partition.size)
        ):
            matches.append(full)
    return matches
