"""Root orders attached to admissible subquiver partitions.

Within one Dynkin block the roots are sorted so that any root pair
(phi_u before phi_v) has non-negative skew form; across blocks the
blocks appear as contiguous groups in contraction order, which makes
every cross-block pair's skew form non-positive.  The within-block sort
is a topological sort of the precedence constraints "b must precede a
whenever skew(a, b) < 0", with ties broken by library root order.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import permutations
from typing import Iterable, NamedTuple, Sequence

from .dynkin import positive_roots
from .errors import ConstraintCycleError, InvalidInputError, InvalidOrderError
from .partitions import SubquiverPartition, order_blocks
from .quiver import DimVector, Quiver, skew_form, skew_form_restricted


class RootEntry(NamedTuple):
    root: DimVector  # keyed by the full quiver's vertices
    block: int


@dataclass(frozen=True)
class RootOrder:
    """A total order on the roots of all blocks of a partition."""

    quiver: Quiver
    partition: SubquiverPartition
    entries: tuple[RootEntry, ...]
    provenance: str = "constructed"


@dataclass(frozen=True)
class OrderVerdict:
    """Result of checking a candidate order against the pairing rules.

    On failure, violation holds (position u, position v, rule name,
    skew form value) for the first offending pair in scan order.
    """

    valid: bool
    violation: tuple[int, int, str, int] | None = None


def reineke_inner_order(block: Quiver) -> tuple[DimVector, ...]:
    """Admissible order of one Dynkin quiver's positive roots.

    Kahn's algorithm on the precedence digraph; the tie-break by library
    root order makes the result deterministic.  A constraint cycle would
    mean the block admits no valid order and is reported, not asserted
    away.
    """
    rs = positive_roots(block)
    roots = rs.roots
    n = len(roots)
    indeg = [0] * n
    succ: list[list[int]] = [[] for _ in range(n)]
    for i in range(n):
        for j in range(n):
            if i != j and skew_form(block, roots[i], roots[j]) < 0:
                succ[j].append(i)
                indeg[i] += 1
    import heapq

    heap = [i for i in range(n) if indeg[i] == 0]
    heapq.heapify(heap)
    out: list[int] = []
    while heap:
        i = heapq.heappop(heap)
        out.append(i)
        for k in succ[i]:
            indeg[k] -= 1
            if indeg[k] == 0:
                heapq.heappush(heap, k)
    if len(out) != n:
        remaining = [i for i in range(n) if i not in out]
        witness = _constraint_cycle(remaining, succ)
        raise ConstraintCycleError(tuple(str(roots[i]) for i in witness))
    return tuple(roots[i] for i in out)


def _constraint_cycle(nodes: list[int], succ: list[list[int]]) -> list[int]:
    node_set = set(nodes)
    start = nodes[0]
    path, seen = [start], {start}
    while True:
        nxt = next(w for w in succ[path[-1]] if w in node_set)
        if nxt in seen:
            return path[path.index(nxt):] + [nxt]
        path.append(nxt)
        seen.add(nxt)


def admissible_total_order(q: Quiver, p: SubquiverPartition) -> RootOrder:
    """Block-ordered concatenation of per-block root orders.

    Blocks are first permuted into contraction order (raising
    NotAdmissibleError with a witness if none exists), then each block
    contributes its roots, embedded into the full quiver.
    """
    ordered = order_blocks(q, p)
    entries: list[RootEntry] = []
    for j in range(ordered.size):
        for root in reineke_inner_order(ordered.induced[j]):
            entries.append(RootEntry(root.embed(q.vertices), j))
    return RootOrder(q, ordered, tuple(entries), provenance="constructed")


def expected_root_multiset(q: Quiver, p: SubquiverPartition) -> Counter:
    """The (embedded root, block) pairs any valid order must enumerate."""
    expected: Counter = Counter()
    for j in range(p.size):
        for root in positive_roots(p.induced[j]).roots:
            expected[RootEntry(root.embed(q.vertices), j)] += 1
    return expected


def validate_order(
    q: Quiver,
    p: SubquiverPartition,
    candidate: RootOrder | Sequence[RootEntry],
    technical: bool = False,
) -> OrderVerdict:
    """Check the pairing rules on a candidate order for p.

    Rules: same block, u before v: skew(phi_u, phi_v) >= 0; different
    blocks: skew(phi_u, phi_v) <= 0.  With technical=True the same-block
    rule instead uses the block-internal arrows (must be >= 0) and the
    complementary arrows (must be <= 0) separately; for partitions whose
    blocks carry all induced arrows the two agree.

    Raises InvalidOrderError when the candidate is not a permutation of
    the expected root multiset.
    """
    entries = tuple(candidate.entries if isinstance(candidate, RootOrder) else candidate)
    expected = expected_root_multiset(q, p)
    got = Counter(entries)
    if got != expected:
        missing = list((expected - got).elements())
        extra = list((got - expected).elements())
        raise InvalidOrderError(
            f"candidate is not a permutation of the expected roots; "
            f"missing {[(str(e.root), e.block) for e in missing]}, "
            f"extra {[(str(e.root), e.block) for e in extra]}"
        )
    block_arrows = [
        {a.name for a in p.induced[j].arrows} for j in range(p.size)
    ]
    all_arrows = {a.name for a in q.arrows}
    for u in range(len(entries)):
        ru, ju = entries[u]
        for v in range(u + 1, len(entries)):
            rv, jv = entries[v]
            if ju == jv:
                if technical:
                    inner = skew_form_restricted(q, block_arrows[ju], ru, rv)
                    if inner < 0:
                        return OrderVerdict(False, (u, v, "within-block", inner))
                    outer = skew_form_restricted(q, all_arrows - block_arrows[ju], ru, rv)
                    if outer > 0:
                        return OrderVerdict(False, (u, v, "within-block-complement", outer))
                else:
                    val = skew_form(q, ru, rv)
                    if val < 0:
                        return OrderVerdict(False, (u, v, "within-block", val))
            else:
                val = skew_form(q, ru, rv)
                if val > 0:
                    return OrderVerdict(False, (u, v, "across-blocks", val))
    return OrderVerdict(True, None)


def brute_force_valid_orders(
    q: Quiver, p: SubquiverPartition, max_roots: int = 8
) -> list[tuple[RootEntry, ...]]:
    """Every permutation of the expected roots that passes validate_order.

    Exhaustive search; guarded by a root-count limit since the cost is
    factorial.  Meant for small counterexample hunts, not production use.
    """
    pool = list(expected_root_multiset(q, p).elements())
    if len(pool) > max_roots:
        raise InvalidInputError(
            f"{len(pool)} roots exceed the brute-force limit of {max_roots}"
        )
    pool.sort(key=lambda e: (e.block, e.root.values))
    found = []
    seen: set[tuple[RootEntry, ...]] = set()
    for perm in permutations(pool):
        if perm in seen:
            continue
        seen.add(perm)
        if validate_order(q, p, perm).valid:
            found.append(perm)
    return found
