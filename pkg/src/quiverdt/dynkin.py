"""Simply laced Dynkin classification, positive roots, Kostant partitions.

Positive roots of a Dynkin quiver are the non-negative nonzero dimension
vectors of Tits form one; they are enumerated by a bounded box scan
(entries up to 6, enough for every simply laced type through E8) and kept
in a fixed library order, by height and then lexicographically.  Ordering
relevant to factorizations is a permutation of this list computed in the
root_order module.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from .errors import (
    EnumerationCapError,
    InvalidInputError,
    NotConnectedError,
    NotDynkinError,
)
from .quiver import DimVector, Quiver, underlying_connected, _check_keys

ROOT_ENTRY_BOUND = 6
DEFAULT_CAP = 10**6


@dataclass(frozen=True)
class DynkinType:
    family: str
    rank: int

    def __str__(self) -> str:
        return f"{self.family}{self.rank}"


@dataclass(frozen=True)
class NotDynkin:
    """Classification failure with the offending feature.

    kind is "loop", "multi-edge", "cycle" or "branching".
    """

    kind: str
    detail: str

    def __str__(self) -> str:
        return f"not Dynkin ({self.kind}): {self.detail}"


def classify_dynkin(q: Quiver) -> DynkinType | NotDynkin:
    """Classify the underlying graph as A/D/E or report why it is not.

    The input must be nonempty and connected; orientation is ignored.
    """
    if not q.vertices:
        raise NotConnectedError("empty quiver")
    if not underlying_connected(q):
        raise NotConnectedError("quiver is not connected")
    for a in q.arrows:
        if a.tail == a.head:
            return NotDynkin("loop", f"loop arrow {a.name!r} at vertex {a.tail!r}")
    seen_pairs: dict[frozenset, str] = {}
    for a in q.arrows:
        pair = frozenset((a.tail, a.head))
        if pair in seen_pairs:
            return NotDynkin(
                "multi-edge",
                f"arrows {seen_pairs[pair]!r} and {a.name!r} join {a.tail!r} and {a.head!r}",
            )
        seen_pairs[pair] = a.name
    n = q.n
    if len(q.arrows) != n - 1:
        return NotDynkin("cycle", "underlying graph contains a cycle")
    deg = q.underlying_degrees()
    for v in q.vertices:
        if deg[v] > 3:
            return NotDynkin("branching", f"vertex {v!r} has degree {deg[v]}")
    branch = [v for v in q.vertices if deg[v] == 3]
    if not branch:
        return DynkinType("A", n)
    if len(branch) > 1:
        return NotDynkin("branching", f"two branch vertices {branch[0]!r} and {branch[1]!r}")
    center = branch[0]
    adj: dict[str, list[str]] = {v: [] for v in q.vertices}
    for a in q.arrows:
        adj[a.tail].append(a.head)
        adj[a.head].append(a.tail)
    legs = []
    for first in adj[center]:
        length, prev, cur = 1, center, first
        while True:
            nxt = [w for w in adj[cur] if w != prev]
            if not nxt:
                break
            prev, cur = cur, nxt[0]
            length += 1
        legs.append(length)
    legs.sort()
    a_, b_, c_ = legs
    if a_ == 1 and b_ == 1:
        return DynkinType("D", n)
    if (a_, b_) == (1, 2) and c_ in (2, 3, 4):
        return DynkinType("E", n)
    return NotDynkin("branching", f"leg lengths {tuple(legs)} fit no simply laced type")


@dataclass(frozen=True)
class RootSet:
    """Positive roots of a Dynkin quiver in library order (height, then lex)."""

    quiver: Quiver
    dynkin_type: DynkinType
    roots: tuple[DimVector, ...]
    _pos: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "_pos", {r: i for i, r in enumerate(self.roots)})

    def __len__(self) -> int:
        return len(self.roots)

    def index(self, root: DimVector) -> int:
        try:
            return self._pos[root]
        except KeyError:
            raise InvalidInputError(f"{root} is not a positive root") from None


def positive_roots(q: Quiver) -> RootSet:
    """Enumerate positive roots by scanning the bounded coordinate box."""
    ct = classify_dynkin(q)
    if isinstance(ct, NotDynkin):
        raise NotDynkinError(str(ct), kind=ct.kind)
    pairs = q._arrow_pairs
    found = []
    for values in product(range(ROOT_ENTRY_BOUND + 1), repeat=q.n):
        if not any(values):
            continue
        tits = sum(x * x for x in values) - sum(values[t] * values[h] for t, h in pairs)
        if tits == 1:
            found.append(values)
    found.sort(key=lambda vs: (sum(vs), vs))
    roots = tuple(DimVector(q.vertices, vs) for vs in found)
    return RootSet(q, ct, roots)


@dataclass(frozen=True)
class KostantPartition:
    """Multiplicity vector over a root set, aligned with library order."""

    root_set: RootSet
    multiplicities: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "multiplicities", tuple(self.multiplicities))
        if len(self.multiplicities) != len(self.root_set.roots):
            raise InvalidInputError("multiplicity tuple does not match the root set")

    def dimension_vector(self) -> DimVector:
        q = self.root_set.quiver
        total = [0] * q.n
        for m, r in zip(self.multiplicities, self.root_set.roots):
            for i, x in enumerate(r.values):
                total[i] += m * x
        return DimVector(q.vertices, tuple(total))

    def nonzero(self) -> list[tuple[DimVector, int]]:
        return [
            (r, m) for r, m in zip(self.root_set.roots, self.multiplicities) if m
        ]

    def __str__(self) -> str:
        parts = [f"{m}x{r}" for r, m in self.nonzero()]
        return " + ".join(parts) if parts else "0"


def kostant_partitions(q: Quiver, gamma: DimVector, cap: int = DEFAULT_CAP) -> list[KostantPartition]:
    """All ways to write gamma as a non-negative combination of positive roots.

    Enumeration is exhaustive and duplicate-free: multiplicities are chosen
    root by root in library order, so the output is ordered lexicographically
    by multiplicity tuple.  Raises EnumerationCapError past the cap.
    """
    _check_keys(q, gamma)
    rs = positive_roots(q)
    roots = [r.values for r in rs.roots]
    out: list[KostantPartition] = []
    prefix: list[int] = []

    def rec(i: int, remaining: list[int]) -> None:
        if not any(remaining):
            tail = (0,) * (len(roots) - i)
            out.append(KostantPartition(rs, tuple(prefix) + tail))
            if len(out) > cap:
                raise EnumerationCapError(
                    f"more than {cap} Kostant partitions for gamma={gamma}"
                )
            return
        if i == len(roots):
            return
        beta = roots[i]
        top = min(remaining[j] // beta[j] for j in range(len(beta)) if beta[j])
        for m in range(top + 1):
            prefix.append(m)
            rec(i + 1, [r - m * b for r, b in zip(remaining, beta)])
            prefix.pop()

    rec(0, list(gamma.values))
    return out
