"""Dynkin subquiver partitions, admissibility, block ordering, Kostant series.

A subquiver partition splits the vertex set into blocks whose induced
subquivers are connected and simply laced Dynkin.  Blocks carry all
induced arrows.  A partition is admissible when its contraction (one
vertex per block, cross-block arrows kept) has no directed cycle.

check_admissible also accepts raw blocks whose induced subquiver fails
to be Dynkin because of parallel arrows or an undirected cycle: those
blocks are collapsed along a spanning tree and every leftover internal
arrow becomes a loop in the diagnosed contraction, which then witnesses
the failure.  make_partition always rejects such blocks.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product as iter_product
from typing import Iterable, Sequence

from .dynkin import (
    DEFAULT_CAP,
    DynkinType,
    KostantPartition,
    NotDynkin,
    classify_dynkin,
    kostant_partitions,
)
from .errors import (
    CyclicQuiverError,
    EnumerationCapError,
    InvalidInputError,
    NotAdmissibleError,
    NotConnectedError,
    NotDynkinError,
)
from .quiver import (
    Arrow,
    DimVector,
    Quiver,
    _block_names,
    _check_keys,
    check_vertex_partition,
    induced_subquiver,
    shortest_directed_cycle,
    topological_vertex_order,
    underlying_connected,
)


@dataclass(frozen=True)
class SubquiverPartition:
    """An ordered list of blocks with their induced subquivers and types."""

    quiver: Quiver
    blocks: tuple[tuple[str, ...], ...]
    induced: tuple[Quiver, ...]
    types: tuple[DynkinType, ...]
    _block_of: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "_block_of", {v: j for j, b in enumerate(self.blocks) for v in b}
        )

    @property
    def size(self) -> int:
        return len(self.blocks)

    def block_of(self, vertex: str) -> int:
        return self._block_of[vertex]

    def block_index(self, members: Iterable[str]) -> int:
        """Index of the block with exactly these members."""
        want = frozenset(members)
        for j, b in enumerate(self.blocks):
            if frozenset(b) == want:
                return j
        raise InvalidInputError(f"no block with members {sorted(want)}")

    def __str__(self) -> str:
        return "".join("[" + ",".join(b) + "]" for b in self.blocks)


@dataclass(frozen=True)
class AdmissibilityVerdict:
    """Outcome of the contraction acyclicity test.

    witness is a closed directed walk in the contraction (block names,
    start repeated; a loop repeats one name).  ordered reports whether
    the blocks as listed already put every cross-block arrow's head
    block before its tail block.
    """

    admissible: bool
    witness: tuple[str, ...] | None
    ordered: bool


def make_partition(q: Quiver, blocks: Sequence[Iterable[str]]) -> SubquiverPartition:
    """Validate blocks and build the partition; blocks keep the given order."""
    normalized = check_vertex_partition(q, blocks)
    induced, types = [], []
    for block in normalized:
        sub = induced_subquiver(q, block)
        if not underlying_connected(sub):
            raise NotConnectedError(f"block {{{','.join(block)}}} is not connected")
        ct = classify_dynkin(sub)
        if isinstance(ct, NotDynkin):
            raise NotDynkinError(f"block {{{','.join(block)}}} is {ct}", kind=ct.kind)
        induced.append(sub)
        types.append(ct)
    return SubquiverPartition(q, normalized, tuple(induced), tuple(types))


def _forest_contraction(
    q: Quiver, blocks: tuple[tuple[str, ...], ...]
) -> tuple[Quiver, list[str]]:
    """Contract blocks, absorbing a spanning forest of each block's
    induced arrows; internal arrows beyond the forest become loops.

    For valid partitions every induced subquiver is a tree, no internal
    arrow is left over, and this agrees with the plain contraction.
    """
    names = _block_names(blocks)
    of = {v: names[j] for j, b in enumerate(blocks) for v in b}
    parent = {v: v for v in q.vertices}

    def find(v: str) -> str:
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    kept: list[Arrow] = []
    for a in q.arrows:
        if of[a.tail] != of[a.head]:
            kept.append(Arrow(a.name, of[a.tail], of[a.head]))
            continue
        rt, rh = find(a.tail), find(a.head)
        if rt != rh:
            parent[rt] = rh
        else:
            kept.append(Arrow(a.name, of[a.tail], of[a.head]))
    return Quiver(tuple(names), tuple(kept), is_contraction=True), names


def check_admissible(
    q: Quiver, partition: SubquiverPartition | Sequence[Iterable[str]]
) -> AdmissibilityVerdict:
    """Decide admissibility; diagnose raw blocks with cyclic insides.

    Raw blocks must still partition the vertex set and be connected.
    A block whose induced graph is a tree of the wrong shape has no
    cycle to witness and is rejected outright.
    """
    if isinstance(partition, SubquiverPartition):
        blocks = partition.blocks
    else:
        blocks = check_vertex_partition(q, partition)
        for block in blocks:
            sub = induced_subquiver(q, block)
            if not underlying_connected(sub):
                raise NotConnectedError(f"block {{{','.join(block)}}} is not connected")
            ct = classify_dynkin(sub)
            if isinstance(ct, NotDynkin) and ct.kind == "branching":
                raise NotDynkinError(f"block {{{','.join(block)}}} is {ct}", kind=ct.kind)
    con, names = _forest_contraction(q, blocks)
    witness = shortest_directed_cycle(con)
    if witness is not None:
        return AdmissibilityVerdict(False, witness, False)
    pos = {name: j for j, name in enumerate(names)}
    ordered = all(pos[a.head] < pos[a.tail] for a in con.arrows)
    return AdmissibilityVerdict(True, None, ordered)


def order_blocks(q: Quiver, p: SubquiverPartition) -> SubquiverPartition:
    """Permute blocks so every cross-block arrow's head block comes first.

    Ties keep the current block order.  Raises NotAdmissibleError with a
    cycle witness when no such order exists.
    """
    con, names = _forest_contraction(q, p.blocks)
    try:
        order = topological_vertex_order(con)
    except CyclicQuiverError as e:
        raise NotAdmissibleError(e.witness) from None
    perm = [names.index(name) for name in order.sequence]
    return SubquiverPartition(
        q,
        tuple(p.blocks[j] for j in perm),
        tuple(p.induced[j] for j in perm),
        tuple(p.types[j] for j in perm),
    )


def enumerate_partitions(q: Quiver, admissible_only: bool = False) -> list[SubquiverPartition]:
    """All partitions of the vertex set into connected Dynkin blocks.

    Deterministic: each partition lists its blocks by minimum vertex
    (input order), and partitions are generated by recursing on the first
    uncovered vertex with candidate blocks sorted by size then members.
    """
    n = q.n
    out: list[SubquiverPartition] = []

    def candidates(available: tuple[int, ...]) -> list[tuple[int, ...]]:
        pivot = available[0]
        rest = available[1:]
        found = []
        for mask in range(1 << len(rest)):
            subset = (pivot,) + tuple(rest[i] for i in range(len(rest)) if mask >> i & 1)
            sub = induced_subquiver(q, [q.vertices[i] for i in subset])
            if not underlying_connected(sub):
                continue
            if isinstance(classify_dynkin(sub), NotDynkin):
                continue
            found.append(subset)
        found.sort(key=lambda s: (len(s), s))
        return found

    def rec(available: tuple[int, ...], chosen: list[tuple[int, ...]]) -> None:
        if not available:
            blocks = [tuple(q.vertices[i] for i in b) for b in chosen]
            out.append(make_partition(q, blocks))
            return
        for block in candidates(available):
            taken = set(block)
            rec(tuple(i for i in available if i not in taken), chosen + [block])

    rec(tuple(range(n)), [])
    if admissible_only:
        out = [p for p in out if check_admissible(q, p).admissible]
    return out


@dataclass(frozen=True)
class KostantSeries:
    """A choice of Kostant partition of gamma's restriction in every block."""

    partition: SubquiverPartition
    per_block: tuple[KostantPartition, ...]

    def gamma(self) -> DimVector:
        q = self.partition.quiver
        total = q.zero()
        for kp in self.per_block:
            total = total + kp.dimension_vector().embed(q.vertices)
        return total

    def multiplicities(self) -> list[int]:
        """All block multiplicities, flattened in block order."""
        out: list[int] = []
        for kp in self.per_block:
            out.extend(kp.multiplicities)
        return out

    def entries(self) -> list[tuple[int, DimVector, DimVector, int]]:
        """(block index, local root, embedded root, multiplicity) per root."""
        q = self.partition.quiver
        rows = []
        for j, kp in enumerate(self.per_block):
            for r, m in zip(kp.root_set.roots, kp.multiplicities):
                rows.append((j, r, r.embed(q.vertices), m))
        return rows

    def __str__(self) -> str:
        return " | ".join(str(kp) for kp in self.per_block)


def kostant_series(
    q: Quiver, p: SubquiverPartition, gamma: DimVector, cap: int = DEFAULT_CAP
) -> list[KostantSeries]:
    """Per-block Kostant partitions of gamma, combined across blocks.

    The output order is the lexicographic product of the per-block
    enumeration orders.  Raises EnumerationCapError past the cap.
    """
    _check_keys(q, gamma)
    per_block_lists = []
    total = 1
    for j, block in enumerate(p.blocks):
        local = gamma.restrict(block)
        per_block_lists.append(kostant_partitions(p.induced[j], local, cap=cap))
        total *= len(per_block_lists[-1])
        if total > cap:
            raise EnumerationCapError(f"more than {cap} Kostant series for gamma={gamma}")
    return [KostantSeries(p, combo) for combo in iter_product(*per_block_lists)]
