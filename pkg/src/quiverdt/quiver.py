"""Quiver data model.

A quiver is a finite directed multigraph with opaque string vertex names.
This module provides parsing, dimension vectors, the Euler form and its
skew-symmetrization, topological vertex orders, induced subquivers and
contractions.  All arithmetic is exact integer arithmetic.
"""
from __future__ import annotations

import json
from collections import Counter, deque
from dataclasses import dataclass, field
from typing import Iterable, Mapping, NamedTuple, Sequence

from .errors import (
    CyclicQuiverError,
    InvalidInputError,
    KeyMismatchError,
    NotAPartitionError,
    QuiverParseError,
    UnknownArrowError,
    UnknownVertexError,
)


class Arrow(NamedTuple):
    name: str
    tail: str
    head: str


@dataclass(frozen=True)
class DimVector:
    """Non-negative integer vector keyed by an ordered vertex tuple."""

    vertices: tuple[str, ...]
    values: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "values", tuple(self.values))
        if len(self.vertices) != len(self.values):
            raise KeyMismatchError("vertex tuple and value tuple differ in length")
        for x in self.values:
            if not isinstance(x, int) or isinstance(x, bool) or x < 0:
                raise InvalidInputError(
                    f"dimension vector entries must be non-negative integers, got {x!r}"
                )

    def __add__(self, other: DimVector) -> DimVector:
        self._check(other)
        return DimVector(self.vertices, tuple(a + b for a, b in zip(self.values, other.values)))

    def __mul__(self, k: int) -> DimVector:
        return DimVector(self.vertices, tuple(k * a for a in self.values))

    __rmul__ = __mul__

    def __le__(self, other: DimVector) -> bool:
        self._check(other)
        return all(a <= b for a, b in zip(self.values, other.values))

    def __getitem__(self, vertex: str) -> int:
        try:
            return self.values[self.vertices.index(vertex)]
        except ValueError:
            raise UnknownVertexError(f"unknown vertex {vertex!r}") from None

    def _check(self, other: DimVector) -> None:
        if self.vertices != other.vertices:
            raise KeyMismatchError(
                f"dimension vectors keyed by different vertex tuples: "
                f"{self.vertices} vs {other.vertices}"
            )

    @property
    def height(self) -> int:
        return sum(self.values)

    @property
    def is_zero(self) -> bool:
        return not any(self.values)

    @property
    def support(self) -> tuple[str, ...]:
        return tuple(v for v, x in zip(self.vertices, self.values) if x)

    def restrict(self, vertices: Sequence[str]) -> DimVector:
        """Project onto a vertex subset, keyed by the given order."""
        return DimVector(tuple(vertices), tuple(self[v] for v in vertices))

    def embed(self, vertices: Sequence[str]) -> DimVector:
        """Extend by zeros to a larger vertex tuple."""
        vertices = tuple(vertices)
        missing = set(self.support) - set(vertices)
        if missing:
            raise KeyMismatchError(f"support {missing} not contained in target vertices")
        own = dict(zip(self.vertices, self.values))
        return DimVector(vertices, tuple(own.get(v, 0) for v in vertices))

    def as_dict(self) -> dict[str, int]:
        return dict(zip(self.vertices, self.values))

    def __str__(self) -> str:
        return "(" + ",".join(str(x) for x in self.values) + ")"


@dataclass(frozen=True)
class Quiver:
    """A finite directed multigraph.

    Vertex names and arrow names are unique strings.  Loop arrows are
    rejected except on quivers flagged as contraction output, where they
    record collapsed internal arrows.
    """

    vertices: tuple[str, ...]
    arrows: tuple[Arrow, ...]
    is_contraction: bool = False
    _vindex: dict = field(init=False, repr=False, compare=False)
    _arrow_pairs: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "arrows", tuple(Arrow(*a) for a in self.arrows))
        if len(set(self.vertices)) != len(self.vertices):
            raise QuiverParseError("duplicate vertex name")
        names = [a.name for a in self.arrows]
        if len(set(names)) != len(names):
            raise QuiverParseError("duplicate arrow name")
        vindex = {v: i for i, v in enumerate(self.vertices)}
        for a in self.arrows:
            if a.tail not in vindex or a.head not in vindex:
                raise QuiverParseError(f"arrow {a.name!r} has an endpoint outside the vertex set")
            if a.tail == a.head and not self.is_contraction:
                raise QuiverParseError(f"loop arrow {a.name!r} not allowed")
        object.__setattr__(self, "_vindex", vindex)
        object.__setattr__(
            self, "_arrow_pairs", tuple((vindex[a.tail], vindex[a.head]) for a in self.arrows)
        )

    @property
    def n(self) -> int:
        return len(self.vertices)

    def index(self, vertex: str) -> int:
        try:
            return self._vindex[vertex]
        except KeyError:
            raise UnknownVertexError(f"unknown vertex {vertex!r}") from None

    def arrow(self, name: str) -> Arrow:
        for a in self.arrows:
            if a.name == name:
                return a
        raise UnknownArrowError(f"unknown arrow {name!r}")

    def vector(self, values: Mapping[str, int] | Iterable[int]) -> DimVector:
        if isinstance(values, Mapping):
            unknown = set(values) - set(self.vertices)
            if unknown:
                raise UnknownVertexError(f"unknown vertices {sorted(unknown)}")
            return DimVector(self.vertices, tuple(values.get(v, 0) for v in self.vertices))
        return DimVector(self.vertices, tuple(values))

    def unit(self, vertex: str) -> DimVector:
        i = self.index(vertex)
        return DimVector(self.vertices, tuple(1 if j == i else 0 for j in range(self.n)))

    def zero(self) -> DimVector:
        return DimVector(self.vertices, (0,) * self.n)

    def skew_values(self, u: Sequence[int], w: Sequence[int]) -> int:
        """Skew form on raw value tuples aligned with self.vertices."""
        return sum(u[t] * w[h] - u[h] * w[t] for t, h in self._arrow_pairs)

    def underlying_degrees(self) -> dict[str, int]:
        deg = dict.fromkeys(self.vertices, 0)
        for a in self.arrows:
            deg[a.tail] += 1
            deg[a.head] += 1
        return deg


@dataclass(frozen=True)
class VertexOrder:
    """A listing of all vertices with every arrow's head before its tail."""

    quiver: Quiver
    sequence: tuple[str, ...]


def parse_quiver(text: str) -> Quiver:
    """Parse a quiver description.

    The format is a JSON object with a "vertices" array of names and an
    "arrows" array of {"id", "tail", "head"} records.  Numeric labels are
    normalized to strings.
    """
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise QuiverParseError(f"malformed syntax: {e}") from None
    if not isinstance(data, dict):
        raise QuiverParseError("top level must be an object")
    if "vertices" not in data:
        raise QuiverParseError('missing "vertices"')
    raw_vertices = data["vertices"]
    raw_arrows = data.get("arrows", [])
    if not isinstance(raw_vertices, list) or not isinstance(raw_arrows, list):
        raise QuiverParseError('"vertices" and "arrows" must be arrays')

    def label(x, what: str) -> str:
        if isinstance(x, str):
            return x
        if isinstance(x, int) and not isinstance(x, bool):
            return str(x)
        raise QuiverParseError(f"{what} must be a string, got {x!r}")

    vertices = tuple(label(v, "vertex name") for v in raw_vertices)
    arrows = []
    for rec in raw_arrows:
        if not isinstance(rec, dict) or not {"id", "tail", "head"} <= set(rec):
            raise QuiverParseError('each arrow needs "id", "tail" and "head"')
        arrows.append(
            Arrow(label(rec["id"], "arrow id"), label(rec["tail"], "arrow tail"),
                  label(rec["head"], "arrow head"))
        )
    try:
        return Quiver(vertices, tuple(arrows))
    except QuiverParseError:
        raise
    except Exception as e:  # pragma: no cover - defensive
        raise QuiverParseError(str(e)) from None


def shortest_directed_cycle(q: Quiver) -> tuple[str, ...] | None:
    """Shortest closed directed walk, returned with the start vertex repeated.

    Loops win over longer cycles; remaining ties go to the earliest start
    vertex in input order, so the witness is deterministic.
    """
    for a in q.arrows:
        if a.tail == a.head:
            return (a.tail, a.tail)
    succ: dict[str, list[str]] = {v: [] for v in q.vertices}
    for a in q.arrows:
        succ[a.tail].append(a.head)
    best: tuple[str, ...] | None = None
    for start in q.vertices:
        prev: dict[str, str] = {}
        dist = {start: 0}
        queue = deque([start])
        hit: str | None = None
        while queue and hit is None:
            u = queue.popleft()
            for w in succ[u]:
                if w == start:
                    hit = u
                    break
                if w not in dist:
                    dist[w] = dist[u] + 1
                    prev[w] = u
                    queue.append(w)
        if hit is None:
            continue
        path = [hit]
        while path[-1] != start:
            path.append(prev[path[-1]])
        cycle = tuple(reversed(path)) + (start,)
        if best is None or len(cycle) < len(best):
            best = cycle
    return best


def topological_vertex_order(q: Quiver) -> VertexOrder:
    """Order vertices so every arrow's head precedes its tail.

    Ties are broken by input vertex order.  Raises CyclicQuiverError with
    a shortest directed cycle as witness when no such order exists.
    """
    import heapq

    indeg = dict.fromkeys(q.vertices, 0)
    succ: dict[str, list[str]] = {v: [] for v in q.vertices}
    for a in q.arrows:
        succ[a.head].append(a.tail)
        indeg[a.tail] += 1
    heap = [q.index(v) for v in q.vertices if indeg[v] == 0]
    heapq.heapify(heap)
    out: list[str] = []
    while heap:
        v = q.vertices[heapq.heappop(heap)]
        out.append(v)
        for w in succ[v]:
            indeg[w] -= 1
            if indeg[w] == 0:
                heapq.heappush(heap, q.index(w))
    if len(out) != q.n:
        witness = shortest_directed_cycle(q)
        assert witness is not None
        raise CyclicQuiverError(witness)
    return VertexOrder(q, tuple(out))


def euler_form(q: Quiver, g1: DimVector, g2: DimVector) -> int:
    """Euler form: sum of products over vertices minus the sum over arrows."""
    _check_keys(q, g1)
    _check_keys(q, g2)
    u, w = g1.values, g2.values
    return sum(a * b for a, b in zip(u, w)) - sum(u[t] * w[h] for t, h in q._arrow_pairs)


def skew_form(q: Quiver, g1: DimVector, g2: DimVector) -> int:
    """Skew-symmetrized Euler form.

    On unit vectors this counts arrows i -> j minus arrows j -> i.
    """
    _check_keys(q, g1)
    _check_keys(q, g2)
    return q.skew_values(g1.values, g2.values)


def skew_form_restricted(q: Quiver, arrow_names: Iterable[str], g1: DimVector, g2: DimVector) -> int:
    """Skew form counting only the named arrows."""
    _check_keys(q, g1)
    _check_keys(q, g2)
    names = set(arrow_names)
    known = {a.name for a in q.arrows}
    unknown = names - known
    if unknown:
        raise UnknownArrowError(f"unknown arrows {sorted(unknown)}")
    u, w = g1.values, g2.values
    total = 0
    for a, (t, h) in zip(q.arrows, q._arrow_pairs):
        if a.name in names:
            total += u[t] * w[h] - u[h] * w[t]
    return total


def induced_subquiver(q: Quiver, vertices: Iterable[str]) -> Quiver:
    """Full subquiver on a vertex subset, keeping the ambient vertex order."""
    chosen = set(vertices)
    unknown = chosen - set(q.vertices)
    if unknown:
        raise UnknownVertexError(f"unknown vertices {sorted(unknown)}")
    sub_vertices = tuple(v for v in q.vertices if v in chosen)
    sub_arrows = tuple(a for a in q.arrows if a.tail in chosen and a.head in chosen)
    return Quiver(sub_vertices, sub_arrows)


def check_vertex_partition(q: Quiver, blocks: Sequence[Iterable[str]]) -> tuple[tuple[str, ...], ...]:
    """Validate a partition of the vertex set; normalize each block to ambient order."""
    normalized = []
    seen: Counter[str] = Counter()
    for block in blocks:
        members = list(block)
        if not members:
            raise NotAPartitionError("empty block")
        unknown = set(members) - set(q.vertices)
        if unknown:
            raise NotAPartitionError(f"unknown vertices {sorted(unknown)}")
        if len(set(members)) != len(members):
            raise NotAPartitionError(f"repeated vertex inside block {sorted(members)}")
        seen.update(members)
        normalized.append(tuple(sorted(members, key=q.index)))
    dup = [v for v, c in seen.items() if c > 1]
    if dup:
        raise NotAPartitionError(f"vertices in more than one block: {sorted(dup)}")
    missing = [v for v in q.vertices if v not in seen]
    if missing:
        raise NotAPartitionError(f"vertices in no block: {missing}")
    return tuple(normalized)


def contraction(q: Quiver, blocks: Sequence[Iterable[str]]) -> Quiver:
    """Collapse each block to a single vertex, dropping arrows inside a block.

    Arrows between distinct blocks are kept with multiplicity, so the result
    may have parallel arrows or two-cycles; it is flagged as contraction
    output (loops appear only via the spanning-tree diagnosis in the
    partitions module, never here).
    """
    normalized = check_vertex_partition(q, blocks)
    names = _block_names(normalized)
    of = {v: names[i] for i, b in enumerate(normalized) for v in b}
    arrows = tuple(
        Arrow(a.name, of[a.tail], of[a.head]) for a in q.arrows if of[a.tail] != of[a.head]
    )
    return Quiver(tuple(names), arrows, is_contraction=True)


def _block_names(blocks: tuple[tuple[str, ...], ...]) -> list[str]:
    names = ["+".join(b) for b in blocks]
    if len(set(names)) != len(names):
        names = [f"B{i}:{n}" for i, n in enumerate(names)]
    return names


def underlying_connected(q: Quiver) -> bool:
    """True when the underlying undirected graph is connected and nonempty."""
    if not q.vertices:
        return False
    adj: dict[str, set[str]] = {v: set() for v in q.vertices}
    for a in q.arrows:
        adj[a.tail].add(a.head)
        adj[a.head].add(a.tail)
    seen = {q.vertices[0]}
    stack = [q.vertices[0]]
    while stack:
        for w in adj[stack.pop()]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == q.n


def _check_keys(q: Quiver, g: DimVector) -> None:
    if g.vertices != q.vertices:
        raise KeyMismatchError(
            f"dimension vector keyed by {g.vertices}, quiver has {q.vertices}"
        )
