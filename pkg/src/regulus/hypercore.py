"""Core hypergraph model and elementary operations.

Vertices are dense integers 0..n-1.  An edge is a set of vertices, stored
as a strictly ascending tuple together with an integer bitmask.  Python
ints are arbitrary precision, so one mask representation covers every n.

Colexicographic order is the universal tie-breaker: for vertex sets it
coincides with ascending order of the bitmasks, so canonical edge storage
is simply "sorted by mask".  All operations are deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable

from .errors import ParseError


def mask_of(vertices: Iterable[int]) -> int:
    """Bitmask encoding of a vertex set."""
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def vertices_of(mask: int) -> tuple[int, ...]:
    """Ascending vertex tuple encoded by a bitmask."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return tuple(out)


class Hypergraph:
    """Immutable hypergraph with canonical (colex) edge storage.

    Invariants:
      * every vertex id lies in [0, n);
      * each edge is a strictly ascending vertex tuple;
      * edges are distinct and listed in colex order (ascending masks).

    The constructor normalizes arbitrary vertex order within an edge; a
    repeated vertex inside an edge or a repeated edge is an error, never
    silently dropped.
    """

    __slots__ = ("_n", "_edges", "_masks", "_mask_index", "_incidence")

    def __init__(self, n: int, edges: Iterable[Iterable[int]] = ()):
        if not isinstance(n, int) or n < 0:
            raise ValueError(f"vertex count must be a nonnegative integer, got {n!r}")
        normalized: list[tuple[int, ...]] = []
        for edge in edges:
            vs = tuple(edge)
            for v in vs:
                if not isinstance(v, int) or v < 0 or v >= n:
                    raise ValueError(f"vertex {v!r} out of range for n={n}")
            svs = tuple(sorted(vs))
            for a, b in zip(svs, svs[1:]):
                if a == b:
                    raise ValueError(f"repeated vertex {a} within edge {vs!r}")
            normalized.append(svs)
        masked = sorted((mask_of(e), e) for e in normalized)
        for (ma, _), (mb, eb) in zip(masked, masked[1:]):
            if ma == mb:
                raise ValueError(f"duplicate edge {eb!r}")
        self._n = n
        self._edges = tuple(e for _, e in masked)
        self._masks = tuple(m for m, _ in masked)
        self._mask_index: dict[int, int] | None = None
        self._incidence: tuple[int, ...] | None = None

    @property
    def n(self) -> int:
        return self._n

    @property
    def edges(self) -> tuple[tuple[int, ...], ...]:
        return self._edges

    @property
    def edge_masks(self) -> tuple[int, ...]:
        return self._masks

    @property
    def uniformity(self) -> int | None:
        """Common edge size, or None if edges have mixed sizes or there are none."""
        sizes = {len(e) for e in self._edges}
        if len(sizes) == 1:
            return sizes.pop()
        return None

    @property
    def mask_index(self) -> dict[int, int]:
        """Edge mask -> edge index."""
        if self._mask_index is None:
            self._mask_index = {m: i for i, m in enumerate(self._masks)}
        return self._mask_index

    @property
    def vertex_incidence(self) -> tuple[int, ...]:
        """Per-vertex bitmask over edge indices (bit i set iff edge i contains v)."""
        if self._incidence is None:
            inc = [0] * self._n
            for i, e in enumerate(self._edges):
                bit = 1 << i
                for v in e:
                    inc[v] |= bit
            self._incidence = tuple(inc)
        return self._incidence

    def has_edge(self, vertices: Iterable[int]) -> bool:
        return mask_of(vertices) in self.mask_index

    def __len__(self) -> int:
        return len(self._edges)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Hypergraph):
            return NotImplemented
        return self._n == other._n and self._masks == other._masks

    def __hash__(self) -> int:
        return hash((self._n, self._masks))

    def __repr__(self) -> str:
        return f"Hypergraph(n={self._n}, m={len(self._edges)})"


@dataclass(frozen=True)
class LinkGraph:
    """Link of a vertex set D: the edges containing D, with D removed.

    `graph` lives on the same vertex range as the host; every edge of it is
    disjoint from `removed`, and e is an edge iff e | removed is a host edge.
    """

    graph: Hypergraph
    removed: tuple[int, ...]


def parse(text: str) -> Hypergraph:
    """Parse the plain-text hypergraph format.

    First content line: "n m".  Then m lines, one edge each, vertices
    separated by spaces.  Blank lines and lines starting with '#' are
    ignored.  Vertex order within a line does not matter; repeated vertices
    within a line and repeated edges across lines are errors (the latter
    reported with both line numbers).
    """
    content: list[tuple[int, str]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        content.append((lineno, stripped))
    if not content:
        raise ParseError("empty input: missing header line")
    header_no, header = content[0]
    fields = header.split()
    if len(fields) != 2:
        raise ParseError(f"line {header_no}: malformed header {header!r}, expected 'n m'")
    try:
        n, m = int(fields[0]), int(fields[1])
    except ValueError:
        raise ParseError(f"line {header_no}: malformed header {header!r}, expected 'n m'") from None
    if n < 0 or m < 0:
        raise ParseError(f"line {header_no}: malformed header {header!r}, counts must be nonnegative")
    body = content[1:]
    if len(body) != m:
        raise ParseError(f"expected {m} edge lines, found {len(body)}")
    edges: list[tuple[int, ...]] = []
    seen: dict[int, int] = {}
    for lineno, line in body:
        try:
            vs = [int(tok) for tok in line.split()]
        except ValueError:
            raise ParseError(f"line {lineno}: non-integer vertex in {line!r}") from None
        for v in vs:
            if v < 0 or v >= n:
                raise ParseError(f"line {lineno}: vertex {v} out of range for n={n}")
        svs = tuple(sorted(vs))
        for a, b in zip(svs, svs[1:]):
            if a == b:
                raise ParseError(f"line {lineno}: repeated vertex {a} within edge")
        msk = mask_of(svs)
        if msk in seen:
            raise ParseError(f"duplicate edge (lines {seen[msk]} and {lineno})")
        seen[msk] = lineno
        edges.append(svs)
    return Hypergraph(n, edges)


def serialize(h: Hypergraph) -> str:
    """Canonical text form: header, then edges in colex order, ascending within a line."""
    for e in h.edges:
        if not e:
            raise ValueError("the empty edge is not representable in the text format")
    lines = [f"{h.n} {len(h.edges)}"]
    lines.extend(" ".join(str(v) for v in e) for e in h.edges)
    return "\n".join(lines) + "\n"


def read_hypergraph(path: str) -> Hypergraph:
    with open(path, "r", encoding="ascii") as fh:
        return parse(fh.read())


def write_hypergraph(h: Hypergraph, path: str) -> None:
    with open(path, "w", encoding="ascii") as fh:
        fh.write(serialize(h))


def degree_vector(h: Hypergraph, edge_indices: Iterable[int]) -> list[int]:
    """Per-vertex cover counts of a set of edge indices.  Length n; sums to
    the total size of the selected edges."""
    degs = [0] * h.n
    m = len(h.edges)
    for i in set(edge_indices):
        if not isinstance(i, int) or i < 0 or i >= m:
            raise ValueError(f"edge index {i!r} out of range for m={m}")
        for v in h.edges[i]:
            degs[v] += 1
    return degs


def link(h: Hypergraph, d: Iterable[int]) -> LinkGraph:
    """Link of the vertex set d: exactly the edges containing d, with d removed."""
    dset = set()
    for v in d:
        if not isinstance(v, int) or v < 0 or v >= h.n:
            raise ValueError(f"vertex {v!r} out of range for n={h.n}")
        dset.add(v)
    dmask = mask_of(dset)
    sub = [vertices_of(m & ~dmask) for m in h.edge_masks if m & dmask == dmask]
    return LinkGraph(graph=Hypergraph(h.n, sub), removed=tuple(sorted(dset)))


def link_intersection(h: Hypergraph, x: int, y: int) -> Hypergraph:
    """Common link of two vertices: the (k-1)-sets f avoiding both x and y
    with f+{x} and f+{y} both edges."""
    if x == y:
        raise ValueError("link_intersection needs two distinct vertices")
    for v in (x, y):
        if not isinstance(v, int) or v < 0 or v >= h.n:
            raise ValueError(f"vertex {v!r} out of range for n={h.n}")
    if len(h.edges) and h.uniformity is None:
        raise ValueError("link_intersection requires a uniform hypergraph")
    bx, by = 1 << x, 1 << y
    idx = h.mask_index
    out = []
    for m in h.edge_masks:
        if m & bx and not m & by:
            f = m ^ bx
            if (f | by) in idx:
                out.append(vertices_of(f))
    return Hypergraph(h.n, out)


def greedy_matching(h: Hypergraph, target: int | None = None) -> list[int]:
    """First-fit matching in colex edge order; stops early at `target` edges.

    Returns indices of pairwise disjoint edges.  Maximal when target is None
    or not reached: every remaining edge meets a chosen one.
    """
    if target is not None and target < 0:
        raise ValueError("target must be nonnegative")
    used = 0
    out: list[int] = []
    for i, m in enumerate(h.edge_masks):
        if target is not None and len(out) >= target:
            break
        if m & used == 0:
            out.append(i)
            used |= m
    return out


def complete_uniform(n: int, k: int) -> Hypergraph:
    """All k-subsets of [0, n)."""
    if k < 0 or k > n:
        raise ValueError(f"need 0 <= k <= n, got k={k}, n={n}")
    return Hypergraph(n, combinations(range(n), k))
